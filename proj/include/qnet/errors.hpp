// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include <stdexcept>

namespace qnet
{
  /// Shares were incomplete, stale or wrong, or the recovered value did not
  /// decode.
  class DecryptionError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Symmetric authentication tag did not verify.
  class AuthenticationError : public DecryptionError
  {
  public:
    using DecryptionError::DecryptionError;
  };

  /// Caller lacks the right for an operation (non-member, non-owner).
  class PermissionError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };
}
