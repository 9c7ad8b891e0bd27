// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "qnet/group.hpp"

#include <span>
#include <string>
#include <vector>

namespace qnet
{
  /// (g^r, m * prod_i pk_i^r) for one or more recipient keys.
  struct Ciphertext
  {
    std::string group_label;
    GroupElement c0;
    GroupElement c1;

    friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
  };

  /// c0^(-x) contributed by the holder of x. contributor names the key, so the
  /// caller can tell which share is missing or wrong.
  struct DecryptionShare
  {
    std::string contributor;
    GroupElement value;

    friend bool operator==(const DecryptionShare&, const DecryptionShare&) = default;
  };

  /// Product of the recipients' public keys, g^(a + b + ...).
  GroupElement combined_public(const GroupParams& params, std::span<const GroupElement> recipients);

  Ciphertext encrypt(
    const GroupParams& params,
    std::span<const GroupElement> recipients,
    const GroupElement& m,
    Rng& rng);

  Ciphertext encrypt(
    const GroupParams& params,
    std::span<const GroupElement> recipients,
    const GroupElement& m,
    const Scalar& r);

  DecryptionShare make_share(
    const GroupParams& params,
    const GroupElement& c0,
    const Scalar& private_key,
    std::string contributor = {});

  /// c1 * prod(shares). Equals the plaintext only with one correct share per
  /// recipient key.
  GroupElement combine_decrypt(
    const GroupParams& params, const Ciphertext& ct, std::span<const DecryptionShare> shares);

  Ciphertext rerandomize(
    const GroupParams& params, const Ciphertext& ct, const GroupElement& combined, Rng& rng);

  /// Fixed-exponent form; w is taken mod q and w = 0 leaves ct unchanged.
  Ciphertext rerandomize(
    const GroupParams& params,
    const Ciphertext& ct,
    const GroupElement& combined,
    const mpz_class& w);

  void require_group(const GroupParams& params, const Ciphertext& ct);
}
