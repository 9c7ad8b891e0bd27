// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "qnet/group.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qnet
{
  using Bytes = std::vector<std::uint8_t>;
  using SymmetricKey = std::array<std::uint8_t, 32>;

  SymmetricKey random_key(Rng& rng);

  /// XChaCha20-Poly1305. Output is nonce || ciphertext || tag; the nonce is
  /// drawn from rng for every call.
  Bytes aead_seal(
    const SymmetricKey& key, std::span<const std::uint8_t> plaintext, std::string_view ad, Rng& rng);

  /// Throws AuthenticationError before releasing any plaintext.
  Bytes aead_open(const SymmetricKey& key, std::span<const std::uint8_t> sealed, std::string_view ad);

  /// Key bytes as one group element: the integer 0x01 || key, which must be
  /// at most q. The marker byte lets decode_key reject a wrong unblinding.
  GroupElement encode_key(const GroupParams& params, const SymmetricKey& key);
  SymmetricKey decode_key(const GroupParams& params, const GroupElement& element);
  bool group_fits_key(const GroupParams& params);

  /// Big-endian minimal byte string of a non-negative integer.
  Bytes to_bytes(const mpz_class& v);
  mpz_class from_bytes(std::span<const std::uint8_t> bytes);

  std::string to_base64(std::span<const std::uint8_t> bytes);
  Bytes from_base64(std::string_view text);
}
