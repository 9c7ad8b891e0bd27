// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/symmetric.hpp"

#include "qnet/errors.hpp"

#include <sodium.h>
#include <stdexcept>

namespace qnet
{
  namespace
  {
    constexpr std::size_t nonce_bytes = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES;
    constexpr std::size_t tag_bytes = crypto_aead_xchacha20poly1305_ietf_ABYTES;
    constexpr std::uint8_t key_marker = 0x01;

    const unsigned char* ad_ptr(std::string_view ad)
    {
      return reinterpret_cast<const unsigned char*>(ad.data());
    }
  }

  SymmetricKey random_key(Rng& rng)
  {
    SymmetricKey key{};
    rng.fill(key);
    return key;
  }

  Bytes aead_seal(
    const SymmetricKey& key, std::span<const std::uint8_t> plaintext, std::string_view ad, Rng& rng)
  {
    Bytes out(nonce_bytes + plaintext.size() + tag_bytes);
    rng.fill(std::span(out.data(), nonce_bytes));
    unsigned long long written = 0;
    crypto_aead_xchacha20poly1305_ietf_encrypt(
      out.data() + nonce_bytes,
      &written,
      plaintext.data(),
      plaintext.size(),
      ad_ptr(ad),
      ad.size(),
      nullptr,
      out.data(),
      key.data());
    out.resize(nonce_bytes + written);
    return out;
  }

  Bytes aead_open(const SymmetricKey& key, std::span<const std::uint8_t> sealed, std::string_view ad)
  {
    if (sealed.size() < nonce_bytes + tag_bytes)
      throw AuthenticationError("sealed payload too short");
    Bytes out(sealed.size() - nonce_bytes - tag_bytes);
    unsigned long long written = 0;
    const int rc = crypto_aead_xchacha20poly1305_ietf_decrypt(
      out.data(),
      &written,
      nullptr,
      sealed.data() + nonce_bytes,
      sealed.size() - nonce_bytes,
      ad_ptr(ad),
      ad.size(),
      sealed.data(),
      key.data());
    if (rc != 0)
      throw AuthenticationError("authentication tag mismatch");
    out.resize(written);
    return out;
  }

  Bytes to_bytes(const mpz_class& v)
  {
    if (v < 0)
      throw std::invalid_argument("negative integer");
    if (v == 0)
      return {};
    Bytes out((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
    std::size_t count = 0;
    mpz_export(out.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    out.resize(count);
    return out;
  }

  mpz_class from_bytes(std::span<const std::uint8_t> bytes)
  {
    mpz_class v;
    if (!bytes.empty())
      mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    return v;
  }

  bool group_fits_key(const GroupParams& params)
  {
    Bytes max(1 + std::tuple_size_v<SymmetricKey>, 0xff);
    max[0] = key_marker;
    return from_bytes(max) <= params.q;
  }

  GroupElement encode_key(const GroupParams& params, const SymmetricKey& key)
  {
    if (!group_fits_key(params))
      throw std::length_error("group " + params.label + " is too small to carry a symmetric key");
    Bytes framed;
    framed.reserve(1 + key.size());
    framed.push_back(key_marker);
    framed.insert(framed.end(), key.begin(), key.end());
    return encode_message(params, from_bytes(framed));
  }

  SymmetricKey decode_key(const GroupParams& params, const GroupElement& element)
  {
    const Bytes framed = to_bytes(decode_message(params, element));
    if (framed.size() != 1 + std::tuple_size_v<SymmetricKey> || framed[0] != key_marker)
      throw DecryptionError("recovered key has invalid framing");
    SymmetricKey key{};
    std::copy(framed.begin() + 1, framed.end(), key.begin());
    return key;
  }

  std::string to_base64(std::span<const std::uint8_t> bytes)
  {
    const auto variant = sodium_base64_VARIANT_ORIGINAL;
    std::string out(sodium_base64_ENCODED_LEN(bytes.size(), variant), '\0');
    sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(), variant);
    out.resize(out.size() - 1);
    return out;
  }

  Bytes from_base64(std::string_view text)
  {
    Bytes out(text.size() / 4 * 3 + 3);
    std::size_t len = 0;
    if (
      sodium_base642bin(
        out.data(),
        out.size(),
        text.data(),
        text.size(),
        nullptr,
        &len,
        nullptr,
        sodium_base64_VARIANT_ORIGINAL) != 0)
      throw std::invalid_argument("invalid base64");
    out.resize(len);
    return out;
  }
}
