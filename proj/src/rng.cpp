// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/rng.hpp"

#include <sodium.h>
#include <stdexcept>
#include <vector>

namespace qnet
{
  mpz_class Rng::below(const mpz_class& bound)
  {
    if (bound <= 0)
      throw std::invalid_argument("random bound must be positive");
    if (bound == 1)
      return 0;

    const mpz_class top = bound - 1;
    const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
    const std::size_t bytes = (bits + 7) / 8;
    const unsigned excess = static_cast<unsigned>(bytes * 8 - bits);
    std::vector<std::uint8_t> buf(bytes);
    mpz_class candidate;
    // Rejection sampling on the smallest covering bit length.
    do
    {
      fill(buf);
      buf[0] &= static_cast<std::uint8_t>(0xffu >> excess);
      mpz_import(candidate.get_mpz_t(), buf.size(), 1, 1, 1, 0, buf.data());
    } while (candidate >= bound);
    return candidate;
  }

  mpz_class Rng::scalar(const mpz_class& order)
  {
    if (order <= 2)
      throw std::invalid_argument("group order too small for scalars");
    return below(order - 1) + 1;
  }

  std::uint64_t Rng::next_u64()
  {
    std::array<std::uint8_t, 8> b{};
    fill(b);
    std::uint64_t v = 0;
    for (auto x : b)
      v = (v << 8) | x;
    return v;
  }

  std::string Rng::random_id()
  {
    std::array<std::uint8_t, 16> b{};
    fill(b);
    std::string out(b.size() * 2 + 1, '\0');
    sodium_bin2hex(out.data(), out.size(), b.data(), b.size());
    out.pop_back();
    return out;
  }

  SystemRng::SystemRng()
  {
    if (sodium_init() < 0)
      throw std::runtime_error("libsodium initialisation failed");
  }

  void SystemRng::fill(std::span<std::uint8_t> out)
  {
    randombytes_buf(out.data(), out.size());
  }

  SeededRng::SeededRng(std::uint64_t seed)
  {
    if (sodium_init() < 0)
      throw std::runtime_error("libsodium initialisation failed");
    std::array<std::uint8_t, 8> s{};
    for (int i = 0; i < 8; ++i)
      s[i] = static_cast<std::uint8_t>(seed >> (8 * i));
    crypto_generichash(key_.data(), key_.size(), s.data(), s.size(), nullptr, 0);
  }

  void SeededRng::fill(std::span<std::uint8_t> out)
  {
    std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
    for (std::size_t i = 0; i < nonce.size(); ++i)
      nonce[i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
    ++counter_;
    crypto_stream_chacha20(out.data(), out.size(), nonce.data(), key_.data());
  }

  ScriptedRng::ScriptedRng(std::initializer_list<long> forced, std::uint64_t seed) :
    fallback_(seed)
  {
    for (long v : forced)
      forced_.emplace_back(v);
  }

  void ScriptedRng::push(const mpz_class& value)
  {
    forced_.push_back(value);
  }

  void ScriptedRng::fill(std::span<std::uint8_t> out)
  {
    fallback_.fill(out);
  }

  mpz_class ScriptedRng::scalar(const mpz_class& order)
  {
    if (forced_.empty())
      return fallback_.scalar(order);
    mpz_class v = forced_.front();
    forced_.pop_front();
    if (v < 1 || v >= order)
      throw std::invalid_argument("forced scalar outside [1, q-1]");
    return v;
  }
}
