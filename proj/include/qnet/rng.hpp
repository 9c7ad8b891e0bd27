// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <span>
#include <string>

#include <gmpxx.h>

namespace qnet
{
  /// Source of randomness injected into every randomized operation.
  class Rng
  {
  public:
    virtual ~Rng() = default;

    virtual void fill(std::span<std::uint8_t> out) = 0;

    /// Uniform integer in [0, bound). bound must be positive.
    mpz_class below(const mpz_class& bound);

    /// Uniform exponent in [1, order - 1].
    virtual mpz_class scalar(const mpz_class& order);

    std::uint64_t next_u64();

    /// 128 random bits as lowercase hex, used for identifiers.
    std::string random_id();
  };

  /// Operating-system randomness.
  class SystemRng final : public Rng
  {
  public:
    SystemRng();
    void fill(std::span<std::uint8_t> out) override;
  };

  /// Deterministic ChaCha20 keystream keyed by a seed. Reproducible across runs.
  class SeededRng final : public Rng
  {
  public:
    explicit SeededRng(std::uint64_t seed);
    void fill(std::span<std::uint8_t> out) override;

  private:
    std::array<std::uint8_t, 32> key_{};
    std::uint64_t counter_ = 0;
  };

  /// Returns queued exponents from scalar() before falling back to a seeded
  /// stream. Lets tests force r, s, tau and friends.
  class ScriptedRng final : public Rng
  {
  public:
    ScriptedRng(std::initializer_list<long> forced, std::uint64_t seed = 0);

    void push(const mpz_class& value);
    std::size_t remaining() const
    {
      return forced_.size();
    }

    void fill(std::span<std::uint8_t> out) override;
    mpz_class scalar(const mpz_class& order) override;

  private:
    std::deque<mpz_class> forced_;
    SeededRng fallback_;
  };
}
