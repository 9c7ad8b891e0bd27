// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "qnet/rng.hpp"

#include <gmpxx.h>
#include <string>
#include <string_view>

namespace qnet
{
  inline constexpr std::string_view tiny_label = "tiny-23";
  inline constexpr std::string_view standard_label = "modp-2048";

  enum class SizeLabel
  {
    tiny,
    standard
  };

  /// Safe-prime group p = 2q + 1 with g generating the order-q subgroup of
  /// quadratic residues. Everything else in the library lives in this subgroup.
  struct GroupParams
  {
    std::string label;
    mpz_class p;
    mpz_class q;
    mpz_class g;
  };

  const GroupParams& standard_params(SizeLabel size);
  /// Looks up a group by its wire label ("tiny-23", "modp-2048").
  const GroupParams& params_for_label(std::string_view label);

  /// Checks p, q prime (probabilistically), p = 2q + 1, g != 1, g^q = 1.
  bool params_valid(const GroupParams& params);

  bool is_member(const GroupParams& params, const mpz_class& value);

  /// Exponent in [1, q - 1].
  class Scalar
  {
  public:
    static Scalar from(const GroupParams& params, mpz_class value);
    static Scalar random(const GroupParams& params, Rng& rng);

    const mpz_class& value() const
    {
      return value_;
    }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
      return a.value_ == b.value_;
    }

  private:
    explicit Scalar(mpz_class v) : value_(std::move(v)) {}
    mpz_class value_;
  };

  /// Element of the order-q subgroup.
  class GroupElement
  {
  public:
    /// Throws std::invalid_argument unless value is in the subgroup.
    static GroupElement from(const GroupParams& params, mpz_class value);
    /// For values produced by group operations on members.
    static GroupElement trusted(mpz_class value)
    {
      return GroupElement(std::move(value));
    }
    static GroupElement one()
    {
      return GroupElement(1);
    }

    const mpz_class& value() const
    {
      return value_;
    }

    friend bool operator==(const GroupElement& a, const GroupElement& b)
    {
      return a.value_ == b.value_;
    }

  private:
    explicit GroupElement(mpz_class v) : value_(std::move(v)) {}
    mpz_class value_;
  };

  struct KeyPair
  {
    Scalar private_key;
    GroupElement public_key;
  };

  KeyPair keygen(const GroupParams& params, Rng& rng);
  KeyPair keypair_from_private(const GroupParams& params, const Scalar& private_key);

  /// Maps m in [1, q] into the subgroup: m if m is a quadratic residue, else p - m.
  GroupElement encode_message(const GroupParams& params, const mpz_class& m);
  /// Inverse of encode_message: e if e <= q, else p - e.
  mpz_class decode_message(const GroupParams& params, const GroupElement& e);

  GroupElement exp(const GroupParams& params, const GroupElement& base, const Scalar& e);
  /// Raw exponent variant; e is reduced mod q and may be zero.
  GroupElement exp(const GroupParams& params, const GroupElement& base, const mpz_class& e);
  /// base^(q - (e mod q)), the inverse of base^e.
  GroupElement exp_neg(const GroupParams& params, const GroupElement& base, const Scalar& e);
  GroupElement generator_pow(const GroupParams& params, const mpz_class& e);

  GroupElement mul(const GroupParams& params, const GroupElement& a, const GroupElement& b);
  GroupElement inverse(const GroupParams& params, const GroupElement& a);

  /// Canonical lowercase big-endian hex without leading zeros ("0" for zero).
  std::string to_hex(const mpz_class& v);
  /// Strict parse of the canonical form; rejects uppercase, prefixes, leading zeros.
  mpz_class from_hex(std::string_view hex);
}
