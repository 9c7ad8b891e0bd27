// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/group.hpp"

#include <stdexcept>

namespace qnet
{
  namespace
  {
    // RFC 3526 group 14. The RFC generator 2 is replaced by 4 = 2^2, which
    // is a quadratic residue for any p and so generates the order-q subgroup.
    constexpr const char* modp_2048_hex =
      "ffffffffffffffffc90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74"
      "020bbea63b139b22514a08798e3404ddef9519b3cd3a431b302b0a6df25f1437"
      "4fe1356d6d51c245e485b576625e7ec6f44c42e9a637ed6b0bff5cb6f406b7ed"
      "ee386bfb5a899fa5ae9f24117c4b1fe649286651ece45b3dc2007cb8a163bf05"
      "98da48361c55d39a69163fa8fd24cf5f83655d23dca3ad961c62f356208552bb"
      "9ed529077096966d670c354e4abc9804f1746c08ca18217c32905e462e36ce3b"
      "e39e772c180e86039b2783a2ec07a28fb5c55df06f4c52c9de2bcbf695581718"
      "3995497cea956ae515d2261898fa051015728e5a8aacaa68ffffffffffffffff";

    GroupParams make_tiny()
    {
      return GroupParams{std::string(tiny_label), 23, 11, 4};
    }

    GroupParams make_standard()
    {
      GroupParams params;
      params.label = std::string(standard_label);
      params.p = mpz_class(modp_2048_hex, 16);
      params.q = (params.p - 1) / 2;
      params.g = 4;
      return params;
    }

    mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m)
    {
      mpz_class r;
      mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
      return r;
    }
  }

  const GroupParams& standard_params(SizeLabel size)
  {
    static const GroupParams tiny = make_tiny();
    static const GroupParams standard = make_standard();
    switch (size)
    {
      case SizeLabel::tiny:
        return tiny;
      case SizeLabel::standard:
        return standard;
    }
    throw std::invalid_argument("unsupported group size label");
  }

  const GroupParams& params_for_label(std::string_view label)
  {
    if (label == tiny_label)
      return standard_params(SizeLabel::tiny);
    if (label == standard_label)
      return standard_params(SizeLabel::standard);
    throw std::invalid_argument("unknown group label: " + std::string(label));
  }

  bool params_valid(const GroupParams& params)
  {
    if (params.p != 2 * params.q + 1)
      return false;
    if (mpz_probab_prime_p(params.p.get_mpz_t(), 40) == 0)
      return false;
    if (mpz_probab_prime_p(params.q.get_mpz_t(), 40) == 0)
      return false;
    if (params.g <= 1 || params.g >= params.p)
      return false;
    return powm(params.g, params.q, params.p) == 1;
  }

  bool is_member(const GroupParams& params, const mpz_class& value)
  {
    if (value < 1 || value >= params.p)
      return false;
    return powm(value, params.q, params.p) == 1;
  }

  Scalar Scalar::from(const GroupParams& params, mpz_class value)
  {
    if (value < 1 || value >= params.q)
      throw std::invalid_argument("scalar outside [1, q-1]");
    return Scalar(std::move(value));
  }

  Scalar Scalar::random(const GroupParams& params, Rng& rng)
  {
    return from(params, rng.scalar(params.q));
  }

  GroupElement GroupElement::from(const GroupParams& params, mpz_class value)
  {
    if (!is_member(params, value))
      throw std::invalid_argument("value is not in the order-q subgroup");
    return GroupElement(std::move(value));
  }

  KeyPair keygen(const GroupParams& params, Rng& rng)
  {
    return keypair_from_private(params, Scalar::random(params, rng));
  }

  KeyPair keypair_from_private(const GroupParams& params, const Scalar& private_key)
  {
    return KeyPair{private_key, generator_pow(params, private_key.value())};
  }

  GroupElement encode_message(const GroupParams& params, const mpz_class& m)
  {
    if (m < 1 || m > params.q)
      throw std::invalid_argument("message outside [1, q]");
    // Exactly one of m, p - m is a residue since -1 is a non-residue when p = 3 mod 4.
    if (mpz_legendre(m.get_mpz_t(), params.p.get_mpz_t()) == 1)
      return GroupElement::trusted(m);
    return GroupElement::trusted(params.p - m);
  }

  mpz_class decode_message(const GroupParams& params, const GroupElement& e)
  {
    if (e.value() <= params.q)
      return e.value();
    return params.p - e.value();
  }

  GroupElement exp(const GroupParams& params, const GroupElement& base, const Scalar& e)
  {
    return GroupElement::trusted(powm(base.value(), e.value(), params.p));
  }

  GroupElement exp(const GroupParams& params, const GroupElement& base, const mpz_class& e)
  {
    mpz_class reduced;
    mpz_mod(reduced.get_mpz_t(), e.get_mpz_t(), params.q.get_mpz_t());
    return GroupElement::trusted(powm(base.value(), reduced, params.p));
  }

  GroupElement exp_neg(const GroupParams& params, const GroupElement& base, const Scalar& e)
  {
    mpz_class reduced;
    mpz_mod(reduced.get_mpz_t(), e.value().get_mpz_t(), params.q.get_mpz_t());
    return GroupElement::trusted(powm(base.value(), params.q - reduced, params.p));
  }

  GroupElement generator_pow(const GroupParams& params, const mpz_class& e)
  {
    return exp(params, GroupElement::trusted(params.g), e);
  }

  GroupElement mul(const GroupParams& params, const GroupElement& a, const GroupElement& b)
  {
    mpz_class r = a.value() * b.value();
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), params.p.get_mpz_t());
    return GroupElement::trusted(std::move(r));
  }

  GroupElement inverse(const GroupParams& params, const GroupElement& a)
  {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.value().get_mpz_t(), params.p.get_mpz_t()) == 0)
      throw std::invalid_argument("element not invertible");
    return GroupElement::trusted(std::move(r));
  }

  std::string to_hex(const mpz_class& v)
  {
    if (v < 0)
      throw std::invalid_argument("negative values have no hex encoding");
    return v.get_str(16);
  }

  mpz_class from_hex(std::string_view hex)
  {
    if (hex.empty())
      throw std::invalid_argument("empty hex string");
    if (hex.size() > 1 && hex.front() == '0')
      throw std::invalid_argument("non-canonical hex: leading zero");
    for (char c : hex)
    {
      const bool digit = c >= '0' && c <= '9';
      const bool lower = c >= 'a' && c <= 'f';
      if (!digit && !lower)
        throw std::invalid_argument("non-canonical hex digit");
    }
    return mpz_class(std::string(hex), 16);
  }
}
