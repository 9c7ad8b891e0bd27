// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/elgamal.hpp"

#include <stdexcept>

namespace qnet
{
  GroupElement combined_public(const GroupParams& params, std::span<const GroupElement> recipients)
  {
    if (recipients.empty())
      throw std::invalid_argument("recipient list is empty");
    GroupElement acc = GroupElement::one();
    for (const auto& pk : recipients)
      acc = mul(params, acc, pk);
    return acc;
  }

  Ciphertext encrypt(
    const GroupParams& params,
    std::span<const GroupElement> recipients,
    const GroupElement& m,
    Rng& rng)
  {
    return encrypt(params, recipients, m, Scalar::random(params, rng));
  }

  Ciphertext encrypt(
    const GroupParams& params,
    std::span<const GroupElement> recipients,
    const GroupElement& m,
    const Scalar& r)
  {
    if (recipients.empty())
      throw std::invalid_argument("recipient list is empty");
    if (!is_member(params, m.value()))
      throw std::invalid_argument("message is not in the subgroup");

    // One factor per recipient; the private scalars are never summed.
    GroupElement c1 = m;
    for (const auto& pk : recipients)
      c1 = mul(params, c1, exp(params, pk, r));
    return Ciphertext{params.label, generator_pow(params, r.value()), c1};
  }

  DecryptionShare make_share(
    const GroupParams& params,
    const GroupElement& c0,
    const Scalar& private_key,
    std::string contributor)
  {
    return DecryptionShare{std::move(contributor), exp_neg(params, c0, private_key)};
  }

  GroupElement combine_decrypt(
    const GroupParams& params, const Ciphertext& ct, std::span<const DecryptionShare> shares)
  {
    require_group(params, ct);
    if (shares.empty())
      throw std::invalid_argument("no decryption shares supplied");
    GroupElement acc = ct.c1;
    for (const auto& share : shares)
      acc = mul(params, acc, share.value);
    return acc;
  }

  Ciphertext rerandomize(
    const GroupParams& params, const Ciphertext& ct, const GroupElement& combined, Rng& rng)
  {
    return rerandomize(params, ct, combined, Scalar::random(params, rng).value());
  }

  Ciphertext rerandomize(
    const GroupParams& params,
    const Ciphertext& ct,
    const GroupElement& combined,
    const mpz_class& w)
  {
    require_group(params, ct);
    return Ciphertext{
      ct.group_label,
      mul(params, ct.c0, generator_pow(params, w)),
      mul(params, ct.c1, exp(params, combined, w))};
  }

  void require_group(const GroupParams& params, const Ciphertext& ct)
  {
    if (ct.group_label != params.label)
      throw std::invalid_argument(
        "ciphertext group " + ct.group_label + " does not match " + params.label);
  }
}
