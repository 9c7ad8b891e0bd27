// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/proxy_keys.hpp"

#include "qnet/errors.hpp"

namespace qnet
{
  ProxyKey gen_proxy_key(const GroupParams& params, Rng& rng)
  {
    auto x = Scalar::random(params, rng);
    return proxy_key_from_private(params, rng.random_id(), x);
  }

  ProxyKey proxy_key_from_private(const GroupParams& params, std::string key_id, const Scalar& x)
  {
    return ProxyKey{std::move(key_id), x, generator_pow(params, x.value()), std::nullopt};
  }

  std::string alias_key_id(const std::string& user_id)
  {
    return std::string(alias_prefix) + user_id;
  }

  std::optional<std::string> alias_user(std::string_view key_id)
  {
    if (!key_id.starts_with(alias_prefix))
      return std::nullopt;
    return std::string(key_id.substr(alias_prefix.size()));
  }

  ProxyKey alias_proxy_key(const KeyPair& user, const std::string& user_id)
  {
    return ProxyKey{alias_key_id(user_id), user.private_key, user.public_key, user_id};
  }

  WrappedProxyKey wrap(
    const GroupParams& params,
    const ProxyKey& key,
    const std::string& holder_id,
    const GroupElement& holder_public,
    Rng& rng)
  {
    return wrap(params, key, holder_id, holder_public, Scalar::random(params, rng));
  }

  WrappedProxyKey wrap(
    const GroupParams& params,
    const ProxyKey& key,
    const std::string& holder_id,
    const GroupElement& holder_public,
    const Scalar& r_a)
  {
    // x is a scalar, multiplied into Z_p* as is; unwrap checks the range.
    mpz_class w1 = exp(params, holder_public, r_a).value() * key.private_key.value();
    mpz_mod(w1.get_mpz_t(), w1.get_mpz_t(), params.p.get_mpz_t());
    return WrappedProxyKey{
      key.key_id, holder_id, params.label, generator_pow(params, r_a.value()), std::move(w1)};
  }

  Scalar unwrap(const GroupParams& params, const WrappedProxyKey& wrapped, const Scalar& holder_private)
  {
    if (wrapped.group_label != params.label)
      throw std::invalid_argument("wrapped key group does not match");
    const GroupElement mask_inv = exp_neg(params, wrapped.w0, holder_private);
    mpz_class x = wrapped.w1 * mask_inv.value();
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), params.p.get_mpz_t());
    if (x < 1 || x >= params.q)
      throw DecryptionError("corrupt wrapped proxy key " + wrapped.key_id);
    return Scalar::from(params, std::move(x));
  }

  ProxyKey unwrap_key(const GroupParams& params, const WrappedProxyKey& wrapped, const Scalar& holder_private)
  {
    return proxy_key_from_private(params, wrapped.key_id, unwrap(params, wrapped, holder_private));
  }
}
