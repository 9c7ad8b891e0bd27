// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "qnet/group.hpp"

#include <optional>
#include <string>

namespace qnet
{
  /// Prefix of key ids that alias a user's own key pair.
  inline constexpr std::string_view alias_prefix = "user:";

  /// Distribution key pair (x, g^x). Either freshly generated and handed out
  /// wrapped, or an alias of a user's own key pair.
  struct ProxyKey
  {
    std::string key_id;
    Scalar private_key;
    GroupElement public_key;
    /// Set for alias keys; names the user whose key pair this is.
    std::optional<std::string> alias_of;
  };

  /// Public half of a proxy key, as published in the key registry.
  struct ProxyKeyPublic
  {
    std::string key_id;
    GroupElement public_key;

    friend bool operator==(const ProxyKeyPublic&, const ProxyKeyPublic&) = default;
  };

  /// x encrypted for one holder: (g^ra, pk_holder^ra * x mod p).
  struct WrappedProxyKey
  {
    std::string key_id;
    std::string holder_id;
    std::string group_label;
    GroupElement w0;
    mpz_class w1;
  };

  ProxyKey gen_proxy_key(const GroupParams& params, Rng& rng);
  ProxyKey proxy_key_from_private(const GroupParams& params, std::string key_id, const Scalar& x);
  ProxyKey alias_proxy_key(const KeyPair& user, const std::string& user_id);
  std::string alias_key_id(const std::string& user_id);
  /// User id for alias key ids, nullopt for generated keys.
  std::optional<std::string> alias_user(std::string_view key_id);

  inline ProxyKeyPublic public_part(const ProxyKey& k)
  {
    return ProxyKeyPublic{k.key_id, k.public_key};
  }

  WrappedProxyKey wrap(
    const GroupParams& params,
    const ProxyKey& key,
    const std::string& holder_id,
    const GroupElement& holder_public,
    Rng& rng);

  WrappedProxyKey wrap(
    const GroupParams& params,
    const ProxyKey& key,
    const std::string& holder_id,
    const GroupElement& holder_public,
    const Scalar& r_a);

  /// w1 * (w0^a)^-1 mod p. Throws DecryptionError when the result is outside
  /// [1, q-1], which flags a corrupt wrap or the wrong private key.
  Scalar unwrap(const GroupParams& params, const WrappedProxyKey& wrapped, const Scalar& holder_private);

  /// Unwraps and rebuilds the full proxy key.
  ProxyKey unwrap_key(const GroupParams& params, const WrappedProxyKey& wrapped, const Scalar& holder_private);
}
