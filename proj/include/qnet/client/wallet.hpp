// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "qnet/content.hpp"
#include "qnet/proxy_keys.hpp"

#include "json.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace qnet::client
{
  using json = nlohmann::json;

  /// Password hashing cost for the wallet file key.
  enum class KdfCost
  {
    /// libsodium's minimum; tests only.
    minimal,
    interactive,
    moderate
  };

  /// Everything a user keeps locally. Private material only leaves the
  /// wallet as shares or wraps.
  struct Wallet
  {
    std::string group_label;
    std::string server_url;
    std::string user_id;
    std::string display_name;
    std::string token;
    std::optional<KeyPair> keys;
    /// Proxy keys this user can use: generated or unwrapped.
    std::map<std::string, ProxyKey> proxy_keys;
    /// circle id -> epoch -> circle key.
    std::map<std::string, std::map<std::uint64_t, SymmetricKey>> circle_keys;
    /// content id -> last blinded response and collected shares.
    std::map<std::string, json> cached_reads;
    /// content id -> open share request id.
    std::map<std::string, std::string> pending_requests;

    const GroupParams& params() const
    {
      return params_for_label(group_label);
    }

    const KeyPair& keypair() const;

    /// The alias key for this user plus every held proxy key.
    std::optional<ProxyKey> find_key(const std::string& key_id) const;

    json to_json() const;
    static Wallet from_json(const json& j);

    /// Sealed with XSalsa20-Poly1305 under an Argon2id key derived from the
    /// passphrase. Written to a temporary file and renamed.
    void save(const std::filesystem::path& path, const std::string& passphrase, KdfCost cost = KdfCost::interactive) const;

    /// Throws AuthenticationError on a wrong passphrase or a damaged file.
    static Wallet load(const std::filesystem::path& path, const std::string& passphrase);
  };
}
