// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "qnet/client/server_api.hpp"
#include "qnet/client/wallet.hpp"
#include "qnet/proxy_reencrypt.hpp"

#include <chrono>
#include <functional>
#include <set>

namespace qnet::client
{
  /// Who may decrypt a protected post.
  ///
  /// fresh_keys new proxy keys are generated and wrapped for the holders
  /// (and always for the author). keys_per_holder below fresh_keys spreads
  /// the keys over the holders with the quorum rule instead of handing every
  /// holder every key. Existing keys and users' own public keys can be added
  /// to the set as well.
  struct Audience
  {
    std::vector<std::string> holders;
    std::size_t fresh_keys = 1;
    std::optional<std::size_t> keys_per_holder;
    std::vector<std::string> reuse_key_ids;
    std::vector<std::string> alias_users;
  };

  /// Parses "bob,carol" into a list, dropping empty entries.
  std::vector<std::string> split_list(const std::string& text);

  struct ReadOptions
  {
    std::chrono::milliseconds timeout{30000};
    std::chrono::milliseconds first_poll{50};
    std::chrono::milliseconds max_poll{2000};
  };

  /// The read could not complete: some proxy keys have no share yet, or
  /// their holders denied the request.
  class MissingSharesError : public std::runtime_error
  {
  public:
    MissingSharesError(std::set<std::string> missing, std::set<std::string> denied);

    const std::set<std::string>& missing() const
    {
      return missing_;
    }

    const std::set<std::string>& denied() const
    {
      return denied_;
    }

  private:
    std::set<std::string> missing_;
    std::set<std::string> denied_;
  };

  struct ReadResult
  {
    Bytes plaintext;
    bool was_public = false;
    /// Keys whose shares came from other holders.
    std::set<std::string> remote_keys;
  };

  /// Decision for one pending share request.
  enum class Approval
  {
    approve,
    deny,
    skip
  };

  using Approver = std::function<Approval(const json& request)>;

  /// One user's session against a server.
  class Client
  {
  public:
    Client(Wallet& wallet, ServerApi& api, Rng& rng);

    Wallet& wallet()
    {
      return wallet_;
    }

    const GroupParams& params() const
    {
      return wallet_.params();
    }

    ServerApi& api()
    {
      return api_;
    }

    /// Generates the key pair and registers it. The server URL of the
    /// wallet is not touched.
    json register_user(const std::string& display_name);

    /// Unwraps every key the server holds for this user.
    std::size_t sync_keys();

    /// Publishes a post and returns the stored item. Private posts at or
    /// below short_cutover bytes take the direct Elgamal path when the bytes
    /// allow it.
    ContentItem post(Visibility visibility, const Bytes& payload, const Audience& audience = {});

    /// Fetches, collects shares and decrypts.
    ReadResult read(const std::string& content_id, const ReadOptions& options = {});

    /// Steps of read() exposed for callers that drive them separately.
    json fetch_blinded(const std::string& content_id);
    /// Shares for every key this wallet holds.
    UnblindShares local_shares(const BlindedResponse& resp, const std::vector<std::string>& key_ids) const;
    Bytes open(const json& view, const BlindedResponse& resp, const UnblindShares& shares) const;

    bool revoke(const std::string& content_id, const std::string& viewer_id);

    /// Open requests this user can answer.
    json inbox();
    json approve(const json& request);
    json deny(const std::string& request_id);
    /// Handles the inbox once; returns the number of requests answered.
    std::size_t serve_once(const Approver& approver);

    json circle_create(const std::optional<std::string>& circle_id = std::nullopt);
    json circle_join(const std::string& circle_id);
    json circle_rotate(const std::string& circle_id, CircleRotationOptions options = {});
    ContentItem circle_post(const std::string& circle_id, const Bytes& payload);
    /// Current circle key, read through the proxies when not cached.
    SymmetricKey circle_key(const std::string& circle_id, std::uint64_t epoch, const ReadOptions& options = {});
    /// Decrypted posts as {content_id, owner_id, epoch, text | error}.
    json circle_read(const std::string& circle_id, const ReadOptions& options = {});

  private:
    struct Collected
    {
      json view;
      BlindedResponse resp;
      UnblindShares shares;
      std::set<std::string> remote;
    };

    /// Blinded response plus a full share set for protected content.
    Collected collect(const std::string& content_id, json fetched, const ReadOptions& options);
    std::vector<ProxyKeyPublic> compose_proxies(const Audience& audience);
    GroupElement user_public(const std::string& user_id);

    Wallet& wallet_;
    ServerApi& api_;
    Rng& rng_;
  };
}
