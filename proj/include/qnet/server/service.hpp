// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "qnet/content.hpp"
#include "qnet/proxy_reencrypt.hpp"
#include "qnet/server/storage.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

namespace qnet::server
{
  /// Error surfaced to API clients as {code, message} with an HTTP status.
  class ApiError : public std::runtime_error
  {
  public:
    ApiError(int status, std::string code, const std::string& message) :
      std::runtime_error(message),
      status_(status),
      code_(std::move(code))
    {}

    int status() const
    {
      return status_;
    }

    const std::string& code() const
    {
      return code_;
    }

  private:
    int status_;
    std::string code_;
  };

  ApiError bad_request(const std::string& message);
  ApiError unauthorized(const std::string& message);
  ApiError forbidden(const std::string& message);
  ApiError not_found(const std::string& message);
  ApiError conflict(const std::string& message);

  /// Blinding records kept in a Storage collection.
  class StorageBlindingStore : public BlindingRecordStore
  {
  public:
    StorageBlindingStore(Storage& storage, const GroupParams& params) : storage_(storage), params_(params) {}

    std::optional<BlindingRecord> find_blinding(
      const std::string& content_id, const std::string& viewer_id) const override;
    BlindingRecord get_or_create_blinding(
      const std::string& content_id, const std::string& viewer_id, const Factory& make) override;
    bool erase_blinding(const std::string& content_id, const std::string& viewer_id) override;

  private:
    Storage& storage_;
    const GroupParams& params_;
  };

  /// Fixed pool of mutexes selected by key hash.
  class StripedLocks
  {
  public:
    std::mutex& operator[](const std::string& key);

  private:
    std::array<std::mutex, 64> locks_;
  };

  /// The OSN service. Every method takes parsed JSON and returns the JSON
  /// response body; failures throw ApiError. Callers are user ids already
  /// authenticated through authenticate().
  class Service
  {
  public:
    Service(std::shared_ptr<Storage> storage, const GroupParams& params, std::unique_ptr<Rng> rng = nullptr);

    const GroupParams& params() const
    {
      return params_;
    }

    Storage& storage()
    {
      return *storage_;
    }

    /// Maps a bearer token to its user id.
    std::string authenticate(const std::string& token) const;

    json group_info() const;

    json register_user(const json& body);
    json directory() const;
    json user(const std::string& user_id) const;

    json publish(const std::string& caller, const json& body);
    json content(const std::optional<std::string>& caller, const std::string& content_id) const;
    json list_content(const std::optional<std::string>& owner_id) const;
    json fetch_blinded(const std::string& caller, const std::string& content_id);
    json revoke(const std::string& caller, const std::string& content_id, const json& body);

    json register_proxy_key(const std::string& caller, const json& body);
    json proxy_key(const std::string& key_id) const;
    json put_wrapped(const std::string& caller, const json& body);
    json wrapped_for(const std::string& caller) const;

    json create_share_request(const std::string& caller, const json& body);
    json share_request(const std::string& caller, const std::string& request_id) const;
    json respond(const std::string& caller, const std::string& request_id, const json& body);
    json deny(const std::string& caller, const std::string& request_id, const json& body);
    json close_request(const std::string& caller, const std::string& request_id);
    json inbox(const std::string& caller) const;
    json my_requests(const std::string& caller) const;

    json create_circle(const std::string& caller, const json& body);
    json list_circles() const;
    json circle(const std::string& circle_id) const;
    json join_circle(const std::string& caller, const std::string& circle_id);
    json rotate_circle(const std::string& caller, const std::string& circle_id, const json& body);
    json circle_post(const std::string& caller, const std::string& circle_id, const json& body);
    json circle_posts(const std::string& caller, const std::string& circle_id) const;

    /// Runs fn once per (scope, key); later calls with the same pair return
    /// the stored {status, body} without running fn again.
    json idempotent(const std::string& scope, const std::string& key, const std::function<json()>& fn);

    json dump_state() const
    {
      return storage_->dump();
    }

  private:
    json user_record(const std::string& user_id) const;
    json item_record(const std::string& content_id) const;
    json request_record(const std::string& request_id) const;
    Circle load_circle(const std::string& circle_id) const;
    void save_circle(const Circle& c);

    GroupElement resolve_proxy(const std::string& key_id) const;
    std::vector<GroupElement> resolve_proxies(const ContentItem& item) const;
    bool holds(const std::string& user_id, const std::string& key_id) const;
    bool may_read(const std::string& user_id, const ContentItem& item) const;
    void require_reader(const std::string& user_id, const ContentItem& item) const;
    BlindedResponse blinded_for(const ContentItem& item, const std::string& viewer_id);
    void store_item(const ContentItem& item);

    template <typename F>
    auto with_rng(F&& f)
    {
      std::lock_guard guard(rng_lock_);
      return f(*rng_);
    }

    std::shared_ptr<Storage> storage_;
    const GroupParams& params_;
    std::unique_ptr<Rng> rng_;
    std::mutex rng_lock_;
    StorageBlindingStore blinding_;
    StripedLocks request_locks_;
    StripedLocks circle_locks_;
    StripedLocks idem_locks_;
  };

  /// Content as listed to clients: Elgamal layers are withheld and only
  /// reachable through fetch_blinded.
  json public_view(const ContentItem& item);
}
