// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/server/service.hpp"

#include "qnet/wire.hpp"

#include <chrono>
#include <sodium.h>

namespace qnet::server
{
  namespace
  {
    constexpr const char* users = "users";
    constexpr const char* public_keys = "public_keys";
    constexpr const char* tokens = "tokens";
    constexpr const char* contents = "content";
    constexpr const char* proxy_keys = "proxy_keys";
    constexpr const char* wrapped_keys = "wrapped_keys";
    constexpr const char* requests = "share_requests";
    constexpr const char* circles = "circles";
    constexpr const char* idempotency = "idempotency";

    std::int64_t now_ms()
    {
      using namespace std::chrono;
      return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
    }

    std::string token_hash(const std::string& token)
    {
      std::array<unsigned char, crypto_hash_sha256_BYTES> digest{};
      crypto_hash_sha256(
        digest.data(), reinterpret_cast<const unsigned char*>(token.data()), token.size());
      std::string hex(digest.size() * 2 + 1, '\0');
      sodium_bin2hex(hex.data(), hex.size(), digest.data(), digest.size());
      hex.pop_back();
      return hex;
    }

    std::string wrapped_key(const std::string& key_id, const std::string& holder)
    {
      return key_id + "|" + holder;
    }

    const std::string& text(const json& body, const char* name)
    {
      if (!body.is_object() || !body.contains(name) || !body[name].is_string())
        throw bad_request(std::string("missing string field: ") + name);
      return body[name].get_ref<const std::string&>();
    }

    std::optional<std::string> optional_text(const json& body, const char* name)
    {
      if (!body.is_object() || !body.contains(name) || body[name].is_null())
        return std::nullopt;
      if (!body[name].is_string())
        throw bad_request(std::string("field must be a string: ") + name);
      return body[name].get<std::string>();
    }

    bool valid_id(const std::string& id)
    {
      if (id.empty() || id.size() > 128)
        return false;
      for (char c : id)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
          return false;
      return true;
    }

    template <typename F>
    auto parse(F&& f)
    {
      try
      {
        return f();
      }
      catch (const ApiError&)
      {
        throw;
      }
      catch (const std::exception& e)
      {
        throw bad_request(e.what());
      }
    }
  }

  ApiError bad_request(const std::string& message)
  {
    return ApiError(400, "bad_request", message);
  }

  ApiError unauthorized(const std::string& message)
  {
    return ApiError(401, "unauthorized", message);
  }

  ApiError forbidden(const std::string& message)
  {
    return ApiError(403, "forbidden", message);
  }

  ApiError not_found(const std::string& message)
  {
    return ApiError(404, "not_found", message);
  }

  ApiError conflict(const std::string& message)
  {
    return ApiError(409, "conflict", message);
  }

  std::optional<BlindingRecord> StorageBlindingStore::find_blinding(
    const std::string& content_id, const std::string& viewer_id) const
  {
    auto rec = storage_.get("blinding", content_id + "|" + viewer_id);
    if (!rec)
      return std::nullopt;
    return wire::decode_blinding_record(params_, *rec);
  }

  BlindingRecord StorageBlindingStore::get_or_create_blinding(
    const std::string& content_id, const std::string& viewer_id, const Factory& make)
  {
    auto [rec, inserted] = storage_.insert_or_get(
      "blinding", content_id + "|" + viewer_id, [&] { return wire::encode(make()); });
    return wire::decode_blinding_record(params_, rec);
  }

  bool StorageBlindingStore::erase_blinding(const std::string& content_id, const std::string& viewer_id)
  {
    return storage_.erase("blinding", content_id + "|" + viewer_id);
  }

  std::mutex& StripedLocks::operator[](const std::string& key)
  {
    return locks_[std::hash<std::string>{}(key) % locks_.size()];
  }

  json public_view(const ContentItem& item)
  {
    json j = wire::encode(item);
    j.erase("wrapped_key");
    j.erase("short_ciphertext");
    j["protected"] = has_protected_ciphertext(item);
    j["large"] = item.wrapped_key.has_value();
    return j;
  }

  Service::Service(std::shared_ptr<Storage> storage, const GroupParams& params, std::unique_ptr<Rng> rng) :
    storage_(std::move(storage)),
    params_(params),
    rng_(rng ? std::move(rng) : std::make_unique<SystemRng>()),
    blinding_(*storage_, params_)
  {
    if (sodium_init() < 0)
      throw std::runtime_error("libsodium initialisation failed");
  }

  std::string Service::authenticate(const std::string& token) const
  {
    if (token.empty())
      throw unauthorized("missing bearer token");
    auto rec = storage_->get(tokens, token_hash(token));
    if (!rec)
      throw unauthorized("unknown token");
    return rec->get<std::string>();
  }

  json Service::group_info() const
  {
    return {
      {"label", params_.label},
      {"p", to_hex(params_.p)},
      {"q", to_hex(params_.q)},
      {"g", to_hex(params_.g)}};
  }

  json Service::register_user(const json& body)
  {
    const auto display_name = text(body, "display_name");
    const auto pk = parse([&] { return wire::element(params_, body.at("public_key")); });
    if (pk == GroupElement::one())
      throw bad_request("public key must not be the identity");
    if (display_name.empty() || display_name.size() > 256)
      throw bad_request("display name must be 1 to 256 characters");

    const auto [user_id, token] = with_rng([](Rng& r) { return std::pair{r.random_id(), r.random_id()}; });
    auto [owner, inserted] =
      storage_->insert_or_get(public_keys, to_hex(pk.value()), [&] { return json(user_id); });
    if (!inserted)
      throw conflict("public key already registered");

    storage_->put(
      users,
      user_id,
      {{"user_id", user_id},
       {"display_name", display_name},
       {"public_key", to_hex(pk.value())},
       {"token_hash", token_hash(token)},
       {"created_at", now_ms()}});
    storage_->put(tokens, token_hash(token), user_id);
    return {{"user_id", user_id}, {"token", token}};
  }

  json Service::user_record(const std::string& user_id) const
  {
    auto rec = storage_->get(users, user_id);
    if (!rec)
      throw not_found("unknown user " + user_id);
    return *rec;
  }

  json Service::user(const std::string& user_id) const
  {
    auto rec = user_record(user_id);
    rec.erase("token_hash");
    return rec;
  }

  json Service::directory() const
  {
    json out = json::array();
    for (auto& [id, rec] : storage_->scan(users))
    {
      rec.erase("token_hash");
      out.push_back(std::move(rec));
    }
    return out;
  }

  GroupElement Service::resolve_proxy(const std::string& key_id) const
  {
    if (auto uid = alias_user(key_id))
    {
      auto rec = storage_->get(users, *uid);
      if (!rec)
        throw bad_request("unknown proxy key " + key_id);
      return wire::element(params_, rec->at("public_key"));
    }
    auto rec = storage_->get(proxy_keys, key_id);
    if (!rec)
      throw bad_request("unknown proxy key " + key_id);
    return wire::element(params_, rec->at("public_key"));
  }

  std::vector<GroupElement> Service::resolve_proxies(const ContentItem& item) const
  {
    std::vector<GroupElement> out;
    for (const auto& id : item.proxy_key_ids)
      out.push_back(resolve_proxy(id));
    return out;
  }

  bool Service::holds(const std::string& user_id, const std::string& key_id) const
  {
    if (auto uid = alias_user(key_id))
      return *uid == user_id;
    return storage_->get(wrapped_keys, wrapped_key(key_id, user_id)).has_value();
  }

  json Service::item_record(const std::string& content_id) const
  {
    auto rec = storage_->get(contents, content_id);
    if (!rec)
      throw not_found("unknown content " + content_id);
    return *rec;
  }

  bool Service::may_read(const std::string& user_id, const ContentItem& item) const
  {
    if (item.visibility != Visibility::Circle)
      return true;
    auto c = storage_->get(circles, *item.circle_id);
    return c && c->at("member_ids").get<std::set<std::string>>().contains(user_id);
  }

  void Service::require_reader(const std::string& user_id, const ContentItem& item) const
  {
    if (!may_read(user_id, item))
      throw forbidden("circle content is visible to members only");
  }

  void Service::store_item(const ContentItem& item)
  {
    if (!valid_id(item.content_id))
      throw bad_request("content id must be 1 to 128 characters of [A-Za-z0-9._-]");
    if (has_protected_ciphertext(item) && protected_ciphertext(item).group_label != params_.label)
      throw bad_request("ciphertext group does not match the server group");
    resolve_proxies(item);
    const json encoded = wire::encode(item);
    auto [stored, inserted] = storage_->insert_or_get(contents, item.content_id, [&] {
      json rec = encoded;
      rec["created_at"] = now_ms();
      return rec;
    });
    if (!inserted)
    {
      stored.erase("created_at");
      if (stored != encoded)
        throw conflict("content id already in use");
    }
  }

  json Service::publish(const std::string& caller, const json& body)
  {
    const auto item = parse([&] { return wire::decode_item(body.contains("item") ? body["item"] : body); });
    if (item.owner_id != caller)
      throw forbidden("owner_id must be the caller");
    if (item.visibility == Visibility::Circle)
      throw bad_request("circle content is published through the circle endpoints");
    store_item(item);
    return {{"content_id", item.content_id}};
  }

  json Service::content(const std::optional<std::string>& caller, const std::string& content_id) const
  {
    const auto item = wire::decode_item(item_record(content_id));
    if (item.visibility == Visibility::Circle && !(caller && may_read(*caller, item)))
      throw forbidden("circle content is visible to members only");
    return public_view(item);
  }

  json Service::list_content(const std::optional<std::string>& owner_id) const
  {
    json out = json::array();
    for (const auto& [id, rec] : storage_->scan(contents))
    {
      auto item = wire::decode_item(rec);
      if (item.visibility == Visibility::Circle)
        continue;
      if (owner_id && item.owner_id != *owner_id)
        continue;
      auto view = public_view(item);
      view["created_at"] = rec.value("created_at", std::int64_t{0});
      out.push_back(std::move(view));
    }
    return out;
  }

  BlindedResponse Service::blinded_for(const ContentItem& item, const std::string& viewer_id)
  {
    const auto publics = resolve_proxies(item);
    auto record = blinding_.get_or_create_blinding(item.content_id, viewer_id, [&] {
      return with_rng([&](Rng& r) { return make_blinding_record(params_, item.content_id, viewer_id, r); });
    });
    return apply_blinding(params_, item.content_id, protected_ciphertext(item), publics, record);
  }

  json Service::fetch_blinded(const std::string& caller, const std::string& content_id)
  {
    const auto item = wire::decode_item(item_record(content_id));
    require_reader(caller, item);
    json out = {{"content", public_view(item)}};
    if (has_protected_ciphertext(item))
      out["blinded"] = wire::encode(blinded_for(item, caller));
    return out;
  }

  json Service::revoke(const std::string& caller, const std::string& content_id, const json& body)
  {
    const auto viewer = text(body, "viewer_id");
    const auto item = wire::decode_item(item_record(content_id));
    bool allowed = item.owner_id == caller;
    for (const auto& key_id : item.proxy_key_ids)
      allowed = allowed || holds(caller, key_id);
    if (!allowed)
      throw forbidden("only the owner or a proxy of the content may revoke");
    return {{"revoked", qnet::revoke(blinding_, content_id, viewer)}};
  }

  json Service::register_proxy_key(const std::string& caller, const json& body)
  {
    const auto pub = parse([&] { return wire::decode_proxy_public(params_, body); });
    if (alias_user(pub.key_id) || !valid_id(pub.key_id))
      throw bad_request("invalid proxy key id");
    const json rec = {
      {"key_id", pub.key_id}, {"public_key", to_hex(pub.public_key.value())}, {"owner_id", caller}};
    auto [stored, inserted] = storage_->insert_or_get(proxy_keys, pub.key_id, [&] { return rec; });
    if (!inserted && stored != rec)
      throw conflict("proxy key id already in use");
    return rec;
  }

  json Service::proxy_key(const std::string& key_id) const
  {
    if (alias_user(key_id))
      return {{"key_id", key_id}, {"public_key", to_hex(resolve_proxy(key_id).value())}};
    auto rec = storage_->get(proxy_keys, key_id);
    if (!rec)
      throw not_found("unknown proxy key " + key_id);
    return *rec;
  }

  json Service::put_wrapped(const std::string& caller, const json& body)
  {
    if (!body.is_object() || !body.contains("wrapped") || !body["wrapped"].is_array())
      throw bad_request("expected {wrapped: [...]}");
    std::vector<WrappedProxyKey> all;
    for (const auto& w : body["wrapped"])
    {
      auto wk = parse([&] { return wire::decode_wrapped(w); });
      if (wk.group_label != params_.label)
        throw bad_request("wrapped key group does not match the server group");
      auto key = storage_->get(proxy_keys, wk.key_id);
      if (!key)
        throw bad_request("unknown proxy key " + wk.key_id);
      if (key->at("owner_id") != caller)
        throw forbidden("only the creator of a proxy key may distribute it");
      user_record(wk.holder_id);
      all.push_back(std::move(wk));
    }
    for (const auto& wk : all)
      storage_->put(wrapped_keys, wrapped_key(wk.key_id, wk.holder_id), wire::encode(wk));
    return {{"stored", all.size()}};
  }

  json Service::wrapped_for(const std::string& caller) const
  {
    json out = json::array();
    for (const auto& [key, rec] : storage_->scan(wrapped_keys))
      if (rec.at("holder_id") == caller)
        out.push_back(rec);
    return out;
  }

  json Service::request_record(const std::string& request_id) const
  {
    auto rec = storage_->get(requests, request_id);
    if (!rec)
      throw not_found("unknown share request " + request_id);
    return *rec;
  }

  json Service::create_share_request(const std::string& caller, const json& body)
  {
    const auto content_id = text(body, "content_id");
    const auto item = wire::decode_item(item_record(content_id));
    require_reader(caller, item);
    if (!has_protected_ciphertext(item))
      throw bad_request("public content needs no shares");
    const auto blinded = blinded_for(item, caller);
    const auto id = with_rng([](Rng& r) { return r.random_id(); });
    json rec = {
      {"request_id", id},
      {"content_id", content_id},
      {"owner_id", item.owner_id},
      {"requester_id", caller},
      {"status", "open"},
      {"created_at", now_ms()},
      {"proxy_key_ids", item.proxy_key_ids},
      {"blinded", wire::encode(blinded)},
      {"responses", json::object()},
      {"denials", json::object()}};
    storage_->put(requests, id, rec);
    return rec;
  }

  json Service::share_request(const std::string& caller, const std::string& request_id) const
  {
    auto rec = request_record(request_id);
    if (rec.at("requester_id") == caller)
      return rec;
    for (const auto& key_id : rec.at("proxy_key_ids"))
      if (holds(caller, key_id.get<std::string>()))
        return rec;
    throw forbidden("not a party to this share request");
  }

  json Service::respond(const std::string& caller, const std::string& request_id, const json& body)
  {
    std::lock_guard guard(request_locks_[request_id]);
    auto rec = request_record(request_id);
    if (rec.at("status") != "open")
      throw conflict("share request is closed");
    const auto shares =
      parse([&] { return wire::decode_unblind_shares(params_, body.contains("shares") ? body["shares"] : body); });
    if (shares.r_shares.empty() || shares.r_shares.size() != shares.s_shares.size())
      throw bad_request("shares must pair one r-share with one s-share per key");

    const auto listed = rec.at("proxy_key_ids").get<std::set<std::string>>();
    auto& responses = rec["responses"];
    std::set<std::string> seen;
    for (std::size_t i = 0; i < shares.r_shares.size(); ++i)
    {
      const auto& key_id = shares.r_shares[i].contributor;
      if (shares.s_shares[i].contributor != key_id)
        throw bad_request("r-share and s-share contributors differ");
      if (!listed.contains(key_id))
        throw bad_request("key " + key_id + " is not a proxy of this content");
      if (!holds(caller, key_id))
        throw forbidden("caller does not hold key " + key_id);
      if (responses.contains(key_id) || !seen.insert(key_id).second)
        throw conflict("duplicate response for key " + key_id);
    }
    for (std::size_t i = 0; i < shares.r_shares.size(); ++i)
      responses[shares.r_shares[i].contributor] = {
        {"responder_id", caller},
        {"r_share", wire::element(shares.r_shares[i].value)},
        {"s_share", wire::element(shares.s_shares[i].value)}};
    storage_->put(requests, request_id, rec);
    return rec;
  }

  json Service::deny(const std::string& caller, const std::string& request_id, const json& body)
  {
    std::lock_guard guard(request_locks_[request_id]);
    auto rec = request_record(request_id);
    if (rec.at("status") != "open")
      throw conflict("share request is closed");
    std::vector<std::string> keys;
    if (body.is_object() && body.contains("key_ids"))
      keys = parse([&] { return body["key_ids"].get<std::vector<std::string>>(); });
    else
      for (const auto& k : rec.at("proxy_key_ids"))
        if (holds(caller, k.get<std::string>()))
          keys.push_back(k.get<std::string>());
    if (keys.empty())
      throw forbidden("caller holds no key of this request");
    const auto listed = rec.at("proxy_key_ids").get<std::set<std::string>>();
    for (const auto& k : keys)
      if (!listed.contains(k) || !holds(caller, k))
        throw forbidden("caller does not hold key " + k);
    for (const auto& k : keys)
      rec["denials"][k] = caller;
    storage_->put(requests, request_id, rec);
    return rec;
  }

  json Service::close_request(const std::string& caller, const std::string& request_id)
  {
    std::lock_guard guard(request_locks_[request_id]);
    auto rec = request_record(request_id);
    if (rec.at("requester_id") != caller)
      throw forbidden("only the requester may close a share request");
    rec["status"] = "closed";
    storage_->put(requests, request_id, rec);
    return rec;
  }

  json Service::inbox(const std::string& caller) const
  {
    json out = json::array();
    for (auto& [id, rec] : storage_->scan(requests))
    {
      if (rec.at("status") != "open")
        continue;
      json pending = json::array();
      for (const auto& k : rec.at("proxy_key_ids"))
      {
        const auto key_id = k.get<std::string>();
        if (holds(caller, key_id) && !rec["responses"].contains(key_id) && !rec["denials"].contains(key_id))
          pending.push_back(key_id);
      }
      if (pending.empty())
        continue;
      rec["pending_key_ids"] = pending;
      out.push_back(std::move(rec));
    }
    return out;
  }

  json Service::my_requests(const std::string& caller) const
  {
    json out = json::array();
    for (auto& [id, rec] : storage_->scan(requests))
      if (rec.at("requester_id") == caller)
        out.push_back(std::move(rec));
    return out;
  }

  Circle Service::load_circle(const std::string& circle_id) const
  {
    auto rec = storage_->get(circles, circle_id);
    if (!rec)
      throw not_found("unknown circle " + circle_id);
    return wire::decode_circle(params_, *rec);
  }

  void Service::save_circle(const Circle& c)
  {
    storage_->put(circles, c.circle_id, wire::encode(c));
  }

  json Service::create_circle(const std::string& caller, const json& body)
  {
    auto id = optional_text(body, "circle_id");
    if (!id)
      id = with_rng([](Rng& r) { return r.random_id(); });
    if (!valid_id(*id))
      throw bad_request("circle id must be 1 to 128 characters of [A-Za-z0-9._-]");
    Circle c;
    c.circle_id = *id;
    c.owner_id = caller;
    c.member_ids = {caller};
    auto [stored, inserted] = storage_->insert_or_get(circles, *id, [&] { return wire::encode(c); });
    if (!inserted)
      throw conflict("circle id already in use");
    return stored;
  }

  json Service::list_circles() const
  {
    json out = json::array();
    for (auto& [id, rec] : storage_->scan(circles))
      out.push_back(std::move(rec));
    return out;
  }

  json Service::circle(const std::string& circle_id) const
  {
    return wire::encode(load_circle(circle_id));
  }

  json Service::join_circle(const std::string& caller, const std::string& circle_id)
  {
    std::lock_guard guard(circle_locks_[circle_id]);
    auto c = load_circle(circle_id);
    c.member_ids.insert(caller);
    save_circle(c);
    return wire::encode(c);
  }

  json Service::rotate_circle(const std::string& caller, const std::string& circle_id, const json& body)
  {
    std::lock_guard guard(circle_locks_[circle_id]);
    auto c = load_circle(circle_id);
    if (c.owner_id != caller)
      throw forbidden("only the circle owner may rotate the key");

    const auto epoch = parse([&] { return body.at("epoch").get<std::uint64_t>(); });
    if (epoch != c.key_epoch + 1)
      throw conflict("rotation must advance the epoch by one");
    const auto key_item = parse([&] { return wire::decode_item(body.at("key_item")); });
    if (
      key_item.kind != ContentKind::CircleKey || key_item.circle_id != circle_id || key_item.epoch != epoch ||
      key_item.owner_id != caller)
      throw bad_request("key item does not match the circle rotation");
    const auto members = parse([&] { return body.at("quorum_members").get<std::vector<std::string>>(); });
    if (std::set<std::string>(members.begin(), members.end()) != c.member_ids || members.size() != c.member_ids.size())
      throw conflict("rotation must cover exactly the current members");
    const auto assignment = parse([&] { return wire::decode_assignment(body.at("quorum")); });
    if (assignment.n_members != members.size())
      throw bad_request("quorum size does not match the member list");

    std::vector<ProxyKeyPublic> keys;
    for (const auto& k : parse([&] { return body.at("proxy_keys"); }))
      keys.push_back(parse([&] { return wire::decode_proxy_public(params_, k); }));
    if (keys.size() != assignment.k_keys)
      throw bad_request("proxy key count does not match the quorum");
    std::vector<std::string> key_ids;
    for (const auto& k : keys)
      key_ids.push_back(k.key_id);
    if (key_item.proxy_key_ids != key_ids)
      throw bad_request("key item must be sealed under the rotation's proxy keys");

    std::vector<WrappedProxyKey> wrapped;
    std::set<std::pair<std::string, std::string>> expected;
    for (std::size_t m = 0; m < members.size(); ++m)
      for (auto key_index : assignment.keys_of(m))
        expected.insert({key_ids[key_index], members[m]});
    for (const auto& w : parse([&] { return body.at("wrapped"); }))
    {
      auto wk = parse([&] { return wire::decode_wrapped(w); });
      if (!expected.erase({wk.key_id, wk.holder_id}))
        throw bad_request("wrapped key does not follow the quorum assignment");
      wrapped.push_back(std::move(wk));
    }
    if (!expected.empty())
      throw bad_request("every assigned key must be wrapped for its member");

    for (const auto& k : keys)
      register_proxy_key(caller, wire::encode(k));
    for (const auto& wk : wrapped)
      storage_->put(wrapped_keys, wrapped_key(wk.key_id, wk.holder_id), wire::encode(wk));
    store_item(key_item);

    c.key_epoch = epoch;
    c.quorum_members = members;
    c.quorum = assignment;
    c.proxy_keys = keys;
    c.key_items[epoch] = key_item.content_id;
    save_circle(c);
    return wire::encode(c);
  }

  json Service::circle_post(const std::string& caller, const std::string& circle_id, const json& body)
  {
    const auto c = load_circle(circle_id);
    if (!c.member_ids.contains(caller))
      throw forbidden("only circle members may post");
    const auto item = parse([&] { return wire::decode_item(body.contains("item") ? body["item"] : body); });
    if (item.visibility != Visibility::Circle || item.kind != ContentKind::Post || item.circle_id != circle_id)
      throw bad_request("item is not a post for this circle");
    if (item.owner_id != caller)
      throw forbidden("owner_id must be the caller");
    if (item.epoch < 1 || item.epoch > c.key_epoch)
      throw bad_request("post epoch has no circle key");
    store_item(item);
    return {{"content_id", item.content_id}};
  }

  json Service::circle_posts(const std::string& caller, const std::string& circle_id) const
  {
    const auto c = load_circle(circle_id);
    if (!c.member_ids.contains(caller))
      throw forbidden("circle content is visible to members only");
    json out = json::array();
    for (const auto& [id, rec] : storage_->scan(contents))
    {
      auto item = wire::decode_item(rec);
      if (item.circle_id == circle_id && item.kind == ContentKind::Post)
      {
        auto j = wire::encode(item);
        j["created_at"] = rec.value("created_at", std::int64_t{0});
        out.push_back(std::move(j));
      }
    }
    return out;
  }

  json Service::idempotent(const std::string& scope, const std::string& key, const std::function<json()>& fn)
  {
    const auto slot = scope + "|" + key;
    std::lock_guard guard(idem_locks_[slot]);
    if (auto prior = storage_->get(idempotency, slot))
      return prior->at("body");
    json body = fn();
    storage_->put(idempotency, slot, {{"body", body}, {"at", now_ms()}});
    return body;
  }
}
