// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/client/client.hpp"

#include "qnet/errors.hpp"
#include "qnet/wire.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace qnet::client
{
  namespace
  {
    std::string join(const std::set<std::string>& items)
    {
      std::string out;
      for (const auto& i : items)
        out += (out.empty() ? "" : ", ") + i;
      return out;
    }

    std::string describe(const std::set<std::string>& missing, const std::set<std::string>& denied)
    {
      std::string msg = "missing shares from: " + join(missing);
      if (!denied.empty())
        msg += " (denied: " + join(denied) + ")";
      return msg;
    }
  }

  MissingSharesError::MissingSharesError(std::set<std::string> missing, std::set<std::string> denied) :
    std::runtime_error(describe(missing, denied)),
    missing_(std::move(missing)),
    denied_(std::move(denied))
  {}

  std::vector<std::string> split_list(const std::string& text)
  {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
      if (!item.empty())
        out.push_back(item);
    return out;
  }

  Client::Client(Wallet& wallet, ServerApi& api, Rng& rng) : wallet_(wallet), api_(api), rng_(rng)
  {
    if (!wallet_.token.empty())
      api_.set_token(wallet_.token);
  }

  json Client::register_user(const std::string& display_name)
  {
    if (!wallet_.user_id.empty())
      throw std::logic_error("wallet is already registered as " + wallet_.user_id);
    auto kp = keygen(params(), rng_);
    auto res = api_.post(
      "/v1/users", {{"display_name", display_name}, {"public_key", to_hex(kp.public_key.value())}});
    wallet_.keys = kp;
    wallet_.display_name = display_name;
    wallet_.user_id = res.at("user_id").get<std::string>();
    wallet_.token = res.at("token").get<std::string>();
    api_.set_token(wallet_.token);
    return {{"user_id", wallet_.user_id}, {"public_key", to_hex(kp.public_key.value())}};
  }

  GroupElement Client::user_public(const std::string& user_id)
  {
    return wire::element(params(), api_.get("/v1/users/" + user_id).at("public_key"));
  }

  std::size_t Client::sync_keys()
  {
    std::size_t added = 0;
    for (const auto& w : api_.get("/v1/wrapped-keys"))
    {
      auto wrapped = wire::decode_wrapped(w);
      if (wallet_.proxy_keys.contains(wrapped.key_id))
        continue;
      wallet_.proxy_keys.emplace(wrapped.key_id, unwrap_key(params(), wrapped, wallet_.keypair().private_key));
      ++added;
    }
    return added;
  }

  std::vector<ProxyKeyPublic> Client::compose_proxies(const Audience& audience)
  {
    std::vector<ProxyKeyPublic> out;
    std::set<std::string> ids;
    auto add = [&](ProxyKeyPublic k) {
      if (ids.insert(k.key_id).second)
        out.push_back(std::move(k));
    };

    if (audience.fresh_keys > 0)
    {
      std::vector<std::string> holders;
      for (const auto& h : audience.holders)
        if (h != wallet_.user_id && std::find(holders.begin(), holders.end(), h) == holders.end())
          holders.push_back(h);
      std::vector<GroupElement> holder_publics;
      for (const auto& h : holders)
        holder_publics.push_back(user_public(h));

      std::vector<ProxyKey> keys;
      for (std::size_t i = 0; i < audience.fresh_keys; ++i)
      {
        keys.push_back(gen_proxy_key(params(), rng_));
        api_.post("/v1/proxy-keys", wire::encode(public_part(keys.back())));
      }

      // Holder index -> key indices.
      std::vector<std::vector<std::size_t>> assigned(holders.size());
      const auto kpm = audience.keys_per_holder.value_or(keys.size());
      if (!holders.empty() && kpm < keys.size())
      {
        std::mt19937_64 mt(rng_.next_u64());
        auto a = quorum::assign(holders.size(), keys.size(), std::max<std::size_t>(kpm, 1), mt);
        for (std::size_t m = 0; m < holders.size(); ++m)
          assigned[m] = a.keys_of(m);
      }
      else
        for (auto& a : assigned)
          for (std::size_t i = 0; i < keys.size(); ++i)
            a.push_back(i);

      json wrapped = json::array();
      for (const auto& k : keys)
        wrapped.push_back(wire::encode(wrap(params(), k, wallet_.user_id, wallet_.keypair().public_key, rng_)));
      for (std::size_t m = 0; m < holders.size(); ++m)
        for (auto i : assigned[m])
          wrapped.push_back(wire::encode(wrap(params(), keys[i], holders[m], holder_publics[m], rng_)));
      api_.post("/v1/wrapped-keys", {{"wrapped", wrapped}});

      for (auto& k : keys)
      {
        add(public_part(k));
        wallet_.proxy_keys.emplace(k.key_id, std::move(k));
      }
    }
    for (const auto& id : audience.reuse_key_ids)
    {
      auto rec = api_.get("/v1/proxy-keys/" + id);
      add(ProxyKeyPublic{id, wire::element(params(), rec.at("public_key"))});
    }
    for (const auto& uid : audience.alias_users)
      add(ProxyKeyPublic{alias_key_id(uid), user_public(uid)});
    if (out.empty())
      add(ProxyKeyPublic{alias_key_id(wallet_.user_id), wallet_.keypair().public_key});
    return out;
  }

  ContentItem Client::post(Visibility visibility, const Bytes& payload, const Audience& audience)
  {
    ContentItem item;
    switch (visibility)
    {
      case Visibility::Public:
        item = make_public(wallet_.user_id, payload, rng_);
        break;
      case Visibility::Private:
      {
        const auto proxies = compose_proxies(audience);
        const bool short_ok = !payload.empty() && payload.size() <= short_cutover && payload.front() != 0;
        item = short_ok ? seal_short(params(), wallet_.user_id, payload, proxies, rng_)
                        : seal_large(params(), wallet_.user_id, payload, proxies, rng_);
        break;
      }
      case Visibility::Circle:
        throw std::invalid_argument("circle posts go through circle_post");
    }
    api_.post("/v1/content", {{"item", wire::encode(item)}});
    return item;
  }

  json Client::fetch_blinded(const std::string& content_id)
  {
    return api_.get("/v1/content/" + content_id + "/blinded");
  }

  UnblindShares Client::local_shares(const BlindedResponse& resp, const std::vector<std::string>& key_ids) const
  {
    UnblindShares out;
    for (const auto& id : key_ids)
      if (auto k = wallet_.find_key(id))
        add_unblind_shares(params(), resp, k->private_key, id, out);
    return out;
  }

  Bytes Client::open(const json& view, const BlindedResponse& resp, const UnblindShares& shares) const
  {
    const auto ids = view.at("proxy_key_ids").get<std::set<std::string>>();
    const auto recovered = unblind(params(), resp, shares, ids);
    if (view.value("large", false))
    {
      ContentItem item;
      item.content_id = view.at("content_id").get<std::string>();
      item.payload = from_base64(view.at("payload").get<std::string>());
      return open_large(params(), item, recovered);
    }
    auto bytes = open_short(params(), recovered);
    // A wrong unblinding lands on a random element, whose byte string is
    // almost surely longer than anything posted on the short path.
    if (bytes.size() > short_cutover)
      throw DecryptionError("short content did not decrypt; the shares do not match this response");
    return bytes;
  }

  Client::Collected Client::collect(const std::string& content_id, json fetched, const ReadOptions& options)
  {
    Collected c{fetched.at("content"), wire::decode_blinded(params(), fetched.at("blinded")), {}, {}};
    const auto key_ids = c.view.at("proxy_key_ids").get<std::vector<std::string>>();
    for (const auto& id : key_ids)
      if (!wallet_.find_key(id))
        c.remote.insert(id);

    if (!c.remote.empty())
    {
      json request;
      if (auto it = wallet_.pending_requests.find(content_id); it != wallet_.pending_requests.end())
      {
        try
        {
          request = api_.get("/v1/share-requests/" + it->second);
          if (request.at("status") != "open" || request.at("blinded") != fetched.at("blinded"))
          {
            if (request.at("status") == "open")
              api_.post("/v1/share-requests/" + it->second + "/close");
            request = nullptr;
          }
        }
        catch (const ApiClientError& e)
        {
          if (e.status() != 404)
            throw;
          request = nullptr;
        }
      }
      if (request.is_null())
        request = api_.post("/v1/share-requests", {{"content_id", content_id}});
      const auto request_id = request.at("request_id").get<std::string>();
      wallet_.pending_requests[content_id] = request_id;
      c.resp = wire::decode_blinded(params(), request.at("blinded"));

      const auto deadline = std::chrono::steady_clock::now() + options.timeout;
      auto delay = options.first_poll;
      for (;;)
      {
        std::set<std::string> missing, denied;
        for (const auto& id : c.remote)
        {
          if (request["responses"].contains(id))
            continue;
          missing.insert(id);
          if (request["denials"].contains(id))
            denied.insert(id);
        }
        if (missing.empty())
          break;
        if (denied == missing || std::chrono::steady_clock::now() >= deadline)
          throw MissingSharesError(missing, denied);
        std::this_thread::sleep_for(std::min(delay, options.max_poll));
        delay *= 2;
        request = api_.get("/v1/share-requests/" + request_id);
      }

      c.shares = local_shares(c.resp, key_ids);
      for (const auto& id : c.remote)
      {
        const auto& r = request["responses"][id];
        c.shares.r_shares.push_back({id, wire::element(params(), r.at("r_share"))});
        c.shares.s_shares.push_back({id, wire::element(params(), r.at("s_share"))});
      }
      api_.post("/v1/share-requests/" + request_id + "/close");
      wallet_.pending_requests.erase(content_id);
    }
    else
      c.shares = local_shares(c.resp, key_ids);

    wallet_.cached_reads[content_id] = {
      {"blinded", wire::encode(c.resp)}, {"shares", wire::encode(c.shares)}};
    return c;
  }

  ReadResult Client::read(const std::string& content_id, const ReadOptions& options)
  {
    auto fetched = fetch_blinded(content_id);
    ReadResult out;
    if (!fetched.contains("blinded"))
    {
      out.was_public = true;
      out.plaintext = from_base64(fetched.at("content").at("payload").get<std::string>());
      return out;
    }
    auto c = collect(content_id, std::move(fetched), options);
    out.plaintext = open(c.view, c.resp, c.shares);
    out.remote_keys = c.remote;
    return out;
  }

  bool Client::revoke(const std::string& content_id, const std::string& viewer_id)
  {
    return api_.post("/v1/content/" + content_id + "/revoke", {{"viewer_id", viewer_id}})
      .at("revoked")
      .get<bool>();
  }

  json Client::inbox()
  {
    return api_.get("/v1/inbox");
  }

  json Client::approve(const json& request)
  {
    const auto resp = wire::decode_blinded(params(), request.at("blinded"));
    std::vector<std::string> ids;
    for (const auto& k : request.value("pending_key_ids", request.at("proxy_key_ids")))
    {
      const auto id = k.get<std::string>();
      if (wallet_.find_key(id) && !request["responses"].contains(id))
        ids.push_back(id);
    }
    if (ids.empty())
      throw std::invalid_argument("no held key is pending on this request");
    const auto shares = local_shares(resp, ids);
    return api_.post(
      "/v1/share-requests/" + request.at("request_id").get<std::string>() + "/responses",
      {{"shares", wire::encode(shares)}});
  }

  json Client::deny(const std::string& request_id)
  {
    return api_.post("/v1/share-requests/" + request_id + "/deny");
  }

  std::size_t Client::serve_once(const Approver& approver)
  {
    sync_keys();
    std::size_t handled = 0;
    for (const auto& request : inbox())
    {
      try
      {
        switch (approver(request))
        {
          case Approval::approve:
            approve(request);
            ++handled;
            break;
          case Approval::deny:
            deny(request.at("request_id").get<std::string>());
            ++handled;
            break;
          case Approval::skip:
            break;
        }
      }
      catch (const ApiClientError& e)
      {
        // Another holder answered one of the keys first, or the requester
        // closed the request. Whatever is still pending shows up next time.
        if (e.status() != 409)
          throw;
      }
    }
    return handled;
  }

  json Client::circle_create(const std::optional<std::string>& circle_id)
  {
    json body = json::object();
    if (circle_id)
      body["circle_id"] = *circle_id;
    return api_.post("/v1/circles", body);
  }

  json Client::circle_join(const std::string& circle_id)
  {
    return api_.post("/v1/circles/" + circle_id + "/join");
  }

  json Client::circle_rotate(const std::string& circle_id, CircleRotationOptions options)
  {
    auto circle = wire::decode_circle(params(), api_.get("/v1/circles/" + circle_id));
    std::map<std::string, GroupElement> publics;
    for (const auto& m : circle.member_ids)
      publics.emplace(m, user_public(m));
    auto rot = circle_rotate_key(circle, wallet_.user_id, params(), publics, rng_, options);

    json keys = json::array();
    for (const auto& k : rot.proxy_keys)
      keys.push_back(wire::encode(k));
    json wrapped = json::array();
    for (const auto& w : rot.wrapped)
      wrapped.push_back(wire::encode(w));
    auto res = api_.post(
      "/v1/circles/" + circle_id + "/rotate",
      {{"epoch", rot.epoch},
       {"key_item", wire::encode(rot.key_item)},
       {"proxy_keys", keys},
       {"wrapped", wrapped},
       {"quorum_members", rot.quorum_members},
       {"quorum", wire::encode(rot.quorum)}});
    wallet_.circle_keys[circle_id][rot.epoch] = rot.circle_key;
    return res;
  }

  SymmetricKey Client::circle_key(const std::string& circle_id, std::uint64_t epoch, const ReadOptions& options)
  {
    if (auto c = wallet_.circle_keys.find(circle_id); c != wallet_.circle_keys.end())
      if (auto k = c->second.find(epoch); k != c->second.end())
        return k->second;
    auto circle = wire::decode_circle(params(), api_.get("/v1/circles/" + circle_id));
    auto item = circle.key_items.find(epoch);
    if (item == circle.key_items.end())
      throw std::invalid_argument("circle " + circle_id + " has no key for epoch " + std::to_string(epoch));
    sync_keys();
    auto collected = collect(item->second, fetch_blinded(item->second), options);
    const auto ids = collected.view.at("proxy_key_ids").get<std::set<std::string>>();
    const auto key = decode_key(params(), unblind(params(), collected.resp, collected.shares, ids));
    wallet_.circle_keys[circle_id][epoch] = key;
    return key;
  }

  ContentItem Client::circle_post(const std::string& circle_id, const Bytes& payload)
  {
    const auto circle = api_.get("/v1/circles/" + circle_id);
    const auto epoch = circle.at("key_epoch").get<std::uint64_t>();
    if (epoch == 0)
      throw std::invalid_argument("circle " + circle_id + " has no key yet; the owner must rotate first");
    const auto key = circle_key(circle_id, epoch);
    auto item = seal_circle_post(circle_id, epoch, key, wallet_.user_id, payload, rng_);
    api_.post("/v1/circles/" + circle_id + "/posts", {{"item", wire::encode(item)}});
    return item;
  }

  json Client::circle_read(const std::string& circle_id, const ReadOptions& options)
  {
    json out = json::array();
    for (const auto& p : api_.get("/v1/circles/" + circle_id + "/posts"))
    {
      const auto item = wire::decode_item(p);
      json entry = {{"content_id", item.content_id}, {"owner_id", item.owner_id}, {"epoch", item.epoch}};
      try
      {
        const auto bytes = open_circle_post(item, circle_key(circle_id, item.epoch, options));
        entry["payload"] = to_base64(bytes);
        entry["text"] = std::string(bytes.begin(), bytes.end());
      }
      catch (const std::exception& e)
      {
        entry["error"] = e.what();
      }
      out.push_back(std::move(entry));
    }
    return out;
  }
}
