// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/client/gateway.hpp"

#include "qnet/errors.hpp"
#include "qnet/wire.hpp"

#include "httplib.h"

namespace qnet::client
{
  namespace
  {
    using Request = httplib::Request;
    using Response = httplib::Response;

    json body_of(const Request& req)
    {
      if (req.body.empty())
        return json::object();
      return json::parse(req.body);
    }

    Bytes payload_of(const json& body)
    {
      if (body.contains("payload"))
        return from_base64(body.at("payload").get<std::string>());
      const auto text = body.at("text").get<std::string>();
      return Bytes(text.begin(), text.end());
    }

    json bytes_json(const Bytes& bytes)
    {
      json j = {{"payload", to_base64(bytes)}};
      std::string text(bytes.begin(), bytes.end());
      try
      {
        (void)json(text).dump();
        j["text"] = text;
      }
      catch (const json::type_error&)
      {
      }
      return j;
    }

    Audience audience_of(const json& body)
    {
      Audience a;
      if (!body.contains("audience"))
        return a;
      const auto& j = body["audience"];
      a.holders = j.value("holders", std::vector<std::string>{});
      a.fresh_keys = j.value("fresh_keys", std::size_t{1});
      if (j.contains("keys_per_holder"))
        a.keys_per_holder = j["keys_per_holder"].get<std::size_t>();
      a.reuse_key_ids = j.value("reuse_key_ids", std::vector<std::string>{});
      a.alias_users = j.value("alias_users", std::vector<std::string>{});
      return a;
    }

    void send(Response& res, int status, const json& body)
    {
      res.status = status;
      res.set_content(body.dump(), "application/json");
    }
  }

  Gateway::Gateway(Client& client, std::function<void()> persist, GatewayOptions options) :
    client_(client),
    persist_(std::move(persist)),
    options_(std::move(options)),
    server_(std::make_unique<httplib::Server>())
  {
    auto& s = *server_;
    auto route = [this](bool mutates, auto fn) {
      return [this, mutates, fn](const Request& req, Response& res) {
        std::lock_guard guard(lock_);
        try
        {
          send(res, 200, fn(req));
          if (mutates && persist_)
            persist_();
        }
        catch (const ApiClientError& e)
        {
          send(res, e.status() == 0 ? 502 : e.status(), {{"code", e.code()}, {"message", e.what()}});
        }
        catch (const PermissionError& e)
        {
          send(res, 403, {{"code", "forbidden"}, {"message", e.what()}});
        }
        catch (const std::invalid_argument& e)
        {
          send(res, 400, {{"code", "bad_request"}, {"message", e.what()}});
        }
        catch (const json::exception& e)
        {
          send(res, 400, {{"code", "bad_request"}, {"message", e.what()}});
        }
        catch (const std::exception& e)
        {
          send(res, 500, {{"code", "internal"}, {"message", e.what()}});
        }
      };
    };
    auto param = [](const Request& req, int i) { return req.matches[i].str(); };
    Client& c = client_;

    s.Get("/v1/me", route(false, [&c](const Request&) {
      auto& w = c.wallet();
      json held = json::array();
      for (const auto& [id, k] : w.proxy_keys)
        held.push_back(id);
      return json{
        {"user_id", w.user_id},
        {"display_name", w.display_name},
        {"public_key", w.keys ? to_hex(w.keys->public_key.value()) : ""},
        {"group_label", w.group_label},
        {"held_key_ids", held}};
    }));
    s.Get("/v1/directory", route(false, [&c](const Request&) { return c.api().get("/v1/users"); }));
    s.Get("/v1/feed", route(false, [&c](const Request&) {
      json feed = c.api().get("/v1/content");
      for (auto& entry : feed)
        if (!entry.value("protected", false))
        {
          auto view = bytes_json(from_base64(entry.at("payload").get<std::string>()));
          entry.update(view);
          entry["status"] = "public";
        }
        else
          entry["status"] = "locked";
      return feed;
    }));
    s.Post("/v1/posts", route(true, [&c](const Request& req) {
      const auto body = body_of(req);
      const auto vis = visibility_from_string(body.value("visibility", "public"));
      auto item = c.post(vis, payload_of(body), audience_of(body));
      return wire::encode(item);
    }));
    s.Post(R"(/v1/read/([^/]+))", route(true, [this, &c, param](const Request& req) {
      const auto id = param(req, 1);
      try
      {
        auto result = c.read(id, options_.read_options);
        auto out = bytes_json(result.plaintext);
        out["status"] = result.was_public ? "public" : "plaintext";
        out["content_id"] = id;
        return out;
      }
      catch (const MissingSharesError& e)
      {
        return json{
          {"status", "locked"}, {"content_id", id}, {"missing", e.missing()}, {"denied", e.denied()}};
      }
      catch (const DecryptionError& e)
      {
        return json{{"status", "locked"}, {"content_id", id}, {"message", e.what()}};
      }
    }));
    s.Post("/v1/sync", route(true, [&c](const Request&) { return json{{"added", c.sync_keys()}}; }));
    s.Get("/v1/inbox", route(true, [&c](const Request&) {
      c.sync_keys();
      return c.inbox();
    }));
    s.Post(R"(/v1/inbox/([^/]+)/approve)", route(true, [&c, param](const Request& req) {
      const auto id = param(req, 1);
      c.sync_keys();
      for (const auto& r : c.inbox())
        if (r.at("request_id") == id)
          return c.approve(r);
      throw std::invalid_argument("no pending request " + id);
    }));
    s.Post(R"(/v1/inbox/([^/]+)/deny)", route(true, [&c, param](const Request& req) {
      return c.deny(param(req, 1));
    }));
    s.Post("/v1/revoke", route(true, [&c](const Request& req) {
      const auto body = body_of(req);
      return json{
        {"revoked",
         c.revoke(body.at("content_id").get<std::string>(), body.at("viewer_id").get<std::string>())}};
    }));
    s.Get("/v1/circles", route(false, [&c](const Request&) { return c.api().get("/v1/circles"); }));
    s.Post("/v1/circles", route(true, [&c](const Request& req) {
      const auto body = body_of(req);
      std::optional<std::string> id;
      if (body.contains("circle_id"))
        id = body["circle_id"].get<std::string>();
      return c.circle_create(id);
    }));
    s.Post(R"(/v1/circles/([^/]+)/join)", route(true, [&c, param](const Request& req) {
      return c.circle_join(param(req, 1));
    }));
    s.Post(R"(/v1/circles/([^/]+)/rotate)", route(true, [&c, param](const Request& req) {
      const auto body = body_of(req);
      CircleRotationOptions opts;
      opts.keys = body.value("keys", opts.keys);
      opts.keys_per_member = body.value("keys_per_member", opts.keys_per_member);
      return c.circle_rotate(param(req, 1), opts);
    }));
    s.Post(R"(/v1/circles/([^/]+)/posts)", route(true, [&c, param](const Request& req) {
      return wire::encode(c.circle_post(param(req, 1), payload_of(body_of(req))));
    }));
    s.Get(R"(/v1/circles/([^/]+)/posts)", route(true, [this, &c, param](const Request& req) {
      return c.circle_read(param(req, 1), options_.read_options);
    }));

    if (options_.static_dir)
      s.set_mount_point("/", options_.static_dir->string());
  }

  Gateway::~Gateway()
  {
    stop();
  }

  int Gateway::bind(const std::string& host, int port)
  {
    if (port == 0)
      return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
  }

  bool Gateway::listen()
  {
    return server_->listen_after_bind();
  }

  void Gateway::stop()
  {
    if (server_->is_running())
      server_->stop();
  }

  void Gateway::wait_until_ready() const
  {
    server_->wait_until_ready();
  }
}
