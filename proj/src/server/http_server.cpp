// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/server/http_server.hpp"

#include "qnet/errors.hpp"

#include "httplib.h"

namespace qnet::server
{
  namespace
  {
    using Request = httplib::Request;
    using Response = httplib::Response;

    void send(Response& res, int status, const json& body)
    {
      res.status = status;
      res.set_content(body.dump(), "application/json");
    }

    void send_error(Response& res, int status, const std::string& code, const std::string& message)
    {
      send(res, status, {{"code", code}, {"message", message}});
    }

    std::optional<std::string> bearer(const Request& req)
    {
      const auto header = req.get_header_value("Authorization");
      const std::string prefix = "Bearer ";
      if (header.rfind(prefix, 0) != 0)
        return std::nullopt;
      return header.substr(prefix.size());
    }

    json body_of(const Request& req)
    {
      if (req.body.empty())
        return json::object();
      try
      {
        return json::parse(req.body);
      }
      catch (const json::parse_error& e)
      {
        throw bad_request(std::string("malformed JSON: ") + e.what());
      }
    }
  }

  HttpServer::HttpServer(Service& service) : service_(service), server_(std::make_unique<httplib::Server>())
  {
    auto& s = *server_;
    Service& svc = service_;

    // Wraps a handler with error mapping, optional auth and idempotency.
    enum class Auth
    {
      none,
      optional,
      required
    };
    auto route = [&svc](Auth auth, int status, auto fn) {
      return [&svc, auth, status, fn](const Request& req, Response& res) {
        try
        {
          std::optional<std::string> caller;
          if (auth != Auth::none)
          {
            auto token = bearer(req);
            if (token)
              caller = svc.authenticate(*token);
            else if (auth == Auth::required)
              throw unauthorized("missing bearer token");
          }
          const auto idem = req.get_header_value("Idempotency-Key");
          if (req.method != "GET" && !idem.empty())
          {
            const auto scope = caller.value_or("anonymous") + "|" + req.method + " " + req.path;
            send(res, status, svc.idempotent(scope, idem, [&] { return fn(req, caller); }));
          }
          else
            send(res, status, fn(req, caller));
        }
        catch (const ApiError& e)
        {
          send_error(res, e.status(), e.code(), e.what());
        }
        catch (const PermissionError& e)
        {
          send_error(res, 403, "forbidden", e.what());
        }
        catch (const std::invalid_argument& e)
        {
          send_error(res, 400, "bad_request", e.what());
        }
        catch (const std::out_of_range& e)
        {
          send_error(res, 400, "bad_request", e.what());
        }
        catch (const json::exception& e)
        {
          send_error(res, 400, "bad_request", e.what());
        }
        catch (const std::exception& e)
        {
          send_error(res, 500, "internal", e.what());
        }
      };
    };
    using Caller = std::optional<std::string>;
    auto param = [](const Request& req, int i) { return req.matches[i].str(); };

    s.Get("/v1/health", route(Auth::none, 200, [](const Request&, const Caller&) {
      return json{{"status", "ok"}};
    }));
    s.Get("/v1/group", route(Auth::none, 200, [&svc](const Request&, const Caller&) { return svc.group_info(); }));

    s.Post("/v1/users", route(Auth::none, 201, [&svc](const Request& req, const Caller&) {
      return svc.register_user(body_of(req));
    }));
    s.Get("/v1/users", route(Auth::none, 200, [&svc](const Request&, const Caller&) { return svc.directory(); }));
    s.Get(R"(/v1/users/([^/]+))", route(Auth::none, 200, [&svc, param](const Request& req, const Caller&) {
      return svc.user(param(req, 1));
    }));
    s.Get("/v1/me", route(Auth::required, 200, [&svc](const Request&, const Caller& c) { return svc.user(*c); }));

    s.Post("/v1/content", route(Auth::required, 201, [&svc](const Request& req, const Caller& c) {
      return svc.publish(*c, body_of(req));
    }));
    s.Get("/v1/content", route(Auth::none, 200, [&svc](const Request& req, const Caller&) {
      std::optional<std::string> owner;
      if (req.has_param("owner"))
        owner = req.get_param_value("owner");
      return svc.list_content(owner);
    }));
    s.Get(R"(/v1/content/([^/]+))", route(Auth::optional, 200, [&svc, param](const Request& req, const Caller& c) {
      return svc.content(c, param(req, 1));
    }));
    s.Get(R"(/v1/content/([^/]+)/blinded)", route(Auth::required, 200, [&svc, param](const Request& req, const Caller& c) {
      return svc.fetch_blinded(*c, param(req, 1));
    }));
    s.Post(R"(/v1/content/([^/]+)/revoke)", route(Auth::required, 200, [&svc, param](const Request& req, const Caller& c) {
      return svc.revoke(*c, param(req, 1), body_of(req));
    }));

    s.Post("/v1/proxy-keys", route(Auth::required, 201, [&svc](const Request& req, const Caller& c) {
      return svc.register_proxy_key(*c, body_of(req));
    }));
    s.Get(R"(/v1/proxy-keys/([^/]+))", route(Auth::none, 200, [&svc, param](const Request& req, const Caller&) {
      return svc.proxy_key(param(req, 1));
    }));
    s.Post("/v1/wrapped-keys", route(Auth::required, 201, [&svc](const Request& req, const Caller& c) {
      return svc.put_wrapped(*c, body_of(req));
    }));
    s.Get("/v1/wrapped-keys", route(Auth::required, 200, [&svc](const Request&, const Caller& c) {
      return svc.wrapped_for(*c);
    }));

    s.Post("/v1/share-requests", route(Auth::required, 201, [&svc](const Request& req, const Caller& c) {
      return svc.create_share_request(*c, body_of(req));
    }));
    s.Get("/v1/share-requests", route(Auth::required, 200, [&svc](const Request&, const Caller& c) {
      return svc.my_requests(*c);
    }));
    s.Get(R"(/v1/share-requests/([^/]+))", route(Auth::required, 200, [&svc, param](const Request& req, const Caller& c) {
      return svc.share_request(*c, param(req, 1));
    }));
    s.Post(R"(/v1/share-requests/([^/]+)/responses)", route(Auth::required, 200, [&svc, param](const Request& req, const Caller& c) {
      return svc.respond(*c, param(req, 1), body_of(req));
    }));
    s.Post(R"(/v1/share-requests/([^/]+)/deny)", route(Auth::required, 200, [&svc, param](const Request& req, const Caller& c) {
      return svc.deny(*c, param(req, 1), body_of(req));
    }));
    s.Post(R"(/v1/share-requests/([^/]+)/close)", route(Auth::required, 200, [&svc, param](const Request& req, const Caller& c) {
      return svc.close_request(*c, param(req, 1));
    }));
    s.Get("/v1/inbox", route(Auth::required, 200, [&svc](const Request&, const Caller& c) { return svc.inbox(*c); }));

    s.Post("/v1/circles", route(Auth::required, 201, [&svc](const Request& req, const Caller& c) {
      return svc.create_circle(*c, body_of(req));
    }));
    s.Get("/v1/circles", route(Auth::none, 200, [&svc](const Request&, const Caller&) { return svc.list_circles(); }));
    s.Get(R"(/v1/circles/([^/]+))", route(Auth::none, 200, [&svc, param](const Request& req, const Caller&) {
      return svc.circle(param(req, 1));
    }));
    s.Post(R"(/v1/circles/([^/]+)/join)", route(Auth::required, 200, [&svc, param](const Request& req, const Caller& c) {
      return svc.join_circle(*c, param(req, 1));
    }));
    s.Post(R"(/v1/circles/([^/]+)/rotate)", route(Auth::required, 200, [&svc, param](const Request& req, const Caller& c) {
      return svc.rotate_circle(*c, param(req, 1), body_of(req));
    }));
    s.Post(R"(/v1/circles/([^/]+)/posts)", route(Auth::required, 201, [&svc, param](const Request& req, const Caller& c) {
      return svc.circle_post(*c, param(req, 1), body_of(req));
    }));
    s.Get(R"(/v1/circles/([^/]+)/posts)", route(Auth::required, 200, [&svc, param](const Request& req, const Caller& c) {
      return svc.circle_posts(*c, param(req, 1));
    }));

    s.set_error_handler([](const Request&, Response& res) {
      if (res.body.empty())
        send_error(res, res.status, res.status == 404 ? "not_found" : "error", "no such endpoint");
    });
  }

  HttpServer::~HttpServer()
  {
    stop();
  }

  int HttpServer::bind(const std::string& host, int port)
  {
    if (port == 0)
      return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
  }

  bool HttpServer::listen()
  {
    return server_->listen_after_bind();
  }

  void HttpServer::stop()
  {
    if (server_->is_running())
      server_->stop();
  }

  void HttpServer::wait_until_ready() const
  {
    server_->wait_until_ready();
  }
}
