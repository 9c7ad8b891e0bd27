// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/client/server_api.hpp"

#include "httplib.h"

#include <chrono>
#include <sodium.h>
#include <thread>

namespace qnet::client
{
  namespace
  {
    constexpr int attempts = 3;

    std::string request_id()
    {
      unsigned char raw[16];
      randombytes_buf(raw, sizeof raw);
      char hex[33];
      sodium_bin2hex(hex, sizeof hex, raw, sizeof raw);
      return hex;
    }
  }

  ServerApi::ServerApi(const std::string& base_url) : http_(std::make_unique<httplib::Client>(base_url))
  {
    if (!http_->is_valid())
      throw std::invalid_argument("unsupported server URL: " + base_url);
    http_->set_connection_timeout(5);
    http_->set_read_timeout(30);
    http_->set_keep_alive(true);
  }

  ServerApi::~ServerApi() = default;

  json ServerApi::finish(int status, const std::string& body)
  {
    json parsed;
    try
    {
      parsed = body.empty() ? json::object() : json::parse(body);
    }
    catch (const json::parse_error&)
    {
      throw ApiClientError(status, "bad_response", "server sent invalid JSON");
    }
    if (status >= 200 && status < 300)
      return parsed;
    throw ApiClientError(
      status,
      parsed.is_object() ? parsed.value("code", "error") : "error",
      parsed.is_object() ? parsed.value("message", "request failed") : "request failed");
  }

  json ServerApi::get(const std::string& path)
  {
    if (observer_)
      observer_("GET", path, "");
    httplib::Headers headers;
    if (!token_.empty())
      headers.emplace("Authorization", "Bearer " + token_);
    for (int i = 0;; ++i)
    {
      auto res = http_->Get(path, headers);
      if (res)
        return finish(res->status, res->body);
      if (i + 1 == attempts)
        throw ApiClientError(0, "transport", "GET " + path + ": " + httplib::to_string(res.error()));
      std::this_thread::sleep_for(std::chrono::milliseconds(100 << i));
    }
  }

  json ServerApi::post(const std::string& path, const json& body)
  {
    const auto payload = body.dump();
    if (observer_)
      observer_("POST", path, payload);
    httplib::Headers headers{{"Idempotency-Key", request_id()}};
    if (!token_.empty())
      headers.emplace("Authorization", "Bearer " + token_);
    for (int i = 0;; ++i)
    {
      auto res = http_->Post(path, headers, payload, "application/json");
      if (res)
        return finish(res->status, res->body);
      if (i + 1 == attempts)
        throw ApiClientError(0, "transport", "POST " + path + ": " + httplib::to_string(res.error()));
      std::this_thread::sleep_for(std::chrono::milliseconds(100 << i));
    }
  }
}
