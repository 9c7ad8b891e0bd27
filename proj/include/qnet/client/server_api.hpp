// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "json.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace httplib
{
  class Client;
}

namespace qnet::client
{
  using json = nlohmann::json;

  /// A {code, message} error returned by the server, or a transport failure
  /// (status 0, code "transport").
  class ApiClientError : public std::runtime_error
  {
  public:
    ApiClientError(int status, std::string code, const std::string& message) :
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

  /// Thin JSON client for the /v1 API.
  class ServerApi
  {
  public:
    /// Sees every outgoing request: method, path and body.
    using Observer = std::function<void(const std::string&, const std::string&, const std::string&)>;

    explicit ServerApi(const std::string& base_url);
    ~ServerApi();

    ServerApi(const ServerApi&) = delete;
    ServerApi& operator=(const ServerApi&) = delete;

    void set_token(std::string token)
    {
      token_ = std::move(token);
    }

    void set_observer(Observer observer)
    {
      observer_ = std::move(observer);
    }

    json get(const std::string& path);
    /// Mutations carry a fresh Idempotency-Key; transport failures are
    /// retried with the same key.
    json post(const std::string& path, const json& body = json::object());

  private:
    json finish(int status, const std::string& body);

    std::unique_ptr<httplib::Client> http_;
    std::string token_;
    Observer observer_;
  };
}
