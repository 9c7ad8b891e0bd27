// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "qnet/server/service.hpp"

#include <memory>
#include <string>

namespace httplib
{
  class Server;
}

namespace qnet::server
{
  /// JSON-over-HTTP front end for Service, rooted at /v1/. Requests carry
  /// "Authorization: Bearer <token>"; mutations may carry an
  /// "Idempotency-Key" header so retries return the original response.
  class HttpServer
  {
  public:
    explicit HttpServer(Service& service);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds and returns the port; port 0 picks a free one.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    bool listen();
    void stop();
    void wait_until_ready() const;

  private:
    Service& service_;
    std::unique_ptr<httplib::Server> server_;
  };
}
