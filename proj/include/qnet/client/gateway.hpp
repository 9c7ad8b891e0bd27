// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "qnet/client/client.hpp"

#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>

namespace httplib
{
  class Server;
}

namespace qnet::client
{
  struct GatewayOptions
  {
    /// Served at / when set; the web UI build output.
    std::optional<std::filesystem::path> static_dir;
    /// Reads through the gateway give up quickly and report "locked".
    ReadOptions read_options{std::chrono::milliseconds(1500)};
  };

  /// Local JSON API over one wallet, for the web UI. All wallet access is
  /// serialized; persist runs after every mutation.
  class Gateway
  {
  public:
    Gateway(Client& client, std::function<void()> persist, GatewayOptions options = {});
    ~Gateway();

    Gateway(const Gateway&) = delete;
    Gateway& operator=(const Gateway&) = delete;

    int bind(const std::string& host, int port);
    bool listen();
    void stop();
    void wait_until_ready() const;

  private:
    Client& client_;
    std::function<void()> persist_;
    GatewayOptions options_;
    std::mutex lock_;
    std::unique_ptr<httplib::Server> server_;
  };
}
