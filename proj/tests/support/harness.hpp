// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

// In-process server on a loopback port plus registered users, for scenario
// and acceptance tests.

#include "qnet/client/client.hpp"
#include "qnet/server/http_server.hpp"

#include <atomic>
#include <exception>
#include <thread>

namespace harness
{
  using namespace qnet;

  struct TestServer
  {
    std::shared_ptr<server::Storage> storage;
    server::Service service;
    server::HttpServer http;
    std::thread thread;
    int port = -1;
    std::string url;

    explicit TestServer(
      std::uint64_t seed,
      std::shared_ptr<server::Storage> store = std::make_shared<server::MemoryStorage>(),
      const GroupParams& params = standard_params(SizeLabel::standard)) :
      storage(std::move(store)),
      service(storage, params, std::make_unique<SeededRng>(seed)),
      http(service)
    {
      port = http.bind("127.0.0.1", 0);
      if (port <= 0)
        throw std::runtime_error("cannot bind a loopback port");
      thread = std::thread([this] { http.listen(); });
      http.wait_until_ready();
      url = "http://127.0.0.1:" + std::to_string(port);
    }

    ~TestServer()
    {
      http.stop();
      thread.join();
    }
  };

  struct User
  {
    client::Wallet wallet;
    client::ServerApi api;
    SeededRng rng;
    client::Client client;

    User(TestServer& server, const std::string& name, std::uint64_t seed) :
      wallet(make_wallet(server)),
      api(server.url),
      rng(seed),
      client(wallet, api, rng)
    {
      client.register_user(name);
    }

    const std::string& id() const
    {
      return wallet.user_id;
    }

    client::Client* operator->()
    {
      return &client;
    }

  private:
    static client::Wallet make_wallet(TestServer& server)
    {
      client::Wallet w;
      w.group_label = server.service.params().label;
      w.server_url = server.url;
      return w;
    }
  };

  /// A second client over a copy of a user's wallet, for driving the user
  /// from the main thread while a ProxyLoop owns the original.
  struct Session
  {
    client::Wallet wallet;
    client::ServerApi api;
    SeededRng rng;
    client::Client client;

    Session(const User& user, std::uint64_t seed) :
      wallet(user.wallet),
      api(user.wallet.server_url),
      rng(seed),
      client(wallet, api, rng)
    {}

    client::Client* operator->()
    {
      return &client;
    }
  };

  /// Runs serve_once for one user on a background thread until destroyed.
  class ProxyLoop
  {
  public:
    ProxyLoop(User& user, client::Approver approver) :
      thread_([this, &user, approver] {
        while (!stop_)
        {
          try
          {
            user->serve_once(approver);
          }
          catch (...)
          {
            error_ = std::current_exception();
            return;
          }
          std::this_thread::sleep_for(std::chrono::milliseconds(10));
        }
      })
    {}

    ~ProxyLoop()
    {
      stop_ = true;
      thread_.join();
    }

    void rethrow() const
    {
      if (error_)
        std::rethrow_exception(error_);
    }

  private:
    std::atomic<bool> stop_{false};
    std::exception_ptr error_;
    std::thread thread_;
  };

  inline client::Approval approve_all(const client::json&)
  {
    return client::Approval::approve;
  }

  inline client::Approval deny_all(const client::json&)
  {
    return client::Approval::deny;
  }

  inline Bytes bytes(std::string_view s)
  {
    return Bytes(s.begin(), s.end());
  }

  inline std::string str(const Bytes& b)
  {
    return std::string(b.begin(), b.end());
  }
}
