// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.

// qnet-server: the OSN service over HTTP.

#include "qnet/server/http_server.hpp"

#include "CLI11.hpp"

#include <csignal>
#include <cstdlib>
#include <iostream>

using namespace qnet;

namespace
{
  server::HttpServer* running = nullptr;

  void on_signal(int)
  {
    if (running)
      running->stop();
  }

  std::string env_or(const char* name, std::string fallback)
  {
    const char* v = std::getenv(name);
    return v && *v ? v : fallback;
  }
}

int main(int argc, char** argv)
{
  CLI::App app{"quorumnet server"};
  std::string listen = env_or("QNET_LISTEN", "127.0.0.1:8080");
  std::string storage = env_or("QNET_STORAGE", "");
  std::string group = env_or("QNET_GROUP", std::string(standard_label));
  app.add_option("--listen", listen, "host:port to bind (env QNET_LISTEN)");
  app.add_option("--storage", storage, "Append-log file; in-memory when empty (env QNET_STORAGE)");
  app.add_option("--group", group, "Group label: modp-2048 or tiny-23 (env QNET_GROUP)");
  CLI11_PARSE(app, argc, argv);

  try
  {
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("--listen must be host:port");
    const auto host = listen.substr(0, colon);
    const int port = std::stoi(listen.substr(colon + 1));

    const auto& params = params_for_label(group);
    std::shared_ptr<server::Storage> store;
    if (storage.empty())
      store = std::make_shared<server::MemoryStorage>();
    else
      store = std::make_shared<server::LogStorage>(storage);

    server::Service service(store, params);
    server::HttpServer http(service);
    const int bound = http.bind(host, port);
    if (bound < 0)
      throw std::runtime_error("cannot bind " + listen);
    running = &http;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "qnet-server listening on " << host << ":" << bound << " group " << params.label
              << (storage.empty() ? " (memory)" : " storage " + storage) << std::endl;
    http.listen();
  }
  catch (const std::exception& e)
  {
    std::cerr << "qnet-server: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
