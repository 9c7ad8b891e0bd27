// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qnet/server/storage.hpp"

#include <fstream>
#include <thread>
#include <unistd.h>

using namespace qnet::server;

namespace
{
  std::filesystem::path temp_path(const std::string& name)
  {
    auto dir = std::filesystem::temp_directory_path() / ("qnet-storage-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::filesystem::remove(p);
    return p;
  }

  void exercise(Storage& s)
  {
    CHECK_FALSE(s.get("a", "x").has_value());
    s.put("a", "x", {{"v", 1}});
    CHECK(s.get("a", "x")->at("v") == 1);
    s.put("a", "x", {{"v", 2}});
    CHECK(s.get("a", "x")->at("v") == 2);
    s.put("a", "y", 3);
    s.put("b", "x", "other");
    CHECK(s.scan("a").size() == 2);
    CHECK(s.scan("missing").empty());
    CHECK(s.erase("a", "y"));
    CHECK_FALSE(s.erase("a", "y"));
    auto [first, inserted] = s.insert_or_get("c", "k", [] { return json("made"); });
    CHECK(inserted);
    auto [second, again] = s.insert_or_get("c", "k", [] { return json("other"); });
    CHECK_FALSE(again);
    CHECK(second == "made");
    auto d = s.dump();
    CHECK(d["b"]["x"] == "other");
  }
}

TEST_CASE("memory storage")
{
  MemoryStorage s;
  exercise(s);
}

TEST_CASE("log storage survives reopen")
{
  auto path = temp_path("log.jsonl");
  {
    LogStorage s(path);
    exercise(s);
  }
  LogStorage reopened(path);
  CHECK(reopened.get("a", "x")->at("v") == 2);
  CHECK_FALSE(reopened.get("a", "y").has_value());
  CHECK(reopened.get("c", "k") == json("made"));
}

TEST_CASE("log storage compacts and keeps the live state")
{
  auto path = temp_path("compact.jsonl");
  {
    LogStorage s(path, 16);
    for (int i = 0; i < 500; ++i)
      s.put("counter", "n", i);
    s.put("keep", "k", "v");
    CHECK(s.log_entries() < 40);
  }
  LogStorage reopened(path);
  CHECK(reopened.get("counter", "n") == 499);
  CHECK(reopened.get("keep", "k") == "v");
  reopened.compact();
  CHECK(reopened.log_entries() == 2);
}

TEST_CASE("a torn final line is dropped, earlier corruption is an error")
{
  auto path = temp_path("torn.jsonl");
  {
    LogStorage s(path);
    s.put("a", "x", 1);
  }
  {
    std::ofstream out(path, std::ios::app);
    out << R"({"op":"put","c":"a","k":"y","v":)";
  }
  {
    LogStorage s(path);
    CHECK(s.get("a", "x") == 1);
    CHECK_FALSE(s.get("a", "y").has_value());
  }
  auto bad = temp_path("bad.jsonl");
  {
    std::ofstream out(bad);
    out << "garbage\n" << R"({"op":"put","c":"a","k":"x","v":1})" << "\n";
  }
  CHECK_THROWS_AS(LogStorage{bad}, std::runtime_error);
}

TEST_CASE("concurrent insert_or_get inserts once")
{
  MemoryStorage s;
  std::atomic<int> made{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 16; ++i)
    threads.emplace_back([&] {
      for (int k = 0; k < 100; ++k)
        s.insert_or_get("c", std::to_string(k), [&] {
          ++made;
          return json(k);
        });
    });
  for (auto& t : threads)
    t.join();
  CHECK(made == 100);
}
