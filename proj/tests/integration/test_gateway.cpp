// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "harness.hpp"
#include "qnet/client/gateway.hpp"

#include "httplib.h"

using namespace harness;
using json = nlohmann::json;

namespace
{
  /// One user's local gateway on a loopback port.
  struct LocalGateway
  {
    std::atomic<int> persisted{0};
    client::Gateway gateway;
    std::thread thread;
    httplib::Client http;

    static client::GatewayOptions options()
    {
      client::GatewayOptions o;
      o.read_options.timeout = std::chrono::milliseconds(300);
      o.read_options.first_poll = std::chrono::milliseconds(10);
      return o;
    }

    explicit LocalGateway(User& user) :
      gateway(user.client, [this] { ++persisted; }, options()),
      http("127.0.0.1", bind())
    {
      thread = std::thread([this] { gateway.listen(); });
      gateway.wait_until_ready();
    }

    ~LocalGateway()
    {
      gateway.stop();
      thread.join();
    }

    int bind()
    {
      const int port = gateway.bind("127.0.0.1", 0);
      REQUIRE(port > 0);
      return port;
    }

    json get(const std::string& path, int expect = 200)
    {
      auto res = http.Get(path);
      REQUIRE(res);
      CHECK(res->status == expect);
      return json::parse(res->body);
    }

    json post(const std::string& path, const json& body = json::object(), int expect = 200)
    {
      auto res = http.Post(path, body.dump(), "application/json");
      REQUIRE(res);
      CHECK(res->status == expect);
      return json::parse(res->body);
    }
  };
}

TEST_CASE("compose, locked, approve, plaintext, revoke, locked")
{
  TestServer server(21);
  User owner(server, "owner", 211);
  User viewer(server, "viewer", 212);
  User proxy(server, "proxy", 213);
  LocalGateway og(owner);
  LocalGateway vg(viewer);
  LocalGateway pg(proxy);

  auto me = vg.get("/v1/me");
  CHECK(me["user_id"] == viewer.id());
  CHECK(og.get("/v1/directory").size() == 3);

  auto posted = og.post(
    "/v1/posts", {{"visibility", "private"}, {"text", "dinner at eight"}, {"audience", {{"holders", {proxy.id()}}}}});
  const auto id = posted["content_id"].get<std::string>();
  CHECK(og.persisted > 0);
  og.post("/v1/posts", {{"visibility", "public"}, {"text", "open house"}});

  auto feed = vg.get("/v1/feed");
  REQUIRE(feed.size() == 2);
  for (const auto& e : feed)
  {
    if (e["content_id"] == id)
    {
      CHECK(e["status"] == "locked");
      CHECK_FALSE(e.contains("text"));
    }
    else
    {
      CHECK(e["status"] == "public");
      CHECK(e["text"] == "open house");
    }
  }

  auto locked = vg.post("/v1/read/" + id);
  CHECK(locked["status"] == "locked");
  CHECK(locked["missing"].size() == 1);

  auto inbox = pg.get("/v1/inbox");
  REQUIRE(inbox.size() == 1);
  const auto rid = inbox[0]["request_id"].get<std::string>();
  CHECK(inbox[0]["requester_id"] == viewer.id());
  pg.post("/v1/inbox/" + rid + "/approve");
  CHECK(pg.get("/v1/inbox").empty());

  auto opened = vg.post("/v1/read/" + id);
  CHECK(opened["status"] == "plaintext");
  CHECK(opened["text"] == "dinner at eight");

  CHECK(og.post("/v1/revoke", {{"content_id", id}, {"viewer_id", viewer.id()}})["revoked"] == true);
  auto again = vg.post("/v1/read/" + id);
  CHECK(again["status"] == "locked");

  // The proxy can deny the follow-up request; the viewer then sees it.
  auto next = pg.get("/v1/inbox");
  REQUIRE(next.size() == 1);
  pg.post("/v1/inbox/" + next[0]["request_id"].get<std::string>() + "/deny");
  auto denied = vg.post("/v1/read/" + id);
  CHECK(denied["status"] == "locked");
  CHECK(denied["denied"].size() == 1);
}

TEST_CASE("gateway errors")
{
  TestServer server(22);
  User owner(server, "owner", 221);
  LocalGateway g(owner);
  auto bad = g.post("/v1/posts", {{"visibility", "sideways"}, {"text", "x"}}, 400);
  CHECK(bad["code"] == "bad_request");
  auto missing = g.post("/v1/read/unknown", json::object(), 404);
  CHECK(missing["code"] == "not_found");
  auto no_request = g.post("/v1/inbox/nope/approve", json::object(), 400);
  CHECK(no_request["message"].is_string());
}

TEST_CASE("circles through the gateway")
{
  TestServer server(23);
  User owner(server, "owner", 231);
  User member(server, "member", 232);
  LocalGateway og(owner);
  LocalGateway mg(member);
  og.post("/v1/circles", {{"circle_id", "team"}});
  mg.post("/v1/circles/team/join");
  auto rotated = og.post("/v1/circles/team/rotate", {{"keys", 2}, {"keys_per_member", 1}});
  CHECK(rotated["key_epoch"] == 1);
  CHECK(og.get("/v1/circles").size() == 1);

  // Each holds one of two keys; the owner's key is served by its proxy loop.
  og.post("/v1/circles/team/posts", {{"text", "standup moved"}});
  {
    Session owner_proxy(owner, 9);
    std::atomic<bool> stop{false};
    std::thread serve([&] {
      while (!stop)
      {
        owner_proxy->serve_once(approve_all);
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
    });
    client::ReadOptions patient;
    patient.timeout = std::chrono::seconds(5);
    patient.first_poll = std::chrono::milliseconds(10);
    Session reader(member, 10);
    auto posts = reader->circle_read("team", patient);
    stop = true;
    serve.join();
    REQUIRE(posts.size() == 1);
    CHECK(posts[0]["text"] == "standup moved");
  }
}
