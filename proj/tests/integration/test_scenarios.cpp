// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "harness.hpp"
#include "qnet/errors.hpp"
#include "qnet/wire.hpp"

#include "httplib.h"

using namespace harness;
using client::ApiClientError;
using client::Audience;
using client::MissingSharesError;
using client::ReadOptions;
using json = nlohmann::json;

namespace
{
  ReadOptions quick(int ms = 300)
  {
    ReadOptions o;
    o.timeout = std::chrono::milliseconds(ms);
    o.first_poll = std::chrono::milliseconds(10);
    return o;
  }

  Audience to(std::vector<std::string> holders)
  {
    Audience a;
    a.holders = std::move(holders);
    return a;
  }

  int status_of(const std::function<void()>& f)
  {
    try
    {
      f();
    }
    catch (const ApiClientError& e)
    {
      return e.status();
    }
    return 200;
  }
}

TEST_CASE("registration and directory")
{
  TestServer server(1);
  User alice(server, "alice", 11);
  User bob(server, "bob", 12);

  auto dir = alice.api.get("/v1/users");
  REQUIRE(dir.size() == 2);
  for (const auto& u : dir)
  {
    CHECK_FALSE(u.contains("token_hash"));
    const auto& params = standard_params(SizeLabel::standard);
    CHECK_NOTHROW(wire::element(params, u.at("public_key")));
  }
  auto me = alice.api.get("/v1/me");
  CHECK(me["user_id"] == alice.id());
  CHECK(me["public_key"] == to_hex(alice.wallet.keypair().public_key.value()));

  client::ServerApi anon(server.url);
  CHECK(
    status_of([&] {
      anon.post("/v1/users", {{"display_name", "copy"}, {"public_key", me["public_key"]}});
    }) == 409);
  CHECK(status_of([&] { anon.post("/v1/users", {{"display_name", "bad"}, {"public_key", "0"}}); }) == 400);
  CHECK(status_of([&] { anon.get("/v1/me"); }) == 401);
}

TEST_CASE("errors use {code, message}")
{
  TestServer server(2);
  httplib::Client http(server.url);
  auto res = http.Post("/v1/content", "{}", "application/json");
  REQUIRE(res);
  CHECK(res->status == 401);
  auto body = json::parse(res->body);
  CHECK(body["code"] == "unauthorized");
  CHECK(body["message"].is_string());

  res = http.Get("/v1/nope");
  REQUIRE(res);
  CHECK(res->status == 404);
  CHECK(json::parse(res->body)["code"] == "not_found");

  res = http.Post("/v1/users", "{not json", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
  CHECK(json::parse(res->body)["code"] == "bad_request");
}

TEST_CASE("public posts are served as-is")
{
  TestServer server(3);
  User alice(server, "alice", 21);
  User stranger(server, "stranger", 22);
  auto item = alice->post(Visibility::Public, bytes("sunny today"));
  auto got = stranger->read(item.content_id);
  CHECK(got.was_public);
  CHECK(str(got.plaintext) == "sunny today");
  auto fetched = stranger->fetch_blinded(item.content_id);
  CHECK_FALSE(fetched.contains("blinded"));
  CHECK(server.storage->scan("blinding").empty());
}

TEST_CASE("private post: holder approves, reader decrypts")
{
  TestServer server(4);
  User alice(server, "alice", 31);
  User bob(server, "bob", 32);
  User carol(server, "carol", 33);

  auto item = alice->post(Visibility::Private, bytes("meet at noon"), to({bob.id()}));
  CHECK(item.short_ciphertext.has_value());

  // The listing never carries the Elgamal layer.
  auto view = carol.api.get("/v1/content/" + item.content_id);
  CHECK_FALSE(view.contains("short_ciphertext"));
  CHECK_FALSE(view.contains("wrapped_key"));
  CHECK(view["protected"] == true);

  // Alice holds every key she generated and reads without help.
  CHECK(str(alice->read(item.content_id).plaintext) == "meet at noon");

  {
    ProxyLoop bob_serves(bob, approve_all);
    auto got = carol->read(item.content_id, quick(5000));
    CHECK(str(got.plaintext) == "meet at noon");
    CHECK(got.remote_keys.size() == 1);
    bob_serves.rethrow();
  }
  // Bob unwrapped the key while serving and now reads alone.
  CHECK(str(bob->read(item.content_id).plaintext) == "meet at noon");
}

TEST_CASE("without shares the read reports the missing contributors")
{
  TestServer server(5);
  User alice(server, "alice", 41);
  User bob(server, "bob", 42);
  User carol(server, "carol", 43);
  auto item = alice->post(Visibility::Private, bytes("secret"), to({bob.id()}));
  try
  {
    carol->read(item.content_id, quick());
    FAIL("expected missing shares");
  }
  catch (const MissingSharesError& e)
  {
    CHECK(e.missing() == std::set<std::string>(item.proxy_key_ids.begin(), item.proxy_key_ids.end()));
    CHECK(e.denied().empty());
  }

  ProxyLoop deny(bob, deny_all);
  // The pending request is reused; once denied the read fails immediately.
  for (int i = 0; i < 200; ++i)
  {
    try
    {
      carol->read(item.content_id, quick(100));
    }
    catch (const MissingSharesError& e)
    {
      if (!e.denied().empty())
      {
        CHECK(e.denied() == e.missing());
        break;
      }
    }
  }
  CHECK(carol.api.get("/v1/share-requests").at(0)["denials"].size() == 1);
}

TEST_CASE("large private post with several holders and an alias key")
{
  TestServer server(6);
  User alice(server, "alice", 51);
  User bob(server, "bob", 52);
  User dave(server, "dave", 53);
  User carol(server, "carol", 54);

  Bytes big(200000);
  carol.rng.fill(big);
  Audience a = to({bob.id()});
  a.alias_users = {dave.id()};
  auto item = alice->post(Visibility::Private, big, a);
  CHECK(item.wrapped_key.has_value());
  CHECK(item.proxy_key_ids.size() == 2);

  ProxyLoop b(bob, approve_all);
  ProxyLoop d(dave, approve_all);
  auto got = carol->read(item.content_id, quick(5000));
  CHECK(got.plaintext == big);
  CHECK(got.remote_keys.size() == 2);
}

TEST_CASE("holders sharing keys race to answer without stalling")
{
  TestServer server(16);
  User alice(server, "alice", 161);
  User bob(server, "bob", 162);
  User dave(server, "dave", 163);
  Audience a = to({bob.id(), dave.id()});
  a.fresh_keys = 2;
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i)
    ids.push_back(alice->post(Visibility::Private, bytes("shared " + std::to_string(i)), a).content_id);

  ProxyLoop b(bob, approve_all);
  ProxyLoop d(dave, approve_all);
  for (int round = 0; round < 3; ++round)
  {
    User reader(server, "reader" + std::to_string(round), 170 + round);
    for (std::size_t i = 0; i < ids.size(); ++i)
      CHECK(str(reader->read(ids[i], quick(5000)).plaintext) == "shared " + std::to_string(i));
  }
  CHECK_NOTHROW(b.rethrow());
  CHECK_NOTHROW(d.rethrow());
}

TEST_CASE("quorum-spread keys need holders that cover every key")
{
  TestServer server(7);
  User alice(server, "alice", 61);
  std::vector<std::unique_ptr<User>> holders;
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i)
  {
    holders.push_back(std::make_unique<User>(server, "h" + std::to_string(i), 70 + i));
    ids.push_back(holders.back()->id());
  }
  User reader(server, "reader", 80);
  Audience a = to(ids);
  a.fresh_keys = 3;
  a.keys_per_holder = 1;
  auto item = alice->post(Visibility::Private, bytes("spread"), a);
  REQUIRE(item.proxy_key_ids.size() == 3);

  std::vector<std::unique_ptr<ProxyLoop>> loops;
  for (auto& h : holders)
    loops.push_back(std::make_unique<ProxyLoop>(*h, approve_all));
  CHECK(str(reader->read(item.content_id, quick(5000)).plaintext) == "spread");
}

TEST_CASE("revocation invalidates cached shares")
{
  TestServer server(8);
  User alice(server, "alice", 91);
  User bob(server, "bob", 92);
  User carol(server, "carol", 93);
  Audience a = to({bob.id()});
  a.fresh_keys = 2;
  auto item = alice->post(Visibility::Private, bytes("revocable"), a);

  auto first = carol->fetch_blinded(item.content_id);
  CHECK(carol->fetch_blinded(item.content_id) == first);

  {
    ProxyLoop serve(bob, approve_all);
    CHECK(str(carol->read(item.content_id, quick(5000)).plaintext) == "revocable");
  }
  const auto cached = carol.wallet.cached_reads.at(item.content_id);
  const auto& params = carol->params();
  const auto stale = wire::decode_unblind_shares(params, cached["shares"]);

  CHECK(status_of([&] { carol->revoke(item.content_id, carol.id()); }) == 403);
  CHECK(alice->revoke(item.content_id, carol.id()));
  CHECK_FALSE(alice->revoke(item.content_id, carol.id()));

  auto fresh = carol->fetch_blinded(item.content_id);
  CHECK(fresh["blinded"] != first["blinded"]);
  CHECK(fresh["blinded"]["g_r"] == first["blinded"]["g_r"]);
  const auto resp = wire::decode_blinded(params, fresh["blinded"]);
  CHECK_THROWS_AS(carol->open(fresh["content"], resp, stale), DecryptionError);

  // A proxy may revoke as well; the fresh record goes away again.
  bob->sync_keys();
  CHECK(bob->revoke(item.content_id, carol.id()));
  CHECK(carol->fetch_blinded(item.content_id)["blinded"] != fresh["blinded"]);

  ProxyLoop serve(bob, approve_all);
  CHECK(str(carol->read(item.content_id, quick(5000)).plaintext) == "revocable");
}

TEST_CASE("share request rules")
{
  TestServer server(9);
  User alice(server, "alice", 101);
  User bob(server, "bob", 102);
  User carol(server, "carol", 103);
  User eve(server, "eve", 104);
  auto item = alice->post(Visibility::Private, bytes("rules"), to({bob.id()}));
  bob->sync_keys();

  auto req = carol.api.post("/v1/share-requests", {{"content_id", item.content_id}});
  const auto rid = req["request_id"].get<std::string>();
  CHECK(status_of([&] { eve.api.get("/v1/share-requests/" + rid); }) == 403);

  auto inbox = bob->inbox();
  REQUIRE(inbox.size() >= 1);
  json mine;
  for (const auto& r : inbox)
    if (r["request_id"] == rid)
      mine = r;
  REQUIRE(mine.is_object());

  // Eve holds nothing and cannot answer.
  const auto resp = wire::decode_blinded(bob->params(), mine["blinded"]);
  auto shares = bob->local_shares(resp, item.proxy_key_ids);
  CHECK(status_of([&] {
          eve.api.post("/v1/share-requests/" + rid + "/responses", {{"shares", wire::encode(shares)}});
        }) == 403);

  bob->approve(mine);
  CHECK(status_of([&] { bob->approve(mine); }) == 409);
  CHECK(status_of([&] { bob.api.post("/v1/share-requests/" + rid + "/close"); }) == 403);
  carol.api.post("/v1/share-requests/" + rid + "/close");
  CHECK(status_of([&] { bob->deny(rid); }) == 409);
  CHECK(bob->inbox().empty());

  CHECK(status_of([&] { carol.api.post("/v1/share-requests", {{"content_id", "nope"}}); }) == 404);
  auto pub = alice->post(Visibility::Public, bytes("x"));
  CHECK(status_of([&] { carol.api.post("/v1/share-requests", {{"content_id", pub.content_id}}); }) == 400);
}

TEST_CASE("publish validation")
{
  TestServer server(10);
  User alice(server, "alice", 111);
  User bob(server, "bob", 112);
  auto item = make_public(bob.id(), bytes("forged"), alice.rng);
  CHECK(status_of([&] { alice.api.post("/v1/content", {{"item", wire::encode(item)}}); }) == 403);

  auto own = make_public(alice.id(), bytes("mine"), alice.rng);
  alice.api.post("/v1/content", {{"item", wire::encode(own)}});
  // Replaying the same item is harmless, a different one under its id is not.
  CHECK_NOTHROW(alice.api.post("/v1/content", {{"item", wire::encode(own)}}));
  own.payload = bytes("changed");
  CHECK(status_of([&] { alice.api.post("/v1/content", {{"item", wire::encode(own)}}); }) == 409);

  std::vector<ProxyKeyPublic> unknown{{"deadbeef", alice.wallet.keypair().public_key}};
  auto sealed = seal_short(alice->params(), alice.id(), bytes("x"), unknown, alice.rng);
  CHECK(status_of([&] { alice.api.post("/v1/content", {{"item", wire::encode(sealed)}}); }) == 400);

  auto bad = wire::encode(make_public(alice.id(), bytes("y"), alice.rng));
  bad["payload"] = "!!!";
  CHECK(status_of([&] { alice.api.post("/v1/content", {{"item", bad}}); }) == 400);
}

TEST_CASE("idempotency keys replay the original response")
{
  TestServer server(11);
  User alice(server, "alice", 121);
  httplib::Client http(server.url);
  httplib::Headers headers{{"Authorization", "Bearer " + alice.wallet.token}, {"Idempotency-Key", "req-1"}};
  const auto body = json{{"circle_id", "book-club"}}.dump();
  auto first = http.Post("/v1/circles", headers, body, "application/json");
  auto second = http.Post("/v1/circles", headers, body, "application/json");
  REQUIRE(first);
  REQUIRE(second);
  CHECK(first->status == 201);
  CHECK(second->status == 201);
  CHECK(first->body == second->body);

  headers = {{"Authorization", "Bearer " + alice.wallet.token}, {"Idempotency-Key", "req-2"}};
  auto third = http.Post("/v1/circles", headers, body, "application/json");
  REQUIRE(third);
  CHECK(third->status == 409);
}

TEST_CASE("concurrent first fetches share one blinding record")
{
  TestServer server(12);
  User alice(server, "alice", 131);
  User carol(server, "carol", 132);
  auto item = alice->post(Visibility::Private, bytes("race"));
  std::vector<json> seen(8);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([&, i] {
      client::ServerApi api(server.url);
      api.set_token(carol.wallet.token);
      seen[i] = api.get("/v1/content/" + item.content_id + "/blinded");
    });
  for (auto& t : threads)
    t.join();
  for (const auto& s : seen)
    CHECK(s == seen[0]);
  CHECK(server.storage->scan("blinding").size() == 1);
}

TEST_CASE("circle lifecycle")
{
  TestServer server(13);
  User alice(server, "alice", 141);
  User bob(server, "bob", 142);
  User carol(server, "carol", 143);
  alice->circle_create("friends");
  bob->circle_join("friends");
  carol->circle_join("friends");

  CHECK_THROWS_AS(bob->circle_post("friends", bytes("too early")), std::invalid_argument);
  CHECK_THROWS_AS(bob->circle_rotate("friends"), PermissionError);

  auto c1 = alice->circle_rotate("friends");
  CHECK(c1["key_epoch"] == 1);
  CHECK(c1["proxy_keys"].size() == 3);

  // Three members, three keys, one key each: every member serves its key.
  {
    ProxyLoop a(alice, approve_all);
    ProxyLoop b(bob, approve_all);
    ProxyLoop c(carol, approve_all);
    client::ServerApi bob_api(server.url);
    bob_api.set_token(bob.wallet.token);
    SeededRng rng(1);
    client::Wallet bob_wallet = bob.wallet;
    client::Client bob_writer(bob_wallet, bob_api, rng);
    bob_writer.circle_post("friends", bytes("hello circle"));

    client::ServerApi carol_api(server.url);
    carol_api.set_token(carol.wallet.token);
    client::Wallet carol_wallet = carol.wallet;
    client::Client carol_reader(carol_wallet, carol_api, rng);
    auto posts = carol_reader.circle_read("friends", quick(5000));
    REQUIRE(posts.size() == 1);
    CHECK(posts[0]["text"] == "hello circle");
  }

  User dave(server, "dave", 144);
  CHECK(status_of([&] { dave.api.get("/v1/circles/friends/posts"); }) == 403);
  dave->circle_join("friends");
  auto c2 = alice->circle_rotate("friends");
  CHECK(c2["key_epoch"] == 2);

  ProxyLoop a(alice, approve_all);
  ProxyLoop b(bob, approve_all);
  ProxyLoop c(carol, approve_all);
  const auto k2 = dave->circle_key("friends", 2, quick(5000));
  const auto k1 = dave->circle_key("friends", 1, quick(5000));
  CHECK(k1 != k2);
  dave->circle_post("friends", bytes("new here"));
  auto posts = dave->circle_read("friends", quick(5000));
  REQUIRE(posts.size() == 2);
  for (const auto& p : posts)
    CHECK(p.contains("text"));
  for (const auto& raw : dave.api.get("/v1/circles/friends/posts"))
  {
    const auto item = wire::decode_item(raw);
    const auto& own = item.epoch == 1 ? k1 : k2;
    const auto& other = item.epoch == 1 ? k2 : k1;
    CHECK_NOTHROW(open_circle_post(item, own));
    CHECK_THROWS_AS(open_circle_post(item, other), AuthenticationError);
  }
}

TEST_CASE("state survives a restart on the log store")
{
  auto path = std::filesystem::temp_directory_path() / ("qnet-restart-" + std::to_string(::getpid()) + ".jsonl");
  std::filesystem::remove(path);
  client::Wallet saved_alice;
  std::string content_id;
  json before;
  {
    TestServer server(14, std::make_shared<server::LogStorage>(path));
    User alice(server, "alice", 151);
    content_id = alice->post(Visibility::Private, bytes("durable")).content_id;
    before = alice->fetch_blinded(content_id);
    saved_alice = alice.wallet;
  }
  TestServer server(15, std::make_shared<server::LogStorage>(path));
  client::ServerApi api(server.url);
  SeededRng rng(152);
  client::Client alice(saved_alice, api, rng);
  CHECK(alice.fetch_blinded(content_id) == before);
  CHECK(str(alice.read(content_id).plaintext) == "durable");
  std::filesystem::remove(path);
}
