// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qnet/content.hpp"
#include "qnet/errors.hpp"
#include "qnet/proxy_reencrypt.hpp"

using namespace qnet;

namespace
{
  const GroupParams& std_params()
  {
    return standard_params(SizeLabel::standard);
  }

  struct Keys
  {
    std::vector<ProxyKey> keys;
    std::vector<ProxyKeyPublic> publics;

    Keys(std::size_t n, Rng& rng)
    {
      for (std::size_t i = 0; i < n; ++i)
      {
        keys.push_back(gen_proxy_key(std_params(), rng));
        publics.push_back(public_part(keys.back()));
      }
    }

    GroupElement recover(const ContentItem& item, Rng& rng) const
    {
      std::vector<GroupElement> pubs;
      for (const auto& p : publics)
        pubs.push_back(p.public_key);
      auto resp = blind(std_params(), protected_ciphertext(item), pubs, rng).first;
      UnblindShares shares;
      for (const auto& k : keys)
        add_unblind_shares(std_params(), resp, k.private_key, k.key_id, shares);
      return unblind(std_params(), resp, shares);
    }
  };

  Bytes text(std::string_view s)
  {
    return Bytes(s.begin(), s.end());
  }
}

TEST_CASE("visibility strings")
{
  for (auto v : {Visibility::Public, Visibility::Private, Visibility::Circle})
    CHECK(visibility_from_string(to_string(v)) == v);
  CHECK(kind_from_string("circle-key") == ContentKind::CircleKey);
  CHECK_THROWS_AS(visibility_from_string("secret"), std::invalid_argument);
}

TEST_CASE("short path round trip")
{
  SeededRng rng(1);
  Keys keys(2, rng);
  const auto msg = text("hello circle");
  auto item = seal_short(std_params(), "alice", msg, keys.publics, rng);
  CHECK(item.visibility == Visibility::Private);
  CHECK(item.short_ciphertext.has_value());
  CHECK(item.payload.empty());
  CHECK(item.proxy_key_ids.size() == 2);
  CHECK_NOTHROW(check_item(item));
  CHECK(open_item(std_params(), item, keys.recover(item, rng)) == msg);
}

TEST_CASE("short path limits")
{
  SeededRng rng(2);
  Keys keys(1, rng);
  const auto max = max_short_bytes(std_params());
  CHECK(max == 255);
  Bytes full(max, 0xff);
  auto item = seal_short(std_params(), "a", full, keys.publics, rng);
  CHECK(open_item(std_params(), item, keys.recover(item, rng)) == full);

  Bytes too_long(max + 1, 0xff);
  CHECK_THROWS_AS(seal_short(std_params(), "a", too_long, keys.publics, rng), std::length_error);
  Bytes leading_zero{0x00, 0x41};
  CHECK_THROWS_AS(seal_short(std_params(), "a", leading_zero, keys.publics, rng), std::length_error);
  CHECK_THROWS_AS(seal_short(std_params(), "a", Bytes{}, keys.publics, rng), std::invalid_argument);
  std::vector<ProxyKeyPublic> none;
  CHECK_THROWS_AS(seal_short(std_params(), "a", text("x"), none, rng), std::invalid_argument);
}

TEST_CASE("large path round trip at 1 MiB")
{
  SeededRng rng(3);
  Keys keys(3, rng);
  Bytes big(1 << 20);
  rng.fill(big);
  auto item = seal_large(std_params(), "alice", big, keys.publics, rng);
  CHECK(item.wrapped_key.has_value());
  CHECK(item.payload.size() == big.size() + 24 + 16);
  CHECK(open_item(std_params(), item, keys.recover(item, rng)) == big);

  // Empty payloads and leading zeros are fine on the large path.
  Bytes odd{0x00, 0x00, 0x01};
  auto small = seal_large(std_params(), "alice", odd, keys.publics, rng);
  CHECK(open_item(std_params(), small, keys.recover(small, rng)) == odd);
  auto empty = seal_large(std_params(), "alice", Bytes{}, keys.publics, rng);
  CHECK(open_item(std_params(), empty, keys.recover(empty, rng)).empty());
}

TEST_CASE("large path tampering is detected")
{
  SeededRng rng(4);
  Keys keys(1, rng);
  auto item = seal_large(std_params(), "alice", text("attack at dawn"), keys.publics, rng);
  auto key = keys.recover(item, rng);

  for (std::size_t i = 0; i < item.payload.size(); ++i)
  {
    auto bad = item;
    bad.payload[i] ^= 0x01;
    CHECK_THROWS_AS(open_item(std_params(), bad, key), AuthenticationError);
  }
  auto moved = item;
  moved.content_id = "other";
  CHECK_THROWS_AS(open_item(std_params(), moved, key), AuthenticationError);

  auto truncated = item;
  truncated.payload.resize(10);
  CHECK_THROWS_AS(open_item(std_params(), truncated, key), AuthenticationError);

  // A wrong element fails the key framing.
  CHECK_THROWS_AS(open_item(std_params(), item, encode_message(std_params(), 5)), DecryptionError);
}

TEST_CASE("sealing the same message twice differs")
{
  SeededRng rng(5);
  Keys keys(1, rng);
  auto a = seal_large(std_params(), "a", text("same"), keys.publics, rng);
  auto b = seal_large(std_params(), "a", text("same"), keys.publics, rng);
  CHECK(a.payload != b.payload);
  CHECK(a.wrapped_key != b.wrapped_key);
  CHECK(a.content_id != b.content_id);
  auto c = seal_short(std_params(), "a", text("same"), keys.publics, rng);
  auto d = seal_short(std_params(), "a", text("same"), keys.publics, rng);
  CHECK(c.short_ciphertext != d.short_ciphertext);
}

TEST_CASE("key framing")
{
  SeededRng rng(6);
  auto key = random_key(rng);
  auto e = encode_key(std_params(), key);
  CHECK(decode_key(std_params(), e) == key);
  SymmetricKey zeros{};
  CHECK(decode_key(std_params(), encode_key(std_params(), zeros)) == zeros);
  CHECK(group_fits_key(std_params()));
  CHECK_FALSE(group_fits_key(standard_params(SizeLabel::tiny)));
  CHECK_THROWS_AS(encode_key(standard_params(SizeLabel::tiny), key), std::length_error);
}

TEST_CASE("check_item rejects inconsistent shapes")
{
  SeededRng rng(7);
  Keys keys(1, rng);
  auto pub = make_public("a", text("hi"), rng);
  CHECK_NOTHROW(check_item(pub));
  CHECK_FALSE(has_protected_ciphertext(pub));

  auto priv = seal_short(std_params(), "a", text("hi"), keys.publics, rng);
  auto leaked = pub;
  leaked.short_ciphertext = priv.short_ciphertext;
  CHECK_THROWS_AS(check_item(leaked), std::invalid_argument);

  auto both = priv;
  both.wrapped_key = priv.short_ciphertext;
  CHECK_THROWS_AS(check_item(both), std::invalid_argument);

  auto no_proxies = priv;
  no_proxies.proxy_key_ids.clear();
  CHECK_THROWS_AS(check_item(no_proxies), std::invalid_argument);

  ContentItem circle_post;
  circle_post.visibility = Visibility::Circle;
  circle_post.payload = text("x");
  CHECK_THROWS_AS(check_item(circle_post), std::invalid_argument);
  circle_post.circle_id = "c";
  CHECK_NOTHROW(check_item(circle_post));
}

TEST_CASE("circle rotation and epoch isolation")
{
  SeededRng rng(8);
  const auto& p = std_params();
  std::map<std::string, KeyPair> users;
  std::map<std::string, GroupElement> publics;
  for (const char* name : {"owner", "bob", "carol", "dave"})
  {
    users.emplace(name, keygen(p, rng));
    publics.emplace(name, users.at(name).public_key);
  }
  Circle circle{"circle-1", "owner", {"owner", "bob", "carol", "dave"}};

  CHECK_THROWS_AS(circle_rotate_key(circle, "bob", p, publics, rng), PermissionError);
  CHECK_THROWS_AS(circle_rotate_key(circle, "mallory", p, publics, rng), PermissionError);

  auto first = circle_rotate_key(circle, "owner", p, publics, rng);
  CHECK(first.epoch == 1);
  CHECK(circle.key_epoch == 1);
  CHECK(first.proxy_keys.size() == 3);
  CHECK(circle.key_items.at(1) == first.key_item.content_id);
  CHECK_NOTHROW(check_item(first.key_item));

  // Every member receives at least one wrapped key.
  std::set<std::string> holders;
  for (const auto& w : first.wrapped)
    holders.insert(w.holder_id);
  CHECK(holders == circle.member_ids);

  // Members who jointly hold every key recover the circle key.
  std::map<std::string, ProxyKey> unwrapped;
  for (const auto& w : first.wrapped)
    unwrapped.emplace(w.key_id, unwrap_key(p, w, users.at(w.holder_id).private_key));
  REQUIRE(unwrapped.size() == 3);
  std::vector<GroupElement> pubs;
  for (const auto& k : first.proxy_keys)
    pubs.push_back(k.public_key);
  auto resp = blind(p, *first.key_item.short_ciphertext, pubs, rng).first;
  UnblindShares shares;
  for (const auto& [id, k] : unwrapped)
    add_unblind_shares(p, resp, k.private_key, id, shares);
  auto recovered = decode_key(p, unblind(p, resp, shares));
  CHECK(recovered == first.circle_key);

  auto post = seal_circle_post("circle-1", 1, first.circle_key, "bob", text("hi all"), rng);
  CHECK_NOTHROW(check_item(post));
  CHECK(open_circle_post(post, first.circle_key) == text("hi all"));

  auto second = circle_rotate_key(circle, "owner", p, publics, rng);
  CHECK(second.epoch == 2);
  CHECK(second.circle_key != first.circle_key);
  CHECK(second.proxy_keys[0].key_id != first.proxy_keys[0].key_id);
  CHECK_THROWS_AS(open_circle_post(post, second.circle_key), AuthenticationError);

  auto relabelled = post;
  relabelled.epoch = 2;
  CHECK_THROWS_AS(open_circle_post(relabelled, first.circle_key), AuthenticationError);
}

TEST_CASE("circle rotation options are clamped")
{
  SeededRng rng(9);
  const auto& p = std_params();
  auto solo = keygen(p, rng);
  std::map<std::string, GroupElement> publics{{"owner", solo.public_key}};
  Circle circle{"c", "owner", {"owner"}};
  auto rot = circle_rotate_key(circle, "owner", p, publics, rng, {5, 5});
  CHECK(rot.proxy_keys.size() == 1);
  CHECK(rot.wrapped.size() == 1);

  Circle missing{"c2", "owner", {"owner", "ghost"}};
  CHECK_THROWS_AS(circle_rotate_key(missing, "owner", p, publics, rng), std::invalid_argument);
}
