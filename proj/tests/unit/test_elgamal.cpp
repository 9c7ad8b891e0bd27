// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qnet/elgamal.hpp"
#include "tiny_oracle.hpp"

#include <vector>

using namespace qnet;

namespace
{
  const GroupParams& tiny()
  {
    return standard_params(SizeLabel::tiny);
  }

  GroupElement el(long v)
  {
    return GroupElement::from(tiny(), v);
  }

  Scalar sc(long v)
  {
    return Scalar::from(tiny(), v);
  }

}

TEST_CASE("encrypt examples")
{
  // Two recipients g^3 = 18 and g^5 = 12, m = 9, r = 2.
  REQUIRE(oracle::pow(4, 3) == 18);
  REQUIRE(oracle::pow(4, 5) == 12);
  std::vector<GroupElement> two{el(18), el(12)};
  auto ct = encrypt(tiny(), two, el(9), sc(2));
  CHECK(ct.c0.value() == oracle::pow(4, 2));
  CHECK(ct.c0.value() == 16);
  CHECK(ct.c1.value() == oracle::mul(9, oracle::pow(oracle::mul(18, 12), 2)));
  CHECK(ct.c1.value() == 16);
  CHECK(ct.group_label == "tiny-23");

  std::vector<GroupElement> one{el(18)};
  auto ct1 = encrypt(tiny(), one, el(9), sc(2));
  CHECK(ct1.c0.value() == 16);
  CHECK(ct1.c1.value() == 18);

  ScriptedRng forced{2};
  CHECK(encrypt(tiny(), one, el(9), forced) == ct1);
}

TEST_CASE("encrypt rejects bad input")
{
  std::vector<GroupElement> none;
  std::vector<GroupElement> one{el(18)};
  CHECK_THROWS_AS(encrypt(tiny(), none, el(9), sc(2)), std::invalid_argument);
  CHECK_THROWS_AS(
    encrypt(tiny(), one, GroupElement::trusted(5), sc(2)), std::invalid_argument);
}

TEST_CASE("make_share examples")
{
  CHECK(make_share(tiny(), el(16), sc(3)).value.value() == 12);
  CHECK(make_share(tiny(), el(16), sc(5)).value.value() == 4);
  CHECK(oracle::mul(oracle::pow(16, 5), 4) == 1);
  for (long x = 1; x < oracle::Q; ++x)
    CHECK(make_share(tiny(), el(1), sc(x)).value.value() == 1);
  CHECK(make_share(tiny(), el(16), sc(3), "alice").contributor == "alice");
}

TEST_CASE("combine_decrypt example through encoding")
{
  std::vector<GroupElement> keys{el(18), el(12)};
  auto m = encode_message(tiny(), 5);
  REQUIRE(m.value() == 18);
  auto ct = encrypt(tiny(), keys, m, sc(2));
  REQUIRE(ct.c0.value() == 16);
  REQUIRE(ct.c1.value() == 9);

  std::vector<DecryptionShare> shares{
    make_share(tiny(), ct.c0, sc(3), "a"), make_share(tiny(), ct.c0, sc(5), "b")};
  CHECK(shares[0].value.value() == 12);
  CHECK(shares[1].value.value() == 4);
  auto out = combine_decrypt(tiny(), ct, shares);
  CHECK(out.value() == 18);
  CHECK(decode_message(tiny(), out) == 5);

  std::swap(shares[0], shares[1]);
  CHECK(combine_decrypt(tiny(), ct, shares).value() == 18);

  std::vector<DecryptionShare> none;
  CHECK_THROWS_AS(combine_decrypt(tiny(), ct, none), std::invalid_argument);
}

TEST_CASE("m = 1 decrypts to 1")
{
  SeededRng rng(3);
  std::vector<GroupElement> keys{el(18), el(12), el(6)};
  auto ct = encrypt(tiny(), keys, el(1), rng);
  std::vector<DecryptionShare> shares;
  // 6 = g^x for some x; find it by search.
  long x6 = 0;
  for (long x = 1; x < oracle::Q; ++x)
    if (oracle::pow(4, x) == 6)
      x6 = x;
  REQUIRE(x6 != 0);
  for (long x : {3L, 5L, x6})
    shares.push_back(make_share(tiny(), ct.c0, sc(x)));
  CHECK(combine_decrypt(tiny(), ct, shares).value() == 1);
}

TEST_CASE("exhaustive round trip and share completeness on the tiny group")
{
  const auto subgroup = oracle::squares();
  int checked = 0;
  for (const auto& set : oracle::key_sets())
  {
    std::vector<GroupElement> publics;
    for (long x : set)
      publics.push_back(el(oracle::pow(4, x)));
    for (long m : subgroup)
      for (long r = 1; r < oracle::Q; ++r)
      {
        auto ct = encrypt(tiny(), publics, el(m), sc(r));
        std::vector<DecryptionShare> shares;
        for (long x : set)
          shares.push_back(make_share(tiny(), ct.c0, sc(x)));
        REQUIRE(combine_decrypt(tiny(), ct, shares).value() == m);

        if (set.size() > 1)
          for (std::size_t drop = 0; drop < shares.size(); ++drop)
          {
            auto partial = shares;
            partial.erase(partial.begin() + static_cast<long>(drop));
            REQUIRE(combine_decrypt(tiny(), ct, partial).value() != m);
          }
        // Any corrupted share gives a wrong element.
        for (std::size_t bad = 0; bad < shares.size(); ++bad)
        {
          auto corrupted = shares;
          corrupted[bad].value = mul(tiny(), corrupted[bad].value, el(4));
          REQUIRE(combine_decrypt(tiny(), ct, corrupted).value() != m);
        }
        ++checked;
      }
  }
  CHECK(checked == 175 * 11 * 10);
}

TEST_CASE("rerandomize examples")
{
  std::vector<GroupElement> one{el(18)};
  auto ct = encrypt(tiny(), one, el(9), sc(2));
  REQUIRE(ct.c0.value() == 16);
  REQUIRE(ct.c1.value() == 18);

  CHECK(rerandomize(tiny(), ct, el(18), mpz_class(0)) == ct);

  auto moved = rerandomize(tiny(), ct, el(18), mpz_class(1));
  CHECK(moved.c0.value() == 18);
  CHECK(moved.c1.value() == 2);
  auto share = make_share(tiny(), moved.c0, sc(3));
  CHECK(share.value.value() == 16);
  CHECK(oracle::mul(2, 16) == 9);
  std::vector<DecryptionShare> shares{share};
  CHECK(combine_decrypt(tiny(), moved, shares).value() == 9);
}

TEST_CASE("rerandomization preserves the plaintext")
{
  SeededRng rng(11);
  std::vector<GroupElement> keys{el(18), el(12)};
  auto combined = combined_public(tiny(), keys);
  CHECK(combined.value() == oracle::mul(18, 12));
  auto ct = encrypt(tiny(), keys, el(13), sc(4));
  for (int i = 0; i < 100; ++i)
  {
    auto w = Scalar::random(tiny(), rng);
    auto fresh = rerandomize(tiny(), ct, combined, w.value());
    CHECK(fresh.c0 != ct.c0);
    std::vector<DecryptionShare> shares{
      make_share(tiny(), fresh.c0, sc(3)), make_share(tiny(), fresh.c0, sc(5))};
    CHECK(combine_decrypt(tiny(), fresh, shares).value() == 13);
  }
  // c0 only repeats for w = 0 mod q.
  CHECK(rerandomize(tiny(), ct, combined, mpz_class(oracle::Q)) == ct);
}

TEST_CASE("group label mismatch is rejected")
{
  std::vector<GroupElement> one{el(18)};
  auto ct = encrypt(tiny(), one, el(9), sc(2));
  ct.group_label = "modp-2048";
  std::vector<DecryptionShare> shares{make_share(tiny(), ct.c0, sc(3))};
  CHECK_THROWS_AS(combine_decrypt(tiny(), ct, shares), std::invalid_argument);
}

TEST_CASE("multi-recipient round trip on the standard group")
{
  const auto& p = standard_params(SizeLabel::standard);
  SeededRng rng(5);
  std::vector<KeyPair> kps{keygen(p, rng), keygen(p, rng), keygen(p, rng)};
  std::vector<GroupElement> publics;
  for (const auto& k : kps)
    publics.push_back(k.public_key);
  auto m = encode_message(p, 424242);
  auto ct = encrypt(p, publics, m, rng);
  auto ct2 = rerandomize(p, ct, combined_public(p, publics), rng);
  CHECK(ct2.c0 != ct.c0);
  std::vector<DecryptionShare> shares;
  for (const auto& k : kps)
    shares.push_back(make_share(p, ct2.c0, k.private_key));
  CHECK(decode_message(p, combine_decrypt(p, ct2, shares)) == 424242);
  shares.pop_back();
  CHECK(combine_decrypt(p, ct2, shares) != m);
}
