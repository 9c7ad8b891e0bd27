// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/content.hpp"

#include "qnet/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace qnet
{
  namespace
  {
    std::vector<GroupElement> publics_of(std::span<const ProxyKeyPublic> proxies)
    {
      if (proxies.empty())
        throw std::invalid_argument("protected content needs at least one proxy key");
      std::vector<GroupElement> out;
      out.reserve(proxies.size());
      for (const auto& p : proxies)
        out.push_back(p.public_key);
      return out;
    }

    std::vector<std::string> ids_of(std::span<const ProxyKeyPublic> proxies)
    {
      std::vector<std::string> out;
      for (const auto& p : proxies)
        out.push_back(p.key_id);
      return out;
    }
  }

  std::string_view to_string(Visibility v)
  {
    switch (v)
    {
      case Visibility::Public:
        return "public";
      case Visibility::Private:
        return "private";
      case Visibility::Circle:
        return "circle";
    }
    throw std::invalid_argument("bad visibility");
  }

  Visibility visibility_from_string(std::string_view s)
  {
    if (s == "public")
      return Visibility::Public;
    if (s == "private")
      return Visibility::Private;
    if (s == "circle")
      return Visibility::Circle;
    throw std::invalid_argument("unknown visibility: " + std::string(s));
  }

  std::string_view to_string(ContentKind k)
  {
    return k == ContentKind::Post ? "post" : "circle-key";
  }

  ContentKind kind_from_string(std::string_view s)
  {
    if (s == "post")
      return ContentKind::Post;
    if (s == "circle-key")
      return ContentKind::CircleKey;
    throw std::invalid_argument("unknown content kind: " + std::string(s));
  }

  void check_item(const ContentItem& item)
  {
    const bool wrapped = item.wrapped_key.has_value();
    const bool direct = item.short_ciphertext.has_value();
    switch (item.visibility)
    {
      case Visibility::Public:
        if (wrapped || direct || item.kind != ContentKind::Post)
          throw std::invalid_argument("public items carry no key material");
        return;
      case Visibility::Private:
        if (wrapped == direct || item.kind != ContentKind::Post)
          throw std::invalid_argument("private items need exactly one Elgamal ciphertext");
        if (item.proxy_key_ids.empty())
          throw std::invalid_argument("private items need proxy keys");
        return;
      case Visibility::Circle:
        if (!item.circle_id)
          throw std::invalid_argument("circle items need a circle id");
        if (item.kind == ContentKind::CircleKey)
        {
          if (!direct || wrapped || item.proxy_key_ids.empty())
            throw std::invalid_argument("circle key items need a direct ciphertext");
        }
        else if (wrapped || direct || item.payload.empty())
          throw std::invalid_argument("circle posts are sealed under the circle key only");
        return;
    }
  }

  bool has_protected_ciphertext(const ContentItem& item)
  {
    return item.wrapped_key.has_value() || item.short_ciphertext.has_value();
  }

  const Ciphertext& protected_ciphertext(const ContentItem& item)
  {
    if (item.short_ciphertext)
      return *item.short_ciphertext;
    if (item.wrapped_key)
      return *item.wrapped_key;
    throw std::invalid_argument("item has no Elgamal ciphertext");
  }

  std::size_t max_short_bytes(const GroupParams& params)
  {
    // Any byte string shorter than q's byte length is below q.
    return (mpz_sizeinbase(params.q.get_mpz_t(), 2) - 1) / 8;
  }

  ContentItem make_public(std::string owner_id, Bytes payload, Rng& rng)
  {
    ContentItem item;
    item.content_id = rng.random_id();
    item.owner_id = std::move(owner_id);
    item.visibility = Visibility::Public;
    item.payload = std::move(payload);
    return item;
  }

  ContentItem seal_short(
    const GroupParams& params,
    std::string owner_id,
    std::span<const std::uint8_t> payload,
    std::span<const ProxyKeyPublic> proxies,
    Rng& rng)
  {
    if (payload.empty())
      throw std::invalid_argument("empty message");
    if (payload.front() == 0)
      throw std::length_error("leading zero byte does not survive the short path; use seal_large");
    const mpz_class m = from_bytes(payload);
    if (m > params.q)
      throw std::length_error("message too long for the short path; use seal_large");

    const auto publics = publics_of(proxies);
    ContentItem item;
    item.content_id = rng.random_id();
    item.owner_id = std::move(owner_id);
    item.visibility = Visibility::Private;
    item.short_ciphertext = encrypt(params, publics, encode_message(params, m), rng);
    item.proxy_key_ids = ids_of(proxies);
    return item;
  }

  ContentItem seal_large(
    const GroupParams& params,
    std::string owner_id,
    std::span<const std::uint8_t> payload,
    std::span<const ProxyKeyPublic> proxies,
    Rng& rng)
  {
    const auto publics = publics_of(proxies);
    ContentItem item;
    item.content_id = rng.random_id();
    item.owner_id = std::move(owner_id);
    item.visibility = Visibility::Private;
    item.proxy_key_ids = ids_of(proxies);

    const SymmetricKey key = random_key(rng);
    item.payload = aead_seal(key, payload, large_ad(item), rng);
    item.wrapped_key = encrypt(params, publics, encode_key(params, key), rng);
    return item;
  }

  Bytes open_short(const GroupParams& params, const GroupElement& recovered)
  {
    return to_bytes(decode_message(params, recovered));
  }

  Bytes open_large(const GroupParams& params, const ContentItem& item, const GroupElement& recovered)
  {
    const SymmetricKey key = decode_key(params, recovered);
    return aead_open(key, item.payload, large_ad(item));
  }

  Bytes open_item(const GroupParams& params, const ContentItem& item, const GroupElement& recovered)
  {
    if (item.wrapped_key)
      return open_large(params, item, recovered);
    if (item.short_ciphertext)
      return open_short(params, recovered);
    throw std::invalid_argument("item has no Elgamal layer");
  }

  std::string large_ad(const ContentItem& item)
  {
    return "qnet/large/" + item.content_id;
  }

  std::string circle_ad(const std::string& circle_id, std::uint64_t epoch, const std::string& content_id)
  {
    return "qnet/circle/" + circle_id + "/" + std::to_string(epoch) + "/" + content_id;
  }

  CircleRotation circle_rotate_key(
    Circle& circle,
    const std::string& caller_id,
    const GroupParams& params,
    const std::map<std::string, GroupElement>& member_publics,
    Rng& rng,
    CircleRotationOptions options)
  {
    if (!circle.member_ids.contains(caller_id))
      throw PermissionError("only circle members may rotate the key");
    if (caller_id != circle.owner_id)
      throw PermissionError("only the circle owner may rotate the key");

    CircleRotation rot;
    rot.epoch = circle.key_epoch + 1;
    rot.quorum_members.assign(circle.member_ids.begin(), circle.member_ids.end());
    const std::size_t n = rot.quorum_members.size();
    const std::size_t k = std::clamp<std::size_t>(options.keys, 1, n);
    const std::size_t kpm = std::clamp<std::size_t>(options.keys_per_member, 1, k);

    std::mt19937_64 assign_rng(rng.next_u64());
    rot.quorum = quorum::assign(n, k, kpm, assign_rng);

    std::vector<ProxyKey> keys;
    for (std::size_t i = 0; i < k; ++i)
    {
      keys.push_back(gen_proxy_key(params, rng));
      rot.proxy_keys.push_back(public_part(keys.back()));
    }
    for (std::size_t m = 0; m < n; ++m)
    {
      const auto& member = rot.quorum_members[m];
      auto pk = member_publics.find(member);
      if (pk == member_publics.end())
        throw std::invalid_argument("no public key for circle member " + member);
      for (auto key_index : rot.quorum.keys_of(m))
        rot.wrapped.push_back(wrap(params, keys[key_index], member, pk->second, rng));
    }

    rot.circle_key = random_key(rng);
    ContentItem& item = rot.key_item;
    item.content_id = rng.random_id();
    item.owner_id = caller_id;
    item.visibility = Visibility::Circle;
    item.kind = ContentKind::CircleKey;
    item.circle_id = circle.circle_id;
    item.epoch = rot.epoch;
    item.proxy_key_ids = ids_of(rot.proxy_keys);
    const auto publics = publics_of(rot.proxy_keys);
    item.short_ciphertext = encrypt(params, publics, encode_key(params, rot.circle_key), rng);

    circle.key_epoch = rot.epoch;
    circle.quorum_members = rot.quorum_members;
    circle.quorum = rot.quorum;
    circle.proxy_keys = rot.proxy_keys;
    circle.key_items[rot.epoch] = item.content_id;
    return rot;
  }

  ContentItem seal_circle_post(
    const std::string& circle_id,
    std::uint64_t epoch,
    const SymmetricKey& circle_key,
    std::string owner_id,
    std::span<const std::uint8_t> payload,
    Rng& rng)
  {
    ContentItem item;
    item.content_id = rng.random_id();
    item.owner_id = std::move(owner_id);
    item.visibility = Visibility::Circle;
    item.circle_id = circle_id;
    item.epoch = epoch;
    item.payload = aead_seal(circle_key, payload, circle_ad(circle_id, epoch, item.content_id), rng);
    return item;
  }

  Bytes open_circle_post(const ContentItem& item, const SymmetricKey& circle_key)
  {
    if (item.visibility != Visibility::Circle || !item.circle_id)
      throw std::invalid_argument("not a circle post");
    return aead_open(circle_key, item.payload, circle_ad(*item.circle_id, item.epoch, item.content_id));
  }
}
