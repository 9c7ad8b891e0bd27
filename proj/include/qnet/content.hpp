// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "qnet/elgamal.hpp"
#include "qnet/proxy_keys.hpp"
#include "qnet/quorum.hpp"
#include "qnet/symmetric.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qnet
{
  enum class Visibility
  {
    Public,
    Private,
    Circle
  };

  enum class ContentKind
  {
    Post,
    /// Carries a circle's symmetric key for one epoch.
    CircleKey
  };

  std::string_view to_string(Visibility v);
  Visibility visibility_from_string(std::string_view s);
  std::string_view to_string(ContentKind k);
  ContentKind kind_from_string(std::string_view s);

  /// Payloads at or below this size default to the direct Elgamal path.
  inline constexpr std::size_t short_cutover = 64;

  struct ContentItem
  {
    std::string content_id;
    std::string owner_id;
    Visibility visibility = Visibility::Public;
    ContentKind kind = ContentKind::Post;
    /// Plaintext for public items, AEAD output for large and circle items,
    /// empty for short items.
    Bytes payload;
    /// Symmetric key of a large item, sealed as short content.
    std::optional<Ciphertext> wrapped_key;
    /// Direct Elgamal encryption of a short item or a circle key.
    std::optional<Ciphertext> short_ciphertext;
    std::vector<std::string> proxy_key_ids;
    std::optional<std::string> circle_id;
    std::uint64_t epoch = 0;
  };

  /// Throws std::invalid_argument when the visibility/ciphertext combination
  /// is inconsistent.
  void check_item(const ContentItem& item);

  /// True for items the server must only hand out blinded.
  bool has_protected_ciphertext(const ContentItem& item);
  const Ciphertext& protected_ciphertext(const ContentItem& item);

  /// Largest short payload the group can carry directly.
  std::size_t max_short_bytes(const GroupParams& params);

  ContentItem make_public(std::string owner_id, Bytes payload, Rng& rng);

  /// Payload as one Elgamal element under all the given proxy keys. The
  /// bytes are read as a big-endian integer, so the first byte must be
  /// nonzero and the value at most q; otherwise std::length_error tells the
  /// caller to use seal_large.
  ContentItem seal_short(
    const GroupParams& params,
    std::string owner_id,
    std::span<const std::uint8_t> payload,
    std::span<const ProxyKeyPublic> proxies,
    Rng& rng);

  /// Fresh symmetric key and nonce; the key is sealed under the proxies.
  ContentItem seal_large(
    const GroupParams& params,
    std::string owner_id,
    std::span<const std::uint8_t> payload,
    std::span<const ProxyKeyPublic> proxies,
    Rng& rng);

  Bytes open_short(const GroupParams& params, const GroupElement& recovered);
  Bytes open_large(const GroupParams& params, const ContentItem& item, const GroupElement& recovered);

  /// Dispatches on the item shape. recovered is the unblinded or combined
  /// plaintext element of the item's protected ciphertext.
  Bytes open_item(const GroupParams& params, const ContentItem& item, const GroupElement& recovered);

  std::string large_ad(const ContentItem& item);
  std::string circle_ad(const std::string& circle_id, std::uint64_t epoch, const std::string& content_id);

  struct Circle
  {
    std::string circle_id;
    std::string owner_id;
    std::set<std::string> member_ids;
    /// Quorum member index -> user id.
    std::vector<std::string> quorum_members;
    quorum::QuorumAssignment quorum;
    /// Key index in the quorum assignment -> proxy key.
    std::vector<ProxyKeyPublic> proxy_keys;
    std::uint64_t key_epoch = 0;
    /// Epoch -> content id of the item carrying that epoch's key.
    std::map<std::uint64_t, std::string> key_items;
  };

  struct CircleRotationOptions
  {
    std::size_t keys = 3;
    std::size_t keys_per_member = 1;
  };

  struct CircleRotation
  {
    std::uint64_t epoch = 0;
    SymmetricKey circle_key{};
    ContentItem key_item;
    std::vector<ProxyKeyPublic> proxy_keys;
    std::vector<WrappedProxyKey> wrapped;
    std::vector<std::string> quorum_members;
    quorum::QuorumAssignment quorum;
  };

  /// New epoch: fresh proxy keys spread over the circle members with the
  /// quorum rule (every member gets at least one wrapped key), and a fresh
  /// circle key sealed under all of them. Only the owner may rotate.
  /// member_publics must hold a public key for every member.
  CircleRotation circle_rotate_key(
    Circle& circle,
    const std::string& caller_id,
    const GroupParams& params,
    const std::map<std::string, GroupElement>& member_publics,
    Rng& rng,
    CircleRotationOptions options = {});

  ContentItem seal_circle_post(
    const std::string& circle_id,
    std::uint64_t epoch,
    const SymmetricKey& circle_key,
    std::string owner_id,
    std::span<const std::uint8_t> payload,
    Rng& rng);

  Bytes open_circle_post(const ContentItem& item, const SymmetricKey& circle_key);
}
