// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/wire.hpp"

#include <stdexcept>

namespace qnet::wire
{
  namespace
  {
    const json& field(const json& j, const char* name)
    {
      if (!j.is_object())
        throw std::invalid_argument("expected a JSON object");
      auto it = j.find(name);
      if (it == j.end())
        throw std::invalid_argument(std::string("missing field: ") + name);
      return *it;
    }

    std::string text(const json& j, const char* name)
    {
      const auto& v = field(j, name);
      if (!v.is_string())
        throw std::invalid_argument(std::string("field must be a string: ") + name);
      return v.get<std::string>();
    }

    mpz_class big(const json& j)
    {
      if (!j.is_string())
        throw std::invalid_argument("big integer must be a hex string");
      return from_hex(j.get<std::string>());
    }
  }

  json element(const GroupElement& e)
  {
    return to_hex(e.value());
  }

  GroupElement element(const GroupParams& params, const json& j)
  {
    return GroupElement::from(params, big(j));
  }

  Scalar scalar(const GroupParams& params, const json& j)
  {
    return Scalar::from(params, big(j));
  }

  json encode(const Ciphertext& ct)
  {
    return {{"group_label", ct.group_label}, {"c0", element(ct.c0)}, {"c1", element(ct.c1)}};
  }

  Ciphertext decode_ciphertext(const json& j)
  {
    const auto label = text(j, "group_label");
    const auto& params = params_for_label(label);
    return Ciphertext{label, element(params, field(j, "c0")), element(params, field(j, "c1"))};
  }

  json encode(const DecryptionShare& s)
  {
    return {{"contributor", s.contributor}, {"value", element(s.value)}};
  }

  DecryptionShare decode_share(const GroupParams& params, const json& j)
  {
    return DecryptionShare{text(j, "contributor"), element(params, field(j, "value"))};
  }

  json encode(const BlindedResponse& r)
  {
    return {
      {"content_id", r.content_id},
      {"c_u", element(r.c_u)},
      {"p_u", element(r.p_u)},
      {"g_s", element(r.g_s)},
      {"g_r", element(r.g_r)}};
  }

  BlindedResponse decode_blinded(const GroupParams& params, const json& j)
  {
    return BlindedResponse{
      text(j, "content_id"),
      element(params, field(j, "c_u")),
      element(params, field(j, "p_u")),
      element(params, field(j, "g_s")),
      element(params, field(j, "g_r"))};
  }

  json encode(const UnblindShares& s)
  {
    json r = json::array();
    json ss = json::array();
    for (const auto& x : s.r_shares)
      r.push_back(encode(x));
    for (const auto& x : s.s_shares)
      ss.push_back(encode(x));
    return {{"r_shares", r}, {"s_shares", ss}};
  }

  UnblindShares decode_unblind_shares(const GroupParams& params, const json& j)
  {
    UnblindShares out;
    for (const auto& x : field(j, "r_shares"))
      out.r_shares.push_back(decode_share(params, x));
    for (const auto& x : field(j, "s_shares"))
      out.s_shares.push_back(decode_share(params, x));
    return out;
  }

  json encode(const BlindingRecord& r)
  {
    return {
      {"content_id", r.content_id},
      {"viewer_id", r.viewer_id},
      {"s", to_hex(r.s.value())},
      {"t", element(r.t)},
      {"created_at", r.created_at}};
  }

  BlindingRecord decode_blinding_record(const GroupParams& params, const json& j)
  {
    return BlindingRecord{
      text(j, "content_id"),
      text(j, "viewer_id"),
      scalar(params, field(j, "s")),
      element(params, field(j, "t")),
      field(j, "created_at").get<std::int64_t>()};
  }

  json encode(const ProxyKeyPublic& k)
  {
    return {{"key_id", k.key_id}, {"public_key", element(k.public_key)}};
  }

  ProxyKeyPublic decode_proxy_public(const GroupParams& params, const json& j)
  {
    return ProxyKeyPublic{text(j, "key_id"), element(params, field(j, "public_key"))};
  }

  json encode(const WrappedProxyKey& w)
  {
    return {
      {"key_id", w.key_id},
      {"holder_id", w.holder_id},
      {"group_label", w.group_label},
      {"w0", element(w.w0)},
      {"w1", to_hex(w.w1)}};
  }

  WrappedProxyKey decode_wrapped(const json& j)
  {
    const auto label = text(j, "group_label");
    const auto& params = params_for_label(label);
    mpz_class w1 = big(field(j, "w1"));
    if (w1 < 1 || w1 >= params.p)
      throw std::invalid_argument("w1 outside [1, p-1]");
    return WrappedProxyKey{
      text(j, "key_id"), text(j, "holder_id"), label, element(params, field(j, "w0")), std::move(w1)};
  }

  json encode(const ContentItem& item)
  {
    json j = {
      {"content_id", item.content_id},
      {"owner_id", item.owner_id},
      {"visibility", to_string(item.visibility)},
      {"kind", to_string(item.kind)},
      {"epoch", item.epoch},
      {"payload", to_base64(item.payload)},
      {"proxy_key_ids", item.proxy_key_ids}};
    if (item.wrapped_key)
      j["wrapped_key"] = encode(*item.wrapped_key);
    if (item.short_ciphertext)
      j["short_ciphertext"] = encode(*item.short_ciphertext);
    if (item.circle_id)
      j["circle_id"] = *item.circle_id;
    return j;
  }

  ContentItem decode_item(const json& j)
  {
    ContentItem item;
    item.content_id = text(j, "content_id");
    item.owner_id = text(j, "owner_id");
    item.visibility = visibility_from_string(text(j, "visibility"));
    item.kind = j.contains("kind") ? kind_from_string(text(j, "kind")) : ContentKind::Post;
    item.epoch = j.value("epoch", std::uint64_t{0});
    item.payload = from_base64(text(j, "payload"));
    if (j.contains("proxy_key_ids"))
      item.proxy_key_ids = field(j, "proxy_key_ids").get<std::vector<std::string>>();
    if (j.contains("wrapped_key"))
      item.wrapped_key = decode_ciphertext(j["wrapped_key"]);
    if (j.contains("short_ciphertext"))
      item.short_ciphertext = decode_ciphertext(j["short_ciphertext"]);
    if (j.contains("circle_id"))
      item.circle_id = text(j, "circle_id");
    check_item(item);
    return item;
  }

  json encode(const quorum::QuorumAssignment& a)
  {
    json held = json::array();
    for (std::size_t m = 0; m < a.n_members; ++m)
      held.push_back(a.keys_of(m));
    return {{"keys", a.k_keys}, {"keys_per_member", a.keys_per_member}, {"held", held}};
  }

  quorum::QuorumAssignment decode_assignment(const json& j)
  {
    return quorum::from_key_lists(
      field(j, "keys").get<std::size_t>(),
      field(j, "keys_per_member").get<std::size_t>(),
      field(j, "held").get<std::vector<std::vector<std::size_t>>>());
  }

  json encode(const Circle& c)
  {
    json keys = json::array();
    for (const auto& k : c.proxy_keys)
      keys.push_back(encode(k));
    json items = json::object();
    for (const auto& [epoch, id] : c.key_items)
      items[std::to_string(epoch)] = id;
    json j = {
      {"circle_id", c.circle_id},
      {"owner_id", c.owner_id},
      {"member_ids", c.member_ids},
      {"quorum_members", c.quorum_members},
      {"proxy_keys", keys},
      {"key_epoch", c.key_epoch},
      {"key_items", items}};
    if (c.quorum.n_members > 0)
      j["quorum"] = encode(c.quorum);
    return j;
  }

  Circle decode_circle(const GroupParams& params, const json& j)
  {
    Circle c;
    c.circle_id = text(j, "circle_id");
    c.owner_id = text(j, "owner_id");
    c.member_ids = field(j, "member_ids").get<std::set<std::string>>();
    c.quorum_members = field(j, "quorum_members").get<std::vector<std::string>>();
    for (const auto& k : field(j, "proxy_keys"))
      c.proxy_keys.push_back(decode_proxy_public(params, k));
    c.key_epoch = field(j, "key_epoch").get<std::uint64_t>();
    for (const auto& [epoch, id] : field(j, "key_items").items())
      c.key_items[std::stoull(epoch)] = id.get<std::string>();
    if (j.contains("quorum"))
      c.quorum = decode_assignment(j["quorum"]);
    return c;
  }

  json encode(const quorum::ThresholdStats& s)
  {
    json dist = json::array();
    for (const auto& [picks, p] : s.pick_distribution)
      dist.push_back({{"picks", picks}, {"probability", p}});
    return {
      {"mean_picks", s.mean_picks},
      {"stddev", s.stddev},
      {"standard_error", s.standard_error()},
      {"p_window", s.p_window},
      {"trials", s.trials},
      {"aborted_trials", s.aborted_trials},
      {"distribution", dist}};
  }
}
