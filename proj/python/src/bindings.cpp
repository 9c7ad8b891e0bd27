// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.

// Thin bindings over the protocol core. Group elements and scalars travel as
// lowercase hex; structured values travel as JSON text in the wire format.

#include "qnet/content.hpp"
#include "qnet/errors.hpp"
#include "qnet/proxy_keys.hpp"
#include "qnet/proxy_reencrypt.hpp"
#include "qnet/quorum.hpp"
#include "qnet/wire.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qnet;
using json = nlohmann::json;

namespace
{
  std::unique_ptr<Rng> make_rng(std::optional<std::uint64_t> seed)
  {
    if (seed)
      return std::make_unique<SeededRng>(*seed);
    return std::make_unique<SystemRng>();
  }

  const GroupParams& group(const std::string& label)
  {
    return params_for_label(label);
  }

  std::vector<GroupElement> elements(const GroupParams& params, const std::vector<std::string>& hex)
  {
    std::vector<GroupElement> out;
    for (const auto& h : hex)
      out.push_back(GroupElement::from(params, from_hex(h)));
    return out;
  }

  Scalar scalar(const GroupParams& params, const std::string& hex)
  {
    return Scalar::from(params, from_hex(hex));
  }

  std::string hex(const GroupElement& e)
  {
    return to_hex(e.value());
  }

  py::bytes to_py(const Bytes& b)
  {
    return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
  }

  Bytes from_py(const py::bytes& b)
  {
    const std::string s = b;
    return Bytes(s.begin(), s.end());
  }

  py::dict stats_dict(const quorum::ThresholdStats& s)
  {
    py::dict dist;
    for (const auto& [picks, p] : s.pick_distribution)
      dist[py::int_(picks)] = p;
    py::dict d;
    d["mean_picks"] = s.mean_picks;
    d["stddev"] = s.stddev;
    d["standard_error"] = s.standard_error();
    d["p_window"] = s.p_window;
    d["trials"] = s.trials;
    d["aborted_trials"] = s.aborted_trials;
    d["distribution"] = dist;
    return d;
  }

  /// Private keys by key id, hex.
  using KeyRing = std::map<std::string, std::string>;

  UnblindShares shares_for(const GroupParams& params, const BlindedResponse& resp, const KeyRing& keys)
  {
    UnblindShares shares;
    for (const auto& [id, x] : keys)
      add_unblind_shares(params, resp, scalar(params, x), id, shares);
    return shares;
  }
}

PYBIND11_MODULE(_core, m)
{
  m.doc() = "quorumnet protocol core";

  py::register_exception<DecryptionError>(m, "DecryptionError", PyExc_ValueError);
  py::register_exception<AuthenticationError>(m, "AuthenticationError", PyExc_ValueError);

  m.def(
    "group_params",
    [](const std::string& label) {
      const auto& p = group(label);
      py::dict d;
      d["label"] = p.label;
      d["p"] = to_hex(p.p);
      d["q"] = to_hex(p.q);
      d["g"] = to_hex(p.g);
      return d;
    },
    py::arg("label"));

  m.def(
    "keygen",
    [](const std::string& label, std::optional<std::uint64_t> seed) {
      auto rng = make_rng(seed);
      const auto kp = keygen(group(label), *rng);
      return std::make_pair(to_hex(kp.private_key.value()), hex(kp.public_key));
    },
    py::arg("label"),
    py::arg("seed") = py::none(),
    "Returns (private, public) as hex.");

  m.def(
    "public_key",
    [](const std::string& label, const std::string& private_hex) {
      const auto& p = group(label);
      return hex(keypair_from_private(p, scalar(p, private_hex)).public_key);
    },
    py::arg("label"),
    py::arg("private_key"));

  m.def(
    "encode_message",
    [](const std::string& label, const std::string& m_hex) { return hex(encode_message(group(label), from_hex(m_hex))); },
    py::arg("label"),
    py::arg("message"));

  m.def(
    "decode_message",
    [](const std::string& label, const std::string& e_hex) {
      const auto& p = group(label);
      return to_hex(decode_message(p, GroupElement::from(p, from_hex(e_hex))));
    },
    py::arg("label"),
    py::arg("element"));

  m.def(
    "encrypt",
    [](const std::string& label,
       const std::vector<std::string>& recipients,
       const std::string& element_hex,
       std::optional<std::uint64_t> seed) {
      const auto& p = group(label);
      auto rng = make_rng(seed);
      const auto pks = elements(p, recipients);
      return wire::encode(encrypt(p, pks, GroupElement::from(p, from_hex(element_hex)), *rng)).dump();
    },
    py::arg("label"),
    py::arg("recipients"),
    py::arg("element"),
    py::arg("seed") = py::none(),
    "Encrypts a subgroup element (hex) to every recipient key; returns ciphertext JSON.");

  m.def(
    "decrypt",
    [](const std::string& ciphertext_json, const std::vector<std::string>& private_keys) {
      const auto ct = wire::decode_ciphertext(json::parse(ciphertext_json));
      const auto& p = group(ct.group_label);
      std::vector<DecryptionShare> shares;
      for (const auto& x : private_keys)
        shares.push_back(make_share(p, ct.c0, scalar(p, x)));
      return hex(combine_decrypt(p, ct, shares));
    },
    py::arg("ciphertext"),
    py::arg("private_keys"));

  m.def(
    "blind",
    [](const std::string& ciphertext_json,
       const std::vector<std::string>& recipients,
       std::optional<std::uint64_t> seed) {
      const auto ct = wire::decode_ciphertext(json::parse(ciphertext_json));
      const auto& p = group(ct.group_label);
      auto rng = make_rng(seed);
      const auto pks = elements(p, recipients);
      auto [resp, record] = blind(p, ct, pks, *rng, "python", "python");
      return std::make_pair(wire::encode(resp).dump(), wire::encode(record).dump());
    },
    py::arg("ciphertext"),
    py::arg("recipients"),
    py::arg("seed") = py::none(),
    "Returns (blinded response JSON, blinding record JSON).");

  m.def(
    "unblind",
    [](const std::string& label, const std::string& response_json, const KeyRing& keys) {
      const auto& p = group(label);
      const auto resp = wire::decode_blinded(p, json::parse(response_json));
      return hex(unblind(p, resp, shares_for(p, resp, keys)));
    },
    py::arg("label"),
    py::arg("response"),
    py::arg("keys"),
    "keys maps a contributor id to its private key; every recipient must be present.");

  m.def(
    "wrap",
    [](const std::string& label,
       const std::string& key_id,
       const std::string& proxy_private,
       const std::string& holder_id,
       const std::string& holder_public,
       std::optional<std::uint64_t> seed) {
      const auto& p = group(label);
      auto rng = make_rng(seed);
      const auto key = proxy_key_from_private(p, key_id, scalar(p, proxy_private));
      return wire::encode(wrap(p, key, holder_id, GroupElement::from(p, from_hex(holder_public)), *rng)).dump();
    },
    py::arg("label"),
    py::arg("key_id"),
    py::arg("proxy_private"),
    py::arg("holder_id"),
    py::arg("holder_public"),
    py::arg("seed") = py::none());

  m.def(
    "unwrap",
    [](const std::string& wrapped_json, const std::string& holder_private) {
      const auto w = wire::decode_wrapped(json::parse(wrapped_json));
      const auto& p = group(w.group_label);
      return to_hex(unwrap(p, w, scalar(p, holder_private)).value());
    },
    py::arg("wrapped"),
    py::arg("holder_private"));

  m.def(
    "seal",
    [](const std::string& label,
       const std::string& owner_id,
       const py::bytes& payload,
       const std::map<std::string, std::string>& proxies,
       std::optional<std::uint64_t> seed) {
      const auto& p = group(label);
      auto rng = make_rng(seed);
      std::vector<ProxyKeyPublic> pubs;
      for (const auto& [id, pk] : proxies)
        pubs.push_back({id, GroupElement::from(p, from_hex(pk))});
      const auto bytes = from_py(payload);
      ContentItem item;
      try
      {
        item = seal_short(p, owner_id, bytes, pubs, *rng);
      }
      catch (const std::length_error&)
      {
        item = seal_large(p, owner_id, bytes, pubs, *rng);
      }
      return wire::encode(item).dump();
    },
    py::arg("label"),
    py::arg("owner_id"),
    py::arg("payload"),
    py::arg("proxies"),
    py::arg("seed") = py::none(),
    "Seals payload under the proxy public keys (id -> hex); returns content item JSON.");

  m.def(
    "open",
    [](const std::string& item_json, const KeyRing& keys) {
      const auto item = wire::decode_item(json::parse(item_json));
      const auto& ct = protected_ciphertext(item);
      const auto& p = group(ct.group_label);
      std::vector<DecryptionShare> shares;
      for (const auto& id : item.proxy_key_ids)
      {
        auto it = keys.find(id);
        if (it == keys.end())
          throw DecryptionError("no private key for proxy key " + id);
        shares.push_back(make_share(p, ct.c0, scalar(p, it->second), id));
      }
      return to_py(open_item(p, item, combine_decrypt(p, ct, shares)));
    },
    py::arg("item"),
    py::arg("keys"),
    "Opens a sealed item directly with the proxy private keys (id -> hex).");

  auto q = m.def_submodule("quorum", "Key-holder quorum assignment and statistics");
  q.def(
    "assign",
    [](std::size_t n, std::size_t k, std::size_t kpm, std::uint64_t seed) {
      std::mt19937_64 rng(seed);
      const auto a = quorum::assign(n, k, kpm, rng);
      std::vector<std::vector<std::size_t>> out;
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(a.keys_of(i));
      return out;
    },
    py::arg("members"),
    py::arg("keys"),
    py::arg("keys_per_member"),
    py::arg("seed"));
  q.def(
    "simulate",
    [](std::size_t n, std::size_t k, std::size_t kpm, std::size_t trials, std::uint64_t seed, bool fixed) {
      std::mt19937_64 rng(seed);
      const auto mode = fixed ? quorum::AssignmentMode::fixed : quorum::AssignmentMode::fresh_per_trial;
      py::gil_scoped_release release;
      auto s = quorum::simulate_threshold(n, k, kpm, trials, rng, mode);
      py::gil_scoped_acquire acquire;
      return stats_dict(s);
    },
    py::arg("members"),
    py::arg("keys"),
    py::arg("keys_per_member"),
    py::arg("trials"),
    py::arg("seed"),
    py::arg("fixed") = false);
  q.def(
    "exact",
    [](std::size_t n, std::size_t k, std::size_t kpm) { return stats_dict(quorum::exact_threshold(n, k, kpm)); },
    py::arg("members"),
    py::arg("keys"),
    py::arg("keys_per_member"));
}
