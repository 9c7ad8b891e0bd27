// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

// JSON encodings shared by the server, the client and the gateway. Big
// integers travel as canonical lowercase hex, byte payloads as base64.
// Decoders validate subgroup membership and throw std::invalid_argument on
// malformed input.

#include "qnet/content.hpp"
#include "qnet/proxy_reencrypt.hpp"
#include "qnet/quorum.hpp"

#include "json.hpp"

namespace qnet::wire
{
  using json = nlohmann::json;

  json element(const GroupElement& e);
  GroupElement element(const GroupParams& params, const json& j);
  Scalar scalar(const GroupParams& params, const json& j);

  json encode(const Ciphertext& ct);
  Ciphertext decode_ciphertext(const json& j);

  json encode(const DecryptionShare& s);
  DecryptionShare decode_share(const GroupParams& params, const json& j);

  json encode(const BlindedResponse& r);
  BlindedResponse decode_blinded(const GroupParams& params, const json& j);

  json encode(const UnblindShares& s);
  UnblindShares decode_unblind_shares(const GroupParams& params, const json& j);

  json encode(const BlindingRecord& r);
  BlindingRecord decode_blinding_record(const GroupParams& params, const json& j);

  json encode(const ProxyKeyPublic& k);
  ProxyKeyPublic decode_proxy_public(const GroupParams& params, const json& j);

  json encode(const WrappedProxyKey& w);
  WrappedProxyKey decode_wrapped(const json& j);

  json encode(const ContentItem& item);
  ContentItem decode_item(const json& j);

  json encode(const quorum::QuorumAssignment& a);
  quorum::QuorumAssignment decode_assignment(const json& j);

  json encode(const Circle& c);
  Circle decode_circle(const GroupParams& params, const json& j);

  json encode(const quorum::ThresholdStats& s);
}
