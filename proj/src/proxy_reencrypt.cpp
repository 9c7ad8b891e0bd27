// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/proxy_reencrypt.hpp"

#include "qnet/errors.hpp"

#include <chrono>
#include <stdexcept>

namespace qnet
{
  namespace
  {
    std::int64_t now_ms()
    {
      using namespace std::chrono;
      return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
    }

    GroupElement product(
      const GroupParams& params, GroupElement acc, const std::vector<DecryptionShare>& shares)
    {
      for (const auto& s : shares)
        acc = mul(params, acc, s.value);
      return acc;
    }
  }

  BlindingRecord make_blinding_record(
    const GroupParams& params, std::string content_id, std::string viewer_id, Rng& rng)
  {
    auto s = Scalar::random(params, rng);
    auto tau = Scalar::random(params, rng);
    return BlindingRecord{
      std::move(content_id),
      std::move(viewer_id),
      std::move(s),
      generator_pow(params, tau.value()),
      now_ms()};
  }

  BlindedResponse apply_blinding(
    const GroupParams& params,
    const std::string& content_id,
    const Ciphertext& ct,
    std::span<const GroupElement> recipient_publics,
    const BlindingRecord& record)
  {
    require_group(params, ct);
    if (recipient_publics.empty())
      throw std::invalid_argument("recipient key list is empty");

    GroupElement p_u = record.t;
    for (const auto& pk : recipient_publics)
      p_u = mul(params, p_u, exp(params, pk, record.s));

    return BlindedResponse{
      content_id,
      mul(params, ct.c1, record.t),
      p_u,
      generator_pow(params, record.s.value()),
      ct.c0};
  }

  std::pair<BlindedResponse, BlindingRecord> blind(
    const GroupParams& params,
    const Ciphertext& ct,
    std::span<const GroupElement> recipient_publics,
    Rng& rng,
    std::string content_id,
    std::string viewer_id)
  {
    if (recipient_publics.empty())
      throw std::invalid_argument("recipient key list is empty");
    auto record = make_blinding_record(params, content_id, std::move(viewer_id), rng);
    auto resp = apply_blinding(params, content_id, ct, recipient_publics, record);
    return {std::move(resp), std::move(record)};
  }

  void add_unblind_shares(
    const GroupParams& params,
    const BlindedResponse& resp,
    const Scalar& private_key,
    const std::string& contributor,
    UnblindShares& out)
  {
    out.r_shares.push_back(make_share(params, resp.g_r, private_key, contributor));
    out.s_shares.push_back(make_share(params, resp.g_s, private_key, contributor));
  }

  std::set<std::string> contributors(const std::vector<DecryptionShare>& shares)
  {
    std::set<std::string> out;
    for (const auto& s : shares)
      out.insert(s.contributor);
    return out;
  }

  GroupElement unblind(
    const GroupParams& params, const BlindedResponse& resp, const UnblindShares& shares)
  {
    if (shares.r_shares.empty())
      throw DecryptionError("no decryption shares supplied");
    const auto r_set = contributors(shares.r_shares);
    if (r_set.size() != shares.r_shares.size())
      throw DecryptionError("duplicate contributor among r-shares");
    if (r_set != contributors(shares.s_shares) || shares.s_shares.size() != r_set.size())
      throw DecryptionError("r-share and s-share contributor sets differ");

    const GroupElement mt = product(params, resp.c_u, shares.r_shares);
    const GroupElement t = product(params, resp.p_u, shares.s_shares);
    GroupElement m = mul(params, mt, inverse(params, t));
    if (!is_member(params, m.value()))
      throw DecryptionError("unblinded value is not in the subgroup");
    return m;
  }

  GroupElement unblind(
    const GroupParams& params,
    const BlindedResponse& resp,
    const UnblindShares& shares,
    const std::set<std::string>& expected)
  {
    const auto have = contributors(shares.r_shares);
    if (have != expected)
    {
      std::string missing;
      for (const auto& id : expected)
        if (!have.contains(id))
          missing += (missing.empty() ? "" : ", ") + id;
      throw DecryptionError(
        missing.empty() ? "unexpected contributor in share set"
                        : "missing shares from: " + missing);
    }
    return unblind(params, resp, shares);
  }

  std::optional<BlindingRecord> InMemoryBlindingStore::find_blinding(
    const std::string& content_id, const std::string& viewer_id) const
  {
    std::lock_guard guard(lock_);
    auto it = records_.find({content_id, viewer_id});
    if (it == records_.end())
      return std::nullopt;
    return it->second;
  }

  BlindingRecord InMemoryBlindingStore::get_or_create_blinding(
    const std::string& content_id, const std::string& viewer_id, const Factory& make)
  {
    std::lock_guard guard(lock_);
    auto key = std::make_pair(content_id, viewer_id);
    auto it = records_.find(key);
    if (it == records_.end())
      it = records_.emplace(std::move(key), make()).first;
    return it->second;
  }

  bool InMemoryBlindingStore::erase_blinding(
    const std::string& content_id, const std::string& viewer_id)
  {
    std::lock_guard guard(lock_);
    return records_.erase({content_id, viewer_id}) > 0;
  }

  bool revoke(BlindingRecordStore& store, const std::string& content_id, const std::string& viewer_id)
  {
    return store.erase_blinding(content_id, viewer_id);
  }
}
