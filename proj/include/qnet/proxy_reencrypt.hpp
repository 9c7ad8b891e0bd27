// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include "qnet/elgamal.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qnet
{
  /// Server-held (s, t) for one (content, viewer) pair. Deleting it revokes
  /// the viewer's previously collected shares.
  struct BlindingRecord
  {
    std::string content_id;
    std::string viewer_id;
    Scalar s;
    GroupElement t;
    std::int64_t created_at = 0;
  };

  /// What a viewer receives instead of the stored ciphertext.
  struct BlindedResponse
  {
    std::string content_id;
    GroupElement c_u; // c1 * t
    GroupElement p_u; // t * prod pk^s
    GroupElement g_s;
    GroupElement g_r; // c0 of the stored ciphertext

    friend bool operator==(const BlindedResponse&, const BlindedResponse&) = default;
  };

  struct UnblindShares
  {
    std::vector<DecryptionShare> r_shares;
    std::vector<DecryptionShare> s_shares;
  };

  /// Draws s and tau uniformly (in that order) and sets t = g^tau so t stays
  /// in the subgroup.
  BlindingRecord make_blinding_record(
    const GroupParams& params, std::string content_id, std::string viewer_id, Rng& rng);

  /// Applies an existing record. Deterministic, so repeated fetches between
  /// revocations return identical responses.
  BlindedResponse apply_blinding(
    const GroupParams& params,
    const std::string& content_id,
    const Ciphertext& ct,
    std::span<const GroupElement> recipient_publics,
    const BlindingRecord& record);

  std::pair<BlindedResponse, BlindingRecord> blind(
    const GroupParams& params,
    const Ciphertext& ct,
    std::span<const GroupElement> recipient_publics,
    Rng& rng,
    std::string content_id = {},
    std::string viewer_id = {});

  /// Share pair from one key holder: (g^r)^-x and (g^s)^-x.
  void add_unblind_shares(
    const GroupParams& params,
    const BlindedResponse& resp,
    const Scalar& private_key,
    const std::string& contributor,
    UnblindShares& out);

  /// m = (c_u * prod r_shares) / (p_u * prod s_shares).
  /// Throws DecryptionError when the r and s contributor sets differ.
  GroupElement unblind(
    const GroupParams& params, const BlindedResponse& resp, const UnblindShares& shares);

  /// As above, additionally requiring the contributor set to equal expected.
  GroupElement unblind(
    const GroupParams& params,
    const BlindedResponse& resp,
    const UnblindShares& shares,
    const std::set<std::string>& expected);

  std::set<std::string> contributors(const std::vector<DecryptionShare>& shares);

  class BlindingRecordStore
  {
  public:
    using Factory = std::function<BlindingRecord()>;

    virtual ~BlindingRecordStore() = default;

    virtual std::optional<BlindingRecord> find_blinding(
      const std::string& content_id, const std::string& viewer_id) const = 0;

    /// Returns the existing record or atomically inserts make(). Concurrent
    /// callers for one pair all observe the same record.
    virtual BlindingRecord get_or_create_blinding(
      const std::string& content_id, const std::string& viewer_id, const Factory& make) = 0;

    virtual bool erase_blinding(const std::string& content_id, const std::string& viewer_id) = 0;
  };

  class InMemoryBlindingStore final : public BlindingRecordStore
  {
  public:
    std::optional<BlindingRecord> find_blinding(
      const std::string& content_id, const std::string& viewer_id) const override;
    BlindingRecord get_or_create_blinding(
      const std::string& content_id, const std::string& viewer_id, const Factory& make) override;
    bool erase_blinding(const std::string& content_id, const std::string& viewer_id) override;

  private:
    mutable std::mutex lock_;
    std::map<std::pair<std::string, std::string>, BlindingRecord> records_;
  };

  /// Deletes the pair's record; the next fetch gets fresh (s, t).
  bool revoke(BlindingRecordStore& store, const std::string& content_id, const std::string& viewer_id);
}
