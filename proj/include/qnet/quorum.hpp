// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

namespace qnet::quorum
{
  using KeyMask = std::uint64_t;
  inline constexpr std::size_t max_keys = 64;
  /// exact_threshold enumerates member subsets, so n is capped.
  inline constexpr std::size_t max_exact_members = 12;

  /// Which of k proxy keys each of n quorum members holds.
  struct QuorumAssignment
  {
    std::size_t n_members = 0;
    std::size_t k_keys = 0;
    std::size_t keys_per_member = 0;
    /// Member index -> key bitmask, exactly keys_per_member bits set.
    std::vector<KeyMask> held;

    std::vector<std::size_t> keys_of(std::size_t member) const;
    KeyMask all_keys() const;
  };

  /// Member m gets key m mod k first; each further key is uniform over the
  /// keys that member does not already hold, independently per member.
  QuorumAssignment assign(std::size_t n, std::size_t k, std::size_t keys_per_member, std::mt19937_64& rng);

  /// Rebuilds an assignment from explicit key lists (wire decoding, tests).
  QuorumAssignment from_key_lists(
    std::size_t k, std::size_t keys_per_member, const std::vector<std::vector<std::size_t>>& lists);

  bool covers(const QuorumAssignment& a, std::span<const std::size_t> members);

  /// True when every assignment the rule can produce covers all keys:
  /// n >= k (the first keys alone do) or keys_per_member == k.
  bool coverage_guaranteed(std::size_t n, std::size_t k, std::size_t keys_per_member);

  struct ThresholdStats
  {
    double mean_picks = 0;
    /// Sample standard deviation of the pick count (0 for exact results).
    double stddev = 0;
    /// Pick count -> probability.
    std::map<std::size_t, double> pick_distribution;
    /// P(picks in {4, 5, 6}).
    double p_window = 0;
    std::size_t trials = 0;
    std::size_t aborted_trials = 0;

    double probability_between(std::size_t lo, std::size_t hi) const;
    double standard_error() const;
  };

  enum class AssignmentMode
  {
    fresh_per_trial,
    fixed
  };

  /// Picks members uniformly without replacement until their keys cover all
  /// k keys; trials whose assignment cannot cover are counted as aborted.
  ThresholdStats simulate_threshold(
    std::size_t n,
    std::size_t k,
    std::size_t keys_per_member,
    std::size_t trials,
    std::mt19937_64& rng,
    AssignmentMode mode = AssignmentMode::fresh_per_trial);

  /// Exact distribution of the pick count, averaged over assignments.
  ///
  /// P(picks <= j) is the mean over all j-member subsets S of P(S covers).
  /// For fixed S the extra keys are independent per member, so
  /// P(S covers) = sum_U (-1)^|U| prod_{m in S} P(keys_m avoid U), taken over
  /// key sets U disjoint from the first keys of S. The product only depends on
  /// |U| and |S|.
  ThresholdStats exact_threshold(std::size_t n, std::size_t k, std::size_t keys_per_member);

  /// Exact distribution for one fixed assignment by subset enumeration.
  ThresholdStats exact_threshold(const QuorumAssignment& a);
}
