// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.
#include "qnet/quorum.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qnet::quorum
{
  namespace
  {
    void validate(std::size_t n, std::size_t k, std::size_t kpm)
    {
      if (n < 1)
        throw std::invalid_argument("quorum needs at least one member");
      if (k < 1 || k > max_keys)
        throw std::invalid_argument("key count must be in [1, 64]");
      if (kpm < 1)
        throw std::invalid_argument("keys_per_member must be at least 1");
      if (kpm > k)
        throw std::invalid_argument("keys_per_member exceeds key count");
    }

    long double binom(long long n, long long r)
    {
      if (r < 0 || n < 0 || r > n)
        return 0;
      long double out = 1;
      for (long long i = 1; i <= r; ++i)
        out = out * static_cast<long double>(n - r + i) / static_cast<long double>(i);
      return out;
    }

    ThresholdStats from_cdf(const std::vector<long double>& cdf)
    {
      ThresholdStats stats;
      long double mean = 0;
      long double prev = 0;
      for (std::size_t j = 0; j < cdf.size(); ++j)
      {
        const long double p = cdf[j] - prev;
        prev = cdf[j];
        if (std::fabs(static_cast<double>(p)) > 1e-12)
          stats.pick_distribution[j] = static_cast<double>(p);
        mean += static_cast<long double>(j) * p;
      }
      stats.mean_picks = static_cast<double>(mean);
      stats.p_window = stats.probability_between(4, 6);
      return stats;
    }
  }

  std::vector<std::size_t> QuorumAssignment::keys_of(std::size_t member) const
  {
    std::vector<std::size_t> out;
    const KeyMask m = held.at(member);
    for (std::size_t key = 0; key < k_keys; ++key)
      if (m & (KeyMask{1} << key))
        out.push_back(key);
    return out;
  }

  KeyMask QuorumAssignment::all_keys() const
  {
    return k_keys == 64 ? ~KeyMask{0} : (KeyMask{1} << k_keys) - 1;
  }

  QuorumAssignment assign(std::size_t n, std::size_t k, std::size_t keys_per_member, std::mt19937_64& rng)
  {
    validate(n, k, keys_per_member);
    QuorumAssignment a{n, k, keys_per_member, std::vector<KeyMask>(n, 0)};
    for (std::size_t m = 0; m < n; ++m)
    {
      KeyMask mask = KeyMask{1} << (m % k);
      for (std::size_t extra = 1; extra < keys_per_member; ++extra)
      {
        const std::size_t free = k - static_cast<std::size_t>(std::popcount(mask));
        std::uniform_int_distribution<std::size_t> pick(0, free - 1);
        std::size_t nth = pick(rng);
        for (std::size_t key = 0; key < k; ++key)
        {
          const KeyMask bit = KeyMask{1} << key;
          if (mask & bit)
            continue;
          if (nth-- == 0)
          {
            mask |= bit;
            break;
          }
        }
      }
      a.held[m] = mask;
    }
    return a;
  }

  QuorumAssignment from_key_lists(
    std::size_t k, std::size_t keys_per_member, const std::vector<std::vector<std::size_t>>& lists)
  {
    validate(lists.size(), k, keys_per_member);
    QuorumAssignment a{lists.size(), k, keys_per_member, {}};
    for (const auto& keys : lists)
    {
      KeyMask mask = 0;
      for (auto key : keys)
      {
        if (key >= k)
          throw std::invalid_argument("key index out of range");
        mask |= KeyMask{1} << key;
      }
      if (static_cast<std::size_t>(std::popcount(mask)) != keys_per_member)
        throw std::invalid_argument("member must hold exactly keys_per_member distinct keys");
      a.held.push_back(mask);
    }
    return a;
  }

  bool covers(const QuorumAssignment& a, std::span<const std::size_t> members)
  {
    KeyMask acc = 0;
    for (auto m : members)
    {
      if (m >= a.n_members)
        throw std::out_of_range("member index out of range");
      acc |= a.held[m];
    }
    return acc == a.all_keys();
  }

  bool coverage_guaranteed(std::size_t n, std::size_t k, std::size_t keys_per_member)
  {
    return n >= k || keys_per_member == k;
  }

  double ThresholdStats::probability_between(std::size_t lo, std::size_t hi) const
  {
    double p = 0;
    for (const auto& [picks, prob] : pick_distribution)
      if (picks >= lo && picks <= hi)
        p += prob;
    return p;
  }

  double ThresholdStats::standard_error() const
  {
    const std::size_t used = trials - aborted_trials;
    return used == 0 ? 0.0 : stddev / std::sqrt(static_cast<double>(used));
  }

  ThresholdStats simulate_threshold(
    std::size_t n,
    std::size_t k,
    std::size_t keys_per_member,
    std::size_t trials,
    std::mt19937_64& rng,
    AssignmentMode mode)
  {
    validate(n, k, keys_per_member);
    if (trials < 1)
      throw std::invalid_argument("trials must be at least 1");
    if (n * keys_per_member < k)
      throw std::invalid_argument("coverage impossible: fewer key slots than keys");

    std::vector<std::uint64_t> counts(n + 1, 0);
    std::vector<std::size_t> order(n);
    std::size_t aborted = 0;
    QuorumAssignment a = assign(n, k, keys_per_member, rng);
    const KeyMask full = a.all_keys();

    for (std::size_t trial = 0; trial < trials; ++trial)
    {
      if (mode == AssignmentMode::fresh_per_trial && trial > 0)
        a = assign(n, k, keys_per_member, rng);

      KeyMask everything = 0;
      for (auto m : a.held)
        everything |= m;
      if (everything != full)
      {
        ++aborted;
        continue;
      }

      std::iota(order.begin(), order.end(), std::size_t{0});
      KeyMask acc = 0;
      for (std::size_t i = 0; i < n; ++i)
      {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(order[i], order[pick(rng)]);
        acc |= a.held[order[i]];
        if (acc == full)
        {
          ++counts[i + 1];
          break;
        }
      }
    }

    const std::size_t used = trials - aborted;
    if (used == 0)
      throw std::runtime_error("coverage impossible: every trial was aborted");

    ThresholdStats stats;
    stats.trials = trials;
    stats.aborted_trials = aborted;
    long double sum = 0;
    long double sum_sq = 0;
    for (std::size_t picks = 0; picks <= n; ++picks)
    {
      if (counts[picks] == 0)
        continue;
      const auto c = static_cast<long double>(counts[picks]);
      stats.pick_distribution[picks] = static_cast<double>(c / used);
      sum += c * picks;
      sum_sq += c * picks * picks;
    }
    const long double mean = sum / used;
    stats.mean_picks = static_cast<double>(mean);
    if (used > 1)
    {
      const long double var = (sum_sq - used * mean * mean) / (used - 1);
      stats.stddev = static_cast<double>(std::sqrt(std::max<long double>(var, 0)));
    }
    stats.p_window = stats.probability_between(4, 6);
    return stats;
  }

  ThresholdStats exact_threshold(std::size_t n, std::size_t k, std::size_t keys_per_member)
  {
    validate(n, k, keys_per_member);
    if (n > max_exact_members)
      throw std::invalid_argument("exact_threshold supports at most 12 members");
    if (!coverage_guaranteed(n, k, keys_per_member))
      throw std::invalid_argument("coverage is not guaranteed for this configuration");

    const auto kk = static_cast<long long>(k);
    const long double extra_choices = binom(kk - 1, static_cast<long long>(keys_per_member) - 1);
    // avoid[u]: probability that one member's extra keys miss u given keys.
    std::vector<long double> avoid(k + 1);
    for (std::size_t u = 0; u <= k; ++u)
      avoid[u] = binom(kk - 1 - static_cast<long long>(u), static_cast<long long>(keys_per_member) - 1) /
        extra_choices;

    std::vector<long double> covering(n + 1, 0);
    const std::size_t subsets = std::size_t{1} << n;
    for (std::size_t s = 0; s < subsets; ++s)
    {
      const int size = std::popcount(s);
      KeyMask first = 0;
      for (std::size_t m = 0; m < n; ++m)
        if (s & (std::size_t{1} << m))
          first |= KeyMask{1} << (m % k);
      const long long free = kk - std::popcount(first);

      long double p = 0;
      for (long long u = 0; u <= free; ++u)
      {
        const long double term = binom(free, u) * std::pow(avoid[u], size);
        p += (u % 2 == 0) ? term : -term;
      }
      covering[size] += p;
    }

    std::vector<long double> cdf(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
      cdf[j] = covering[j] / binom(static_cast<long long>(n), static_cast<long long>(j));
    return from_cdf(cdf);
  }

  ThresholdStats exact_threshold(const QuorumAssignment& a)
  {
    const std::size_t n = a.n_members;
    if (n > max_exact_members)
      throw std::invalid_argument("exact_threshold supports at most 12 members");
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (!covers(a, all))
      throw std::invalid_argument("assignment does not cover every key");

    std::vector<long double> covering(n + 1, 0);
    const KeyMask full = a.all_keys();
    for (std::size_t s = 0; s < (std::size_t{1} << n); ++s)
    {
      KeyMask acc = 0;
      for (std::size_t m = 0; m < n; ++m)
        if (s & (std::size_t{1} << m))
          acc |= a.held[m];
      if (acc == full)
        covering[std::popcount(s)] += 1;
    }
    std::vector<long double> cdf(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
      cdf[j] = covering[j] / binom(static_cast<long long>(n), static_cast<long long>(j));
    return from_cdf(cdf);
  }
}
