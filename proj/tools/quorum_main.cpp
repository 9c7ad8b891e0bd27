// Copyright (c) 2026 The quorumnet Authors. All rights reserved.
// Licensed under the Apache 2.0 License.

// quorum simulate: probabilistic threshold of a quorum key distribution.

#include "qnet/quorum.hpp"
#include "qnet/wire.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

using namespace qnet;

int main(int argc, char** argv)
{
  CLI::App app{"Quorum key distribution statistics"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of the picks needed to cover all keys");
  std::size_t members = 10, keys = 6, kpm = 2, trials = 200000;
  std::uint64_t seed = 1;
  bool as_json = false, fixed = false, no_exact = false;
  sim->add_option("--members,-n", members, "Quorum size")->check(CLI::Range(1, 100000));
  sim->add_option("--keys,-k", keys, "Distinct keys")->check(CLI::Range(1, 64));
  sim->add_option("--keys-per-member", kpm, "Keys handed to each member")->check(CLI::Range(1, 64));
  sim->add_option("--trials", trials, "Trials")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "Seed for the trial generator");
  sim->add_flag("--json", as_json, "Print one JSON object instead of the table");
  sim->add_flag("--fixed", fixed, "Draw one assignment and reuse it for every trial");
  sim->add_flag("--no-exact", no_exact, "Skip the exact enumeration column");

  CLI11_PARSE(app, argc, argv);

  try
  {
    std::mt19937_64 rng(seed);
    const auto mode = fixed ? quorum::AssignmentMode::fixed : quorum::AssignmentMode::fresh_per_trial;
    const auto start = std::chrono::steady_clock::now();
    const auto stats = quorum::simulate_threshold(members, keys, kpm, trials, rng, mode);
    const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::optional<quorum::ThresholdStats> exact;
    if (!no_exact && !fixed && members <= quorum::max_exact_members && quorum::coverage_guaranteed(members, keys, kpm))
      exact = quorum::exact_threshold(members, keys, kpm);

    if (as_json)
    {
      auto j = wire::encode(stats);
      j["members"] = members;
      j["keys"] = keys;
      j["keys_per_member"] = kpm;
      j["seed"] = seed;
      j["mode"] = fixed ? "fixed" : "fresh";
      j["seconds"] = seconds;
      if (exact)
      {
        j["exact_mean_picks"] = exact->mean_picks;
        j["exact_p_window"] = exact->p_window;
      }
      std::cout << j.dump() << '\n';
      return 0;
    }

    std::printf("%6s %12s%s\n", "picks", "probability", exact ? "        exact" : "");
    std::set<std::size_t> rows;
    for (const auto& [p, prob] : stats.pick_distribution)
      rows.insert(p);
    if (exact)
      for (const auto& [p, prob] : exact->pick_distribution)
        rows.insert(p);
    for (auto p : rows)
    {
      auto it = stats.pick_distribution.find(p);
      const double prob = it == stats.pick_distribution.end() ? 0.0 : it->second;
      if (exact)
      {
        auto e = exact->pick_distribution.find(p);
        std::printf(
          "%6zu %12.6f %12.6f\n", p, prob, e == exact->pick_distribution.end() ? 0.0 : e->second);
      }
      else
        std::printf("%6zu %12.6f\n", p, prob);
    }
    std::printf(
      "mean picks %.4f (se %.4f, sd %.4f), P(4..6) %.4f, trials %zu, aborted %zu, %.2f s",
      stats.mean_picks,
      stats.standard_error(),
      stats.stddev,
      stats.p_window,
      stats.trials,
      stats.aborted_trials,
      seconds);
    if (exact)
      std::printf(", exact mean %.4f, exact P(4..6) %.4f", exact->mean_picks, exact->p_window);
    std::printf("\n");
  }
  catch (const std::exception& e)
  {
    std::cerr << "quorum: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
