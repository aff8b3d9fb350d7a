// Copyright 2026 The pmmwm Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The two matching-then-partitioning frameworks. Each iteration runs
//   1. a minimum-weight perfect matching on the working (penalised) graph,
//   2. a restricted partitioning on the ORIGINAL weights of that matching,
//   3. a penalisation of the heaviest matched edge in the heaviest part,
// and the loop stops once the best objective has not strictly improved for
// `patience` consecutive iterations.
//
// MP_LS re-solves stage 1 from scratch every time. MP_KM-M keeps the matching
// and labels between iterations and only rematches the penalised vertex.

#ifndef PMMWM_SOLVER_HPP_
#define PMMWM_SOLVER_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmmwm/core.hpp"
#include "pmmwm/cost.hpp"
#include "pmmwm/error.hpp"
#include "pmmwm/hungarian.hpp"
#include "pmmwm/incremental.hpp"
#include "pmmwm/partitioning.hpp"

namespace pmmwm {

enum class Variant {
  kMpLs,   // full KM every iteration
  kMpKmM,  // incremental rematch
};

inline std::string_view variant_name(Variant v) {
  return v == Variant::kMpLs ? "MP_LS" : "MP_KM-M";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
  if (s == "MP_LS" || s == "ls" || s == "LS" || s == "mp_ls") {
    return Variant::kMpLs;
  }
  if (s == "MP_KM-M" || s == "MP_KM_M" || s == "kmm" || s == "KM-M" ||
      s == "km-m" || s == "mp_kmm") {
    return Variant::kMpKmM;
  }
  return std::nullopt;
}

using PartitionStrategy = std::function<Partition(const RestrictedInstance&)>;

inline Partition default_partition_strategy(const RestrictedInstance& ri) {
  return ls_improve(rph_partition(ri), ri);
}

struct SolverConfig {
  Weight penalty_factor = kDefaultPenaltyFactor;
  std::size_t patience = 20;
  Variant variant = Variant::kMpKmM;
  std::uint64_t rng_seed = 0;  // reserved; the loop is deterministic
  PartitionStrategy partitioner;  // empty: rph_partition + ls_improve
};

struct IterationRecord {
  Weight objective = 0;       // this iteration's candidate
  Weight best_objective = 0;  // best so far, including this iteration
  Weight matching_total = 0;  // effective (penalised) weight of the matching
  Vertex penalized_u = kNoVertex;  // kNoVertex on the final iteration
  Vertex penalized_v = kNoVertex;
  std::int64_t stage1_ns = 0;
  std::int64_t stage2_ns = 0;
  std::int64_t stage3_ns = 0;
  SearchCounters stage1_counters;
};

struct IterationTrace {
  std::vector<IterationRecord> iterations;
  std::int64_t total_ns = 0;
};

struct SolveResult {
  Solution best;
  IterationTrace trace;
};

// Heaviest part k (lowest index on ties), then the matched edge of maximum
// original weight among u in part k (lowest u on ties).
inline std::pair<Vertex, Vertex> select_penalty_edge(const BipartiteGraph& g,
                                                     const Matching& pi,
                                                     const Partition& p) {
  const auto loads = partition_weights(g, pi, p);
  const auto k = static_cast<PartIndex>(
      std::max_element(loads.begin(), loads.end()) - loads.begin());
  Vertex best_u = kNoVertex;
  Weight best_w = 0;
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    if (p.part_of_u[u] != k) continue;
    const Weight w = *g.weight(static_cast<Vertex>(u), pi.match_of_u[u]);
    if (best_u == kNoVertex || w > best_w) {
      best_u = static_cast<Vertex>(u);
      best_w = w;
    }
  }
  return {best_u, pi.match_of_u[static_cast<std::size_t>(best_u)]};
}

namespace detail {

inline std::int64_t elapsed_ns(std::chrono::steady_clock::time_point from,
                               std::chrono::steady_clock::time_point to) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(to - from).count();
}

}  // namespace detail

// Runs one framework to termination and returns the best solution found with
// the per-iteration trace. Errors from any stage are rethrown with the
// iteration number prepended.
//
// Stage 1 uses tie-broken costs so that both variants pick the same optimal
// edge set whenever several minimum-weight matchings exist; without it the
// two frameworks can legitimately diverge after the first tie.
//
// `run_with_costs<Weight>` skips the tie-breaking and is kept for comparison.
template <MatchingCost Cost>
SolveResult run_with_costs(const BipartiteGraph& g, PartIndex m, std::size_t ubar,
                           const SolverConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  if (cfg.patience < 1) {
    throw Error(ErrorCode::kPrecondition, "patience must be >= 1");
  }
  if (m < 1 || static_cast<std::size_t>(m) * ubar < g.left_size()) {
    throw Error(ErrorCode::kInfeasible, "m * ubar < n1");
  }
  const PartitionStrategy partition =
      cfg.partitioner ? cfg.partitioner : PartitionStrategy(default_partition_strategy);

  WorkingGraph<Cost> wg(g, cfg.penalty_factor);
  SearchScratch<Cost> scratch(g.left_size(), g.right_size());
  Matching pi(g.left_size(), g.right_size());
  DualState<Cost> duals;
  Vertex last_penalized = 0;

  SolveResult result;
  std::optional<Weight> best;
  std::size_t stale = 0;
  const auto run_start = Clock::now();

  for (std::size_t iteration = 1;; ++iteration) {
    IterationRecord rec;
    try {
      const auto t0 = Clock::now();
      const SearchCounters before = scratch.counters;
      if (cfg.variant == Variant::kMpLs) {
        auto fresh = km_full(wg, scratch);
        pi = std::move(fresh.matching);
      } else {
        kmm_entry(wg, pi, duals, last_penalized, scratch);
      }
      rec.matching_total = effective_total(wg, pi);
      const auto t1 = Clock::now();

      const auto ri = make_restricted_instance(g, pi, m, ubar);
      Partition p = partition(ri);
      rec.objective = evaluate_objective(g, pi, p);
      if (!best || rec.objective < *best) {
        best = rec.objective;
        result.best = Solution{pi, p, rec.objective};
        stale = 0;
      } else {
        ++stale;
      }
      rec.best_objective = *best;
      const auto t2 = Clock::now();

      rec.stage1_ns = detail::elapsed_ns(t0, t1);
      rec.stage2_ns = detail::elapsed_ns(t1, t2);
      rec.stage1_counters = scratch.counters;
      rec.stage1_counters.searches -= before.searches;
      rec.stage1_counters.label_updates -= before.label_updates;
      rec.stage1_counters.arcs_scanned -= before.arcs_scanned;
      rec.stage1_counters.augmentations -= before.augmentations;

      if (stale >= cfg.patience) {
        result.trace.iterations.push_back(rec);
        break;
      }

      const auto [u, v] = select_penalty_edge(g, pi, p);
      wg.penalize(u, v);
      last_penalized = u;
      rec.penalized_u = u;
      rec.penalized_v = v;
      rec.stage3_ns = detail::elapsed_ns(t2, Clock::now());
    } catch (const Error& e) {
      throw Error(e.code(), "iteration " + std::to_string(iteration) + ": " +
                                e.what());
    }
    result.trace.iterations.push_back(rec);
  }
  result.trace.total_ns = detail::elapsed_ns(run_start, Clock::now());
  return result;
}

inline SolveResult run(const BipartiteGraph& g, PartIndex m, std::size_t ubar,
                       const SolverConfig& cfg) {
  return run_with_costs<TieBrokenCost>(g, m, ubar, cfg);
}

}  // namespace pmmwm

#endif  // PMMWM_SOLVER_HPP_
