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

// Exhaustive references for tiny instances. Nothing here depends on the
// Hungarian, incremental, partitioning or solver code; tests use these to
// check those modules.

#ifndef PMMWM_ORACLE_HPP_
#define PMMWM_ORACLE_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pmmwm/core.hpp"
#include "pmmwm/error.hpp"

namespace pmmwm {

struct OracleLimits {
  static constexpr std::size_t kMaxMatchingSide = 8;  // 8! = 40320 injections
  static constexpr std::size_t kMaxPmmwmLeft = 6;
  static constexpr std::size_t kMaxPmmwmRight = 8;
  static constexpr PartIndex kMaxPmmwmParts = 3;
};

namespace detail {

// Calls visit(match_of_u) for every injection U -> V along existing edges.
inline void for_each_perfect_matching(
    const BipartiteGraph& g,
    const std::function<void(const std::vector<Vertex>&)>& visit) {
  const std::size_t n1 = g.left_size();
  std::vector<Vertex> chosen(n1, kNoVertex);
  std::vector<char> taken(g.right_size(), 0);
  std::function<void(std::size_t)> extend = [&](std::size_t u) {
    if (u == n1) {
      visit(chosen);
      return;
    }
    for (const auto& a : g.arcs(static_cast<Vertex>(u))) {
      const auto v = static_cast<std::size_t>(a.v);
      if (taken[v]) continue;
      taken[v] = 1;
      chosen[u] = a.v;
      extend(u + 1);
      taken[v] = 0;
    }
  };
  extend(0);
}

}  // namespace detail

// Minimum total weight over all matchings saturating U.
inline Weight brute_min_matching(const BipartiteGraph& g) {
  if (g.left_size() > OracleLimits::kMaxMatchingSide ||
      g.right_size() > OracleLimits::kMaxMatchingSide) {
    throw Error(ErrorCode::kTooLarge, "brute_min_matching is limited to 8x8");
  }
  std::optional<Weight> best;
  detail::for_each_perfect_matching(g, [&](const std::vector<Vertex>& mu) {
    Weight total = 0;
    for (std::size_t u = 0; u < mu.size(); ++u) {
      total += *g.weight(static_cast<Vertex>(u), mu[u]);
    }
    if (!best || total < *best) best = total;
  });
  if (!best) throw Error(ErrorCode::kInfeasible, "no matching saturates U");
  return *best;
}

// Smallest achievable max-part load for fixed vertex weights: enumerates
// set partitions into at most m blocks (restricted growth strings, so each
// unordered partition is seen once) with block sizes <= ubar.
inline Weight brute_partition(const std::vector<Weight>& w, PartIndex m,
                              std::size_t ubar) {
  const std::size_t n = w.size();
  std::optional<Weight> best;
  std::vector<Weight> loads;
  std::vector<std::size_t> sizes;
  std::function<void(std::size_t)> assign = [&](std::size_t u) {
    if (u == n) {
      const Weight f = loads.empty() ? 0 : *std::max_element(loads.begin(), loads.end());
      if (!best || f < *best) best = f;
      return;
    }
    for (std::size_t k = 0; k < loads.size(); ++k) {
      if (sizes[k] >= ubar) continue;
      loads[k] += w[u];
      ++sizes[k];
      assign(u + 1);
      loads[k] -= w[u];
      --sizes[k];
    }
    if (loads.size() < static_cast<std::size_t>(m)) {
      loads.push_back(w[u]);
      sizes.push_back(1);
      assign(u + 1);
      loads.pop_back();
      sizes.pop_back();
    }
  };
  assign(0);
  if (!best) throw Error(ErrorCode::kInfeasible, "no partition fits the capacity");
  return *best;
}

// Exact PMMWM optimum: minimum of f over every (perfect matching, feasible
// partition) pair.
inline Weight brute_pmmwm(const BipartiteGraph& g, PartIndex m, std::size_t ubar) {
  if (g.left_size() > OracleLimits::kMaxPmmwmLeft ||
      g.right_size() > OracleLimits::kMaxPmmwmRight ||
      m > OracleLimits::kMaxPmmwmParts) {
    throw Error(ErrorCode::kTooLarge, "brute_pmmwm is limited to n1 <= 6, m <= 3");
  }
  if (m < 1 || static_cast<std::size_t>(m) * ubar < g.left_size()) {
    throw Error(ErrorCode::kInfeasible, "m * ubar < n1");
  }
  std::optional<Weight> best;
  std::vector<Weight> w(g.left_size());
  detail::for_each_perfect_matching(g, [&](const std::vector<Vertex>& mu) {
    for (std::size_t u = 0; u < mu.size(); ++u) {
      w[u] = *g.weight(static_cast<Vertex>(u), mu[u]);
    }
    const Weight f = brute_partition(w, m, ubar);
    if (!best || f < *best) best = f;
  });
  if (!best) throw Error(ErrorCode::kInfeasible, "no matching saturates U");
  return *best;
}

}  // namespace pmmwm

#endif  // PMMWM_ORACLE_HPP_
