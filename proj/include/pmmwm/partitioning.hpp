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

// Stage 2: with the matching fixed, every left vertex carries the weight of
// its matched edge and the task reduces to packing those weights into m
// parts of capacity ubar while minimising the heaviest part.

#ifndef PMMWM_PARTITIONING_HPP_
#define PMMWM_PARTITIONING_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "pmmwm/core.hpp"
#include "pmmwm/error.hpp"

namespace pmmwm {

struct RestrictedInstance {
  std::vector<Weight> weights;  // w_u = original c(u, match(u))
  PartIndex m = 1;
  std::size_t ubar = 0;
};

// Vertex weights are read from `g`, which must be the ORIGINAL graph even when
// the matching was computed on a penalised copy.
inline RestrictedInstance make_restricted_instance(const BipartiteGraph& g,
                                                   const Matching& pi,
                                                   PartIndex m,
                                                   std::size_t ubar) {
  RestrictedInstance ri{std::vector<Weight>(g.left_size()), m, ubar};
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    const auto w = g.weight(static_cast<Vertex>(u), pi.match_of_u[u]);
    if (!w) {
      throw Error(ErrorCode::kEdgeNotFound,
                  "u" + std::to_string(u + 1) + " has no matched edge");
    }
    ri.weights[u] = *w;
  }
  return ri;
}

inline std::vector<Weight> part_loads(const Partition& p,
                                      const std::vector<Weight>& weights) {
  std::vector<Weight> loads(static_cast<std::size_t>(p.m), 0);
  for (std::size_t u = 0; u < weights.size(); ++u) {
    loads[static_cast<std::size_t>(p.part_of_u[u])] += weights[u];
  }
  return loads;
}

inline Weight max_load(const Partition& p, const std::vector<Weight>& weights) {
  const auto loads = part_loads(p, weights);
  return *std::max_element(loads.begin(), loads.end());
}

namespace detail {

// Vertex indices sorted by weight descending, lowest index first on ties.
inline std::vector<std::size_t> heaviest_first(const std::vector<Weight>& w) {
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  return order;
}

}  // namespace detail

// Capacity-aware LPT greedy: heaviest vertex first, each into the
// least-loaded part that still has room (lowest index on ties).
inline Partition rph_partition(const RestrictedInstance& ri) {
  const std::size_t n1 = ri.weights.size();
  if (ri.m < 1 || static_cast<std::size_t>(ri.m) * ri.ubar < n1) {
    throw Error(ErrorCode::kInfeasible,
                "m * ubar < n1: no partition respects the capacity");
  }
  const auto m = static_cast<std::size_t>(ri.m);
  Partition p{std::vector<PartIndex>(n1, 0), ri.m, ri.ubar};
  std::vector<Weight> loads(m, 0);
  std::vector<std::size_t> sizes(m, 0);
  for (std::size_t u : detail::heaviest_first(ri.weights)) {
    std::size_t best = m;
    for (std::size_t k = 0; k < m; ++k) {
      if (sizes[k] >= ri.ubar) continue;
      if (best == m || loads[k] < loads[best]) best = k;
    }
    p.part_of_u[u] = static_cast<PartIndex>(best);
    loads[best] += ri.weights[u];
    ++sizes[best];
  }
  return p;
}

// First-improvement descent on the max load. Each round looks at the
// heaviest part k (lowest index on ties) and applies the first move that
// strictly lowers the max load:
//   relocate: a vertex of k moves to a part with spare capacity;
//   swap:     a vertex of k trades places with a lighter vertex elsewhere.
// Vertices of k are tried heaviest first, target parts in ascending order,
// relocations before swaps. Stops at a local optimum or after 10 * n1 rounds.
inline Partition ls_improve(Partition p, const RestrictedInstance& ri) {
  const std::size_t n1 = ri.weights.size();
  const auto m = static_cast<std::size_t>(p.m);
  if (m < 2 || n1 == 0) return p;
  const auto& w = ri.weights;
  auto loads = part_loads(p, w);
  std::vector<std::size_t> sizes(m, 0);
  for (PartIndex k : p.part_of_u) ++sizes[static_cast<std::size_t>(k)];
  const auto order = detail::heaviest_first(w);
  std::vector<std::vector<std::size_t>> members(m);

  for (std::size_t round = 0; round < 10 * n1; ++round) {
    const auto k = static_cast<std::size_t>(
        std::max_element(loads.begin(), loads.end()) - loads.begin());
    const Weight current = loads[k];

    // Three heaviest parts, enough to know the max over parts other than
    // any two given ones.
    std::array<std::size_t, 3> top{m, m, m};
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t t = 0; t < 3; ++t) {
        if (top[t] == m || loads[j] > loads[top[t]]) {
          for (std::size_t s = 2; s > t; --s) top[s] = top[s - 1];
          top[t] = j;
          break;
        }
      }
    }
    auto max_other = [&](std::size_t a, std::size_t b) -> Weight {
      for (std::size_t t : top) {
        if (t != m && t != a && t != b) return loads[t];
      }
      return 0;
    };

    for (auto& list : members) list.clear();
    for (std::size_t u : order) {
      members[static_cast<std::size_t>(p.part_of_u[u])].push_back(u);
    }

    bool moved = false;
    for (std::size_t x : members[k]) {
      for (std::size_t j = 0; j < m && !moved; ++j) {
        if (j == k || sizes[j] >= p.ubar) continue;
        const Weight next = std::max(
            {current - w[x], loads[j] + w[x], max_other(k, j)});
        if (next < current) {
          p.part_of_u[x] = static_cast<PartIndex>(j);
          loads[k] -= w[x];
          loads[j] += w[x];
          --sizes[k];
          ++sizes[j];
          moved = true;
        }
      }
      if (moved) break;
    }
    for (std::size_t xi = 0; xi < members[k].size() && !moved; ++xi) {
      const std::size_t x = members[k][xi];
      for (std::size_t j = 0; j < m && !moved; ++j) {
        if (j == k) continue;
        const Weight rest = max_other(k, j);
        if (rest >= current) continue;
        for (std::size_t y : members[j]) {
          if (w[y] >= w[x]) continue;
          const Weight next = std::max(
              {current - w[x] + w[y], loads[j] - w[y] + w[x], rest});
          if (next < current) {
            p.part_of_u[x] = static_cast<PartIndex>(j);
            p.part_of_u[y] = static_cast<PartIndex>(k);
            loads[k] += w[y] - w[x];
            loads[j] += w[x] - w[y];
            moved = true;
            break;
          }
        }
      }
    }
    if (!moved) break;
  }
  return p;
}

}  // namespace pmmwm

#endif  // PMMWM_PARTITIONING_HPP_
