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

// Exact minimum-cost perfect matching on U by the Kuhn-Munkres (Hungarian)
// method with slack bookkeeping. The minimum problem is solved as a maximum
// problem on negated costs c_hat = -c; DualState stores labels in that
// convention, so feasibility reads ex_u + ex_v >= c_hat(u, v).
//
// The search state lives in SearchScratch so that it can be reused across
// calls and so that callers (the incremental module) can keep DualState alive
// between solves.

#ifndef PMMWM_HUNGARIAN_HPP_
#define PMMWM_HUNGARIAN_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "pmmwm/core.hpp"
#include "pmmwm/cost.hpp"
#include "pmmwm/error.hpp"

namespace pmmwm {

template <MatchingCost Cost>
struct DualState {
  std::vector<Cost> ex_u;
  std::vector<Cost> ex_v;
  // Labels are expressed against c_hat = -c. Always true in this library; kept
  // so invariant checks never have to guess the sign.
  bool negated = true;
};

struct SearchCounters {
  std::uint64_t searches = 0;       // match_vertex calls
  std::uint64_t label_updates = 0;  // Delta adjustments
  std::uint64_t arcs_scanned = 0;
  std::uint64_t augmentations = 0;

  SearchCounters& operator+=(const SearchCounters& o) {
    searches += o.searches;
    label_updates += o.label_updates;
    arcs_scanned += o.arcs_scanned;
    augmentations += o.augmentations;
    return *this;
  }
};

// Alternating tree rooted at one unmatched u. vis_* mark tree membership,
// slack_v[v] is min over tree u of (ex_u + ex_v - c_hat) for v outside the
// tree and slack_arg_v[v] is the u attaining it. parent_v links every tree v
// to the u it was reached from, which is all the augment step needs.
template <MatchingCost Cost>
struct SearchScratch {
  std::vector<char> vis_u;
  std::vector<char> vis_v;
  std::vector<Cost> slack_v;
  std::vector<Vertex> slack_arg_v;
  std::vector<Vertex> parent_v;
  std::vector<Vertex> tree_u;
  std::vector<Vertex> tree_v;
  std::size_t next_scan = 0;  // tree_u[next_scan..] still to be scanned
  Vertex root = kNoVertex;
  SearchCounters counters;

  SearchScratch() = default;
  SearchScratch(std::size_t n1, std::size_t n2) { resize(n1, n2); }

  void resize(std::size_t n1, std::size_t n2) {
    vis_u.assign(n1, 0);
    vis_v.assign(n2, 0);
    slack_v.assign(n2, cost_traits<Cost>::infinity());
    slack_arg_v.assign(n2, kNoVertex);
    parent_v.assign(n2, kNoVertex);
    tree_u.clear();
    tree_v.clear();
    next_scan = 0;
    root = kNoVertex;
  }

  // Starts a fresh tree at u: clears marks left by the previous tree and
  // resets every slack to infinity.
  void begin(Vertex u) {
    for (Vertex x : tree_u) vis_u[static_cast<std::size_t>(x)] = 0;
    for (Vertex v : tree_v) vis_v[static_cast<std::size_t>(v)] = 0;
    std::fill(slack_v.begin(), slack_v.end(), cost_traits<Cost>::infinity());
    tree_u.assign(1, u);
    tree_v.clear();
    vis_u[static_cast<std::size_t>(u)] = 1;
    next_scan = 0;
    root = u;
  }
};

template <CostGraph G>
const Arc<typename G::cost_type>* find_arc(const G& g, Vertex u, Vertex v) {
  const auto row = g.arcs(u);
  auto it = std::lower_bound(
      row.begin(), row.end(), v,
      [](const Arc<typename G::cost_type>& a, Vertex key) { return a.v < key; });
  if (it == row.end() || it->v != v) return nullptr;
  return &*it;
}

// ex_v = 0, ex_u = max over incident edges of c_hat.
template <CostGraph G>
DualState<typename G::cost_type> init_duals(const G& g) {
  using Cost = typename G::cost_type;
  DualState<Cost> duals;
  duals.ex_u.resize(g.left_size());
  duals.ex_v.assign(g.right_size(), cost_traits<Cost>::zero());
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    const auto row = g.arcs(static_cast<Vertex>(u));
    if (row.empty()) {
      throw Error(ErrorCode::kIsolatedVertex,
                  "u" + std::to_string(u + 1) + " has no incident edges");
    }
    Cost best = -row.front().cost;
    for (const auto& a : row) best = std::max(best, -a.cost);
    duals.ex_u[u] = best;
  }
  return duals;
}

namespace detail {

template <MatchingCost Cost>
void augment(Vertex free_v, Matching& matching, const SearchScratch<Cost>& s) {
  Vertex v = free_v;
  while (true) {
    const Vertex x = s.parent_v[static_cast<std::size_t>(v)];
    const Vertex next = matching.match_of_u[static_cast<std::size_t>(x)];
    matching.link(x, v);
    if (x == s.root) break;
    v = next;
  }
}

// Adds v (just found tight from `from`) to the tree. Returns true when v was
// free and the matching has been augmented.
template <MatchingCost Cost>
bool grow(Vertex v, Vertex from, Matching& matching, SearchScratch<Cost>& s) {
  const auto vi = static_cast<std::size_t>(v);
  s.vis_v[vi] = 1;
  s.parent_v[vi] = from;
  s.tree_v.push_back(v);
  const Vertex mate = matching.match_of_v[vi];
  if (mate == kNoVertex) {
    augment(v, matching, s);
    ++s.counters.augmentations;
    return true;
  }
  s.vis_u[static_cast<std::size_t>(mate)] = 1;
  s.tree_u.push_back(mate);
  return false;
}

}  // namespace detail

// Searches the equality subgraph for an augmenting path from u, extending the
// alternating tree held in `scratch`. On success the matching is augmented
// along the path and true is returned. Otherwise the matching is untouched
// and slack_v holds the minimum gap from the tree to every outside v.
//
// If scratch is not currently rooted at u a fresh tree is started. Within one
// match_vertex call the tree is kept across label updates: every tree edge
// stays tight when tree labels move by +-Delta, so re-scanning it would only
// rediscover the same vertices.
template <CostGraph G>
bool find_path(Vertex u, const G& g, const DualState<typename G::cost_type>& duals,
               Matching& matching, SearchScratch<typename G::cost_type>& scratch) {
  using Cost = typename G::cost_type;
  if (scratch.root != u) scratch.begin(u);
  auto& s = scratch;
  while (s.next_scan < s.tree_u.size()) {
    const Vertex x = s.tree_u[s.next_scan++];
    const Cost ex_x = duals.ex_u[static_cast<std::size_t>(x)];
    for (const auto& a : g.arcs(x)) {
      const auto vi = static_cast<std::size_t>(a.v);
      if (s.vis_v[vi]) continue;
      ++s.counters.arcs_scanned;
      // ex_u + ex_v - c_hat with c_hat = -cost.
      const Cost gap = ex_x + duals.ex_v[vi] + a.cost;
      if (gap == cost_traits<Cost>::zero()) {
        if (detail::grow(a.v, x, matching, s)) return true;
      } else if (gap < s.slack_v[vi]) {
        s.slack_v[vi] = gap;
        s.slack_arg_v[vi] = x;
      }
    }
  }
  return false;
}

// Matches the unmatched vertex u, adjusting labels by Delta = min outside
// slack whenever the equality subgraph has no augmenting path. Dual
// feasibility and tightness of matched edges are preserved; the matching
// grows by exactly one edge.
//
// Throws Error(kInfeasible) when every outside slack is infinite, i.e. no
// label change can reach a free vertex. Slack entries that are still
// infinite (never adjacent to the tree) are skipped when taking Delta.
template <CostGraph G>
void match_vertex(Vertex u, const G& g, DualState<typename G::cost_type>& duals,
                  Matching& matching, SearchScratch<typename G::cost_type>& scratch) {
  using Cost = typename G::cost_type;
  constexpr Cost kInf = cost_traits<Cost>::infinity();
  if (matching.is_matched(u)) {
    throw Error(ErrorCode::kPrecondition,
                "u" + std::to_string(u + 1) + " is already matched");
  }
  auto& s = scratch;
  ++s.counters.searches;
  s.begin(u);
  const std::size_t n2 = g.right_size();
  bool matched = find_path(u, g, duals, matching, s);
  while (!matched) {
    Cost delta = kInf;
    for (std::size_t v = 0; v < n2; ++v) {
      if (!s.vis_v[v] && s.slack_v[v] < delta) delta = s.slack_v[v];
    }
    if (delta == kInf) {
      s.root = kNoVertex;
      throw Error(ErrorCode::kInfeasible,
                  "u" + std::to_string(u + 1) +
                      " cannot be matched: no perfect matching on U");
    }
    ++s.counters.label_updates;
    for (Vertex x : s.tree_u) duals.ex_u[static_cast<std::size_t>(x)] -= delta;
    for (Vertex v : s.tree_v) duals.ex_v[static_cast<std::size_t>(v)] += delta;
    for (std::size_t v = 0; v < n2; ++v) {
      if (s.vis_v[v] || s.slack_v[v] == kInf) continue;
      s.slack_v[v] -= delta;
    }
    // Edges whose slack hit zero are now tight; lowest v first.
    for (std::size_t v = 0; v < n2 && !matched; ++v) {
      if (s.vis_v[v] || s.slack_v[v] != cost_traits<Cost>::zero()) continue;
      matched = detail::grow(static_cast<Vertex>(v), s.slack_arg_v[v], matching, s);
    }
    if (!matched) matched = find_path(u, g, duals, matching, s);
  }
  s.root = kNoVertex;
}

template <MatchingCost Cost>
struct Assignment {
  Matching matching;
  DualState<Cost> duals;
};

// Minimum-cost perfect matching on U from scratch: init_duals, then
// match_vertex for u = 0, 1, ... in order.
template <CostGraph G>
Assignment<typename G::cost_type> km_full(
    const G& g, SearchScratch<typename G::cost_type>& scratch) {
  Assignment<typename G::cost_type> out{
      Matching(g.left_size(), g.right_size()), init_duals(g)};
  scratch.resize(g.left_size(), g.right_size());
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    match_vertex(static_cast<Vertex>(u), g, out.duals, out.matching, scratch);
  }
  return out;
}

template <CostGraph G>
Assignment<typename G::cost_type> km_full(const G& g) {
  SearchScratch<typename G::cost_type> scratch;
  return km_full(g, scratch);
}

// Sum of matched arc costs. Throws kEdgeNotFound for a non-edge pair.
template <CostGraph G>
typename G::cost_type matching_cost(const G& g, const Matching& matching) {
  using Cost = typename G::cost_type;
  Cost total = cost_traits<Cost>::zero();
  for (std::size_t u = 0; u < matching.match_of_u.size(); ++u) {
    const Vertex v = matching.match_of_u[u];
    if (v == kNoVertex) continue;
    const auto* arc = find_arc(g, static_cast<Vertex>(u), v);
    if (arc == nullptr) {
      throw Error(ErrorCode::kEdgeNotFound, "matched pair is not an edge");
    }
    total = total + arc->cost;
  }
  return total;
}

// Full edge scan: ex_u + ex_v >= c_hat on every edge.
template <CostGraph G>
bool is_dual_feasible(const G& g, const DualState<typename G::cost_type>& duals) {
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    for (const auto& a : g.arcs(static_cast<Vertex>(u))) {
      if (duals.ex_u[u] + duals.ex_v[static_cast<std::size_t>(a.v)] < -a.cost) {
        return false;
      }
    }
  }
  return true;
}

// Every matched edge is tight: ex_u + ex_v == c_hat.
template <CostGraph G>
bool is_complementary_slack(const G& g,
                            const DualState<typename G::cost_type>& duals,
                            const Matching& matching) {
  for (std::size_t u = 0; u < matching.match_of_u.size(); ++u) {
    const Vertex v = matching.match_of_u[u];
    if (v == kNoVertex) continue;
    const auto* arc = find_arc(g, static_cast<Vertex>(u), v);
    if (arc == nullptr) return false;
    if (duals.ex_u[u] + duals.ex_v[static_cast<std::size_t>(v)] != -arc->cost) {
      return false;
    }
  }
  return true;
}

}  // namespace pmmwm

#endif  // PMMWM_HUNGARIAN_HPP_
