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

// Incremental rematching after a single-edge penalisation. Raising the cost
// of a matched edge keeps the previous labels dual feasible, so only the
// freed left endpoint has to be rematched: one match_vertex call, O(n^2) on a
// dense graph instead of a full O(n^3) solve.

#ifndef PMMWM_INCREMENTAL_HPP_
#define PMMWM_INCREMENTAL_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmmwm/core.hpp"
#include "pmmwm/cost.hpp"
#include "pmmwm/error.hpp"
#include "pmmwm/hungarian.hpp"

namespace pmmwm {

inline constexpr Weight kDefaultPenaltyFactor = 100;

// The original graph plus penalised-edge overrides. Effective costs are kept
// in a private copy of the adjacency so that the matching code reads them
// without a map lookup; the base graph is never modified and must outlive
// this object.
template <MatchingCost Cost = Weight>
class WorkingGraph {
 public:
  using cost_type = Cost;

  explicit WorkingGraph(const BipartiteGraph& base,
                        Weight penalty_factor = kDefaultPenaltyFactor)
      : base_(&base), penalty_(penalty_factor * base.c_max()) {
    if (penalty_factor < 1) {
      throw Error(ErrorCode::kPrecondition, "penalty factor must be >= 1");
    }
    offsets_.reserve(base.left_size() + 1);
    offsets_.push_back(0);
    arcs_.reserve(base.edge_count());
    for (std::size_t u = 0; u < base.left_size(); ++u) {
      const auto uu = static_cast<Vertex>(u);
      for (const auto& a : base.arcs(uu)) {
        arcs_.push_back({a.v, cost_traits<Cost>::make(uu, a.v, a.cost)});
      }
      offsets_.push_back(arcs_.size());
    }
  }

  const BipartiteGraph& base() const { return *base_; }
  std::size_t left_size() const { return base_->left_size(); }
  std::size_t right_size() const { return base_->right_size(); }

  std::span<const Arc<Cost>> arcs(Vertex u) const {
    const auto row = static_cast<std::size_t>(u);
    return {arcs_.data() + offsets_[row], offsets_[row + 1] - offsets_[row]};
  }

  // penalty_factor * c_max, in milli-units.
  Weight penalty() const { return penalty_; }

  const std::map<std::pair<Vertex, Vertex>, Weight>& overrides() const {
    return overrides_;
  }

  // Override if present, else the base weight; nullopt for non-edges.
  std::optional<Weight> effective_weight(Vertex u, Vertex v) const {
    if (auto it = overrides_.find({u, v}); it != overrides_.end()) {
      return it->second;
    }
    return base_->weight(u, v);
  }

  // Sets the effective weight of (u, v) to the penalty. Idempotent.
  void penalize(Vertex u, Vertex v) {
    if (u < 0 || static_cast<std::size_t>(u) >= left_size()) {
      throw Error(ErrorCode::kEdgeNotFound, "left vertex out of range");
    }
    const auto row = arcs(u);
    auto it = std::lower_bound(
        row.begin(), row.end(), v,
        [](const Arc<Cost>& a, Vertex key) { return a.v < key; });
    if (it == row.end() || it->v != v) {
      throw Error(ErrorCode::kEdgeNotFound,
                  "(u" + std::to_string(u + 1) + ", v" + std::to_string(v + 1) +
                      ") is not an edge");
    }
    const auto index = offsets_[static_cast<std::size_t>(u)] +
                       static_cast<std::size_t>(it - row.begin());
    arcs_[index].cost = cost_traits<Cost>::make(u, v, penalty_);
    overrides_[{u, v}] = penalty_;
  }

 private:
  const BipartiteGraph* base_;
  Weight penalty_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc<Cost>> arcs_;
  std::map<std::pair<Vertex, Vertex>, Weight> overrides_;
};

template <MatchingCost Cost>
void penalize_edge(WorkingGraph<Cost>& wg, Vertex u, Vertex v) {
  wg.penalize(u, v);
}

// Sum of effective (working) weights of the matched edges.
template <MatchingCost Cost>
Weight effective_total(const WorkingGraph<Cost>& wg, const Matching& pi) {
  return cost_traits<Cost>::primary(matching_cost(wg, pi));
}

// Restores optimality after the edge (u, match_of_u[u]) has been penalised:
// drops that edge and rematches u against the retained labels.
//
// Requires `duals` to be an optimal dual for `pi` on the graph as it was
// before the penalisation (which is what km_full or a previous kmm_step
// leaves behind).
template <MatchingCost Cost>
void kmm_step(const WorkingGraph<Cost>& wg, Matching& pi, DualState<Cost>& duals,
              Vertex u, SearchScratch<Cost>& scratch) {
  if (u < 0 || static_cast<std::size_t>(u) >= wg.left_size() ||
      !pi.is_matched(u)) {
    throw Error(ErrorCode::kPrecondition,
                "kmm_step: u" + std::to_string(u + 1) + " is not matched");
  }
  if (scratch.vis_u.size() != wg.left_size() ||
      scratch.vis_v.size() != wg.right_size()) {
    scratch.resize(wg.left_size(), wg.right_size());
  }
  const Vertex freed = pi.match_of_u[static_cast<std::size_t>(u)];
  pi.unlink(u);
  // With n1 < n2 a free v must carry a zero label. The vertex just released
  // may not, so the retained labels are no longer optimal; re-solve instead.
  if (wg.right_size() > wg.left_size() &&
      duals.ex_v[static_cast<std::size_t>(freed)] != cost_traits<Cost>::zero()) {
    pi = Matching(wg.left_size(), wg.right_size());
    duals = init_duals(wg);
    for (std::size_t x = 0; x < wg.left_size(); ++x) {
      match_vertex(static_cast<Vertex>(x), wg, duals, pi, scratch);
    }
    return;
  }
  match_vertex(u, wg, duals, pi, scratch);
}

// Entry point mirroring the KM-M routine: an empty matching triggers a full
// solve (fresh labels, every u matched in order); otherwise u is rematched
// and any other unmatched vertex is matched too.
template <MatchingCost Cost>
void kmm_entry(const WorkingGraph<Cost>& wg, Matching& pi, DualState<Cost>& duals,
               Vertex u, SearchScratch<Cost>& scratch) {
  if (pi.match_of_u.size() != wg.left_size() ||
      pi.match_of_v.size() != wg.right_size()) {
    pi = Matching(wg.left_size(), wg.right_size());
  }
  if (scratch.vis_u.size() != wg.left_size() ||
      scratch.vis_v.size() != wg.right_size()) {
    scratch.resize(wg.left_size(), wg.right_size());
  }
  if (!pi.empty()) {
    kmm_step(wg, pi, duals, u, scratch);
  } else {
    duals = init_duals(wg);
  }
  for (std::size_t x = 0; x < wg.left_size(); ++x) {
    if (!pi.is_matched(static_cast<Vertex>(x))) {
      match_vertex(static_cast<Vertex>(x), wg, duals, pi, scratch);
    }
  }
}

}  // namespace pmmwm

#endif  // PMMWM_INCREMENTAL_HPP_
