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

// Domain types shared by every module: the weighted bipartite graph, the
// matching and partition that make up a solution, objective evaluation and
// feasibility validation.

#ifndef PMMWM_CORE_HPP_
#define PMMWM_CORE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmmwm/error.hpp"
#include "pmmwm/weight.hpp"

namespace pmmwm {

using Vertex = std::int32_t;
using PartIndex = std::int32_t;

inline constexpr Vertex kNoVertex = -1;

// Adjacency entry seen from a left vertex. `Cost` is Weight for plain graphs;
// the solver uses a tie-broken cost type (see cost.hpp).
template <typename Cost>
struct Arc {
  Vertex v;
  Cost cost;
};

struct Edge {
  Vertex u;
  Vertex v;
  Weight weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable weighted bipartite graph G(U, V, E) with |U| = n1 <= n2 = |V|.
// Adjacency is stored in compressed rows, one row per left vertex, sorted by
// ascending right vertex. Missing edges are simply absent.
class BipartiteGraph {
 public:
  using cost_type = Weight;

  BipartiteGraph() = default;

  // Throws Error(kPrecondition) on n1 > n2, out-of-range endpoints, negative
  // weights or duplicate (u, v) pairs.
  BipartiteGraph(std::size_t n1, std::size_t n2, std::vector<Edge> edges)
      : n1_(n1), n2_(n2) {
    if (n1 > n2) {
      throw Error(ErrorCode::kPrecondition,
                  "n1 > n2 is not supported; transpose the instance");
    }
    for (const Edge& e : edges) {
      if (e.u < 0 || static_cast<std::size_t>(e.u) >= n1 || e.v < 0 ||
          static_cast<std::size_t>(e.v) >= n2) {
        throw Error(ErrorCode::kPrecondition,
                    "edge endpoint out of range: (" + std::to_string(e.u) +
                        ", " + std::to_string(e.v) + ")");
      }
      if (e.weight < 0) {
        throw Error(ErrorCode::kPrecondition, "negative edge weight");
      }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    offsets_.assign(n1 + 1, 0);
    arcs_.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if (i > 0 && edges[i - 1].u == e.u && edges[i - 1].v == e.v) {
        throw Error(ErrorCode::kPrecondition,
                    "duplicate edge (" + std::to_string(e.u) + ", " +
                        std::to_string(e.v) + ")");
      }
      ++offsets_[static_cast<std::size_t>(e.u) + 1];
      arcs_.push_back({e.v, e.weight});
      c_max_ = std::max(c_max_, e.weight);
    }
    for (std::size_t u = 0; u < n1; ++u) offsets_[u + 1] += offsets_[u];
  }

  std::size_t left_size() const noexcept { return n1_; }
  std::size_t right_size() const noexcept { return n2_; }
  std::size_t edge_count() const noexcept { return arcs_.size(); }
  Weight c_max() const noexcept { return c_max_; }

  std::span<const Arc<Weight>> arcs(Vertex u) const {
    const auto row = static_cast<std::size_t>(u);
    return {arcs_.data() + offsets_[row], offsets_[row + 1] - offsets_[row]};
  }

  std::optional<Weight> weight(Vertex u, Vertex v) const {
    if (u < 0 || static_cast<std::size_t>(u) >= n1_) return std::nullopt;
    const auto row = arcs(u);
    auto it = std::lower_bound(
        row.begin(), row.end(), v,
        [](const Arc<Weight>& a, Vertex key) { return a.v < key; });
    if (it == row.end() || it->v != v) return std::nullopt;
    return it->cost;
  }

  // Edges in (u, v) ascending order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(arcs_.size());
    for (std::size_t u = 0; u < n1_; ++u) {
      for (const auto& a : arcs(static_cast<Vertex>(u))) {
        out.push_back({static_cast<Vertex>(u), a.v, a.cost});
      }
    }
    return out;
  }

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.n1_ == b.n1_ && a.n2_ == b.n2_ && a.edges() == b.edges();
  }

 private:
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  Weight c_max_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc<Weight>> arcs_;
};

// Mutual u <-> v assignment. kNoVertex marks an unmatched vertex.
struct Matching {
  std::vector<Vertex> match_of_u;
  std::vector<Vertex> match_of_v;

  Matching() = default;
  Matching(std::size_t n1, std::size_t n2)
      : match_of_u(n1, kNoVertex), match_of_v(n2, kNoVertex) {}

  bool is_matched(Vertex u) const {
    return match_of_u[static_cast<std::size_t>(u)] != kNoVertex;
  }

  void link(Vertex u, Vertex v) {
    match_of_u[static_cast<std::size_t>(u)] = v;
    match_of_v[static_cast<std::size_t>(v)] = u;
  }

  // Returns the former partner of u, or kNoVertex.
  Vertex unlink(Vertex u) {
    const Vertex v = match_of_u[static_cast<std::size_t>(u)];
    if (v != kNoVertex) {
      match_of_u[static_cast<std::size_t>(u)] = kNoVertex;
      match_of_v[static_cast<std::size_t>(v)] = kNoVertex;
    }
    return v;
  }

  std::size_t size() const {
    return static_cast<std::size_t>(std::count_if(
        match_of_u.begin(), match_of_u.end(),
        [](Vertex v) { return v != kNoVertex; }));
  }

  bool empty() const { return size() == 0; }

  bool is_perfect_on_u() const { return size() == match_of_u.size(); }

  // match_of_u[u] = v <=> match_of_v[v] = u.
  bool is_consistent() const {
    for (std::size_t u = 0; u < match_of_u.size(); ++u) {
      const Vertex v = match_of_u[u];
      if (v == kNoVertex) continue;
      if (v < 0 || static_cast<std::size_t>(v) >= match_of_v.size() ||
          match_of_v[static_cast<std::size_t>(v)] != static_cast<Vertex>(u)) {
        return false;
      }
    }
    for (std::size_t v = 0; v < match_of_v.size(); ++v) {
      const Vertex u = match_of_v[v];
      if (u == kNoVertex) continue;
      if (u < 0 || static_cast<std::size_t>(u) >= match_of_u.size() ||
          match_of_u[static_cast<std::size_t>(u)] != static_cast<Vertex>(v)) {
        return false;
      }
    }
    return true;
  }

  friend bool operator==(const Matching&, const Matching&) = default;
};

// Assignment of every left vertex to one of m parts of capacity ubar.
struct Partition {
  std::vector<PartIndex> part_of_u;
  PartIndex m = 1;
  std::size_t ubar = 0;

  std::vector<std::size_t> part_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(m), 0);
    for (PartIndex k : part_of_u) {
      if (k >= 0 && k < m) ++sizes[static_cast<std::size_t>(k)];
    }
    return sizes;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
};

struct Solution {
  Matching matching;
  Partition partition;
  // Always evaluated on the original, never penalized, weights.
  Weight objective = 0;
};

// Per-part sums of matched edge weights: component k is the sum of
// c(u, match(u)) over u in part k.
inline std::vector<Weight> partition_weights(const BipartiteGraph& g,
                                             const Matching& pi,
                                             const Partition& p) {
  if (p.m < 1) throw Error(ErrorCode::kPrecondition, "partition with m < 1");
  if (pi.match_of_u.size() != g.left_size() ||
      p.part_of_u.size() != g.left_size()) {
    throw Error(ErrorCode::kPrecondition, "size mismatch with graph");
  }
  std::vector<Weight> loads(static_cast<std::size_t>(p.m), 0);
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    const Vertex v = pi.match_of_u[u];
    if (v == kNoVertex) {
      throw Error(ErrorCode::kInfeasibleMatching,
                  "u" + std::to_string(u + 1) + " is unmatched");
    }
    const auto w = g.weight(static_cast<Vertex>(u), v);
    if (!w) {
      throw Error(ErrorCode::kEdgeNotFound,
                  "(u" + std::to_string(u + 1) + ", v" +
                      std::to_string(v + 1) + ") is not an edge");
    }
    const PartIndex k = p.part_of_u[u];
    if (k < 0 || k >= p.m) {
      throw Error(ErrorCode::kPrecondition, "part index out of range");
    }
    loads[static_cast<std::size_t>(k)] += *w;
  }
  return loads;
}

// f(P, Pi): the heaviest part's matched weight.
inline Weight evaluate_objective(const BipartiteGraph& g, const Matching& pi,
                                 const Partition& p) {
  const auto loads = partition_weights(g, pi, p);
  return *std::max_element(loads.begin(), loads.end());
}

enum class Violation {
  kNone,
  kUnmatched,          // some u has no partner
  kVertexReused,       // some v has two partners
  kEdgeNotFound,
  kPartUnassigned,     // part index outside [0, m)
  kCapacity,           // part larger than ubar
  kObjectiveMismatch,
};

inline std::string_view violation_name(Violation v) {
  switch (v) {
    case Violation::kNone: return "ok";
    case Violation::kUnmatched: return "constraint-1";
    case Violation::kVertexReused: return "constraint-2";
    case Violation::kEdgeNotFound: return "edge-not-found";
    case Violation::kPartUnassigned: return "constraint-3";
    case Violation::kCapacity: return "constraint-4";
    case Violation::kObjectiveMismatch: return "objective-mismatch";
  }
  return "unknown";
}

struct ValidationReport {
  Violation violation = Violation::kNone;
  std::string detail;

  bool ok() const { return violation == Violation::kNone; }
};

// Checks the solution against constraints (1)-(4) and recomputes the
// objective. Only match_of_u and part_of_u are trusted; match_of_v is rebuilt.
inline ValidationReport validate_solution(const BipartiteGraph& g,
                                          const Solution& s) {
  const std::size_t n1 = g.left_size();
  const auto& mu = s.matching.match_of_u;
  const auto& parts = s.partition.part_of_u;
  if (mu.size() != n1) {
    return {Violation::kUnmatched, "matching has wrong length"};
  }
  std::vector<Vertex> owner(g.right_size(), kNoVertex);
  for (std::size_t u = 0; u < n1; ++u) {
    const Vertex v = mu[u];
    if (v < 0 || static_cast<std::size_t>(v) >= g.right_size()) {
      return {Violation::kUnmatched, "u" + std::to_string(u + 1) +
                                         " is not matched to a valid vertex"};
    }
    if (owner[static_cast<std::size_t>(v)] != kNoVertex) {
      return {Violation::kVertexReused,
              "v" + std::to_string(v + 1) + " matched twice"};
    }
    owner[static_cast<std::size_t>(v)] = static_cast<Vertex>(u);
    if (!g.weight(static_cast<Vertex>(u), v)) {
      return {Violation::kEdgeNotFound, "(u" + std::to_string(u + 1) + ", v" +
                                            std::to_string(v + 1) +
                                            ") is not an edge"};
    }
  }
  const PartIndex m = s.partition.m;
  if (m < 1 || parts.size() != n1) {
    return {Violation::kPartUnassigned, "partition has wrong shape"};
  }
  std::vector<std::size_t> sizes(static_cast<std::size_t>(m), 0);
  for (std::size_t u = 0; u < n1; ++u) {
    if (parts[u] < 0 || parts[u] >= m) {
      return {Violation::kPartUnassigned,
              "u" + std::to_string(u + 1) + " has no valid part"};
    }
    ++sizes[static_cast<std::size_t>(parts[u])];
  }
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] > s.partition.ubar) {
      return {Violation::kCapacity, "part " + std::to_string(k + 1) +
                                        " holds " + std::to_string(sizes[k]) +
                                        " > " +
                                        std::to_string(s.partition.ubar)};
    }
  }
  Matching rebuilt(n1, g.right_size());
  for (std::size_t u = 0; u < n1; ++u) rebuilt.link(static_cast<Vertex>(u), mu[u]);
  const Weight f = evaluate_objective(g, rebuilt, s.partition);
  if (f != s.objective) {
    return {Violation::kObjectiveMismatch,
            "stored " + format_milli(s.objective) + ", recomputed " +
                format_milli(f)};
  }
  return {};
}

// Size of a maximum-cardinality matching (Hopcroft-Karp). Used to validate
// that an instance admits a matching saturating U.
inline std::size_t maximum_cardinality(const BipartiteGraph& g) {
  const std::size_t n1 = g.left_size();
  const std::size_t n2 = g.right_size();
  std::vector<Vertex> mu(n1, kNoVertex), mv(n2, kNoVertex);
  std::vector<std::int64_t> dist(n1);
  std::vector<Vertex> queue;
  std::vector<std::size_t> it(n1);
  std::vector<Vertex> stack;
  constexpr std::int64_t kInf = -1;
  std::size_t size = 0;

  while (true) {
    // BFS layering from free left vertices.
    queue.clear();
    for (std::size_t u = 0; u < n1; ++u) {
      if (mu[u] == kNoVertex) {
        dist[u] = 0;
        queue.push_back(static_cast<Vertex>(u));
      } else {
        dist[u] = kInf;
      }
    }
    bool reachable_free = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      for (const auto& a : g.arcs(u)) {
        const Vertex w = mv[static_cast<std::size_t>(a.v)];
        if (w == kNoVertex) {
          reachable_free = true;
        } else if (dist[static_cast<std::size_t>(w)] == kInf) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          queue.push_back(w);
        }
      }
    }
    if (!reachable_free) break;

    // Layered DFS, iterative.
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t root = 0; root < n1; ++root) {
      if (mu[root] != kNoVertex) continue;
      stack.assign(1, static_cast<Vertex>(root));
      while (!stack.empty()) {
        const Vertex u = stack.back();
        const auto row = g.arcs(u);
        auto& i = it[static_cast<std::size_t>(u)];
        bool advanced = false;
        for (; i < row.size(); ++i) {
          const Vertex v = row[i].v;
          const Vertex w = mv[static_cast<std::size_t>(v)];
          if (w == kNoVertex) {
            // Augment along the stack.
            Vertex carry = v;
            for (auto s = stack.rbegin(); s != stack.rend(); ++s) {
              const Vertex prev = mu[static_cast<std::size_t>(*s)];
              mu[static_cast<std::size_t>(*s)] = carry;
              mv[static_cast<std::size_t>(carry)] = *s;
              carry = prev;
            }
            ++size;
            stack.clear();
            advanced = true;
            break;
          }
          if (dist[static_cast<std::size_t>(w)] ==
              dist[static_cast<std::size_t>(u)] + 1) {
            ++i;
            stack.push_back(w);
            advanced = true;
            break;
          }
        }
        if (!advanced) {
          dist[static_cast<std::size_t>(u)] = kInf;
          stack.pop_back();
        }
      }
    }
  }
  return size;
}

inline bool has_perfect_matching_on_u(const BipartiteGraph& g) {
  return maximum_cardinality(g) == g.left_size();
}

}  // namespace pmmwm

#endif  // PMMWM_CORE_HPP_
