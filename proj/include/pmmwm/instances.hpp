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

// Seeded generators for the four benchmark families and the (m, ubar)
// parameter grid.
//
// Reproducibility: every random draw comes from std::mt19937_64, whose output
// sequence is fixed by the C++ standard, and bounded integers are derived
// from it by rejection sampling here rather than by the (implementation-
// defined) standard distributions. Instances are therefore bit-identical
// across platforms for a given (family, n, seed). The scheme is versioned by
// kGeneratorVersion; change it whenever the draw order changes.

#ifndef PMMWM_INSTANCES_HPP_
#define PMMWM_INSTANCES_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmmwm/core.hpp"
#include "pmmwm/cost.hpp"
#include "pmmwm/error.hpp"

namespace pmmwm {

inline constexpr std::string_view kGeneratorVersion = "mt19937_64/rejection-v1";

// Grid of admissible "rational" weights: multiples of 0.001 in [1, 1000].
inline constexpr Weight kGridLow = 1 * kMilliPerUnit;
inline constexpr Weight kGridHigh = 1000 * kMilliPerUnit;
inline constexpr std::uint64_t kGridSize =
    static_cast<std::uint64_t>(kGridHigh - kGridLow + 1);

enum class Family { kBps70, kBps80, kRand, kSparse70, kSparse80, kSparse30, kSparse20 };

inline constexpr std::array<Family, 7> kAllFamilies = {
    Family::kBps70,    Family::kBps80,    Family::kRand,    Family::kSparse70,
    Family::kSparse80, Family::kSparse30, Family::kSparse20};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::kBps70: return "BPS70";
    case Family::kBps80: return "BPS80";
    case Family::kRand: return "RAND";
    case Family::kSparse70: return "SPARSE70";
    case Family::kSparse80: return "SPARSE80";
    case Family::kSparse30: return "SPARSE30";
    case Family::kSparse20: return "SPARSE20";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
  for (Family f : kAllFamilies) {
    if (family_name(f) == s) return f;
  }
  return std::nullopt;
}

struct GenSpec {
  Family family = Family::kRand;
  std::size_t n = 2;
  std::uint64_t seed = 0;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Fenwick tree over positions 0..size-1 supporting "remove and return the
// k-th remaining position" in O(log size).
class PositionPool {
 public:
  explicit PositionPool(std::size_t size) : tree_(size + 1, 0), remaining_(size) {
    for (std::size_t i = 1; i <= size; ++i) {
      tree_[i] += 1;
      const std::size_t parent = i + (i & (~i + 1));
      if (parent <= size) tree_[parent] += tree_[i];
    }
    top_bit_ = 1;
    while (top_bit_ * 2 <= size) top_bit_ *= 2;
  }

  std::size_t remaining() const { return remaining_; }

  std::size_t take(std::size_t k) {
    std::size_t pos = 0;
    std::size_t rank = k + 1;
    for (std::size_t step = top_bit_; step > 0; step /= 2) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] < rank) {
        pos = next;
        rank -= tree_[next];
      }
    }
    for (std::size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) --tree_[i];
    --remaining_;
    return pos;
  }

 private:
  std::vector<std::size_t> tree_;
  std::size_t remaining_;
  std::size_t top_bit_ = 1;
};

// `count` distinct grid weights, ascending (selection sampling over the
// grid, so exactly one pass and no hashing).
inline std::vector<Weight> sample_distinct_weights(Rng& rng, std::uint64_t count) {
  if (count > kGridSize) {
    throw Error(ErrorCode::kGridExhausted,
                std::to_string(count) + " distinct weights requested, grid has " +
                    std::to_string(kGridSize));
  }
  std::vector<Weight> out;
  out.reserve(count);
  std::uint64_t needed = count;
  for (std::uint64_t t = 0; t < kGridSize && needed > 0; ++t) {
    if (rng.below(kGridSize - t) < needed) {
      out.push_back(kGridLow + static_cast<Weight>(t));
      --needed;
    }
  }
  return out;
}

namespace detail {

inline void require_size(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kPrecondition, "instance size n must be >= 2");
}

inline std::size_t percent_floor(std::size_t percent, std::size_t x) {
  return percent * x / 100;
}

inline std::size_t percent_ceil(std::size_t percent, std::size_t x) {
  return (percent * x + 99) / 100;
}

}  // namespace detail

// Complete graph. n^2 distinct weights sorted into L; for v_1..v_n in turn,
// the first floor(ratio * n) remaining elements of L go to
// (u_1, v_i) .. (u_r, v_i), then each remaining edge (u_{r+1}..u_n, v_i) draws
// a uniformly random remaining element.
inline BipartiteGraph gen_bps(std::size_t n, std::size_t ratio_percent,
                              std::uint64_t seed) {
  detail::require_size(n);
  Rng rng(seed);
  const auto sorted = sample_distinct_weights(rng, static_cast<std::uint64_t>(n) * n);
  PositionPool pool(sorted.size());
  const std::size_t head = detail::percent_floor(ratio_percent, n);
  std::vector<Edge> edges;
  edges.reserve(n * n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t k = u < head ? 0 : rng.below(pool.remaining());
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v),
                       sorted[pool.take(k)]});
    }
  }
  return BipartiteGraph(n, n, std::move(edges));
}

// Complete graph, independent uniform integer weights in [1, 1000].
inline BipartiteGraph gen_rand(std::size_t n, std::uint64_t seed) {
  detail::require_size(n);
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(n * n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto w = static_cast<Weight>(1 + rng.below(1000)) * kMilliPerUnit;
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
    }
  }
  return BipartiteGraph(n, n, std::move(edges));
}

// ceil(density * n^2) edges with distinct weights. The diagonal (u_i, v_i)
// takes random elements of L first, which guarantees a perfect matching;
// every remaining element, in ascending order, lands on a uniformly random
// absent pair. Finally V is relabelled by a uniform random permutation.
inline BipartiteGraph gen_sparse(std::size_t n, std::size_t density_percent,
                                 std::uint64_t seed) {
  detail::require_size(n);
  const std::size_t count = detail::percent_ceil(density_percent, n * n);
  if (count < n || count > n * n) {
    throw Error(ErrorCode::kInfeasible,
                "density leaves fewer than n edges (or more than n^2)");
  }
  Rng rng(seed);
  const auto sorted = sample_distinct_weights(rng, count);
  PositionPool pool(sorted.size());
  std::vector<char> used(sorted.size(), 0);
  std::vector<char> present(n * n, 0);
  std::vector<Edge> edges;
  edges.reserve(count);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pos = pool.take(rng.below(pool.remaining()));
    used[pos] = 1;
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i), sorted[pos]});
    present[i * n + i] = 1;
  }
  for (std::size_t pos = 0; pos < sorted.size(); ++pos) {
    if (used[pos]) continue;
    std::size_t cell = 0;
    do {
      cell = rng.below(n * n);
    } while (present[cell]);
    present[cell] = 1;
    edges.push_back({static_cast<Vertex>(cell / n), static_cast<Vertex>(cell % n),
                     sorted[pos]});
  }
  std::vector<Vertex> relabel(n);
  for (std::size_t i = 0; i < n; ++i) relabel[i] = static_cast<Vertex>(i);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(relabel[i], relabel[rng.below(i + 1)]);
  }
  for (Edge& e : edges) e.v = relabel[static_cast<std::size_t>(e.v)];
  return BipartiteGraph(n, n, std::move(edges));
}

inline BipartiteGraph generate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::kBps70: return gen_bps(spec.n, 70, spec.seed);
    case Family::kBps80: return gen_bps(spec.n, 80, spec.seed);
    case Family::kRand: return gen_rand(spec.n, spec.seed);
    case Family::kSparse70: return gen_sparse(spec.n, 70, spec.seed);
    case Family::kSparse80: return gen_sparse(spec.n, 80, spec.seed);
    case Family::kSparse30: return gen_sparse(spec.n, 30, spec.seed);
    case Family::kSparse20: return gen_sparse(spec.n, 20, spec.seed);
  }
  throw Error(ErrorCode::kPrecondition, "unknown family");
}

// Seed for one replicate of one (family, n) cell, hashed from the suite seed.
inline std::uint64_t derive_seed(std::uint64_t suite_seed, Family family,
                                 std::size_t n, std::size_t replicate) {
  std::uint64_t h = mix64(suite_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(family));
  h = mix64(h ^ static_cast<std::uint64_t>(n));
  h = mix64(h ^ static_cast<std::uint64_t>(replicate));
  // Keep names and JSON friendly: 48 bits is plenty for distinct seeds.
  return h >> 16;
}

// m in {2, floor(0.04n), floor(0.08n), floor(0.125n)}, values < 1 dropped,
// ascending, deduplicated.
inline std::vector<PartIndex> m_choices(std::size_t n) {
  std::vector<PartIndex> out;
  for (std::size_t m : {std::size_t{2}, 4 * n / 100, 8 * n / 100, 125 * n / 1000}) {
    if (m >= 1 && m <= n) out.push_back(static_cast<PartIndex>(m));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ubar in {ceil(n/m), floor(ceil(n/m) + (n - ceil(n/m)) / 3), n}.
inline std::vector<std::size_t> ubar_choices(std::size_t n, PartIndex m) {
  const auto mm = static_cast<std::size_t>(m);
  const std::size_t base = (n + mm - 1) / mm;
  std::vector<std::size_t> out{base, base + (n - base) / 3, n};
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<std::pair<PartIndex, std::size_t>> expand_grid(std::size_t n) {
  std::vector<std::pair<PartIndex, std::size_t>> out;
  for (PartIndex m : m_choices(n)) {
    for (std::size_t ubar : ubar_choices(n, m)) {
      if (static_cast<std::size_t>(m) * ubar >= n) out.emplace_back(m, ubar);
    }
  }
  return out;
}

inline std::string instance_file_name(Family family, std::size_t n, PartIndex m,
                                      std::size_t ubar, std::uint64_t seed) {
  return std::string(family_name(family)) + "_n" + std::to_string(n) + "_m" +
         std::to_string(m) + "_u" + std::to_string(ubar) + "_s" +
         std::to_string(seed) + ".pmm";
}

}  // namespace pmmwm

#endif  // PMMWM_INSTANCES_HPP_
