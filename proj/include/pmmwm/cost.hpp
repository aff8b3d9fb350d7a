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

#ifndef PMMWM_COST_HPP_
#define PMMWM_COST_HPP_

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>

#include "pmmwm/core.hpp"

namespace pmmwm {

// Weight with a secondary key that breaks ties between equal-weight
// matchings. Costs compare lexicographically, so a minimum under this order is
// a minimum-weight matching that additionally minimises the summed tie keys.
// With 40-bit hashed keys the optimum is unique with overwhelming
// probability, which makes every exact solver return the same edge set.
struct TieBrokenCost {
  Weight primary = 0;
  std::int64_t secondary = 0;

  friend auto operator<=>(const TieBrokenCost&, const TieBrokenCost&) = default;

  friend TieBrokenCost operator+(TieBrokenCost a, TieBrokenCost b) {
    return {a.primary + b.primary, a.secondary + b.secondary};
  }
  friend TieBrokenCost operator-(TieBrokenCost a, TieBrokenCost b) {
    return {a.primary - b.primary, a.secondary - b.secondary};
  }
  friend TieBrokenCost operator-(TieBrokenCost a) {
    return {-a.primary, -a.secondary};
  }
  TieBrokenCost& operator+=(TieBrokenCost b) { return *this = *this + b; }
  TieBrokenCost& operator-=(TieBrokenCost b) { return *this = *this - b; }
};

// splitmix64 finaliser.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename Cost>
struct cost_traits;

template <>
struct cost_traits<Weight> {
  static constexpr Weight zero() { return 0; }
  static constexpr Weight infinity() {
    return std::numeric_limits<Weight>::max();
  }
  static constexpr Weight make(Vertex, Vertex, Weight w) { return w; }
  static constexpr Weight primary(Weight c) { return c; }
};

template <>
struct cost_traits<TieBrokenCost> {
  static constexpr TieBrokenCost zero() { return {}; }
  static constexpr TieBrokenCost infinity() {
    return {std::numeric_limits<Weight>::max(),
            std::numeric_limits<std::int64_t>::max()};
  }
  static constexpr TieBrokenCost make(Vertex u, Vertex v, Weight w) {
    const auto key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u))
                      << 32) |
                     static_cast<std::uint32_t>(v);
    return {w, static_cast<std::int64_t>(mix64(key) >> 24)};
  }
  static constexpr Weight primary(TieBrokenCost c) { return c.primary; }
};

template <typename C>
concept MatchingCost = std::totally_ordered<C> && requires(C a, C b) {
  { a + b } -> std::same_as<C>;
  { a - b } -> std::same_as<C>;
  { -a } -> std::same_as<C>;
  { cost_traits<C>::zero() } -> std::same_as<C>;
  { cost_traits<C>::infinity() } -> std::same_as<C>;
  { cost_traits<C>::primary(a) } -> std::same_as<Weight>;
};

// Anything exposing left/right sizes and sorted adjacency rows of Arc<Cost>.
template <typename G>
concept CostGraph = requires(const G& g, Vertex u) {
  typename G::cost_type;
  requires MatchingCost<typename G::cost_type>;
  { g.left_size() } -> std::convertible_to<std::size_t>;
  { g.right_size() } -> std::convertible_to<std::size_t>;
  { g.arcs(u) } -> std::convertible_to<std::span<const Arc<typename G::cost_type>>>;
};

}  // namespace pmmwm

#endif  // PMMWM_COST_HPP_
