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

#include "pmmwm/core.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "pmmwm/weight.hpp"
#include "test_util.hpp"

namespace pmmwm {
namespace {

using testing::three_part_example;
using testing::from_matrix;
using testing::matching_from;

constexpr Weight k = kMilliPerUnit;

TEST(WeightTest, ParsesDecimalsIntoMilliUnits) {
  EXPECT_EQ(parse_milli("12"), 12000);
  EXPECT_EQ(parse_milli("12.5"), 12500);
  EXPECT_EQ(parse_milli("0.125"), 125);
  EXPECT_EQ(parse_milli("1000.000"), 1000000);
  EXPECT_FALSE(parse_milli("1.2345"));
  EXPECT_FALSE(parse_milli("-1"));
  EXPECT_FALSE(parse_milli("1."));
  EXPECT_FALSE(parse_milli(".5"));
  EXPECT_FALSE(parse_milli("1e3"));
  EXPECT_FALSE(parse_milli(""));
}

TEST(WeightTest, FormatIsExactInverseOfParse) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Weight> dist(0, 1000000);
  for (int i = 0; i < 2000; ++i) {
    const Weight w = dist(rng);
    const std::string s = format_milli(w);
    ASSERT_EQ(s.size() - s.find('.'), 4u) << s;
    ASSERT_EQ(parse_milli(s), w) << s;
  }
  EXPECT_EQ(format_milli(5), "0.005");
  EXPECT_EQ(format_milli(-1500), "-1.500");
}

TEST(GraphTest, RejectsMalformedConstruction) {
  EXPECT_THROW(BipartiteGraph(3, 2, {}), Error);
  EXPECT_THROW(BipartiteGraph(2, 2, {{0, 2, 1}}), Error);
  EXPECT_THROW(BipartiteGraph(2, 2, {{0, 1, 1}, {0, 1, 2}}), Error);
  EXPECT_THROW(BipartiteGraph(2, 2, {{0, 1, -1}}), Error);
}

TEST(GraphTest, AdjacencyIsSortedAndCachesCmax) {
  BipartiteGraph g(2, 3, {{1, 2, 7}, {0, 2, 4}, {0, 0, 9}, {1, 0, 1}});
  EXPECT_EQ(g.c_max(), 9);
  EXPECT_EQ(g.edge_count(), 4u);
  const auto row = g.arcs(0);
  ASSERT_EQ(row.size(), 2u);
  EXPECT_EQ(row[0].v, 0);
  EXPECT_EQ(row[1].v, 2);
  EXPECT_EQ(g.weight(1, 2), 7);
  EXPECT_FALSE(g.weight(1, 1));
}

TEST(ObjectiveTest, ThreePartExamplePartWeights) {
  const auto fig = three_part_example();
  EXPECT_EQ(partition_weights(fig.graph, fig.matching, fig.partition),
            (std::vector<Weight>{4 * k, 2 * k, 5 * k}));
  EXPECT_EQ(evaluate_objective(fig.graph, fig.matching, fig.partition), 5 * k);
}

TEST(ObjectiveTest, MovingU6ToSecondPartGivesFourThreeFour) {
  auto fig = three_part_example();
  fig.partition.part_of_u[5] = 1;
  EXPECT_EQ(partition_weights(fig.graph, fig.matching, fig.partition),
            (std::vector<Weight>{4 * k, 3 * k, 4 * k}));
  EXPECT_EQ(evaluate_objective(fig.graph, fig.matching, fig.partition), 4 * k);
}

TEST(ObjectiveTest, SinglePartIsMatchingTotal) {
  const auto g = from_matrix({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  const auto pi = matching_from(g, {2, 0, 1});
  const Partition p{{0, 0, 0}, 1, 3};
  EXPECT_EQ(partition_weights(g, pi, p), (std::vector<Weight>{3 + 4 + 8}));
  EXPECT_EQ(evaluate_objective(g, pi, p), 15);
}

TEST(ObjectiveTest, AllZeroWeights) {
  const auto g = from_matrix({{0, 0}, {0, 0}});
  EXPECT_EQ(evaluate_objective(g, matching_from(g, {1, 0}), Partition{{0, 1}, 2, 1}), 0);
}

TEST(ObjectiveTest, ErrorsOnUnmatchedAndMissingEdges) {
  const auto fig = three_part_example();
  auto pi = fig.matching;
  pi.unlink(2);
  try {
    evaluate_objective(fig.graph, pi, fig.partition);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleMatching);
  }
  // u1 -> v2 is not an edge.
  auto bad = fig.matching;
  bad.match_of_u[0] = 1;
  try {
    evaluate_objective(fig.graph, bad, fig.partition);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEdgeNotFound);
  }
}

TEST(ObjectiveTest, MaxOfPartWeightsAndInvariantUnderPartRenumbering) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const auto g = testing::random_graph(rng, n, n, 0.6, trial % 2 == 0);
    // Any perfect matching will do.
    std::vector<Vertex> mu(n, kNoVertex);
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> place = [&](std::size_t u) {
      if (u == n) return true;
      for (const auto& a : g.arcs(static_cast<Vertex>(u))) {
        if (used[a.v]) continue;
        used[a.v] = 1;
        mu[u] = a.v;
        if (place(u + 1)) return true;
        used[a.v] = 0;
      }
      return false;
    };
    ASSERT_TRUE(place(0));
    const auto pi = matching_from(g, mu);
    ASSERT_TRUE(pi.is_consistent());
    const auto m = static_cast<PartIndex>(1 + rng() % 3);
    Partition p{std::vector<PartIndex>(n), m, n};
    for (auto& part : p.part_of_u) part = static_cast<PartIndex>(rng() % m);
    const auto loads = partition_weights(g, pi, p);
    EXPECT_EQ(evaluate_objective(g, pi, p), *std::max_element(loads.begin(), loads.end()));

    std::vector<PartIndex> relabel(static_cast<std::size_t>(m));
    std::iota(relabel.begin(), relabel.end(), 0);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    Partition q = p;
    for (auto& part : q.part_of_u) part = relabel[static_cast<std::size_t>(part)];
    EXPECT_EQ(evaluate_objective(g, pi, q), evaluate_objective(g, pi, p));
  }
}

TEST(ValidateTest, FeasibleThreePartExampleSolutionPasses) {
  const auto fig = three_part_example();
  const Solution s{fig.matching, fig.partition, 5 * k};
  const auto report = validate_solution(fig.graph, s);
  EXPECT_TRUE(report.ok()) << report.detail;
}

TEST(ValidateTest, CapacityViolationIsConstraintFour) {
  const auto fig = three_part_example(/*ubar=*/1);
  const Solution s{fig.matching, fig.partition, 5 * k};
  const auto report = validate_solution(fig.graph, s);
  EXPECT_EQ(report.violation, Violation::kCapacity);
  EXPECT_EQ(violation_name(report.violation), "constraint-4");
}

TEST(ValidateTest, ObjectiveMismatch) {
  const auto fig = three_part_example();
  const Solution s{fig.matching, fig.partition, 4 * k};
  const auto report = validate_solution(fig.graph, s);
  EXPECT_EQ(report.violation, Violation::kObjectiveMismatch);
  EXPECT_EQ(violation_name(report.violation), "objective-mismatch");
}

TEST(ValidateTest, ReportsFirstViolatedConstraint) {
  const auto fig = three_part_example();
  Solution s{fig.matching, fig.partition, 5 * k};
  s.matching.match_of_u[3] = kNoVertex;
  EXPECT_EQ(validate_solution(fig.graph, s).violation, Violation::kUnmatched);

  s = {fig.matching, fig.partition, 5 * k};
  s.matching.match_of_u[3] = 0;  // v1 already taken by u1
  EXPECT_EQ(validate_solution(fig.graph, s).violation, Violation::kVertexReused);

  s = {fig.matching, fig.partition, 5 * k};
  std::swap(s.matching.match_of_u[0], s.matching.match_of_u[1]);
  EXPECT_EQ(validate_solution(fig.graph, s).violation, Violation::kEdgeNotFound);

  s = {fig.matching, fig.partition, 5 * k};
  s.partition.part_of_u[0] = 3;
  EXPECT_EQ(validate_solution(fig.graph, s).violation, Violation::kPartUnassigned);
}

TEST(MatchingTest, ConsistencyCheck) {
  Matching pi(2, 3);
  pi.link(0, 2);
  pi.link(1, 0);
  EXPECT_TRUE(pi.is_consistent());
  EXPECT_TRUE(pi.is_perfect_on_u());
  pi.match_of_v[2] = 1;
  EXPECT_FALSE(pi.is_consistent());
}

TEST(MaxCardinalityTest, DetectsDeficientGraphs) {
  // u1 and u2 both only reach v1.
  BipartiteGraph g(3, 3, {{0, 0, 1}, {1, 0, 1}, {2, 1, 1}, {2, 2, 1}});
  EXPECT_EQ(maximum_cardinality(g), 2u);
  EXPECT_FALSE(has_perfect_matching_on_u(g));
  EXPECT_TRUE(has_perfect_matching_on_u(three_part_example().graph));
}

TEST(MaxCardinalityTest, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n1 = 1 + rng() % 6;
    const std::size_t n2 = n1 + rng() % 3;
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n1; ++u) {
      for (std::size_t v = 0; v < n2; ++v) {
        if (rng() % 3 == 0) edges.push_back({Vertex(u), Vertex(v), 1});
      }
    }
    const BipartiteGraph g(n1, n2, edges);
    // Exhaustive: best matching size over subsets via DFS.
    std::size_t best = 0;
    std::vector<char> used(n2, 0);
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t size) {
      if (u == n1) {
        best = std::max(best, size);
        return;
      }
      dfs(u + 1, size);
      for (const auto& a : g.arcs(Vertex(u))) {
        if (used[a.v]) continue;
        used[a.v] = 1;
        dfs(u + 1, size + 1);
        used[a.v] = 0;
      }
    };
    dfs(0, 0);
    ASSERT_EQ(maximum_cardinality(g), best);
  }
}

}  // namespace
}  // namespace pmmwm
