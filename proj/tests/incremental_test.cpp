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

#include "pmmwm/incremental.hpp"

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "pmmwm/hungarian.hpp"
#include "test_util.hpp"

namespace pmmwm {
namespace {

using testing::rematch_example;
using testing::from_matrix;

TEST(PenalizeTest, SetsEffectiveWeightToFactorTimesCmax) {
  const auto g = rematch_example();
  WorkingGraph<> wg(g);
  EXPECT_EQ(wg.penalty(), 500);
  penalize_edge(wg, 0, 0);
  EXPECT_EQ(wg.effective_weight(0, 0), 500);
  EXPECT_EQ(wg.effective_weight(0, 1), 3);
  EXPECT_EQ(g.weight(0, 0), 2);  // base untouched
  EXPECT_EQ(wg.overrides().size(), 1u);
}

TEST(PenalizeTest, MilliUnitScale) {
  const auto g = from_matrix({{1000, 250}, {999, 1000}});
  WorkingGraph<> wg(g);
  penalize_edge(wg, 1, 1);
  EXPECT_EQ(wg.effective_weight(1, 1), 100000);
}

TEST(PenalizeTest, IdempotentAndCustomFactor) {
  const auto g = rematch_example();
  WorkingGraph<> wg(g, 7);
  penalize_edge(wg, 1, 2);
  penalize_edge(wg, 1, 2);
  EXPECT_EQ(wg.effective_weight(1, 2), 35);
  EXPECT_EQ(wg.overrides().size(), 1u);
  EXPECT_THROW(WorkingGraph<>(g, 0), Error);
}

TEST(PenalizeTest, NonEdgeThrows) {
  const auto g = rematch_example();
  WorkingGraph<> wg(g);
  try {
    penalize_edge(wg, 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEdgeNotFound);
  }
  EXPECT_FALSE(wg.effective_weight(1, 0));
}

TEST(KmmStepTest, RematchExampleRematchNeedsOneLabelUpdate) {
  const auto g = rematch_example();
  WorkingGraph<> wg(g);
  auto a = km_full(wg);
  ASSERT_EQ(a.matching.match_of_u, (std::vector<Vertex>{0, 2, 1}));
  penalize_edge(wg, 0, 0);
  SearchScratch<Weight> s;
  kmm_step(wg, a.matching, a.duals, 0, s);
  EXPECT_EQ(s.counters.label_updates, 1u);
  EXPECT_EQ(s.counters.augmentations, 1u);
  EXPECT_EQ(a.matching.match_of_u, (std::vector<Vertex>{1, 2, 0}));
  EXPECT_EQ(effective_total(wg, a.matching), 5);
  EXPECT_EQ(a.duals.ex_u[0], -3);
  EXPECT_TRUE(is_dual_feasible(wg, a.duals));
  EXPECT_TRUE(is_complementary_slack(wg, a.duals, a.matching));
}

TEST(KmmStepTest, RequiresMatchedVertex) {
  const auto g = rematch_example();
  WorkingGraph<> wg(g);
  Matching pi(3, 3);
  auto d = init_duals(wg);
  SearchScratch<Weight> s;
  try {
    kmm_step(wg, pi, d, 0, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
}

TEST(KmmEntryTest, EmptyMatchingIsFullSolve) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = testing::random_graph(rng, 25, 25 + trial % 4, 0.3, false);
    WorkingGraph<> wg(g);
    Matching pi;
    DualState<Weight> d;
    SearchScratch<Weight> s;
    kmm_entry(wg, pi, d, 0, s);
    const auto ref = km_full(wg);
    ASSERT_EQ(pi, ref.matching);
    ASSERT_EQ(d.ex_u, ref.duals.ex_u);
    ASSERT_EQ(d.ex_v, ref.duals.ex_v);
  }
}

// Repeatedly penalise a matched edge and compare the rematched total with a
// full solve on the same working graph.
void check_sequence(std::mt19937_64& rng, const BipartiteGraph& g, int steps) {
  WorkingGraph<> wg(g);
  auto a = km_full(wg);
  SearchScratch<Weight> s;
  for (int step = 0; step < steps; ++step) {
    const auto u = static_cast<Vertex>(rng() % g.left_size());
    penalize_edge(wg, u, a.matching.match_of_u[static_cast<std::size_t>(u)]);
    const auto size_before = a.matching.size();
    s.counters = {};
    kmm_entry(wg, a.matching, a.duals, u, s);
    ASSERT_EQ(a.matching.size(), size_before);
    if (g.left_size() == g.right_size()) {
      ASSERT_EQ(s.counters.augmentations, 1u) << "rematch must be one augmenting path";
    }
    ASSERT_TRUE(a.matching.is_consistent());
    ASSERT_TRUE(is_dual_feasible(wg, a.duals)) << "step " << step;
    ASSERT_TRUE(is_complementary_slack(wg, a.duals, a.matching)) << "step " << step;
    ASSERT_EQ(effective_total(wg, a.matching), matching_cost(wg, km_full(wg).matching))
        << "step " << step;
  }
}

TEST(KmmEntryTest, MatchesFullResolveAfterEachPenalization) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_graph(rng, 20, 20, 0.35, trial % 2 == 0);
    ASSERT_NO_FATAL_FAILURE(check_sequence(rng, g, 30)) << "trial " << trial;
  }
}

TEST(KmmEntryTest, RectangularAndTiedGraphs) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = trial % 2 == 0 ? testing::random_graph(rng, 12, 15, 0.4, true)
                                  : testing::random_tied_graph(rng, 10, 2);
    ASSERT_NO_FATAL_FAILURE(check_sequence(rng, g, 20)) << "trial " << trial;
  }
}

TEST(KmmEntryTest, LargerDenseInstance) {
  std::mt19937_64 rng(53);
  const auto g = testing::random_graph(rng, 50, 50, 1.0, true);
  check_sequence(rng, g, 25);
}

TEST(KmmEntryTest, RemainsExactAfterEveryEdgeOfAVertexIsPenalized) {
  const auto g = from_matrix({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  WorkingGraph<> wg(g);
  auto a = km_full(wg);
  SearchScratch<Weight> s;
  for (int step = 0; step < 6; ++step) {
    penalize_edge(wg, 0, a.matching.match_of_u[0]);
    kmm_entry(wg, a.matching, a.duals, 0, s);
    ASSERT_EQ(effective_total(wg, a.matching), matching_cost(wg, km_full(wg).matching));
  }
  EXPECT_EQ(wg.overrides().size(), 3u);
}

}  // namespace
}  // namespace pmmwm
