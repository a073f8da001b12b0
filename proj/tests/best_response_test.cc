// Copyright 2026 The stratprice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stratprice/best_response.h"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "stratprice/buyers.h"
#include "stratprice/core.h"
#include "stratprice/sellers.h"

namespace stratprice {
namespace {

Transcript Replay(const std::string& spec, const SolveReport& report, double v,
                  int horizon) {
  auto seller = MakeSeller(spec, horizon);
  PolicyBuyer buyer(report.policy, *seller);
  Rng seller_rng(1), value_rng(2);
  return PlayEpisode(*seller, buyer, ValueModel::Fixed(v), horizon, seller_rng,
                     value_rng);
}

TEST(SolveBestResponseTest, FixedSellerIsMyopic) {
  SolveReport r = SolveBestResponse("fixed:0.4", 0.7, Discount(0.5), 5);
  EXPECT_NEAR(r.optimal_surplus, 0.58125, 1e-12);
  EXPECT_NEAR(r.truthful_surplus, 0.58125, 1e-12);
  Transcript tr = Replay("fixed:0.4", r, 0.7, 5);
  for (const auto& rec : tr.records()) EXPECT_TRUE(rec.accepted);
}

TEST(SolveBestResponseTest, BinarySearchManipulation) {
  SolveReport r = SolveBestResponse("binsearch", 0.7, Discount(1.0), 3);
  EXPECT_NEAR(r.optimal_surplus, 0.775, 1e-12);
  EXPECT_NEAR(r.truthful_surplus, 0.275, 1e-12);
  EXPECT_NEAR(r.expected_revenue_under_policy, 0.625, 1e-12);
  EXPECT_NEAR(r.regret_under_policy, 1.475, 1e-12);
  Transcript tr = Replay("binsearch", r, 0.7, 3);
  std::vector<bool> decisions;
  for (const auto& rec : tr.records()) decisions.push_back(rec.accepted);
  EXPECT_EQ(decisions, (std::vector<bool>{false, true, true}));
}

TEST(SolveBestResponseTest, HeavyDiscountingAcceptsFirstOffer) {
  SolveReport r = SolveBestResponse("binsearch", 0.7, Discount(0.01), 3);
  Transcript tr = Replay("binsearch", r, 0.7, 3);
  EXPECT_TRUE(tr.records()[0].accepted);
}

TEST(SolveBestResponseTest, NeverBuysAboveValueFromFixedSeller) {
  EXPECT_EQ(SolveBestResponse("fixed:0.9", 0.7, Discount(1.0), 4)
                .optimal_surplus,
            0.0);
}

TEST(RegretUnderBestResponseTest, Examples) {
  for (double g : {0.3, 1.0}) {
    EXPECT_NEAR(RegretUnderBestResponse("fixed:0.4", 0.7, Discount(g), 5), 1.5,
                1e-12);
  }
  EXPECT_NEAR(RegretUnderBestResponse("binsearch", 0.7, Discount(1.0), 3),
              1.475, 1e-12);
}

TEST(RegretUnderBestResponseTest, MonotoneRegretGrowsWithGamma) {
  double weak = RegretUnderBestResponse("monotone", 0.5, Discount(1.0), 12);
  double strong = RegretUnderBestResponse("monotone", 0.5, Discount(0.25), 12);
  EXPECT_GE(weak, strong);
}

TEST(BruteForceTest, SingleRound) {
  auto seller = MakeSeller("fixed:0.3", 1);
  EXPECT_NEAR(BruteForceBestResponse(*seller, 0.8, Discount(1.0)), 0.5, 1e-15);
  auto high = MakeSeller("fixed:0.9", 4);
  EXPECT_EQ(BruteForceBestResponse(*high, 0.8, Discount(1.0)), 0.0);
}

TEST(BruteForceTest, AgreesWithSolverAcrossSellers) {
  for (const char* spec : {"binsearch", "monotone", "phased:K=2,first=1",
                           "ucb:3", "exp3:2,0.3"}) {
    for (double v : {0.3, 0.55, 0.9}) {
      for (double g : {0.4, 1.0}) {
        auto seller = MakeSeller(spec, 6);
        int64_t brute_nodes = 0;
        double brute = BruteForceBestResponse(*seller, v, Discount(g),
                                              &brute_nodes);
        SolveReport r = SolveBestResponse(*seller, v, Discount(g));
        EXPECT_NEAR(r.optimal_surplus, brute, 1e-9) << spec;
        EXPECT_GE(r.optimal_surplus, r.truthful_surplus - 1e-12) << spec;
        EXPECT_LE(r.node_count, brute_nodes) << spec;
      }
    }
  }
}

TEST(SolveBestResponseTest, PolicyReplayMatchesOptimalSurplus) {
  for (const char* spec : {"binsearch", "monotone", "monotone:0.7", "ucb:3"}) {
    for (double g : {0.5, 0.9, 1.0}) {
      SolveReport r = SolveBestResponse(spec, 0.62, Discount(g), 10);
      Transcript tr = Replay(spec, r, 0.62, 10);
      EXPECT_NEAR(BuyerSurplus(tr, Discount(g)), r.optimal_surplus, 1e-9)
          << spec << " gamma " << g;
      EXPECT_NEAR(SellerRevenue(tr), r.expected_revenue_under_policy, 1e-9)
          << spec;
    }
  }
}

TEST(SolveBestResponseTest, HorizonCap) {
  EXPECT_THROW(SolveBestResponse("binsearch", 0.7, Discount(1.0), 21),
               ResourceLimitError);
  EXPECT_NO_THROW(SolveBestResponse("fixed:0.4", 0.7, Discount(1.0), 25, 25));
  try {
    SolveBestResponse("binsearch", 0.7, Discount(1.0), 25);
    FAIL();
  } catch (const ResourceLimitError& e) {
    EXPECT_NE(std::string(e.what()).find("20"), std::string::npos);
  }
  auto seller = MakeSeller("binsearch", kBruteForceCap + 1);
  EXPECT_THROW(BruteForceBestResponse(*seller, 0.7, Discount(1.0)),
               ResourceLimitError);
}

TEST(SolveBestResponseTest, InvalidValue) {
  EXPECT_THROW(SolveBestResponse("binsearch", 1.5, Discount(1.0), 3),
               std::invalid_argument);
}

TEST(SolverCapTest, EnvironmentOverride) {
  unsetenv("STRATPRICE_SOLVER_CAP");
  EXPECT_EQ(SolverCapFromEnvironment(), kDefaultSolverCap);
  setenv("STRATPRICE_SOLVER_CAP", "24", 1);
  EXPECT_EQ(SolverCapFromEnvironment(), 24);
  setenv("STRATPRICE_SOLVER_CAP", "0", 1);
  EXPECT_THROW(SolverCapFromEnvironment(), std::invalid_argument);
  setenv("STRATPRICE_SOLVER_CAP", "ten", 1);
  EXPECT_THROW(SolverCapFromEnvironment(), std::invalid_argument);
  unsetenv("STRATPRICE_SOLVER_CAP");
}

TEST(SolveBestResponseTest, MemoSharesStatesAcrossPaths) {
  // Monotone state is the rejection count, so the tree collapses to O(T^2).
  SolveReport r = SolveBestResponse("monotone", 0.5, Discount(1.0), 20);
  EXPECT_LE(r.node_count, 21 * 21);
}

}  // namespace
}  // namespace stratprice
