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

#ifndef STRATPRICE_BEST_RESPONSE_H_
#define STRATPRICE_BEST_RESPONSE_H_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "stratprice/buyers.h"
#include "stratprice/core.h"
#include "stratprice/sellers.h"

namespace stratprice {

inline constexpr int kDefaultSolverCap = 20;
inline constexpr int kBruteForceCap = 12;
// Accept wins when its continuation value is within this of rejecting.
inline constexpr double kIndifference = 1e-12;

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedSellerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// kDefaultSolverCap, or STRATPRICE_SOLVER_CAP when set to a positive integer.
int SolverCapFromEnvironment();

struct SolveReport {
  PolicyTable policy;  // decisions at every node reachable under the policy
  double optimal_surplus = 0.0;
  double truthful_surplus = 0.0;
  double expected_revenue_under_policy = 0.0;
  double regret_under_policy = 0.0;  // T * v - expected revenue
  int64_t node_count = 0;            // distinct (round, state) nodes solved
};

// Exact best response of a buyer with fixed value `value` against `seller`
// (from its current state, at round 1, over seller.horizon() rounds):
//
//   V(t, s) = sum_{(q, p, s')} q * max_a [ gamma^(t-1) a (v - p)
//                                          + V(t+1, update(s', t, p, a)) ]
//   V(T+1, .) = 0
//
// memoized on (t, StateKey). Expected revenue and the truthful buyer's
// surplus are exact expectations over the same tree.
//
// Throws ResourceLimitError when T exceeds `cap`, UnsupportedSellerError
// when a round's offer distribution is not a proper finite distribution.
SolveReport SolveBestResponse(const Seller& seller, double value,
                              Discount gamma, int cap = kDefaultSolverCap);
SolveReport SolveBestResponse(const std::string& seller_spec, double value,
                              Discount gamma, int horizon,
                              int cap = kDefaultSolverCap);

// The same recursion as a plain tree walk over seller snapshots: no memo
// and no StateKey. Limited to T <= kBruteForceCap. `node_count`, when
// given, receives the number of (round, state) nodes visited.
double BruteForceBestResponse(const Seller& seller, double value,
                              Discount gamma, int64_t* node_count = nullptr);

// T * v - expected revenue under the optimal policy.
double RegretUnderBestResponse(const std::string& seller_spec, double value,
                               Discount gamma, int horizon,
                               int cap = kDefaultSolverCap);

}  // namespace stratprice

#endif  // STRATPRICE_BEST_RESPONSE_H_
