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

#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <unordered_map>

namespace stratprice {

namespace {

constexpr double kProbTolerance = 1e-9;

std::vector<OfferBranch> CheckedOffers(const Seller& seller, int t) {
  auto branches = seller.EnumerateOffers(t);
  double total = 0.0;
  for (const auto& b : branches) {
    if (!(b.probability >= 0.0) || !b.state) {
      throw UnsupportedSellerError("seller '" + seller.spec() +
                                   "' produced an invalid offer branch");
    }
    total += b.probability;
  }
  if (branches.empty() || std::abs(total - 1.0) > kProbTolerance) {
    throw UnsupportedSellerError("seller '" + seller.spec() +
                                 "' does not expose a finite offer "
                                 "distribution at round " +
                                 std::to_string(t));
  }
  return branches;
}

std::unique_ptr<Seller> After(const Seller& post_draw, int t, Price price,
                              bool accepted) {
  auto next = post_draw.Clone();
  next->Update(t, price, accepted);
  return next;
}

struct NodeKey {
  int t;
  std::string state;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  size_t operator()(const NodeKey& k) const {
    return std::hash<std::string>{}(k.state) * 31 + static_cast<size_t>(k.t);
  }
};

struct NodeValue {
  double surplus = 0.0;
  double revenue = 0.0;
};

class Solver {
 public:
  Solver(double value, Discount gamma, int horizon)
      : value_(value), gamma_(gamma.gamma()), horizon_(horizon) {}

  NodeValue Optimal(const Seller& s, int t) {
    if (t > horizon_) return {};
    NodeKey key{t, s.StateKey()};
    if (auto it = optimal_.find(key); it != optimal_.end()) return it->second;
    NodeValue node;
    const double weight = std::pow(gamma_, t - 1);
    for (auto& b : CheckedOffers(s, t)) {
      const double p = b.price.value();
      NodeValue acc = Optimal(*After(*b.state, t, b.price, true), t + 1);
      NodeValue rej = Optimal(*After(*b.state, t, b.price, false), t + 1);
      double q_accept = weight * (value_ - p) + acc.surplus;
      bool accept = q_accept >= rej.surplus - kIndifference;
      decisions_[{t, DecisionKey(*b.state, b.price)}] = accept;
      node.surplus += b.probability * (accept ? q_accept : rej.surplus);
      node.revenue += b.probability * (accept ? p + acc.revenue : rej.revenue);
    }
    optimal_.emplace(std::move(key), node);
    return node;
  }

  double Truthful(const Seller& s, int t) {
    if (t > horizon_) return 0.0;
    NodeKey key{t, s.StateKey()};
    if (auto it = truthful_.find(key); it != truthful_.end()) return it->second;
    double surplus = 0.0;
    const double weight = std::pow(gamma_, t - 1);
    for (auto& b : CheckedOffers(s, t)) {
      const double p = b.price.value();
      bool accept = p <= value_;
      double gain = accept ? weight * (value_ - p) : 0.0;
      surplus += b.probability *
                 (gain + Truthful(*After(*b.state, t, b.price, accept), t + 1));
    }
    truthful_.emplace(std::move(key), surplus);
    return surplus;
  }

  // Copies decisions at nodes reachable when the buyer follows them.
  void ExportReachable(const Seller& s, int t, PolicyTable& policy,
                       std::set<std::pair<int, std::string>>& seen) const {
    if (t > horizon_) return;
    if (!seen.insert({t, s.StateKey()}).second) return;
    for (auto& b : CheckedOffers(s, t)) {
      std::string key = DecisionKey(*b.state, b.price);
      bool accept = decisions_.at({t, key});
      policy.Set(t, key, accept);
      ExportReachable(*After(*b.state, t, b.price, accept), t + 1, policy,
                      seen);
    }
  }

  int64_t node_count() const { return static_cast<int64_t>(optimal_.size()); }

 private:
  double value_;
  double gamma_;
  int horizon_;
  std::unordered_map<NodeKey, NodeValue, NodeKeyHash> optimal_;
  std::unordered_map<NodeKey, double, NodeKeyHash> truthful_;
  std::map<std::pair<int, std::string>, bool> decisions_;
};

double BruteForce(const Seller& s, int t, double value, double gamma,
                  int horizon, int64_t& nodes) {
  if (t > horizon) return 0.0;
  ++nodes;
  double total = 0.0;
  const double weight = std::pow(gamma, t - 1);
  for (auto& b : CheckedOffers(s, t)) {
    double acc = BruteForce(*After(*b.state, t, b.price, true), t + 1, value,
                            gamma, horizon, nodes);
    double rej = BruteForce(*After(*b.state, t, b.price, false), t + 1, value,
                            gamma, horizon, nodes);
    double q_accept = weight * (value - b.price.value()) + acc;
    total += b.probability * (q_accept >= rej - kIndifference ? q_accept : rej);
  }
  return total;
}

void CheckValue(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument("buyer value outside [0,1]: " +
                                FormatNumber(value));
  }
}

}  // namespace

int SolverCapFromEnvironment() {
  const char* env = std::getenv("STRATPRICE_SOLVER_CAP");
  if (env == nullptr || *env == '\0') return kDefaultSolverCap;
  int64_t cap = ParseInteger(env);
  if (cap < 1 || cap > 64) {
    throw std::invalid_argument("STRATPRICE_SOLVER_CAP must be in 1..64");
  }
  return static_cast<int>(cap);
}

SolveReport SolveBestResponse(const Seller& seller, double value,
                              Discount gamma, int cap) {
  CheckValue(value);
  const int horizon = seller.horizon();
  if (horizon > cap) {
    throw ResourceLimitError("horizon T=" + std::to_string(horizon) +
                             " exceeds the solver cap of " +
                             std::to_string(cap));
  }
  Solver solver(value, gamma, horizon);
  NodeValue root = solver.Optimal(seller, 1);

  SolveReport report;
  report.policy = PolicyTable(
      PolicyMetadata{value, gamma.gamma(), horizon, seller.spec()});
  std::set<std::pair<int, std::string>> seen;
  solver.ExportReachable(seller, 1, report.policy, seen);
  report.optimal_surplus = root.surplus;
  report.truthful_surplus = solver.Truthful(seller, 1);
  report.expected_revenue_under_policy = root.revenue;
  report.regret_under_policy = horizon * value - root.revenue;
  report.node_count = solver.node_count();
  return report;
}

SolveReport SolveBestResponse(const std::string& seller_spec, double value,
                              Discount gamma, int horizon, int cap) {
  if (horizon > cap) {
    throw ResourceLimitError("horizon T=" + std::to_string(horizon) +
                             " exceeds the solver cap of " +
                             std::to_string(cap));
  }
  auto seller = MakeSeller(seller_spec, horizon, gamma.gamma());
  return SolveBestResponse(*seller, value, gamma, cap);
}

double BruteForceBestResponse(const Seller& seller, double value,
                              Discount gamma, int64_t* node_count) {
  CheckValue(value);
  if (seller.horizon() > kBruteForceCap) {
    throw ResourceLimitError("brute-force oracle limited to T <= " +
                             std::to_string(kBruteForceCap));
  }
  int64_t nodes = 0;
  double v = BruteForce(seller, 1, value, gamma.gamma(), seller.horizon(),
                        nodes);
  if (node_count != nullptr) *node_count = nodes;
  return v;
}

double RegretUnderBestResponse(const std::string& seller_spec, double value,
                               Discount gamma, int horizon, int cap) {
  return SolveBestResponse(seller_spec, value, gamma, horizon, cap)
      .regret_under_policy;
}

}  // namespace stratprice
