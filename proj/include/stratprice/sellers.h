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

#ifndef STRATPRICE_SELLERS_H_
#define STRATPRICE_SELLERS_H_

#include <memory>
#include <string>
#include <vector>

#include "stratprice/core.h"
#include "stratprice/rng.h"

namespace stratprice {

class Seller;

// One outcome of the seller's randomization at a round.
struct OfferBranch {
  double probability = 1.0;
  Price price;
  std::unique_ptr<Seller> state;  // seller state after the draw
};

// A seller algorithm as an explicit state machine. Instances are values:
// Clone() snapshots the full state, and two instances with equal StateKey()
// behave identically from the same round on.
//
// Round indices are 1-based; any call with t outside 1..horizon() throws
// std::out_of_range.
class Seller {
 public:
  virtual ~Seller() = default;

  virtual std::unique_ptr<Seller> Clone() const = 0;

  // Exact distribution of the price offered at round t. Probabilities sum
  // to 1 and prices are distinct.
  virtual std::vector<OfferBranch> EnumerateOffers(int t) const = 0;

  // Applies the buyer's response to the price offered at round t.
  virtual void Update(int t, Price price, bool accepted) = 0;

  // Canonical byte string of the behavior-relevant state.
  virtual std::string StateKey() const = 0;

  // True if EnumerateOffers always yields a single branch.
  virtual bool IsDeterministic() const = 0;
  // True if offers do not depend on past buyer responses.
  virtual bool IsNonAdaptive() const { return false; }

  // Draws the round-t offer and moves to the post-draw state. Consumes one
  // rng.Uniform() only when there is more than one branch.
  Price Offer(int t, Rng& rng);

  const std::string& spec() const { return spec_; }
  int horizon() const { return horizon_; }

 protected:
  Seller(std::string spec, int horizon);
  Seller(const Seller&) = default;
  Seller& operator=(const Seller&) = default;

  virtual void AssignFrom(const Seller& other) = 0;
  void CheckRound(int t) const;

 private:
  std::string spec_;
  int horizon_;
};

// CRTP helper providing Clone/AssignFrom for copyable concrete sellers.
template <typename Derived>
class SellerBase : public Seller {
 public:
  std::unique_ptr<Seller> Clone() const override {
    return std::make_unique<Derived>(static_cast<const Derived&>(*this));
  }

 protected:
  using Seller::Seller;

  void AssignFrom(const Seller& other) override {
    static_cast<Derived&>(*this) = dynamic_cast<const Derived&>(other);
  }

  std::vector<OfferBranch> Single(Price price) const {
    std::vector<OfferBranch> out;
    out.push_back({1.0, price, Clone()});
    return out;
  }
};

// Price grid {1/K, 2/K, ..., 1}.
class PriceGrid {
 public:
  explicit PriceGrid(int k);

  int size() const { return k_; }
  // Point index in 0..K-1 -> price (index + 1) / K.
  Price Point(int index) const;
  std::vector<Price> Points() const;
  // Index of an on-grid price; -1 if off the grid.
  int IndexOf(Price price) const;

 private:
  int k_;
};

class FixedPriceSeller : public SellerBase<FixedPriceSeller> {
 public:
  FixedPriceSeller(Price price, int horizon);

  std::vector<OfferBranch> EnumerateOffers(int t) const override;
  void Update(int t, Price price, bool accepted) override;
  std::string StateKey() const override { return "fixed"; }
  bool IsDeterministic() const override { return true; }
  bool IsNonAdaptive() const override { return true; }

 private:
  Price price_;
};

// Halving search on [lo, hi], starting at (0, 1): offers the midpoint,
// accept raises lo, reject lowers hi.
class BinarySearchSeller : public SellerBase<BinarySearchSeller> {
 public:
  explicit BinarySearchSeller(int horizon);

  std::vector<OfferBranch> EnumerateOffers(int t) const override;
  void Update(int t, Price price, bool accepted) override;
  std::string StateKey() const override;
  bool IsDeterministic() const override { return true; }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_ = 0.0;
  double hi_ = 1.0;
};

// Starts at price 1 and multiplies the price by beta after every
// rejection; an accepted price is offered again. Prices never increase.
//
//   p_0 = 1, a_0 = 1,  p_t = beta^(1 - a_{t-1}) * p_{t-1}
class MonotoneSeller : public SellerBase<MonotoneSeller> {
 public:
  // beta must lie in (1/2, 1).
  MonotoneSeller(double beta, int horizon);

  // 1 - 1/sqrt(T), evaluated at max(T, 5) so the result stays in (1/2, 1).
  static double TunedBeta(int horizon);

  std::vector<OfferBranch> EnumerateOffers(int t) const override;
  void Update(int t, Price price, bool accepted) override;
  std::string StateKey() const override;
  bool IsDeterministic() const override { return true; }

  double beta() const { return beta_; }
  double current_price() const { return price_; }

 private:
  double beta_;
  double price_ = 1.0;
  int rejections_ = 0;
};

struct PhasedParams {
  double alpha = 0.5;   // grid size K_i = ceil(L_i^alpha)
  int samples = 1;      // explore offers per grid price
  int fixed_k = 0;      // > 0 overrides the alpha schedule
  int first_phase = 1;  // phase i has length 2^(first_phase + i - 1)
};

// Phase-based explore/exploit seller. Phase lengths double; each phase
// first offers every grid price `samples` times in a uniformly random order,
// then posts the grid price maximizing price * empirical acceptance rate
// from that phase's exploration (ties to the lower price) for the rest of
// the phase.
class PhasedSeller : public SellerBase<PhasedSeller> {
 public:
  enum class Segment { kExplore, kExploit };

  struct Phase {
    int start = 1;   // first round
    int length = 0;  // rounds, after truncation at the horizon
    int grid = 1;    // K
    int explore = 0; // explore rounds (grid * samples, or fewer if truncated)
  };

  PhasedSeller(PhasedParams params, int horizon);

  std::vector<OfferBranch> EnumerateOffers(int t) const override;
  void Update(int t, Price price, bool accepted) override;
  std::string StateKey() const override;
  bool IsDeterministic() const override { return false; }

  const PhasedParams& params() const { return params_; }
  const std::vector<Phase>& schedule() const { return schedule_; }
  const Phase& PhaseAt(int t) const;
  Segment SegmentAt(int t) const;

 private:
  void StartPhase(int index);
  int CurrentPhaseIndexFor(int t) const;

  PhasedParams params_;
  std::vector<Phase> schedule_;

  int phase_ = 0;
  std::vector<int> offered_;
  std::vector<int> accepted_;
  int exploit_index_ = -1;
};

// UCB1 over grid prices with reward a_t * p_t: untried arms first in
// ascending order, then argmax mean + sqrt(2 ln t / n), ties to lower.
class UcbSeller : public SellerBase<UcbSeller> {
 public:
  UcbSeller(PriceGrid grid, int horizon);

  std::vector<OfferBranch> EnumerateOffers(int t) const override;
  void Update(int t, Price price, bool accepted) override;
  std::string StateKey() const override;
  bool IsDeterministic() const override { return true; }

  int ChooseArm(int t) const;
  double Index(int arm, int t) const;
  const PriceGrid& grid() const { return grid_; }

 private:
  PriceGrid grid_;
  std::vector<int> pulls_;
  std::vector<int> accepts_;
};

// EXP3 with uniform mixing: prob_i = (1 - eta) w_i / sum w + eta / K;
// after reward r on arm i, w_i <- w_i * exp(eta * (r / prob_i) / K).
// Weights are kept in log space, shifted so the largest is 0.
class Exp3Seller : public SellerBase<Exp3Seller> {
 public:
  Exp3Seller(PriceGrid grid, double eta, int horizon);

  std::vector<OfferBranch> EnumerateOffers(int t) const override;
  void Update(int t, Price price, bool accepted) override;
  std::string StateKey() const override;
  bool IsDeterministic() const override { return false; }

  std::vector<double> Probabilities() const;
  const PriceGrid& grid() const { return grid_; }
  double eta() const { return eta_; }

 private:
  PriceGrid grid_;
  double eta_;
  std::vector<double> log_weights_;
};

// Builds a seller from its spec string:
//   fixed:<p> | binsearch | monotone | monotone:<beta>
//   phased | phased:<key>=<value>,...  (keys: alpha, samples, K, first)
//   ucb:<K> | exp3:<K>,<eta>
// gamma is accepted for interface symmetry; no seller here reads it.
// Throws std::invalid_argument naming the bad token.
std::unique_ptr<Seller> MakeSeller(const std::string& spec, int horizon,
                                   double gamma = 1.0);

// Grammar summary for --help output.
std::string SellerGrammar();

}  // namespace stratprice

#endif  // STRATPRICE_SELLERS_H_
