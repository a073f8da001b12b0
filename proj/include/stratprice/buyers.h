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

#ifndef STRATPRICE_BUYERS_H_
#define STRATPRICE_BUYERS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "stratprice/core.h"
#include "stratprice/sellers.h"

namespace stratprice {

class Buyer {
 public:
  virtual ~Buyer() = default;

  // Accept/reject the round-t price. `history` holds rounds 1..t-1.
  virtual bool Decide(int t, Price price, double value,
                      std::span<const RoundRecord> history) = 0;
  virtual std::string name() const = 0;
};

// Accepts iff price <= value (accepts at zero surplus).
class TruthfulBuyer : public Buyer {
 public:
  bool Decide(int, Price price, double value,
              std::span<const RoundRecord>) override {
    return price.value() <= value;
  }
  std::string name() const override { return "truthful"; }
};

// Behaves like a truthful buyer whose value is theta, whatever the true
// value is.
class ThresholdBuyer : public Buyer {
 public:
  explicit ThresholdBuyer(Price theta) : theta_(theta) {}

  bool Decide(int, Price price, double, std::span<const RoundRecord>) override {
    return price <= theta_;
  }
  std::string name() const override {
    return "threshold:" + FormatNumber(theta_.value());
  }
  Price theta() const { return theta_; }

 private:
  Price theta_;
};

struct PolicyMetadata {
  double value = 0.0;
  double gamma = 1.0;
  int horizon = 0;
  std::string seller;
};

// Buyer decisions keyed by (round, decision key). The decision key is the
// seller's post-draw StateKey() followed by the 8 bytes of the offered
// price, so randomized sellers are covered too.
class PolicyTable {
 public:
  PolicyTable() = default;
  explicit PolicyTable(PolicyMetadata meta) : meta_(std::move(meta)) {}

  void Set(int t, std::string key, bool accept);
  std::optional<bool> Lookup(int t, const std::string& key) const;

  const PolicyMetadata& metadata() const { return meta_; }
  size_t size() const { return entries_.size(); }
  const std::map<std::pair<int, std::string>, bool>& entries() const {
    return entries_;
  }

  // Header lines starting with '#', then `t<TAB>key_hex<TAB>accept|reject`
  // sorted by (t, key).
  std::string ToText() const;
  // Throws std::invalid_argument on malformed input.
  static PolicyTable FromText(const std::string& text);

 private:
  PolicyMetadata meta_;
  std::map<std::pair<int, std::string>, bool> entries_;
};

std::string DecisionKey(const Seller& post_draw, Price price);
std::string ToHex(const std::string& bytes);
std::string FromHex(const std::string& hex);

class PolicyMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replays a PolicyTable. Keeps its own copy of the seller and steps it in
// lockstep with the episode to look up each decision.
class PolicyBuyer : public Buyer {
 public:
  // Throws PolicyMismatchError if the metadata names another seller or T.
  PolicyBuyer(PolicyTable policy, const Seller& seller);

  bool Decide(int t, Price price, double value,
              std::span<const RoundRecord> history) override;
  std::string name() const override { return "bestresponse"; }

 private:
  PolicyTable policy_;
  std::unique_ptr<Seller> tracker_;
};

// Plays rounds 1..T: draw v_t, seller offers, buyer decides, seller updates.
Transcript PlayEpisode(Seller& seller, Buyer& buyer, const ValueModel& model,
                       int horizon, Rng& seller_rng, Rng& value_rng);

// Thresholds searched by OptimizeThreshold: top * j / points, j = 1..points.
std::vector<double> ThresholdGrid(double top, int points);

struct ThresholdChoice {
  double theta = 0.0;
  double surplus = 0.0;
};

// Grid-searches theta to maximize the threshold buyer's realized discounted
// surplus against a fresh seller built from `seller_spec`. Every candidate
// replays the same seed; ties go to the lower theta. `top` defaults to the
// largest support value of the model.
ThresholdChoice OptimizeThreshold(const std::string& seller_spec,
                                  const ValueModel& model, Discount gamma,
                                  int horizon, uint64_t seed, int points = 50);

}  // namespace stratprice

#endif  // STRATPRICE_BUYERS_H_
