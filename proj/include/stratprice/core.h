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

#ifndef STRATPRICE_CORE_H_
#define STRATPRICE_CORE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stratprice/rng.h"

namespace stratprice {

// A posted price, normalized to [0, 1]. Construction rejects anything
// outside the unit interval (including NaN).
class Price {
 public:
  constexpr Price() = default;
  explicit Price(double value);

  constexpr double value() const { return value_; }

  friend constexpr bool operator==(Price a, Price b) = default;
  friend constexpr auto operator<=>(Price a, Price b) = default;

 private:
  double value_ = 0.0;
};

// Per-round discount factor gamma in (0, 1]. gamma == 1 means the buyer
// does not discount.
class Discount {
 public:
  explicit Discount(double gamma);

  constexpr double gamma() const { return gamma_; }
  bool undiscounted() const { return gamma_ == 1.0; }

 private:
  double gamma_;
};

// Buyer valuation: a fixed scalar, or a finite-support distribution over
// [0, 1] with strictly ascending support points.
class ValueModel {
 public:
  static ValueModel Fixed(double v);
  static ValueModel FiniteSupport(std::vector<double> values,
                                  std::vector<double> probs);
  static ValueModel Uniform(std::vector<double> values);

  bool is_fixed() const { return fixed_; }
  // For Fixed models: a single support point with probability 1.
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& probs() const { return probs_; }
  double max_value() const { return values_.back(); }
  double mean() const;

  // Canonical spec string (`fixed:0.7`, `dist:0.2@0.5,0.8@0.5`).
  std::string ToSpec() const;

 private:
  ValueModel(bool fixed, std::vector<double> values, std::vector<double> probs)
      : fixed_(fixed), values_(std::move(values)), probs_(std::move(probs)) {}

  bool fixed_;
  std::vector<double> values_;
  std::vector<double> probs_;
};

// Parses `fixed:<v>`, `uniform:<v1>,<v2>,...` or `dist:<v1>@<p1>,...`.
// Throws std::invalid_argument naming the bad token.
ValueModel ParseValueModel(const std::string& spec);

struct RoundRecord {
  int t = 1;  // 1-based
  Price price;
  bool accepted = false;
  double value = 0.0;  // buyer value in effect this round

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

// Ordered play history; records carry contiguous rounds 1..size().
class Transcript {
 public:
  explicit Transcript(int horizon);

  // Appends round size()+1. Throws std::logic_error past the horizon.
  void Append(Price price, bool accepted, double value);

  int horizon() const { return horizon_; }
  const std::vector<RoundRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // `t,price,accepted,value` lines with a header; floats at 12 significant
  // digits.
  std::string ToCsv() const;

 private:
  int horizon_;
  std::vector<RoundRecord> records_;
};

struct EpisodeResult {
  double revenue = 0.0;
  double surplus = 0.0;
  double benchmark_rate = 0.0;
  double regret = 0.0;
  int horizon = 0;
  double gamma = 1.0;
  uint64_t seed = 0;
  std::string seller;
  std::string buyer;
};

struct Benchmark {
  Price price;
  double rate = 0.0;
};

// T_gamma = sum_{t=1..T} gamma^{t-1}. Throws std::invalid_argument if T < 1.
double DiscountedHorizon(Discount gamma, int horizon);

// Sum of prices over accepted rounds.
double SellerRevenue(std::span<const RoundRecord> records);
double SellerRevenue(const Transcript& transcript);

// sum_t gamma^{t-1} a_t (v_t - p_t), with t taken from each record.
double BuyerSurplus(std::span<const RoundRecord> records, Discount gamma);
double BuyerSurplus(const Transcript& transcript, Discount gamma);

// Monopoly price against a truthful buyer: argmax_p p * Pr(value >= p)
// over the support, ties to the lower price.
Benchmark BenchmarkRate(const ValueModel& model);

// Realized variant: the best fixed price in hindsight against the values
// that actually occurred (support = realized values).
Benchmark RealizedBenchmarkRate(std::span<const RoundRecord> records);

// T * BenchmarkRate(model).rate - revenue. May be negative.
double StrategicRegret(double revenue, const ValueModel& model, int horizon);

// Fixed -> v; FiniteSupport -> inverse-CDF draw from one Uniform().
double SampleValue(const ValueModel& model, Rng& rng);

// Renders `x` with up to 12 significant digits, '.' separator, no locale.
std::string FormatNumber(double x);

// Strict decimal parse (no exponent, no trailing junk). Throws
// std::invalid_argument quoting `token` on failure.
double ParseDecimal(const std::string& token);
int64_t ParseInteger(const std::string& token);
uint64_t ParseUnsigned(const std::string& token);

}  // namespace stratprice

#endif  // STRATPRICE_CORE_H_
