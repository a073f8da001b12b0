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

#ifndef STRATPRICE_VERIFY_H_
#define STRATPRICE_VERIFY_H_

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stratprice/buyers.h"
#include "stratprice/core.h"

namespace stratprice {

// Replays a fixed accept/reject script; rounds past the script reject.
class ScriptedBuyer : public Buyer {
 public:
  explicit ScriptedBuyer(std::vector<bool> script) : script_(std::move(script)) {}
  bool Decide(int t, Price, double, std::span<const RoundRecord>) override {
    return t - 1 < static_cast<int>(script_.size()) && script_[t - 1];
  }
  std::string name() const override { return "scripted"; }

 private:
  std::vector<bool> script_;
};

// The model arithmetic the core checks exercise. Swappable so a test can
// confirm the checks catch a broken implementation.
struct CoreFunctions {
  std::function<double(Discount, int)> discounted_horizon = DiscountedHorizon;
  std::function<double(std::span<const RoundRecord>)> seller_revenue =
      [](std::span<const RoundRecord> r) { return SellerRevenue(r); };
  std::function<double(std::span<const RoundRecord>, Discount)> buyer_surplus =
      [](std::span<const RoundRecord> r, Discount g) { return BuyerSurplus(r, g); };
};

struct CheckResult {
  std::string id;    // e.g. "C2"
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// "PASS C2 manipulation witness (0.01s): <detail>"
std::string FormatCheck(const CheckResult& r);

// One function per acceptance criterion. `log`, when non-null, receives
// tables the check produces.
CheckResult CheckDiscountedHorizonIdentity(const CoreFunctions& fns = {});
CheckResult CheckModelArithmetic(const CoreFunctions& fns = {});
CheckResult CheckManipulationWitness();
CheckResult CheckSolverOracleEquivalence();
CheckResult CheckDominanceAndMyopia();
CheckResult CheckMonotonePrices();
CheckResult CheckPhasedStructure();
CheckResult CheckLinearRegretWithoutDiscounting(std::ostream* log = nullptr);
CheckResult CheckDiscountMonotonicity(std::ostream* log = nullptr);
CheckResult CheckUcbBaseline();
CheckResult CheckEndToEndDeterminism();
CheckResult CheckGoldenTranscripts();

enum class Suite { kCore, kSellers, kSolver, kBounds, kAll };

// Throws std::invalid_argument for an unknown name.
Suite ParseSuite(const std::string& name);

// Runs the suite's checks in order, printing each line (and any tables) to
// `out` when non-null.
std::vector<CheckResult> RunSuite(Suite suite, std::ostream* out = nullptr,
                                  const CoreFunctions& fns = {});

// Golden episodes, frozen byte-for-byte.
//   Monotone: beta 0.8, T 10, v 0.5, script R R A R A A R R A A.
//   Phased: alpha 0.5, samples 1, first 2, T 14, v 0.5, seed 7,
//           script A R A A R A A R A A A R A A.
inline constexpr char kMonotoneGoldenSpec[] = "monotone:0.8";
inline constexpr char kPhasedGoldenSpec[] = "phased:alpha=0.5,samples=1,first=2";
std::vector<bool> MonotoneGoldenScript();
std::vector<bool> PhasedGoldenScript();
inline constexpr uint64_t kPhasedGoldenSeed = 7;
Transcript PlayGoldenMonotone();
Transcript PlayGoldenPhased();
extern const char kMonotoneGoldenCsv[];
extern const char kPhasedGoldenCsv[];

}  // namespace stratprice

#endif  // STRATPRICE_VERIFY_H_
