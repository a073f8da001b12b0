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

#ifndef STRATPRICE_EXPERIMENTS_H_
#define STRATPRICE_EXPERIMENTS_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratprice/best_response.h"
#include "stratprice/buyers.h"
#include "stratprice/core.h"

namespace stratprice {

struct EpisodeOptions {
  // Score against the best fixed price for the realized values instead of
  // the value model's monopoly price.
  bool realized_benchmark = false;
  int solver_cap = kDefaultSolverCap;
};

struct Episode {
  Transcript transcript;
  EpisodeResult result;
};

// Buyer specs: truthful | threshold:<theta> | threshold:opt | bestresponse.
// `bestresponse` solves the exact best response first and needs a Fixed
// value model and T within the solver cap.
std::unique_ptr<Buyer> MakeBuyer(const std::string& spec, const Seller& seller,
                                 const ValueModel& model, Discount gamma,
                                 uint64_t seed, int solver_cap);
std::string BuyerGrammar();

// Runs one seeded episode. The seller stream is seeded with
// Mix64(seed, kSellerStream) and the value stream with
// Mix64(seed, kValueStream).
Episode RunEpisode(const std::string& seller_spec, const std::string& buyer_spec,
                   const ValueModel& model, Discount gamma, int horizon,
                   uint64_t seed, const EpisodeOptions& options = {});

// True when the episode outcome cannot depend on the seed.
bool IsDeterministicConfig(const std::string& seller_spec,
                           const ValueModel& model);

struct ExperimentConfig {
  std::string seller;
  std::string buyer;
  std::string value_model;
  std::vector<double> gammas;
  std::vector<int> horizons;
  int replications = 1;
  uint64_t base_seed = 0;
  std::string output;
};

// JSON document with keys seller, buyer, value_model, gamma (array),
// T (array), replications, base_seed, output. Unknown keys are rejected.
// Throws std::invalid_argument on any schema violation.
ExperimentConfig ParseConfig(const std::string& json_text);
ExperimentConfig LoadConfig(const std::string& path);

struct SweepRow {
  std::string seller;
  std::string buyer;
  double gamma = 1.0;
  int horizon = 0;
  std::string value_model;
  uint64_t seed = 0;
  double revenue = 0.0;
  double surplus = 0.0;
  double benchmark_rate = 0.0;
  double regret = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

class SweepError : public std::runtime_error {
 public:
  SweepError(size_t row, const std::string& what)
      : std::runtime_error("sweep row " + std::to_string(row) + ": " + what),
        row_(row) {}
  size_t row() const { return row_; }

 private:
  size_t row_;
};

// Rows ordered gamma-major, then T, then replication; row i is seeded with
// Mix64(base_seed, i). Deterministic configurations get one row per
// (gamma, T) and a note in `warnings`. Output is independent of `jobs`.
std::vector<SweepRow> RunSweep(const ExperimentConfig& config, int jobs = 1,
                               std::vector<std::string>* warnings = nullptr);

struct Stat {
  double mean = 0.0;
  double std_error = 0.0;
};

struct SummaryRow {
  std::string seller;
  std::string buyer;
  double gamma = 1.0;
  int horizon = 0;
  size_t n = 0;
  Stat regret;
  Stat revenue;
  Stat surplus;
};

// Groups by (seller, buyer, gamma, T) in order of first appearance.
// stderr = sample standard deviation / sqrt(n), and 0 when n == 1.
std::vector<SummaryRow> Summarize(const std::vector<SweepRow>& rows);

inline constexpr char kRowsHeader[] =
    "seller,buyer,gamma,T,value_model,seed,revenue,surplus,benchmark_rate,"
    "regret";
inline constexpr char kSummaryHeader[] =
    "seller,buyer,gamma,T,n,regret_mean,regret_stderr,revenue_mean,"
    "revenue_stderr,surplus_mean,surplus_stderr";

std::string RowsToCsv(const std::vector<SweepRow>& rows);
std::string SummariesToCsv(const std::vector<SummaryRow>& summaries);
// Parses CSV written by RowsToCsv. Throws std::invalid_argument.
std::vector<SweepRow> ParseRowsCsv(const std::string& text);

// Regret-vs-T chart, one polyline per gamma (legend sorted by gamma).
// All summaries must share one (seller, buyer) pair.
std::string RenderChart(const std::vector<SummaryRow>& summaries);

std::string ReadFile(const std::string& path);
// Writes bytes verbatim. Throws std::runtime_error on I/O failure.
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace stratprice

#endif  // STRATPRICE_EXPERIMENTS_H_
