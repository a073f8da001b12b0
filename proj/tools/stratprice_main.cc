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

// Command-line front end: simulate, sweep, best-response, verify, plot.
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime error,
// 3 verification failure.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "stratprice/best_response.h"
#include "stratprice/experiments.h"
#include "stratprice/sellers.h"
#include "stratprice/verify.h"

namespace {

using namespace stratprice;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitVerify = 3;

// Config/usage problems surface as invalid_argument; everything else is a
// runtime failure.
int Fail(const std::exception& e, int code) {
  std::cerr << "error: " << e.what() << "\n";
  return code;
}

int ParseRounds(const std::string& s) {
  int64_t t = ParseInteger(s);
  if (t < 1 || t > 100'000'000) {
    throw std::invalid_argument("--rounds must be >= 1: '" + s + "'");
  }
  return static_cast<int>(t);
}

struct SimulateArgs {
  std::string seller, buyer, value, gamma = "1.0", rounds, seed = "0",
                                    transcript;
  bool realized = false;
};

int RunSimulate(const SimulateArgs& a) {
  std::unique_ptr<Episode> episode;
  try {
    ValueModel model = ParseValueModel(a.value);
    Discount gamma(ParseDecimal(a.gamma));
    int rounds = ParseRounds(a.rounds);
    uint64_t seed = ParseUnsigned(a.seed);
    MakeSeller(a.seller, rounds, gamma.gamma());
    EpisodeOptions options;
    options.realized_benchmark = a.realized;
    options.solver_cap = SolverCapFromEnvironment();
    episode = std::make_unique<Episode>(
        RunEpisode(a.seller, a.buyer, model, gamma, rounds, seed, options));
  } catch (const std::invalid_argument& e) {
    return Fail(e, kExitUsage);
  } catch (const ResourceLimitError& e) {
    return Fail(e, kExitUsage);
  } catch (const std::exception& e) {
    return Fail(e, kExitRuntime);
  }
  std::cout << "t\tprice\taccepted\n";
  for (const auto& r : episode->transcript.records()) {
    std::cout << r.t << '\t' << FormatNumber(r.price.value()) << '\t'
              << (r.accepted ? "accept" : "reject") << '\n';
  }
  const auto& res = episode->result;
  std::cout << "revenue " << FormatNumber(res.revenue) << "\n"
            << "surplus " << FormatNumber(res.surplus) << "\n"
            << "benchmark_rate " << FormatNumber(res.benchmark_rate) << "\n"
            << "regret " << FormatNumber(res.regret) << "\n";
  if (!a.transcript.empty()) {
    try {
      WriteFile(a.transcript, episode->transcript.ToCsv());
    } catch (const std::exception& e) {
      return Fail(e, kExitRuntime);
    }
  }
  return 0;
}

int RunSweepCommand(const std::string& config_path, const std::string& out,
                    const std::string& jobs_text) {
  ExperimentConfig config;
  int jobs = 1;
  try {
    config = LoadConfig(config_path);
    jobs = static_cast<int>(ParseInteger(jobs_text));
    if (jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
  } catch (const std::exception& e) {
    return Fail(e, kExitUsage);
  }
  std::string path = out.empty() ? config.output : out;
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
  try {
    rows = RunSweep(config, jobs, &warnings);
    if (!path.empty()) WriteFile(path, RowsToCsv(rows));
  } catch (const std::exception& e) {
    return Fail(e, kExitRuntime);
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::cout << SummariesToCsv(Summarize(rows));
  return 0;
}

int RunBestResponse(const std::string& seller_spec, const std::string& value,
                    const std::string& gamma_text, const std::string& rounds,
                    const std::string& policy_path) {
  SolveReport report;
  try {
    double v = value.starts_with("fixed:") ? ParseDecimal(value.substr(6))
                                           : ParseDecimal(value);
    Discount gamma(ParseDecimal(gamma_text));
    int horizon = ParseRounds(rounds);
    report = SolveBestResponse(seller_spec, v, gamma, horizon,
                               SolverCapFromEnvironment());
  } catch (const ResourceLimitError& e) {
    return Fail(e, kExitUsage);
  } catch (const std::invalid_argument& e) {
    return Fail(e, kExitUsage);
  } catch (const std::exception& e) {
    return Fail(e, kExitRuntime);
  }
  std::cout << "optimal_surplus " << FormatNumber(report.optimal_surplus) << "\n"
            << "truthful_surplus " << FormatNumber(report.truthful_surplus)
            << "\n"
            << "expected_revenue "
            << FormatNumber(report.expected_revenue_under_policy) << "\n"
            << "regret " << FormatNumber(report.regret_under_policy) << "\n"
            << "nodes " << report.node_count << "\n";
  if (!policy_path.empty()) {
    try {
      WriteFile(policy_path, report.policy.ToText());
    } catch (const std::exception& e) {
      return Fail(e, kExitRuntime);
    }
  }
  return 0;
}

int RunVerify(const std::string& suite_name) {
  Suite suite;
  try {
    suite = ParseSuite(suite_name);
  } catch (const std::exception& e) {
    return Fail(e, kExitUsage);
  }
  auto results = RunSuite(suite, &std::cout);
  size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (failed == 0 ? "ALL PASS" : "FAILED") << " (" << results.size()
            << " checks, " << failed << " failed)\n";
  return failed == 0 ? 0 : kExitVerify;
}

int RunPlot(const std::string& in, const std::string& out) {
  std::string svg;
  try {
    svg = RenderChart(Summarize(ParseRowsCsv(ReadFile(in))));
  } catch (const std::exception& e) {
    return Fail(e, kExitUsage);
  }
  try {
    WriteFile(out, svg);
  } catch (const std::exception& e) {
    return Fail(e, kExitRuntime);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeated posted-price auctions with a strategic buyer"};
  app.footer("\n" + SellerGrammar() + BuyerGrammar() +
             "Environment:\n  STRATPRICE_SOLVER_CAP  solver horizon cap "
             "(default 20)\n");
  app.require_subcommand(1, 1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run one episode");
  simulate->add_option("--seller", sim.seller, "Seller spec")->required();
  simulate->add_option("--buyer", sim.buyer, "Buyer spec")->required();
  simulate->add_option("--value", sim.value, "Value model spec")->required();
  simulate->add_option("--gamma", sim.gamma, "Discount factor in (0,1]");
  simulate->add_option("--rounds", sim.rounds, "Horizon T")->required();
  simulate->add_option("--seed", sim.seed, "Episode seed");
  simulate->add_option("--transcript", sim.transcript, "Write transcript CSV");
  simulate->add_flag("--realized-benchmark", sim.realized,
                     "Score regret against the realized values");

  std::string config_path, sweep_out, jobs = "1";
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("--config", config_path, "JSON config")->required();
  sweep->add_option("--out", sweep_out, "CSV path (overrides config output)");
  sweep->add_option("--jobs", jobs, "Worker threads");

  std::string br_seller, br_value, br_gamma = "1.0", br_rounds, br_policy;
  auto* best = app.add_subcommand("best-response",
                                  "Solve the buyer's exact best response");
  best->add_option("--seller", br_seller, "Seller spec")->required();
  best->add_option("--value", br_value, "Buyer value v")->required();
  best->add_option("--gamma", br_gamma, "Discount factor in (0,1]");
  best->add_option("--rounds", br_rounds, "Horizon T")->required();
  best->add_option("--policy", br_policy, "Write the policy table");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_option("--suite", suite, "core|sellers|solver|bounds|all");

  std::string plot_in, plot_out;
  auto* plot = app.add_subcommand("plot", "Render a regret-vs-T chart");
  plot->add_option("--in", plot_in, "Sweep CSV")->required();
  plot->add_option("--out", plot_out, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*simulate) return RunSimulate(sim);
  if (*sweep) return RunSweepCommand(config_path, sweep_out, jobs);
  if (*best) {
    return RunBestResponse(br_seller, br_value, br_gamma, br_rounds, br_policy);
  }
  if (*verify) return RunVerify(suite);
  if (*plot) return RunPlot(plot_in, plot_out);
  return kExitUsage;
}
