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

#include "stratprice/verify.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <ostream>
#include <sstream>

#include "stratprice/best_response.h"
#include "stratprice/experiments.h"
#include "stratprice/sellers.h"

namespace stratprice {

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
CheckResult Timed(std::string id, std::string name, Fn&& body) {
  CheckResult result{std::move(id), std::move(name), false, "", 0.0};
  auto start = Clock::now();
  try {
    body(result);
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

bool Near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string Num(double x) { return FormatNumber(x); }

// Exact expected surplus of a buyer that answers round t with actions[t-1]
// regardless of price.
double SequenceSurplus(const Seller& s, int t, double value, double gamma,
                       const std::vector<bool>& actions) {
  if (t > s.horizon()) return 0.0;
  double total = 0.0;
  for (auto& b : s.EnumerateOffers(t)) {
    bool a = actions[t - 1];
    auto next = b.state->Clone();
    next->Update(t, b.price, a);
    double gain = a ? std::pow(gamma, t - 1) * (value - b.price.value()) : 0.0;
    total += b.probability *
             (gain + SequenceSurplus(*next, t + 1, value, gamma, actions));
  }
  return total;
}

struct Family {
  std::string name;
  int max_horizon;
  std::function<std::string(Rng&)> spec;
};

std::vector<Family> SolverFamilies() {
  auto unit = [](Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.Uniform();
  };
  return {
      {"fixed", 10,
       [=](Rng& rng) { return "fixed:" + Num(std::round(unit(rng, 0.01, 1.0) * 1e6) / 1e6); }},
      {"binsearch", 10, [](Rng&) { return std::string("binsearch"); }},
      {"monotone", 10,
       [=](Rng& rng) {
         return "monotone:" + Num(std::round(unit(rng, 0.51, 0.99) * 1e6) / 1e6);
       }},
      {"phased", 10,
       [](Rng& rng) {
         return rng.Uniform() < 0.5 ? std::string("phased:K=2,first=1")
                                    : std::string("phased:alpha=0.5,first=2");
       }},
      {"ucb", 10,
       [](Rng& rng) { return "ucb:" + std::to_string(2 + (rng.Next() % 2)); }},
      {"exp3", 7,
       [=](Rng& rng) {
         return "exp3:2," + Num(std::round(unit(rng, 0.05, 1.0) * 1e6) / 1e6);
       }},
  };
}

struct SolverCase {
  std::string spec;
  double value;
  double gamma;
  int horizon;
};

SolverCase RandomCase(const Family& family, Rng& rng) {
  SolverCase c;
  c.spec = family.spec(rng);
  c.value = std::round(rng.Uniform() * 1e6) / 1e6;
  c.gamma = rng.Uniform() < 0.2 ? 1.0 : std::max(0.01, std::round(rng.Uniform() * 1e6) / 1e6);
  c.horizon = 1 + static_cast<int>(rng.Next() % family.max_horizon);
  return c;
}

std::string Describe(const SolverCase& c) {
  return c.spec + " v=" + Num(c.value) + " gamma=" + Num(c.gamma) +
         " T=" + std::to_string(c.horizon);
}

// Phase layout recomputed from the parameters, independent of PhasedSeller.
struct PhaseSpan {
  int start;
  int length;
  int grid;
  int explore;
};

std::vector<PhaseSpan> IndependentPhases(const PhasedParams& p, int horizon) {
  std::vector<PhaseSpan> spans;
  int start = 1;
  int length = 1 << p.first_phase;
  while (start <= horizon) {
    int grid = p.fixed_k;
    if (grid == 0) {
      // Smallest K with K^(1/alpha) >= L.
      grid = 1;
      while (std::pow(static_cast<double>(grid), 1.0 / p.alpha) <
             length * (1 - 1e-12)) {
        ++grid;
      }
    }
    int actual = std::min(length, horizon - start + 1);
    spans.push_back({start, actual, grid, std::min(grid * p.samples, actual)});
    start += actual;
    length *= 2;
  }
  return spans;
}

std::vector<double> GammaGrid() { return {0.1, 0.25, 0.5, 0.75, 0.9, 1.0}; }

// Exact best-response regret of the tuned Monotone seller at T = 12, v = 0.5,
// over GammaGrid(), frozen after the first validated run.
constexpr double kMonotoneRegretGolden[] = {
    2.76073498501, 2.76073498501, 2.76073498501,
    3.9518491104,  4.72521192611, 4.72521192611};

}  // namespace

std::string FormatCheck(const CheckResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof(secs), "%.2fs", r.seconds);
  return std::string(r.passed ? "PASS " : "FAIL ") + r.id + " " + r.name +
         " (" + secs + "): " + r.detail;
}

CheckResult CheckDiscountedHorizonIdentity(const CoreFunctions& fns) {
  return Timed("C1", "discounted-horizon identity", [&](CheckResult& r) {
    std::vector<double> gammas;
    for (int i = 1; i <= 19; ++i) gammas.push_back(0.05 * i);
    gammas.push_back(1.0);
    double worst = 0.0;
    int cases = 0;
    for (double g : gammas) {
      double direct = 0.0, power = 1.0;
      for (int t = 1; t <= 1000; ++t) {
        direct += power;
        power *= g;
        double closed = fns.discounted_horizon(Discount(g), t);
        worst = std::max(worst, std::abs(closed - direct));
        ++cases;
      }
    }
    r.passed = worst <= 1e-9;
    r.detail = std::to_string(cases) + " cases, max |closed - direct| = " +
               Num(worst) + " (tol 1e-9)";
  });
}

CheckResult CheckModelArithmetic(const CoreFunctions& fns) {
  return Timed("C1b", "revenue/surplus/benchmark arithmetic", [&](CheckResult& r) {
    std::vector<RoundRecord> tr = {{1, Price(0.3), true, 0.8},
                                   {2, Price(0.6), false, 0.8},
                                   {3, Price(0.5), true, 0.8}};
    std::vector<std::string> failures;
    auto expect = [&](const std::string& what, double got, double want) {
      if (!Near(got, want, 1e-12)) {
        failures.push_back(what + " = " + Num(got) + ", expected " + Num(want));
      }
    };
    expect("revenue", fns.seller_revenue(tr), 0.8);
    expect("surplus(gamma=0.5)", fns.buyer_surplus(tr, Discount(0.5)), 0.575);
    expect("revenue(empty)", fns.seller_revenue({}), 0.0);
    std::vector<RoundRecord> one = {{1, Price(0.2), true, 0.7}};
    expect("surplus(single)", fns.buyer_surplus(one, Discount(1.0)), 0.5);
    expect("T_gamma(0.5,3)", fns.discounted_horizon(Discount(0.5), 3), 1.75);
    // Additivity over a split with the matching gamma offset.
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
      int n = 1 + static_cast<int>(rng.Next() % 40);
      double g = 0.05 + 0.95 * rng.Uniform();
      std::vector<RoundRecord> recs;
      for (int t = 1; t <= n; ++t) {
        recs.push_back({t, Price(rng.Uniform()), rng.Uniform() < 0.5,
                        rng.Uniform()});
      }
      size_t cut = rng.Next() % (recs.size() + 1);
      std::span<const RoundRecord> all(recs);
      double rev = fns.seller_revenue(all.first(cut)) +
                   fns.seller_revenue(all.subspan(cut));
      double sur = fns.buyer_surplus(all.first(cut), Discount(g)) +
                   fns.buyer_surplus(all.subspan(cut), Discount(g));
      if (!Near(rev, fns.seller_revenue(all), 1e-9) ||
          !Near(sur, fns.buyer_surplus(all, Discount(g)), 1e-9)) {
        failures.push_back("additivity broken at trial " + std::to_string(trial));
        break;
      }
    }
    auto bench = BenchmarkRate(ValueModel::Uniform({0.2, 0.4, 0.6, 0.8, 1.0}));
    expect("benchmark price", bench.price.value(), 0.6);
    expect("benchmark rate", bench.rate, 0.36);
    r.passed = failures.empty();
    r.detail = r.passed ? "examples, split additivity and benchmark agree"
                        : failures.front();
  });
}

CheckResult CheckManipulationWitness() {
  return Timed("C2", "manipulation witness (binsearch, v=0.7, gamma=1, T=3)",
               [](CheckResult& r) {
    const double v = 0.7;
    BinarySearchSeller seller(3);
    auto report = SolveBestResponse(seller, v, Discount(1.0));

    // 8-path oracle: every response sequence against the halving rule.
    double best = -1.0, truthful = 0.0, best_revenue = 0.0;
    int best_mask = -1;
    for (int mask = 0; mask < 8; ++mask) {
      double lo = 0.0, hi = 1.0, surplus = 0.0, revenue = 0.0;
      bool is_truthful = true;
      for (int t = 0; t < 3; ++t) {
        double p = (lo + hi) / 2;
        bool a = (mask >> (2 - t)) & 1;
        is_truthful = is_truthful && (a == (p <= v));
        if (a) {
          surplus += v - p;
          revenue += p;
          lo = p;
        } else {
          hi = p;
        }
      }
      if (is_truthful) truthful = surplus;
      if (surplus > best + 1e-12) {
        best = surplus;
        best_mask = mask;
        best_revenue = revenue;
      }
    }

    BinarySearchSeller play(3);
    PolicyBuyer buyer(report.policy, play);
    Rng a(1), b(2);
    auto transcript = PlayEpisode(play, buyer, ValueModel::Fixed(v), 3, a, b);
    std::string decisions;
    int mask = 0;
    for (const auto& rec : transcript.records()) {
      decisions += rec.accepted ? 'A' : 'R';
      mask = mask * 2 + (rec.accepted ? 1 : 0);
    }
    r.passed = Near(report.optimal_surplus, 0.775, 1e-12) &&
               Near(report.truthful_surplus, 0.275, 1e-12) &&
               Near(report.expected_revenue_under_policy, 0.625, 1e-12) &&
               decisions == "RAA" && Near(best, 0.775, 1e-12) &&
               Near(truthful, 0.275, 1e-12) && best_mask == mask &&
               Near(best_revenue, 0.625, 1e-12);
    r.detail = "solver surplus " + Num(report.optimal_surplus) + " truthful " +
               Num(report.truthful_surplus) + " revenue " +
               Num(report.expected_revenue_under_policy) + " decisions " +
               decisions + "; oracle best " + Num(best) + " truthful " +
               Num(truthful);
  });
}

CheckResult CheckSolverOracleEquivalence() {
  return Timed("C3", "solver vs brute-force oracle (6 sellers x 100 configs)",
               [](CheckResult& r) {
    Rng rng(20130101);
    int cases = 0;
    double worst = 0.0;
    std::string first_failure;
    for (const auto& family : SolverFamilies()) {
      for (int i = 0; i < 100; ++i) {
        SolverCase c = RandomCase(family, rng);
        auto seller = MakeSeller(c.spec, c.horizon, c.gamma);
        auto report = SolveBestResponse(*seller, c.value, Discount(c.gamma));
        int64_t brute_nodes = 0;
        double brute = BruteForceBestResponse(*seller, c.value,
                                              Discount(c.gamma), &brute_nodes);
        double diff = std::abs(report.optimal_surplus - brute);
        worst = std::max(worst, diff);
        ++cases;
        if ((diff > 1e-9 || report.node_count > brute_nodes ||
             report.node_count < c.horizon) &&
            first_failure.empty()) {
          first_failure = Describe(c) + ": solver " +
                          Num(report.optimal_surplus) + " oracle " + Num(brute);
        }
      }
    }
    r.passed = first_failure.empty();
    r.detail = r.passed ? std::to_string(cases) + " configs, max diff " +
                              Num(worst) + " (tol 1e-9)"
                        : first_failure;
  });
}

CheckResult CheckDominanceAndMyopia() {
  return Timed("C4", "dominance and myopic reduction", [](CheckResult& r) {
    Rng rng(777);
    int solved = 0, sequences = 0;
    std::string failure;
    for (const auto& family : SolverFamilies()) {
      for (int i = 0; i < 100 && failure.empty(); ++i) {
        SolverCase c = RandomCase(family, rng);
        auto seller = MakeSeller(c.spec, c.horizon, c.gamma);
        auto report = SolveBestResponse(*seller, c.value, Discount(c.gamma));
        ++solved;
        if (report.optimal_surplus < report.truthful_surplus - 1e-12) {
          failure = Describe(c) + ": optimal below truthful";
          break;
        }
        if (i < 20) {
          for (int k = 0; k < 200; ++k) {
            std::vector<bool> actions(c.horizon);
            for (int t = 0; t < c.horizon; ++t) actions[t] = rng.Uniform() < 0.5;
            double s = SequenceSurplus(*seller, 1, c.value, c.gamma, actions);
            ++sequences;
            if (report.optimal_surplus < s - 1e-12) {
              failure = Describe(c) + ": beaten by a fixed response sequence";
              break;
            }
          }
        }
        if (seller->IsNonAdaptive()) {
          for (const auto& [key, accept] : report.policy.entries()) {
            double price;
            std::memcpy(&price, key.second.data() + key.second.size() - 8, 8);
            if (accept != (price <= c.value)) {
              failure = Describe(c) + ": non-myopic decision at round " +
                        std::to_string(key.first);
              break;
            }
          }
        }
      }
    }
    r.passed = failure.empty();
    r.detail = r.passed ? std::to_string(solved) + " solves, " +
                              std::to_string(sequences) +
                              " random response sequences dominated"
                        : failure;
  });
}

CheckResult CheckMonotonePrices() {
  return Timed("C5", "monotone seller never raises its price",
               [](CheckResult& r) {
    Rng rng(55);
    int violations = 0, episodes = 0;
    for (; episodes < 1000; ++episodes) {
      double beta = 0.5 + 0.5 * rng.Uniform();
      if (beta <= 0.5) beta = 0.75;
      int horizon = 1 + static_cast<int>(rng.Next() % 300);
      double accept_rate = rng.Uniform();
      MonotoneSeller seller(beta, horizon);
      double last = 2.0;
      for (int t = 1; t <= horizon; ++t) {
        Price p = seller.Offer(t, rng);
        if (p.value() > last) ++violations;
        last = p.value();
        seller.Update(t, p, rng.Uniform() < accept_rate);
      }
    }
    r.passed = violations == 0;
    r.detail = std::to_string(episodes) +
               " random-response episodes, price increases: " +
               std::to_string(violations);
  });
}

CheckResult CheckPhasedStructure() {
  return Timed("C6", "phased grid membership and exploit argmax",
               [](CheckResult& r) {
    const std::vector<std::string> specs = {
        "phased", "phased:alpha=0.34", "phased:alpha=0.5,samples=2,first=3",
        "phased:K=3,first=2", "phased:alpha=0.25,samples=3,first=4"};
    Rng meta(66);
    int violations = 0, exploit_rounds = 0, episodes = 0;
    std::string first;
    for (; episodes < 1000; ++episodes) {
      const std::string& spec = specs[episodes % specs.size()];
      int horizon = 1 + static_cast<int>(meta.Next() % 600);
      uint64_t seed = meta.Next();
      std::unique_ptr<Buyer> buyer;
      ValueModel model = ValueModel::Uniform({0.1, 0.35, 0.6, 0.85});
      switch (episodes % 3) {
        case 0: buyer = std::make_unique<TruthfulBuyer>(); break;
        case 1: buyer = std::make_unique<ThresholdBuyer>(Price(meta.Uniform())); break;
        default: {
          std::vector<bool> script(horizon);
          for (auto&& s : script) s = meta.Uniform() < 0.5;
          buyer = std::make_unique<ScriptedBuyer>(std::move(script));
        }
      }
      auto seller = MakeSeller(spec, horizon);
      const auto& params = dynamic_cast<PhasedSeller&>(*seller).params();
      Rng seller_rng(Mix64(seed, kSellerStream)), value_rng(Mix64(seed, kValueStream));
      auto tr = PlayEpisode(*seller, *buyer, model, horizon, seller_rng, value_rng);
      const auto& recs = tr.records();
      for (const auto& span : IndependentPhases(params, horizon)) {
        std::vector<int> offered(span.grid, 0), accepted(span.grid, 0);
        for (int t = span.start; t < span.start + span.length; ++t) {
          const auto& rec = recs[t - 1];
          double scaled = rec.price.value() * span.grid;
          int k = static_cast<int>(std::lround(scaled));
          bool on_grid = k >= 1 && k <= span.grid &&
                         rec.price.value() == static_cast<double>(k) / span.grid;
          if (!on_grid) {
            ++violations;
            if (first.empty()) first = spec + " round " + std::to_string(t) + " off grid";
            continue;
          }
          if (t - span.start < span.explore) {
            ++offered[k - 1];
            if (rec.accepted) ++accepted[k - 1];
            continue;
          }
          // Exploit round: recompute the empirical argmax.
          int best = 1;
          double best_rev = -1.0;
          for (int j = 1; j <= span.grid; ++j) {
            if (offered[j - 1] == 0) continue;
            double rev = (static_cast<double>(j) / span.grid) * accepted[j - 1] /
                         offered[j - 1];
            if (rev > best_rev) {
              best_rev = rev;
              best = j;
            }
          }
          ++exploit_rounds;
          if (k != best) {
            ++violations;
            if (first.empty()) first = spec + " round " + std::to_string(t) + " not argmax";
          }
        }
        if (span.explore == span.grid * params.samples) {
          for (int j = 0; j < span.grid; ++j) {
            if (offered[j] != params.samples) {
              ++violations;
              if (first.empty()) first = spec + " explore counts wrong";
            }
          }
        }
      }
    }
    r.passed = violations == 0;
    r.detail = std::to_string(episodes) + " seeded episodes, " +
               std::to_string(exploit_rounds) + " exploit rounds, violations " +
               std::to_string(violations) + (first.empty() ? "" : " (" + first + ")");
  });
}

CheckResult CheckLinearRegretWithoutDiscounting(std::ostream* log) {
  return Timed("C7", "linear regret without discounting (gamma=1, v=0.5)",
               [&](CheckResult& r) {
    const double v = 0.5;
    const ValueModel model = ValueModel::Fixed(v);
    const std::vector<std::string> sellers = {"monotone", "phased"};
    std::ostringstream table;
    table << "threshold-mimicry regret/T at gamma=1, v=0.5 (theta over 50 points)\n"
          << "seller      T      theta     regret/T\n";
    bool ok = true;
    std::string summary;
    for (const auto& spec : sellers) {
      std::vector<double> rates;
      for (int horizon : {1000, 2000, 4000}) {
        auto choice = OptimizeThreshold(spec, model, Discount(1.0), horizon, 1);
        auto ep = RunEpisode(spec, "threshold:" + Num(choice.theta), model,
                             Discount(1.0), horizon, 1);
        double rate = ep.result.regret / horizon;
        rates.push_back(rate);
        char line[128];
        std::snprintf(line, sizeof(line), "%-10s %5d   %7.4f   %8.5f\n",
                      spec.c_str(), horizon, choice.theta, rate);
        table << line;
      }
      double lo = *std::min_element(rates.begin(), rates.end());
      double hi = *std::max_element(rates.begin(), rates.end());
      bool linear = lo >= 0.05 && (hi - lo) / hi < 0.10;

      std::vector<double> exact;
      for (int horizon : {8, 10, 12}) {
        exact.push_back(RegretUnderBestResponse(spec, v, Discount(1.0), horizon));
      }
      table << spec << " exact best-response regret T=8,10,12: " << Num(exact[0])
            << ", " << Num(exact[1]) << ", " << Num(exact[2]) << "\n";
      bool grows = exact[2] / exact[0] >= 0.8 * (12.0 / 8.0);
      ok = ok && linear && grows;
      summary += spec + " regret/T in [" + Num(lo) + ", " + Num(hi) +
                 "], exact ratio 12/8 = " + Num(exact[2] / exact[0]) + "; ";
    }
    if (log != nullptr) *log << table.str();
    r.passed = ok;
    r.detail = summary + "need regret/T >= 0.05, spread < 10%, ratio >= 1.2";
  });
}

CheckResult CheckDiscountMonotonicity(std::ostream* log) {
  return Timed("C8", "regret grows as discounting weakens (monotone, T=12)",
               [&](CheckResult& r) {
    const double v = 0.5;
    const int horizon = 12;
    std::ostringstream table;
    table << "exact best-response regret and regret/T at T=12, v=0.5\n"
          << "gamma    monotone-regret  monotone-regret/T  phased-regret/T\n";
    std::vector<double> regrets;
    bool golden_ok = true;
    auto grid = GammaGrid();
    for (size_t i = 0; i < grid.size(); ++i) {
      double m = RegretUnderBestResponse("monotone", v, Discount(grid[i]), horizon);
      double p = RegretUnderBestResponse("phased", v, Discount(grid[i]), horizon);
      regrets.push_back(m);
      if (!Near(m, kMonotoneRegretGolden[i], 1e-9)) golden_ok = false;
      char line[128];
      std::snprintf(line, sizeof(line), "%-6.2f   %14.9f   %16.6f   %14.6f\n",
                    grid[i], m, m / horizon, p / horizon);
      table << line;
    }
    if (log != nullptr) *log << table.str();
    double at_one = regrets.back();
    double at_quarter = regrets[1];
    r.passed = at_one >= at_quarter && golden_ok;
    r.detail = "regret(gamma=1) = " + Num(at_one) + ", regret(gamma=0.25) = " +
               Num(at_quarter) + (golden_ok ? ", golden table matches"
                                            : ", golden table DRIFTED");
  });
}

CheckResult CheckUcbBaseline() {
  return Timed("C9", "UCB baseline (K=10, v=0.63, T=100000)", [](CheckResult& r) {
    const int horizon = 100000;
    auto ep = RunEpisode("ucb:10", "truthful", ValueModel::Fixed(0.63),
                         Discount(1.0), horizon, 9);
    double avg = ep.result.revenue / horizon;
    r.passed = avg >= 0.57;
    r.detail = "average revenue per round " + Num(avg) + " (need >= 0.57)";
  });
}

CheckResult CheckEndToEndDeterminism() {
  return Timed("C10", "end-to-end determinism (CSV and SVG bytes)",
               [](CheckResult& r) {
    ExperimentConfig config;
    config.seller = "exp3:5,0.1";
    config.buyer = "truthful";
    config.value_model = "uniform:0.2,0.4,0.6,0.8,1";
    config.gammas = {0.9, 1.0};
    config.horizons = {50, 100, 200};
    config.replications = 4;
    config.base_seed = 42;
    std::vector<std::string> csv, svg;
    for (int jobs : {1, 8, 1, 3}) {
      auto rows = RunSweep(config, jobs);
      csv.push_back(RowsToCsv(rows));
      svg.push_back(RenderChart(Summarize(rows)));
    }
    // A solver-backed configuration as well.
    ExperimentConfig br = config;
    br.seller = "monotone";
    br.buyer = "bestresponse";
    br.value_model = "fixed:0.5";
    br.horizons = {8, 12};
    std::string br_csv = RowsToCsv(RunSweep(br, 1));
    bool same = std::all_of(csv.begin(), csv.end(),
                            [&](const auto& c) { return c == csv[0]; }) &&
                std::all_of(svg.begin(), svg.end(),
                            [&](const auto& s) { return s == svg[0]; }) &&
                br_csv == RowsToCsv(RunSweep(br, 4));
    r.passed = same;
    r.detail = same ? "4 runs (jobs 1/8/1/3) byte-identical: " +
                          std::to_string(csv[0].size()) + " CSV bytes, " +
                          std::to_string(svg[0].size()) + " SVG bytes"
                    : "outputs differ between runs";
  });
}

std::vector<bool> MonotoneGoldenScript() {
  return {false, false, true, false, true, true, false, false, true, true};
}

std::vector<bool> PhasedGoldenScript() {
  return {true, false, true, true, false, true, true,
          false, true, true, true, false, true, true};
}

Transcript PlayGoldenMonotone() {
  auto seller = MakeSeller(kMonotoneGoldenSpec, 10);
  ScriptedBuyer buyer(MonotoneGoldenScript());
  Rng a(0), b(0);
  return PlayEpisode(*seller, buyer, ValueModel::Fixed(0.5), 10, a, b);
}

Transcript PlayGoldenPhased() {
  auto seller = MakeSeller(kPhasedGoldenSpec, 14);
  ScriptedBuyer buyer(PhasedGoldenScript());
  Rng a(Mix64(kPhasedGoldenSeed, kSellerStream));
  Rng b(Mix64(kPhasedGoldenSeed, kValueStream));
  return PlayEpisode(*seller, buyer, ValueModel::Fixed(0.5), 14, a, b);
}

CheckResult CheckGoldenTranscripts() {
  return Timed("C11", "golden transcripts (monotone, phased)", [](CheckResult& r) {
    bool mono = PlayGoldenMonotone().ToCsv() == kMonotoneGoldenCsv;
    bool phased = PlayGoldenPhased().ToCsv() == kPhasedGoldenCsv;
    r.passed = mono && phased;
    r.detail = std::string("monotone ") + (mono ? "matches" : "DRIFTED") +
               ", phased " + (phased ? "matches" : "DRIFTED");
  });
}

Suite ParseSuite(const std::string& name) {
  if (name == "core") return Suite::kCore;
  if (name == "sellers") return Suite::kSellers;
  if (name == "solver") return Suite::kSolver;
  if (name == "bounds") return Suite::kBounds;
  if (name == "all") return Suite::kAll;
  throw std::invalid_argument("unknown suite '" + name +
                              "' (core|sellers|solver|bounds|all)");
}

std::vector<CheckResult> RunSuite(Suite suite, std::ostream* out,
                                  const CoreFunctions& fns) {
  std::vector<CheckResult> results;
  auto run = [&](CheckResult r) {
    if (out != nullptr) *out << FormatCheck(r) << "\n" << std::flush;
    results.push_back(std::move(r));
  };
  auto want = [&](Suite s) { return suite == Suite::kAll || suite == s; };
  if (want(Suite::kCore)) {
    run(CheckDiscountedHorizonIdentity(fns));
    run(CheckModelArithmetic(fns));
    run(CheckEndToEndDeterminism());
  }
  if (want(Suite::kSellers)) {
    run(CheckMonotonePrices());
    run(CheckPhasedStructure());
    run(CheckUcbBaseline());
    run(CheckGoldenTranscripts());
  }
  if (want(Suite::kSolver)) {
    run(CheckManipulationWitness());
    run(CheckSolverOracleEquivalence());
    run(CheckDominanceAndMyopia());
  }
  if (want(Suite::kBounds)) {
    run(CheckLinearRegretWithoutDiscounting(out));
    run(CheckDiscountMonotonicity(out));
  }
  return results;
}

const char kMonotoneGoldenCsv[] =
    "t,price,accepted,value\n"
    "1,1,0,0.5\n"
    "2,0.8,0,0.5\n"
    "3,0.64,1,0.5\n"
    "4,0.64,0,0.5\n"
    "5,0.512,1,0.5\n"
    "6,0.512,1,0.5\n"
    "7,0.512,0,0.5\n"
    "8,0.4096,0,0.5\n"
    "9,0.32768,1,0.5\n"
    "10,0.32768,1,0.5\n";
const char kPhasedGoldenCsv[] =
    "t,price,accepted,value\n"
    "1,1,1,0.5\n"
    "2,0.5,0,0.5\n"
    "3,1,1,0.5\n"
    "4,1,1,0.5\n"
    "5,0.666666666667,0,0.5\n"
    "6,1,1,0.5\n"
    "7,0.333333333333,1,0.5\n"
    "8,1,0,0.5\n"
    "9,1,1,0.5\n"
    "10,1,1,0.5\n"
    "11,1,1,0.5\n"
    "12,1,0,0.5\n"
    "13,0.75,1,0.5\n"
    "14,0.5,1,0.5\n";

}  // namespace stratprice
