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

#include "stratprice/experiments.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace stratprice {

namespace {

using json = nlohmann::json;

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV line");
  return fields;
}

// Fixed-point rendering for SVG coordinates.
std::string Fixed2(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 2);
  std::string s(buf, res.ptr);
  return s == "-0.00" ? "0.00" : s;
}

Stat MeanAndStderr(const std::vector<double>& xs) {
  Stat s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return s;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  s.std_error = sd / std::sqrt(static_cast<double>(xs.size()));
  return s;
}

}  // namespace

std::unique_ptr<Buyer> MakeBuyer(const std::string& spec, const Seller& seller,
                                 const ValueModel& model, Discount gamma,
                                 uint64_t seed, int solver_cap) {
  if (spec == "truthful") return std::make_unique<TruthfulBuyer>();
  if (spec == "threshold:opt") {
    auto choice = OptimizeThreshold(seller.spec(), model, gamma,
                                    seller.horizon(), seed);
    return std::make_unique<ThresholdBuyer>(Price(choice.theta));
  }
  if (spec.starts_with("threshold:")) {
    return std::make_unique<ThresholdBuyer>(
        Price(ParseDecimal(spec.substr(10))));
  }
  if (spec == "bestresponse") {
    if (!model.is_fixed()) {
      throw std::invalid_argument(
          "bestresponse buyer needs a fixed value model");
    }
    auto report =
        SolveBestResponse(seller, model.values()[0], gamma, solver_cap);
    return std::make_unique<PolicyBuyer>(std::move(report.policy), seller);
  }
  throw std::invalid_argument("unknown buyer spec '" + spec + "'");
}

std::string BuyerGrammar() {
  return "Buyer specs:\n"
         "  truthful           accept iff price <= value\n"
         "  threshold:<theta>  accept iff price <= theta\n"
         "  threshold:opt      theta grid-searched (50 points up to the top "
         "value) for max surplus\n"
         "  bestresponse       exact optimal policy (fixed value, T <= "
         "solver cap)\n"
         "Value models:\n"
         "  fixed:<v> | uniform:<v1>,<v2>,... | dist:<v1>@<p1>,<v2>@<p2>,...\n";
}

Episode RunEpisode(const std::string& seller_spec, const std::string& buyer_spec,
                   const ValueModel& model, Discount gamma, int horizon,
                   uint64_t seed, const EpisodeOptions& options) {
  auto seller = MakeSeller(seller_spec, horizon, gamma.gamma());
  auto buyer = MakeBuyer(buyer_spec, *seller, model, gamma, seed,
                         options.solver_cap);
  Rng seller_rng(Mix64(seed, kSellerStream));
  Rng value_rng(Mix64(seed, kValueStream));
  Transcript transcript =
      PlayEpisode(*seller, *buyer, model, horizon, seller_rng, value_rng);

  EpisodeResult result;
  result.revenue = SellerRevenue(transcript);
  result.surplus = BuyerSurplus(transcript, gamma);
  result.benchmark_rate = options.realized_benchmark
                              ? RealizedBenchmarkRate(transcript.records()).rate
                              : BenchmarkRate(model).rate;
  result.regret = horizon * result.benchmark_rate - result.revenue;
  result.horizon = horizon;
  result.gamma = gamma.gamma();
  result.seed = seed;
  result.seller = seller_spec;
  result.buyer = buyer_spec;
  return {std::move(transcript), std::move(result)};
}

bool IsDeterministicConfig(const std::string& seller_spec,
                           const ValueModel& model) {
  return model.is_fixed() && MakeSeller(seller_spec, 1)->IsDeterministic();
}

ExperimentConfig ParseConfig(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be an object");
  static const std::set<std::string> kKnown = {
      "seller", "buyer", "value_model", "gamma", "T",
      "replications", "base_seed", "output"};
  for (const auto& [key, _] : doc.items()) {
    if (!kKnown.contains(key)) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  auto need = [&](const char* key) -> const json& {
    if (!doc.contains(key)) {
      throw std::invalid_argument(std::string("config is missing '") + key +
                                  "'");
    }
    return doc.at(key);
  };
  ExperimentConfig config;
  try {
    config.seller = need("seller").get<std::string>();
    config.buyer = need("buyer").get<std::string>();
    config.value_model = need("value_model").get<std::string>();
    for (const auto& g : need("gamma")) config.gammas.push_back(g.get<double>());
    for (const auto& t : need("T")) config.horizons.push_back(t.get<int>());
    if (doc.contains("replications")) {
      config.replications = doc["replications"].get<int>();
    }
    if (doc.contains("base_seed")) {
      config.base_seed = doc["base_seed"].get<uint64_t>();
    }
    if (doc.contains("output")) config.output = doc["output"].get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config type error: ") + e.what());
  }
  if (config.gammas.empty() || config.horizons.empty()) {
    throw std::invalid_argument("config gamma and T lists must be non-empty");
  }
  for (double g : config.gammas) Discount{g};
  for (int t : config.horizons) {
    if (t < 1) throw std::invalid_argument("config T values must be >= 1");
  }
  if (config.replications < 1) {
    throw std::invalid_argument("config replications must be >= 1");
  }
  ParseValueModel(config.value_model);
  MakeSeller(config.seller, 1);
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  return ParseConfig(ReadFile(path));
}

std::vector<SweepRow> RunSweep(const ExperimentConfig& config, int jobs,
                               std::vector<std::string>* warnings) {
  const ValueModel model = ParseValueModel(config.value_model);
  int reps = config.replications;
  if (reps > 1 && IsDeterministicConfig(config.seller, model)) {
    if (warnings != nullptr) {
      warnings->push_back(
          "configuration is deterministic; running one replication per "
          "(gamma, T) instead of " +
          std::to_string(reps));
    }
    reps = 1;
  }

  struct Task {
    double gamma;
    int horizon;
  };
  std::vector<Task> tasks;
  for (double g : config.gammas) {
    for (int t : config.horizons) {
      for (int r = 0; r < reps; ++r) tasks.push_back({g, t});
    }
  }

  std::vector<SweepRow> rows(tasks.size());
  std::atomic<size_t> next{0};
  std::mutex error_mu;
  size_t error_row = tasks.size();
  std::string error_what;

  auto worker = [&] {
    for (size_t i = next++; i < tasks.size(); i = next++) {
      try {
        uint64_t seed = Mix64(config.base_seed, i);
        auto episode = RunEpisode(config.seller, config.buyer, model,
                                  Discount(tasks[i].gamma), tasks[i].horizon,
                                  seed);
        const auto& r = episode.result;
        rows[i] = SweepRow{config.seller, config.buyer, r.gamma, r.horizon,
                           config.value_model, seed, r.revenue, r.surplus,
                           r.benchmark_rate, r.regret};
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (i < error_row) {
          error_row = i;
          error_what = e.what();
        }
      }
    }
  };

  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (error_row < tasks.size()) throw SweepError(error_row, error_what);
  return rows;
}

std::vector<SummaryRow> Summarize(const std::vector<SweepRow>& rows) {
  using Key = std::tuple<std::string, std::string, double, int>;
  std::vector<Key> order;
  std::map<Key, std::vector<const SweepRow*>> groups;
  for (const auto& row : rows) {
    Key key{row.seller, row.buyer, row.gamma, row.horizon};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&row);
  }
  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const auto& members = groups[key];
    std::vector<double> regret, revenue, surplus;
    for (const auto* r : members) {
      regret.push_back(r->regret);
      revenue.push_back(r->revenue);
      surplus.push_back(r->surplus);
    }
    out.push_back(SummaryRow{std::get<0>(key), std::get<1>(key),
                             std::get<2>(key), std::get<3>(key), members.size(),
                             MeanAndStderr(regret), MeanAndStderr(revenue),
                             MeanAndStderr(surplus)});
  }
  return out;
}

std::string RowsToCsv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kRowsHeader) + "\n";
  for (const auto& r : rows) {
    out += CsvField(r.seller) + ',' + CsvField(r.buyer) + ',' +
           FormatNumber(r.gamma) + ',' + std::to_string(r.horizon) + ',' +
           CsvField(r.value_model) + ',' + std::to_string(r.seed) + ',' +
           FormatNumber(r.revenue) + ',' + FormatNumber(r.surplus) + ',' +
           FormatNumber(r.benchmark_rate) + ',' + FormatNumber(r.regret) + '\n';
  }
  return out;
}

std::string SummariesToCsv(const std::vector<SummaryRow>& summaries) {
  std::string out = std::string(kSummaryHeader) + "\n";
  for (const auto& s : summaries) {
    out += CsvField(s.seller) + ',' + CsvField(s.buyer) + ',' +
           FormatNumber(s.gamma) + ',' + std::to_string(s.horizon) + ',' +
           std::to_string(s.n) + ',' + FormatNumber(s.regret.mean) + ',' +
           FormatNumber(s.regret.std_error) + ',' + FormatNumber(s.revenue.mean) +
           ',' + FormatNumber(s.revenue.std_error) + ',' +
           FormatNumber(s.surplus.mean) + ',' +
           FormatNumber(s.surplus.std_error) + '\n';
  }
  return out;
}

namespace {

// CSV cells come from FormatNumber, which may use exponent notation for
// very small or large magnitudes.
double ParseCsvNumber(const std::string& token) {
  double value = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value,
                             std::chars_format::general);
  if (token.empty() || res.ec != std::errc() ||
      res.ptr != token.data() + token.size()) {
    throw std::invalid_argument("not a number: '" + token + "'");
  }
  return value;
}

}  // namespace

std::vector<SweepRow> ParseRowsCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kRowsHeader) {
    throw std::invalid_argument("CSV header does not match '" +
                                std::string(kRowsHeader) + "'");
  }
  std::vector<SweepRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = SplitCsvLine(line);
    if (f.size() != 10) {
      throw std::invalid_argument("CSV line " + std::to_string(line_no) +
                                  " has " + std::to_string(f.size()) +
                                  " fields");
    }
    try {
      rows.push_back(SweepRow{f[0], f[1], ParseCsvNumber(f[2]),
                              static_cast<int>(ParseInteger(f[3])), f[4],
                              ParseUnsigned(f[5]), ParseCsvNumber(f[6]),
                              ParseCsvNumber(f[7]), ParseCsvNumber(f[8]),
                              ParseCsvNumber(f[9])});
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("CSV line " + std::to_string(line_no) +
                                  ": " + e.what());
    }
  }
  return rows;
}

std::string RenderChart(const std::vector<SummaryRow>& summaries) {
  if (summaries.empty()) throw std::invalid_argument("nothing to plot");
  for (const auto& s : summaries) {
    if (s.seller != summaries[0].seller || s.buyer != summaries[0].buyer) {
      throw std::invalid_argument(
          "chart summaries mix seller/buyer pairs: '" + summaries[0].seller +
          "'/'" + summaries[0].buyer + "' and '" + s.seller + "'/'" +
          s.buyer + "'");
    }
  }
  std::map<double, std::vector<std::pair<int, double>>> series;
  double t_min = summaries[0].horizon, t_max = t_min;
  double r_min = 0.0, r_max = 0.0;
  for (const auto& s : summaries) {
    series[s.gamma].push_back({s.horizon, s.regret.mean});
    t_min = std::min<double>(t_min, s.horizon);
    t_max = std::max<double>(t_max, s.horizon);
    r_min = std::min(r_min, s.regret.mean);
    r_max = std::max(r_max, s.regret.mean);
  }
  if (t_max == t_min) {
    t_min -= 1;
    t_max += 1;
  }
  if (r_max == r_min) r_max = r_min + 1.0;

  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 70, kRight = 150, kTop = 30, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto x_of = [&](double t) { return kLeft + (t - t_min) / (t_max - t_min) * plot_w; };
  auto y_of = [&](double r) {
    return kTop + plot_h - (r - r_min) / (r_max - r_min) * plot_h;
  };
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#9467bd", "#ff7f0e", "#8c564b",
                                            "#e377c2", "#7f7f7f"};

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
      "viewBox=\"0 0 640 400\">\n";
  svg += "<title>" + summaries[0].seller + " vs " + summaries[0].buyer +
         "</title>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";
  const std::string x0 = Fixed2(kLeft), x1 = Fixed2(kLeft + plot_w);
  const std::string y0 = Fixed2(kTop + plot_h), y1 = Fixed2(kTop);
  svg += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x1 + "\" y2=\"" +
         y0 + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x0 + "\" y2=\"" +
         y1 + "\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + Fixed2(kLeft + plot_w / 2) + "\" y=\"" +
         Fixed2(kHeight - 10) + "\" text-anchor=\"middle\">T</text>\n";
  svg += "<text x=\"15\" y=\"" + Fixed2(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " +
         Fixed2(kTop + plot_h / 2) + ")\">regret</text>\n";
  svg += "<text x=\"" + x0 + "\" y=\"" + Fixed2(kTop + plot_h + 18) +
         "\" text-anchor=\"middle\">" + FormatNumber(t_min) + "</text>\n";
  svg += "<text x=\"" + x1 + "\" y=\"" + Fixed2(kTop + plot_h + 18) +
         "\" text-anchor=\"middle\">" + FormatNumber(t_max) + "</text>\n";
  svg += "<text x=\"" + Fixed2(kLeft - 5) + "\" y=\"" + y0 +
         "\" text-anchor=\"end\">" + FormatNumber(r_min) + "</text>\n";
  svg += "<text x=\"" + Fixed2(kLeft - 5) + "\" y=\"" + y1 +
         "\" text-anchor=\"end\">" + FormatNumber(r_max) + "</text>\n";

  size_t index = 0;
  for (auto& [gamma, points] : series) {
    std::sort(points.begin(), points.end());
    const std::string color = kColors[index % std::size(kColors)];
    std::string coords;
    for (const auto& [t, r] : points) {
      if (!coords.empty()) coords += ' ';
      coords += Fixed2(x_of(t)) + "," + Fixed2(y_of(r));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + color + "\" points=\"" +
           coords + "\"/>\n";
    for (const auto& [t, r] : points) {
      svg += "<circle cx=\"" + Fixed2(x_of(t)) + "\" cy=\"" + Fixed2(y_of(r)) +
             "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    const double ly = kTop + 10 + 20.0 * static_cast<double>(index);
    svg += "<line x1=\"" + Fixed2(kWidth - kRight + 15) + "\" y1=\"" +
           Fixed2(ly) + "\" x2=\"" + Fixed2(kWidth - kRight + 35) + "\" y2=\"" +
           Fixed2(ly) + "\" stroke=\"" + color + "\"/>\n";
    svg += "<text x=\"" + Fixed2(kWidth - kRight + 40) + "\" y=\"" +
           Fixed2(ly + 4) + "\">gamma=" + FormatNumber(gamma) + "</text>\n";
    ++index;
  }
  svg += "</svg>\n";
  return svg;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
  if (!out.flush()) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace stratprice
