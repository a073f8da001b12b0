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

#include "stratprice/core.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stratprice {

namespace {

constexpr double kProbSumTolerance = 1e-12;

std::vector<std::string> SplitOn(const std::string& s, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

Price::Price(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument("price outside [0,1]: " + FormatNumber(value));
  }
}

Discount::Discount(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("discount outside (0,1]: " +
                                FormatNumber(gamma));
  }
}

ValueModel ValueModel::Fixed(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("value outside [0,1]: " + FormatNumber(v));
  }
  return ValueModel(true, {v}, {1.0});
}

ValueModel ValueModel::FiniteSupport(std::vector<double> values,
                                     std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size()) {
    throw std::invalid_argument(
        "finite support needs equal, non-zero numbers of values and probs");
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      throw std::invalid_argument("support value outside [0,1]: " +
                                  FormatNumber(values[i]));
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw std::invalid_argument("support values must be strictly ascending");
    }
    if (!(probs[i] >= 0.0)) {
      throw std::invalid_argument("negative probability: " +
                                  FormatNumber(probs[i]));
    }
  }
  double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > kProbSumTolerance) {
    throw std::invalid_argument("probabilities sum to " + FormatNumber(total));
  }
  return ValueModel(false, std::move(values), std::move(probs));
}

ValueModel ValueModel::Uniform(std::vector<double> values) {
  std::vector<double> probs(values.size(),
                            values.empty() ? 0.0 : 1.0 / values.size());
  // Re-normalize the last entry so the sum is exact to within an ulp or two.
  if (!probs.empty()) {
    double head = std::accumulate(probs.begin(), probs.end() - 1, 0.0);
    probs.back() = 1.0 - head;
  }
  return FiniteSupport(std::move(values), std::move(probs));
}

double ValueModel::mean() const {
  double m = 0.0;
  for (size_t i = 0; i < values_.size(); ++i) m += values_[i] * probs_[i];
  return m;
}

std::string ValueModel::ToSpec() const {
  if (fixed_) return "fixed:" + FormatNumber(values_[0]);
  std::string out = "dist:";
  for (size_t i = 0; i < values_.size(); ++i) {
    if (i > 0) out += ',';
    out += FormatNumber(values_[i]) + "@" + FormatNumber(probs_[i]);
  }
  return out;
}

ValueModel ParseValueModel(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("bad value model spec '" + spec + "'");
  }
  std::string kind = spec.substr(0, colon);
  std::string body = spec.substr(colon + 1);
  if (kind == "fixed") return ValueModel::Fixed(ParseDecimal(body));
  if (kind == "uniform") {
    std::vector<double> values;
    for (const auto& tok : SplitOn(body, ',')) values.push_back(ParseDecimal(tok));
    return ValueModel::Uniform(std::move(values));
  }
  if (kind == "dist") {
    std::vector<double> values, probs;
    for (const auto& tok : SplitOn(body, ',')) {
      auto at = tok.find('@');
      if (at == std::string::npos) {
        throw std::invalid_argument("bad support point '" + tok + "'");
      }
      values.push_back(ParseDecimal(tok.substr(0, at)));
      probs.push_back(ParseDecimal(tok.substr(at + 1)));
    }
    return ValueModel::FiniteSupport(std::move(values), std::move(probs));
  }
  throw std::invalid_argument("unknown value model '" + kind + "'");
}

Transcript::Transcript(int horizon) : horizon_(horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  records_.reserve(static_cast<size_t>(horizon));
}

void Transcript::Append(Price price, bool accepted, double value) {
  if (static_cast<int>(records_.size()) >= horizon_) {
    throw std::logic_error("transcript already holds the full horizon");
  }
  records_.push_back(RoundRecord{static_cast<int>(records_.size()) + 1, price,
                                 accepted, value});
}

std::string Transcript::ToCsv() const {
  std::string out = "t,price,accepted,value\n";
  for (const auto& r : records_) {
    out += std::to_string(r.t) + ',' + FormatNumber(r.price.value()) + ',' +
           (r.accepted ? '1' : '0') + ',' + FormatNumber(r.value) + '\n';
  }
  return out;
}

double DiscountedHorizon(Discount gamma, int horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("discounted horizon needs T >= 1, got " +
                                std::to_string(horizon));
  }
  if (gamma.undiscounted()) return static_cast<double>(horizon);
  double g = gamma.gamma();
  // -expm1(T log g) / -expm1(log g) keeps precision for g close to 1.
  return std::expm1(horizon * std::log(g)) / std::expm1(std::log(g));
}

double SellerRevenue(std::span<const RoundRecord> records) {
  double revenue = 0.0;
  for (const auto& r : records) {
    if (r.accepted) revenue += r.price.value();
  }
  return revenue;
}

double SellerRevenue(const Transcript& transcript) {
  return SellerRevenue(transcript.records());
}

double BuyerSurplus(std::span<const RoundRecord> records, Discount gamma) {
  double surplus = 0.0;
  for (const auto& r : records) {
    if (!r.accepted) continue;
    surplus += std::pow(gamma.gamma(), r.t - 1) * (r.value - r.price.value());
  }
  return surplus;
}

double BuyerSurplus(const Transcript& transcript, Discount gamma) {
  return BuyerSurplus(transcript.records(), gamma);
}

Benchmark BenchmarkRate(const ValueModel& model) {
  if (model.is_fixed()) {
    return {Price(model.values()[0]), model.values()[0]};
  }
  const auto& values = model.values();
  const auto& probs = model.probs();
  // Tail mass Pr(value >= values[i]), accumulated from the top.
  std::vector<double> tail(values.size());
  double acc = 0.0;
  for (size_t i = values.size(); i-- > 0;) {
    acc += probs[i];
    tail[i] = acc;
  }
  Benchmark best{Price(values[0]), values[0] * tail[0]};
  for (size_t i = 1; i < values.size(); ++i) {
    double rate = values[i] * tail[i];
    if (rate > best.rate) best = {Price(values[i]), rate};
  }
  return best;
}

Benchmark RealizedBenchmarkRate(std::span<const RoundRecord> records) {
  if (records.empty()) return {};
  std::vector<double> values;
  for (const auto& r : records) values.push_back(r.value);
  std::sort(values.begin(), values.end());
  Benchmark best{};
  const double n = static_cast<double>(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] == values[i - 1]) continue;
    double rate = values[i] * static_cast<double>(values.size() - i) / n;
    if (rate > best.rate) best = {Price(values[i]), rate};
  }
  return best;
}

double StrategicRegret(double revenue, const ValueModel& model, int horizon) {
  if (horizon < 1) throw std::invalid_argument("regret needs T >= 1");
  return horizon * BenchmarkRate(model).rate - revenue;
}

double SampleValue(const ValueModel& model, Rng& rng) {
  if (model.is_fixed()) return model.values()[0];
  double u = rng.Uniform();
  const auto& probs = model.probs();
  double cdf = 0.0;
  for (size_t i = 0; i + 1 < probs.size(); ++i) {
    cdf += probs[i];
    if (u < cdf) return model.values()[i];
  }
  return model.values().back();
}

std::string FormatNumber(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x,
                           std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double ParseDecimal(const std::string& token) {
  bool ok = !token.empty();
  for (char c : token) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
          c == '+')) {
      ok = false;
    }
  }
  double value = 0.0;
  if (ok) {
    const char* begin = token.data();
    if (*begin == '+') ++begin;
    auto res = std::from_chars(begin, token.data() + token.size(), value,
                               std::chars_format::fixed);
    ok = res.ec == std::errc() && res.ptr == token.data() + token.size();
  }
  if (!ok) throw std::invalid_argument("not a decimal number: '" + token + "'");
  return value;
}

int64_t ParseInteger(const std::string& token) {
  int64_t value = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || res.ec != std::errc() ||
      res.ptr != token.data() + token.size()) {
    throw std::invalid_argument("not an integer: '" + token + "'");
  }
  return value;
}

uint64_t ParseUnsigned(const std::string& token) {
  uint64_t value = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || res.ec != std::errc() ||
      res.ptr != token.data() + token.size()) {
    throw std::invalid_argument("not an unsigned integer: '" + token + "'");
  }
  return value;
}

}  // namespace stratprice
