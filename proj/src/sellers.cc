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

#include "stratprice/sellers.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace stratprice {

namespace {

template <typename T>
void AppendBytes(std::string& key, const T& value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  key.append(buf, sizeof(T));
}

template <typename T>
void AppendBytes(std::string& key, const std::vector<T>& values) {
  for (const auto& v : values) AppendBytes(key, v);
}

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

int ParseCount(const std::string& token, const char* what) {
  int64_t k = ParseInteger(token);
  if (k < 1 || k > 1'000'000) {
    throw std::invalid_argument(std::string(what) + " must be >= 1: '" +
                                token + "'");
  }
  return static_cast<int>(k);
}

std::string PhasedSpec(const PhasedParams& params) {
  std::string spec = "phased:alpha=" + FormatNumber(params.alpha) +
                     ",samples=" + std::to_string(params.samples);
  if (params.fixed_k > 0) spec += ",K=" + std::to_string(params.fixed_k);
  return spec + ",first=" + std::to_string(params.first_phase);
}

}  // namespace

Seller::Seller(std::string spec, int horizon)
    : spec_(std::move(spec)), horizon_(horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
}

void Seller::CheckRound(int t) const {
  if (t < 1 || t > horizon_) {
    throw std::out_of_range("round " + std::to_string(t) +
                            " outside 1.." + std::to_string(horizon_));
  }
}

Price Seller::Offer(int t, Rng& rng) {
  auto branches = EnumerateOffers(t);
  size_t pick = 0;
  if (branches.size() > 1) {
    double u = rng.Uniform();
    double cdf = 0.0;
    pick = branches.size() - 1;
    for (size_t i = 0; i + 1 < branches.size(); ++i) {
      cdf += branches[i].probability;
      if (u < cdf) {
        pick = i;
        break;
      }
    }
  }
  AssignFrom(*branches[pick].state);
  return branches[pick].price;
}

PriceGrid::PriceGrid(int k) : k_(k) {
  if (k < 1) throw std::invalid_argument("price grid needs K >= 1");
}

Price PriceGrid::Point(int index) const {
  return Price(static_cast<double>(index + 1) / k_);
}

std::vector<Price> PriceGrid::Points() const {
  std::vector<Price> points;
  for (int i = 0; i < k_; ++i) points.push_back(Point(i));
  return points;
}

int PriceGrid::IndexOf(Price price) const {
  int guess = static_cast<int>(std::lround(price.value() * k_)) - 1;
  if (guess >= 0 && guess < k_ && Point(guess) == price) return guess;
  return -1;
}

// ---------------------------------------------------------------------------

FixedPriceSeller::FixedPriceSeller(Price price, int horizon)
    : SellerBase("fixed:" + FormatNumber(price.value()), horizon),
      price_(price) {}

std::vector<OfferBranch> FixedPriceSeller::EnumerateOffers(int t) const {
  CheckRound(t);
  return Single(price_);
}

void FixedPriceSeller::Update(int t, Price, bool) { CheckRound(t); }

// ---------------------------------------------------------------------------

BinarySearchSeller::BinarySearchSeller(int horizon)
    : SellerBase("binsearch", horizon) {}

std::vector<OfferBranch> BinarySearchSeller::EnumerateOffers(int t) const {
  CheckRound(t);
  return Single(Price((lo_ + hi_) / 2));
}

void BinarySearchSeller::Update(int t, Price price, bool accepted) {
  CheckRound(t);
  (accepted ? lo_ : hi_) = price.value();
}

std::string BinarySearchSeller::StateKey() const {
  std::string key;
  AppendBytes(key, lo_);
  AppendBytes(key, hi_);
  return key;
}

// ---------------------------------------------------------------------------

MonotoneSeller::MonotoneSeller(double beta, int horizon)
    : SellerBase("monotone:" + FormatNumber(beta), horizon), beta_(beta) {
  if (!(beta > 0.5 && beta < 1.0)) {
    throw std::invalid_argument("monotone beta must lie in (1/2, 1): " +
                                FormatNumber(beta));
  }
}

double MonotoneSeller::TunedBeta(int horizon) {
  return 1.0 - 1.0 / std::sqrt(static_cast<double>(std::max(horizon, 5)));
}

std::vector<OfferBranch> MonotoneSeller::EnumerateOffers(int t) const {
  CheckRound(t);
  return Single(Price(price_));
}

void MonotoneSeller::Update(int t, Price, bool accepted) {
  CheckRound(t);
  if (!accepted) {
    price_ *= beta_;
    ++rejections_;
  }
}

std::string MonotoneSeller::StateKey() const {
  std::string key;
  AppendBytes(key, rejections_);
  return key;
}

// ---------------------------------------------------------------------------

PhasedSeller::PhasedSeller(PhasedParams params, int horizon)
    : SellerBase(PhasedSpec(params), horizon), params_(params) {
  if (!(params.alpha > 0.0 && params.alpha <= 1.0)) {
    throw std::invalid_argument("phased alpha must lie in (0, 1]");
  }
  if (params.samples < 1) throw std::invalid_argument("phased samples >= 1");
  if (params.fixed_k < 0) throw std::invalid_argument("phased K >= 1");
  if (params.first_phase < 1 || params.first_phase > 40) {
    throw std::invalid_argument("phased first phase exponent in 1..40");
  }
  int start = 1;
  for (int i = 0; start <= horizon; ++i) {
    double nominal = std::ldexp(1.0, params.first_phase + i);
    Phase phase;
    phase.start = start;
    // The epsilon keeps exact powers (4^(1/2) = 2) from rounding up.
    phase.grid = params.fixed_k > 0
                     ? params.fixed_k
                     : std::max(1, static_cast<int>(std::ceil(
                                       std::pow(nominal, params.alpha) - 1e-9)));
    if (static_cast<double>(phase.grid) * params.samples > nominal) {
      throw std::invalid_argument(
          "phased schedule inconsistent: phase of length " +
          FormatNumber(nominal) + " cannot explore " +
          std::to_string(phase.grid) + " prices x " +
          std::to_string(params.samples) + " samples");
    }
    phase.length = static_cast<int>(
        std::min<double>(nominal, static_cast<double>(horizon - start + 1)));
    phase.explore = std::min(phase.grid * params.samples, phase.length);
    schedule_.push_back(phase);
    start += phase.length;
  }
  StartPhase(0);
}

void PhasedSeller::StartPhase(int index) {
  phase_ = index;
  int k = index < static_cast<int>(schedule_.size()) ? schedule_[index].grid : 0;
  offered_.assign(k, 0);
  accepted_.assign(k, 0);
  exploit_index_ = -1;
}

int PhasedSeller::CurrentPhaseIndexFor(int t) const {
  auto it = std::upper_bound(
      schedule_.begin(), schedule_.end(), t,
      [](int round, const Phase& p) { return round < p.start; });
  return static_cast<int>(it - schedule_.begin()) - 1;
}

const PhasedSeller::Phase& PhasedSeller::PhaseAt(int t) const {
  CheckRound(t);
  return schedule_[CurrentPhaseIndexFor(t)];
}

PhasedSeller::Segment PhasedSeller::SegmentAt(int t) const {
  const Phase& p = PhaseAt(t);
  return t - p.start < p.explore ? Segment::kExplore : Segment::kExploit;
}

std::vector<OfferBranch> PhasedSeller::EnumerateOffers(int t) const {
  CheckRound(t);
  if (CurrentPhaseIndexFor(t) != phase_) {
    throw std::logic_error("phased seller state is not at round " +
                           std::to_string(t));
  }
  PriceGrid grid(schedule_[phase_].grid);
  if (SegmentAt(t) == Segment::kExploit) return Single(grid.Point(exploit_index_));
  int remaining = 0;
  for (int k = 0; k < grid.size(); ++k) remaining += params_.samples - offered_[k];
  std::vector<OfferBranch> out;
  for (int k = 0; k < grid.size(); ++k) {
    int left = params_.samples - offered_[k];
    if (left == 0) continue;
    out.push_back({static_cast<double>(left) / remaining, grid.Point(k), Clone()});
  }
  return out;
}

void PhasedSeller::Update(int t, Price price, bool accepted) {
  CheckRound(t);
  const Phase& phase = schedule_[phase_];
  if (SegmentAt(t) == Segment::kExplore) {
    int k = PriceGrid(phase.grid).IndexOf(price);
    if (k < 0 || offered_[k] >= params_.samples) {
      throw std::invalid_argument("price " + FormatNumber(price.value()) +
                                  " was not an open explore offer");
    }
    ++offered_[k];
    if (accepted) ++accepted_[k];
    if (t - phase.start + 1 == phase.explore &&
        phase.explore == phase.grid * params_.samples) {
      PriceGrid grid(phase.grid);
      exploit_index_ = 0;
      double best = -1.0;
      for (int j = 0; j < grid.size(); ++j) {
        double estimate =
            grid.Point(j).value() * accepted_[j] / static_cast<double>(offered_[j]);
        if (estimate > best) {
          best = estimate;
          exploit_index_ = j;
        }
      }
    }
  }
  if (t == phase.start + phase.length - 1) StartPhase(phase_ + 1);
}

std::string PhasedSeller::StateKey() const {
  std::string key;
  AppendBytes(key, phase_);
  AppendBytes(key, exploit_index_);
  AppendBytes(key, offered_);
  AppendBytes(key, accepted_);
  return key;
}

// ---------------------------------------------------------------------------

UcbSeller::UcbSeller(PriceGrid grid, int horizon)
    : SellerBase("ucb:" + std::to_string(grid.size()), horizon),
      grid_(grid),
      pulls_(grid.size(), 0),
      accepts_(grid.size(), 0) {}

double UcbSeller::Index(int arm, int t) const {
  double mean = grid_.Point(arm).value() * accepts_[arm] /
                static_cast<double>(pulls_[arm]);
  return mean + std::sqrt(2.0 * std::log(static_cast<double>(t)) / pulls_[arm]);
}

int UcbSeller::ChooseArm(int t) const {
  for (int k = 0; k < grid_.size(); ++k) {
    if (pulls_[k] == 0) return k;
  }
  int best = 0;
  double best_index = Index(0, t);
  for (int k = 1; k < grid_.size(); ++k) {
    double index = Index(k, t);
    if (index > best_index) {
      best_index = index;
      best = k;
    }
  }
  return best;
}

std::vector<OfferBranch> UcbSeller::EnumerateOffers(int t) const {
  CheckRound(t);
  return Single(grid_.Point(ChooseArm(t)));
}

void UcbSeller::Update(int t, Price price, bool accepted) {
  CheckRound(t);
  int k = grid_.IndexOf(price);
  if (k < 0) throw std::invalid_argument("ucb: price off the grid");
  ++pulls_[k];
  if (accepted) ++accepts_[k];
}

std::string UcbSeller::StateKey() const {
  std::string key;
  AppendBytes(key, pulls_);
  AppendBytes(key, accepts_);
  return key;
}

// ---------------------------------------------------------------------------

Exp3Seller::Exp3Seller(PriceGrid grid, double eta, int horizon)
    : SellerBase("exp3:" + std::to_string(grid.size()) + "," + FormatNumber(eta),
                 horizon),
      grid_(grid),
      eta_(eta),
      log_weights_(grid.size(), 0.0) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("exp3 eta must lie in (0, 1]: " +
                                FormatNumber(eta));
  }
}

std::vector<double> Exp3Seller::Probabilities() const {
  const int k = grid_.size();
  std::vector<double> w(k);
  double total = 0.0;
  for (int i = 0; i < k; ++i) total += (w[i] = std::exp(log_weights_[i]));
  std::vector<double> probs(k);
  for (int i = 0; i < k; ++i) probs[i] = (1.0 - eta_) * w[i] / total + eta_ / k;
  return probs;
}

std::vector<OfferBranch> Exp3Seller::EnumerateOffers(int t) const {
  CheckRound(t);
  auto probs = Probabilities();
  std::vector<OfferBranch> out;
  for (int i = 0; i < grid_.size(); ++i) {
    out.push_back({probs[i], grid_.Point(i), Clone()});
  }
  return out;
}

void Exp3Seller::Update(int t, Price price, bool accepted) {
  CheckRound(t);
  int i = grid_.IndexOf(price);
  if (i < 0) throw std::invalid_argument("exp3: price off the grid");
  double reward = accepted ? price.value() : 0.0;
  double prob = Probabilities()[i];
  log_weights_[i] += eta_ * (reward / prob) / grid_.size();
  double top = *std::max_element(log_weights_.begin(), log_weights_.end());
  for (double& lw : log_weights_) lw -= top;
}

std::string Exp3Seller::StateKey() const {
  std::string key;
  AppendBytes(key, log_weights_);
  return key;
}

// ---------------------------------------------------------------------------

std::unique_ptr<Seller> MakeSeller(const std::string& spec, int horizon,
                                   double /*gamma*/) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  bool has_body = colon != std::string::npos;

  if (kind == "fixed" && has_body) {
    return std::make_unique<FixedPriceSeller>(Price(ParseDecimal(body)),
                                              horizon);
  }
  if (kind == "binsearch" && !has_body) {
    return std::make_unique<BinarySearchSeller>(horizon);
  }
  if (kind == "monotone") {
    double beta = has_body ? ParseDecimal(body.starts_with("beta=")
                                              ? body.substr(5)
                                              : body)
                           : MonotoneSeller::TunedBeta(horizon);
    return std::make_unique<MonotoneSeller>(beta, horizon);
  }
  if (kind == "phased") {
    PhasedParams params;
    if (has_body) {
      for (const auto& item : SplitOn(body, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
          throw std::invalid_argument("bad phased parameter '" + item + "'");
        }
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        if (key == "alpha") {
          params.alpha = ParseDecimal(value);
        } else if (key == "samples") {
          params.samples = ParseCount(value, "samples");
        } else if (key == "K") {
          params.fixed_k = ParseCount(value, "K");
        } else if (key == "first") {
          params.first_phase = ParseCount(value, "first");
        } else {
          throw std::invalid_argument("unknown phased parameter '" + key + "'");
        }
      }
    }
    return std::make_unique<PhasedSeller>(params, horizon);
  }
  if (kind == "ucb" && has_body) {
    return std::make_unique<UcbSeller>(PriceGrid(ParseCount(body, "K")),
                                       horizon);
  }
  if (kind == "exp3" && has_body) {
    auto parts = SplitOn(body, ',');
    if (parts.size() != 2) {
      throw std::invalid_argument("exp3 expects <K>,<eta>: '" + body + "'");
    }
    return std::make_unique<Exp3Seller>(PriceGrid(ParseCount(parts[0], "K")),
                                        ParseDecimal(parts[1]), horizon);
  }
  throw std::invalid_argument("unknown seller spec '" + spec + "'");
}

std::string SellerGrammar() {
  return "Seller specs:\n"
         "  fixed:<p>          post price p every round\n"
         "  binsearch          halving search on [0,1]\n"
         "  monotone           start at 1, multiply by beta on reject; "
         "beta = 1 - 1/sqrt(T)\n"
         "  monotone:<beta>    same with explicit beta in (1/2,1)\n"
         "  phased             doubling phases, explore then exploit\n"
         "  phased:<k>=<v>,... keys alpha (0,1], samples, K (fixed grid), "
         "first (log2 of first phase length)\n"
         "  ucb:<K>            UCB1 over grid {1/K..1}\n"
         "  exp3:<K>,<eta>     EXP3 over grid {1/K..1}, eta in (0,1]\n";
}

}  // namespace stratprice
