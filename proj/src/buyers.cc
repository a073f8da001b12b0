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

#include "stratprice/buyers.h"

#include <bit>
#include <cstring>
#include <sstream>

namespace stratprice {

void PolicyTable::Set(int t, std::string key, bool accept) {
  entries_[{t, std::move(key)}] = accept;
}

std::optional<bool> PolicyTable::Lookup(int t, const std::string& key) const {
  auto it = entries_.find({t, key});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string PolicyTable::ToText() const {
  std::string out = "# stratprice policy v1\n";
  out += "# seller=" + meta_.seller + "\n";
  out += "# value=" + FormatNumber(meta_.value) + "\n";
  out += "# gamma=" + FormatNumber(meta_.gamma) + "\n";
  out += "# T=" + std::to_string(meta_.horizon) + "\n";
  for (const auto& [k, accept] : entries_) {
    out += std::to_string(k.first) + '\t' + ToHex(k.second) + '\t' +
           (accept ? "accept" : "reject") + '\n';
  }
  return out;
}

PolicyTable PolicyTable::FromText(const std::string& text) {
  PolicyTable table;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(2, eq - 2);
      std::string value = line.substr(eq + 1);
      if (key == "seller") table.meta_.seller = value;
      else if (key == "value") table.meta_.value = ParseDecimal(value);
      else if (key == "gamma") table.meta_.gamma = ParseDecimal(value);
      else if (key == "T") table.meta_.horizon = static_cast<int>(ParseInteger(value));
      continue;
    }
    auto tab1 = line.find('\t');
    auto tab2 = line.find('\t', tab1 == std::string::npos ? tab1 : tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos) {
      throw std::invalid_argument("malformed policy line '" + line + "'");
    }
    int t = static_cast<int>(ParseInteger(line.substr(0, tab1)));
    std::string action = line.substr(tab2 + 1);
    if (action != "accept" && action != "reject") {
      throw std::invalid_argument("bad policy action '" + action + "'");
    }
    table.Set(t, FromHex(line.substr(tab1 + 1, tab2 - tab1 - 1)),
              action == "accept");
  }
  return table;
}

std::string DecisionKey(const Seller& post_draw, Price price) {
  std::string key = post_draw.StateKey();
  uint64_t bits = std::bit_cast<uint64_t>(price.value());
  char buf[sizeof(bits)];
  std::memcpy(buf, &bits, sizeof(bits));
  key.append(buf, sizeof(bits));
  return key;
}

std::string ToHex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out += kDigits[c >> 4];
    out += kDigits[c & 0xF];
  }
  return out;
}

std::string FromHex(const std::string& hex) {
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw std::invalid_argument("bad hex digit in '" + hex + "'");
  };
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex key");
  std::string out;
  for (size_t i = 0; i < hex.size(); i += 2) {
    out += static_cast<char>(nibble(hex[i]) << 4 | nibble(hex[i + 1]));
  }
  return out;
}

PolicyBuyer::PolicyBuyer(PolicyTable policy, const Seller& seller)
    : policy_(std::move(policy)), tracker_(seller.Clone()) {
  const auto& meta = policy_.metadata();
  if (meta.seller != seller.spec() || meta.horizon != seller.horizon()) {
    throw PolicyMismatchError("policy was solved for seller '" + meta.seller +
                              "' T=" + std::to_string(meta.horizon) +
                              ", episode uses '" + seller.spec() +
                              "' T=" + std::to_string(seller.horizon()));
  }
}

bool PolicyBuyer::Decide(int t, Price price, double,
                         std::span<const RoundRecord>) {
  auto branches = tracker_->EnumerateOffers(t);
  for (auto& branch : branches) {
    if (branch.price != price) continue;
    auto decision = policy_.Lookup(t, DecisionKey(*branch.state, price));
    if (!decision) {
      throw PolicyMismatchError("no policy entry for round " +
                                std::to_string(t) + " at price " +
                                FormatNumber(price.value()));
    }
    tracker_ = std::move(branch.state);
    tracker_->Update(t, price, *decision);
    return *decision;
  }
  throw PolicyMismatchError("price " + FormatNumber(price.value()) +
                            " cannot be offered at round " + std::to_string(t));
}

Transcript PlayEpisode(Seller& seller, Buyer& buyer, const ValueModel& model,
                       int horizon, Rng& seller_rng, Rng& value_rng) {
  Transcript transcript(horizon);
  for (int t = 1; t <= horizon; ++t) {
    double value = SampleValue(model, value_rng);
    Price price = seller.Offer(t, seller_rng);
    bool accepted = buyer.Decide(t, price, value, transcript.records());
    seller.Update(t, price, accepted);
    transcript.Append(price, accepted, value);
  }
  return transcript;
}

std::vector<double> ThresholdGrid(double top, int points) {
  std::vector<double> grid;
  for (int j = 1; j <= points; ++j) grid.push_back(top * j / points);
  return grid;
}

ThresholdChoice OptimizeThreshold(const std::string& seller_spec,
                                  const ValueModel& model, Discount gamma,
                                  int horizon, uint64_t seed, int points) {
  ThresholdChoice best{0.0, -1.0};
  bool first = true;
  for (double theta : ThresholdGrid(model.max_value(), points)) {
    auto seller = MakeSeller(seller_spec, horizon, gamma.gamma());
    ThresholdBuyer buyer{Price(theta)};
    Rng seller_rng(Mix64(seed, kSellerStream));
    Rng value_rng(Mix64(seed, kValueStream));
    auto transcript =
        PlayEpisode(*seller, buyer, model, horizon, seller_rng, value_rng);
    double surplus = BuyerSurplus(transcript, gamma);
    if (first || surplus > best.surplus) {
      best = {theta, surplus};
      first = false;
    }
  }
  return best;
}

}  // namespace stratprice
