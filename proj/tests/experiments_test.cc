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
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "stratprice/core.h"
#include "stratprice/rng.h"

namespace stratprice {
namespace {

size_t Count(const std::string& haystack, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

ExperimentConfig RandomizedConfig() {
  ExperimentConfig c;
  c.seller = "exp3:4,0.2";
  c.buyer = "truthful";
  c.value_model = "uniform:0.25,0.75";
  c.gammas = {0.5, 1.0};
  c.horizons = {10, 20};
  c.replications = 3;
  c.base_seed = 17;
  return c;
}

SweepRow Row(double gamma, int horizon, double regret, double revenue = 0.0) {
  SweepRow r;
  r.seller = "s";
  r.buyer = "b";
  r.gamma = gamma;
  r.horizon = horizon;
  r.value_model = "fixed:0.5";
  r.regret = regret;
  r.revenue = revenue;
  return r;
}

TEST(RunEpisodeTest, FixedSellerTruthfulBuyer) {
  for (uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    Episode e = RunEpisode("fixed:0.4", "truthful", ValueModel::Fixed(0.7),
                           Discount(1.0), 5, seed);
    EXPECT_NEAR(e.result.revenue, 2.0, 1e-12);
    EXPECT_NEAR(e.result.surplus, 1.5, 1e-12);
    EXPECT_NEAR(e.result.regret, 1.5, 1e-12);
    EXPECT_EQ(e.result.benchmark_rate, 0.7);
  }
}

TEST(RunEpisodeTest, BinarySearchTruthful) {
  Episode e = RunEpisode("binsearch", "truthful", ValueModel::Fixed(0.7),
                         Discount(1.0), 3, 1);
  EXPECT_NEAR(e.result.revenue, 1.125, 1e-12);
}

TEST(RunEpisodeTest, BestResponseBuyerMatchesSolver) {
  Episode e = RunEpisode("binsearch", "bestresponse", ValueModel::Fixed(0.7),
                         Discount(1.0), 3, 1);
  EXPECT_NEAR(e.result.surplus, 0.775, 1e-12);
  EXPECT_NEAR(e.result.revenue, 0.625, 1e-12);
  EXPECT_THROW(RunEpisode("binsearch", "bestresponse",
                          ValueModel::Uniform({0.2, 0.8}), Discount(1.0), 3, 1),
               std::invalid_argument);
  EXPECT_THROW(RunEpisode("binsearch", "bestresponse", ValueModel::Fixed(0.7),
                          Discount(1.0), 25, 1),
               ResourceLimitError);
}

TEST(RunEpisodeTest, ByteIdenticalReplay) {
  for (const char* seller : {"exp3:5,0.1", "phased", "ucb:4"}) {
    Episode a = RunEpisode(seller, "truthful", ValueModel::Uniform({0.3, 0.9}),
                           Discount(0.9), 200, 5);
    Episode b = RunEpisode(seller, "truthful", ValueModel::Uniform({0.3, 0.9}),
                           Discount(0.9), 200, 5);
    EXPECT_EQ(a.transcript.ToCsv(), b.transcript.ToCsv()) << seller;
  }
}

TEST(RunEpisodeTest, MetricsMatchTranscript) {
  ValueModel model = ValueModel::Uniform({0.2, 0.5, 0.9});
  Episode e = RunEpisode("exp3:4,0.2", "threshold:0.6", model, Discount(0.8),
                         100, 3);
  EXPECT_NEAR(e.result.revenue, SellerRevenue(e.transcript), 1e-9);
  EXPECT_NEAR(e.result.surplus, BuyerSurplus(e.transcript, Discount(0.8)), 1e-9);
  EXPECT_NEAR(e.result.regret, 100 * e.result.benchmark_rate - e.result.revenue,
              1e-9);
}

TEST(RunEpisodeTest, TruthfulBaselineBounds) {
  for (const char* seller :
       {"fixed:0.3", "binsearch", "monotone", "phased", "ucb:5", "exp3:5,0.1"}) {
    Episode e = RunEpisode(seller, "truthful", ValueModel::Fixed(0.55),
                           Discount(1.0), 300, 8);
    EXPECT_GE(e.result.surplus, 0.0) << seller;
    EXPECT_LE(e.result.revenue, 300 * 0.55 + 1e-9) << seller;
  }
}

TEST(RunEpisodeTest, RealizedBenchmark) {
  EpisodeOptions options;
  options.realized_benchmark = true;
  Episode e = RunEpisode("fixed:0.1", "truthful",
                         ValueModel::Uniform({0.2, 0.9}), Discount(1.0), 50, 4,
                         options);
  EXPECT_EQ(e.result.benchmark_rate,
            RealizedBenchmarkRate(e.transcript.records()).rate);
}

TEST(MakeBuyerTest, Specs) {
  auto seller = MakeSeller("fixed:0.4", 5);
  ValueModel m = ValueModel::Fixed(0.7);
  EXPECT_EQ(MakeBuyer("truthful", *seller, m, Discount(1.0), 0, 20)->name(),
            "truthful");
  EXPECT_EQ(MakeBuyer("threshold:0.3", *seller, m, Discount(1.0), 0, 20)->name(),
            "threshold:0.3");
  EXPECT_THROW(MakeBuyer("liar", *seller, m, Discount(1.0), 0, 20),
               std::invalid_argument);
  EXPECT_THROW(MakeBuyer("threshold:2", *seller, m, Discount(1.0), 0, 20),
               std::invalid_argument);
  std::string g = BuyerGrammar();
  for (const char* token :
       {"truthful", "threshold:<theta>", "threshold:opt", "bestresponse"}) {
    EXPECT_NE(g.find(token), std::string::npos) << token;
  }
}

TEST(IsDeterministicConfigTest, Cases) {
  EXPECT_TRUE(IsDeterministicConfig("fixed:0.4", ValueModel::Fixed(0.7)));
  EXPECT_TRUE(IsDeterministicConfig("monotone", ValueModel::Fixed(0.7)));
  EXPECT_FALSE(IsDeterministicConfig("phased", ValueModel::Fixed(0.7)));
  EXPECT_FALSE(IsDeterministicConfig("fixed:0.4", ValueModel::Uniform({0.2, 0.8})));
}

TEST(RunSweepTest, RowOrderAndSeeds) {
  ExperimentConfig c = RandomizedConfig();
  std::vector<std::string> warnings;
  auto rows = RunSweep(c, 1, &warnings);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_TRUE(warnings.empty());
  size_t i = 0;
  for (double g : c.gammas) {
    for (int t : c.horizons) {
      for (int rep = 0; rep < 3; ++rep, ++i) {
        EXPECT_EQ(rows[i].gamma, g);
        EXPECT_EQ(rows[i].horizon, t);
        EXPECT_EQ(rows[i].seed, Mix64(17, i));
        Episode e = RunEpisode(c.seller, c.buyer,
                               ParseValueModel(c.value_model), Discount(g), t,
                               rows[i].seed);
        EXPECT_EQ(rows[i].revenue, e.result.revenue);
        EXPECT_NEAR(rows[i].regret,
                    t * rows[i].benchmark_rate - rows[i].revenue, 1e-9);
      }
    }
  }
  EXPECT_EQ(RunSweep(c, 1), rows);
  EXPECT_EQ(Summarize(rows).size(), 4u);
}

TEST(RunSweepTest, JobsDoNotChangeOutput) {
  ExperimentConfig c = RandomizedConfig();
  c.replications = 7;
  auto serial = RunSweep(c, 1);
  for (int jobs : {2, 3, 8, 64}) EXPECT_EQ(RunSweep(c, jobs), serial) << jobs;
}

TEST(RunSweepTest, DeterministicConfigRunsOnce) {
  ExperimentConfig c = RandomizedConfig();
  c.seller = "fixed:0.4";
  c.value_model = "fixed:0.7";
  std::vector<std::string> warnings;
  auto rows = RunSweep(c, 4, &warnings);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(warnings.size(), 1u);
  for (const auto& s : Summarize(rows)) EXPECT_EQ(s.revenue.std_error, 0.0);
}

TEST(RunSweepTest, FailingRowIsIdentified) {
  ExperimentConfig c = RandomizedConfig();
  c.seller = "binsearch";
  c.buyer = "bestresponse";
  c.value_model = "fixed:0.7";
  c.horizons = {3, 30};
  try {
    RunSweep(c, 2);
    FAIL();
  } catch (const SweepError& e) {
    EXPECT_EQ(e.row(), 1u);
  }
}

TEST(SummarizeTest, MeanAndStandardError) {
  auto s = Summarize({Row(1.0, 10, 1.0), Row(1.0, 10, 3.0)});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].n, 2u);
  EXPECT_NEAR(s[0].regret.mean, 2.0, 1e-15);
  EXPECT_NEAR(s[0].regret.std_error, 1.0, 1e-15);

  auto same = Summarize({Row(1.0, 10, 2.5), Row(1.0, 10, 2.5), Row(1.0, 10, 2.5)});
  EXPECT_EQ(same[0].regret.std_error, 0.0);
  EXPECT_EQ(Summarize({Row(1.0, 10, 4.0)})[0].regret.std_error, 0.0);
}

TEST(SummarizeTest, GroupsInFirstAppearanceOrder) {
  auto s = Summarize({Row(1.0, 20, 1), Row(0.5, 10, 1), Row(1.0, 20, 3)});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].horizon, 20);
  EXPECT_EQ(s[0].n, 2u);
  EXPECT_EQ(s[1].gamma, 0.5);
}

TEST(CsvTest, EmptyRowsWriteHeaderOnly) {
  EXPECT_EQ(RowsToCsv({}), std::string(kRowsHeader) + "\n");
}

TEST(CsvTest, GoldenRowBytes) {
  SweepRow r;
  r.seller = "fixed:0.4";
  r.buyer = "truthful";
  r.gamma = 0.5;
  r.horizon = 5;
  r.value_model = "fixed:0.7";
  r.seed = 12345678901234567890ULL;
  r.revenue = 2.0;
  r.surplus = 0.58125;
  r.benchmark_rate = 0.7;
  r.regret = 5 * 0.7 - 2.0;
  EXPECT_EQ(RowsToCsv({r}),
            "seller,buyer,gamma,T,value_model,seed,revenue,surplus,"
            "benchmark_rate,regret\n"
            "fixed:0.4,truthful,0.5,5,fixed:0.7,12345678901234567890,2,0.58125,"
            "0.7,1.5\n");
}

TEST(CsvTest, CommaFieldsAreQuotedAndParseBack) {
  ExperimentConfig c = RandomizedConfig();
  auto rows = RunSweep(c, 2);
  std::string csv = RowsToCsv(rows);
  EXPECT_NE(csv.find("\"uniform:0.25,0.75\""), std::string::npos);
  EXPECT_NE(csv.find("\"exp3:4,0.2\""), std::string::npos);
  auto back = ParseRowsCsv(csv);
  ASSERT_EQ(back.size(), rows.size());
  EXPECT_EQ(RowsToCsv(back), csv);
  EXPECT_EQ(RowsToCsv(rows), csv);
}

TEST(CsvTest, MalformedInput) {
  EXPECT_THROW(ParseRowsCsv("a,b\n1,2\n"), std::invalid_argument);
  EXPECT_THROW(ParseRowsCsv(std::string(kRowsHeader) + "\nx,y,z\n"),
               std::invalid_argument);
}

TEST(SummaryCsvTest, Header) {
  std::string csv = SummariesToCsv(Summarize({Row(1.0, 10, 1.0)}));
  EXPECT_EQ(csv.rfind(kSummaryHeader, 0), 0u);
  EXPECT_EQ(Count(csv, "\n"), 2u);
}

TEST(ConfigTest, ParsesFullDocument) {
  ExperimentConfig c = ParseConfig(R"({
    "seller": "phased", "buyer": "threshold:opt", "value_model": "fixed:0.5",
    "gamma": [0.5, 1.0], "T": [100, 200], "replications": 4,
    "base_seed": 18446744073709551615, "output": "out.csv"})");
  EXPECT_EQ(c.seller, "phased");
  EXPECT_EQ(c.gammas, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(c.horizons, (std::vector<int>{100, 200}));
  EXPECT_EQ(c.replications, 4);
  EXPECT_EQ(c.base_seed, 18446744073709551615ULL);
  EXPECT_EQ(c.output, "out.csv");
}

TEST(ConfigTest, RejectsBadDocuments) {
  const std::string base =
      R"("seller": "phased", "buyer": "truthful", "value_model": "fixed:0.5")";
  for (const std::string& doc : {
           "{" + base + R"(, "gamma": [1.0], "T": [10], "seeds": 3})",
           "{" + base + R"(, "gamma": [], "T": [10]})",
           "{" + base + R"(, "gamma": [1.5], "T": [10]})",
           "{" + base + R"(, "gamma": [1.0], "T": [0]})",
           "{" + base + R"(, "gamma": [1.0], "T": [10], "replications": 0})",
           "{" + base + R"(, "gamma": [1.0]})",
           "{" + base + R"(, "gamma": "1.0", "T": [10]})",
           std::string("[1, 2]"),
           std::string("{not json"),
       }) {
    EXPECT_THROW(ParseConfig(doc), std::invalid_argument) << doc;
  }
  try {
    ParseConfig("{" + base + R"(, "gamma": [1.0], "T": [10], "seeds": 3})");
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("seeds"), std::string::npos);
  }
  EXPECT_THROW(LoadConfig("/nonexistent/config.json"), std::exception);
}

TEST(ChartTest, SinglePointHasOneMarker) {
  std::string svg = RenderChart(Summarize({Row(1.0, 10, 2.0)}));
  EXPECT_EQ(Count(svg, "<circle"), 1u);
  EXPECT_EQ(Count(svg, "<polyline"), 1u);
  EXPECT_NE(svg.find(">T</text>"), std::string::npos);
  EXPECT_NE(svg.find(">regret</text>"), std::string::npos);
}

TEST(ChartTest, TwoSeriesSortedLegend) {
  std::string svg = RenderChart(Summarize(
      {Row(1.0, 10, 2.0), Row(1.0, 20, 4.0), Row(0.5, 10, 1.0),
       Row(0.5, 20, 1.5)}));
  EXPECT_EQ(Count(svg, "<polyline"), 2u);
  size_t low = svg.find("gamma=0.5");
  size_t high = svg.find("gamma=1<");
  ASSERT_NE(low, std::string::npos);
  ASSERT_NE(high, std::string::npos);
  EXPECT_LT(low, high);
}

TEST(ChartTest, MixedGroupsRejected) {
  SweepRow other = Row(1.0, 10, 1.0);
  other.seller = "t";
  EXPECT_THROW(RenderChart(Summarize({Row(1.0, 10, 1.0), other})),
               std::invalid_argument);
}

TEST(ChartTest, DeterministicBytes) {
  auto rows = RunSweep(RandomizedConfig(), 3);
  EXPECT_EQ(RenderChart(Summarize(rows)), RenderChart(Summarize(rows)));
  EXPECT_EQ(RenderChart(Summarize(rows)),
            RenderChart(Summarize(ParseRowsCsv(RowsToCsv(rows)))));
}

TEST(FileTest, WriteThenRead) {
  auto path = std::filesystem::temp_directory_path() / "stratprice_io_test.csv";
  WriteFile(path.string(), "a\nb\n");
  EXPECT_EQ(ReadFile(path.string()), "a\nb\n");
  std::filesystem::remove(path);
  EXPECT_THROW(WriteFile("/nonexistent/dir/x.csv", "x"), std::runtime_error);
  EXPECT_THROW(ReadFile("/nonexistent/dir/x.csv"), std::runtime_error);
}

}  // namespace
}  // namespace stratprice
