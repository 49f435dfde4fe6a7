// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oovfst/corpus.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "oovfst/errors.h"

namespace oovfst {
namespace {

using Strings = std::vector<std::string>;

CorpusStats Stats(std::string id, std::map<std::string, double> counts) {
  CorpusStats s;
  s.id = std::move(id);
  s.sentences = 1;
  s.counts = std::move(counts);
  return s;
}

Strings Numbered(int n) {
  Strings s;
  for (int i = 0; i < n; ++i) s.push_back("sentence " + std::to_string(i));
  return s;
}

TEST(SamplingFactorTest, FormulaCases) {
  SamplingConfig cfg{3'000'000, 10.0, 0.5};
  EXPECT_EQ(SamplingFactor(0.1, 300'000, cfg), 1.0);
  EXPECT_EQ(SamplingFactor(0.5, 3'000'000, cfg), std::sqrt(0.5));
  EXPECT_NEAR(SamplingFactor(0.5, 3'000'000, cfg), 0.707107, 1e-6);
  // ratio 400 -> 20 -> capped.
  EXPECT_EQ(SamplingFactor(0.4, 3'000, cfg), 10.0);
  SamplingConfig raw{3'000'000, std::numeric_limits<double>::infinity(), 1.0};
  EXPECT_DOUBLE_EQ(SamplingFactor(0.4, 3'000, raw), 400.0);
}

TEST(SamplingFactorTest, MonotoneAndValidated) {
  SamplingConfig cfg{1'000'000, 10.0, 0.5};
  double prev = 0.0;
  for (double w = 0.0; w <= 1.0; w += 0.05) {
    const double f = SamplingFactor(w, 50'000, cfg);
    EXPECT_GE(f, prev);
    prev = f;
  }
  prev = INFINITY;
  for (std::uint64_t n = 1'000; n < 10'000'000; n *= 3) {
    const double f = SamplingFactor(0.3, n, cfg);
    EXPECT_LE(f, prev);
    prev = f;
  }
  EXPECT_THROW(SamplingFactor(0.1, 0, cfg), InvalidArgumentError);
  EXPECT_THROW(SamplingFactor(0.1, 10, {1e6, 0.5, 0.5}), InvalidArgumentError);
  EXPECT_THROW(SamplingFactor(0.1, 10, {1e6, 10, 0.0}), InvalidArgumentError);
  EXPECT_THROW(SamplingFactor(0.1, 10, {1e6, 10, 1.5}), InvalidArgumentError);
}

TEST(SplitMixTest, ReferenceOutputs) {
  // First outputs for state 0 from the published reference implementation.
  std::uint64_t state = 0;
  EXPECT_EQ(SplitMix64(state), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(SplitMix64(state), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(MaterializeTest, WholeFactors) {
  const Strings s = Numbered(5);
  EXPECT_EQ(Materialize(s, 1.0, 7, "c"), s);
  const Strings twice = Materialize(s, 2.0, 7, "c");
  ASSERT_EQ(twice.size(), 10u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(twice[2 * i], s[i]);
    EXPECT_EQ(twice[2 * i + 1], s[i]);
  }
  EXPECT_TRUE(Materialize(s, 0.0, 7, "c").empty());
}

TEST(MaterializeTest, HalfFactorSizeAndDeterminism) {
  const Strings s = Numbered(10'000);
  const Strings a = Materialize(s, 0.5, 1234, "news");
  EXPECT_NEAR(static_cast<double>(a.size()), 5000.0, 3 * 50.0);
  EXPECT_EQ(Materialize(s, 0.5, 1234, "news"), a);
  EXPECT_NE(Materialize(s, 0.5, 1235, "news"), a);
  EXPECT_NE(Materialize(s, 0.5, 1234, "web"), a);
  const Strings b = Materialize(s, 2.25, 99, "x");
  EXPECT_NEAR(static_cast<double>(b.size()), 22'500.0,
              3 * std::sqrt(10'000 * 0.1875));
}

TEST(SelectVocabTest, MixtureExample) {
  const std::vector<CorpusStats> stats{Stats("c1", {{"a", 3}, {"b", 1}}),
                                       Stats("c2", {{"b", 2}, {"c", 2}})};
  const std::vector<double> w{0.7, 0.3};
  const auto p = MixtureProbabilities(stats, w);
  EXPECT_NEAR(p.at("a"), 0.525, 1e-12);
  EXPECT_NEAR(p.at("b"), 0.325, 1e-12);
  EXPECT_NEAR(p.at("c"), 0.15, 1e-12);
  EXPECT_NEAR(p.at("a") + p.at("b") + p.at("c"), 1.0, 1e-9);
  EXPECT_EQ(SelectVocab(stats, w, 2), (Strings{"a", "b"}));
  EXPECT_EQ(SelectVocab(stats, w, 10), (Strings{"a", "b", "c"}));
}

TEST(SelectVocabTest, SingleCorpusAndScaleInvariance) {
  std::vector<CorpusStats> one{Stats("c", {{"x", 5}, {"y", 9}, {"z", 5}})};
  EXPECT_EQ(SelectVocab(one, std::vector<double>{1.0}, 3),
            (Strings{"y", "x", "z"}));
  std::vector<CorpusStats> two{Stats("c1", {{"a", 3}, {"b", 1}}),
                               Stats("c2", {{"b", 2}, {"c", 2}})};
  const std::vector<double> w{0.4, 0.6};
  const auto before = SelectVocab(two, w, 3);
  for (auto &[u, c] : two[1].counts) c *= 10;
  EXPECT_EQ(SelectVocab(two, w, 3), before);
  EXPECT_THROW(SelectVocab(two, std::vector<double>{1.0}, 3),
               InvalidArgumentError);
}

void ExpectNonDecreasing(const std::vector<double> &ll) {
  for (std::size_t i = 1; i < ll.size(); ++i) {
    EXPECT_GE(ll[i], ll[i - 1] - 1e-9 * std::abs(ll[i - 1]));
  }
}

TEST(EstimateWeightsTest, RecoversGeneratingMixture) {
  std::mt19937_64 rng(2024);
  std::vector<CorpusStats> stats;
  std::vector<std::discrete_distribution<int>> sources;
  for (int i = 0; i < 3; ++i) {
    CorpusStats s;
    s.id = "c" + std::to_string(i);
    std::vector<double> probs;
    std::gamma_distribution<double> g(0.5, 1.0);
    for (int u = 0; u < 50; ++u) {
      const double c = std::floor(1000 * g(rng)) + 1;
      s.counts["u" + std::to_string(u)] = c;
      probs.push_back(c);
    }
    stats.push_back(std::move(s));
    sources.emplace_back(probs.begin(), probs.end());
  }
  const std::vector<double> truth{0.6, 0.3, 0.1};
  std::discrete_distribution<int> pick(truth.begin(), truth.end());
  Strings dev;
  for (int t = 0; t < 10'000; ++t) {
    dev.push_back("u" + std::to_string(sources[pick(rng)](rng)));
  }
  const EmResult r = EstimateWeights(dev, stats, 500, 1e-7);
  ASSERT_EQ(r.weights.size(), 3u);
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.weights[i], truth[i], 0.05);
    sum += r.weights[i];
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
  ExpectNonDecreasing(r.log_likelihood);
}

TEST(EstimateWeightsTest, DisjointSupportAndSymmetry) {
  const std::vector<CorpusStats> disjoint{Stats("a", {{"x", 1}, {"y", 1}}),
                                          Stats("b", {{"z", 1}})};
  const EmResult r =
      EstimateWeights(Strings{"x", "y", "x"}, disjoint, 200, 1e-12);
  EXPECT_GT(r.weights[0], 1.0 - 1e-6);
  EXPECT_LT(r.weights[1], 1e-6);
  ExpectNonDecreasing(r.log_likelihood);

  const std::vector<CorpusStats> same{Stats("a", {{"x", 2}, {"y", 1}}),
                                      Stats("b", {{"x", 2}, {"y", 1}})};
  const EmResult s = EstimateWeights(Strings{"x", "y"}, same, 10, 1e-12);
  EXPECT_NEAR(s.weights[0] + s.weights[1], 1.0, 1e-12);
  EXPECT_NEAR(s.log_likelihood.back(), std::log(2.0 / 3) + std::log(1.0 / 3),
              1e-12);
  EXPECT_THROW(EstimateWeights(Strings{}, same, 10, 1e-6),
               InvalidArgumentError);
}

TEST(CorpusIoTest, FormatsRoundTrip) {
  const auto manifest =
      ParseManifest("# corpora\nnews\tnews.txt\nweb\t/abs/web.txt\n", "/data");
  ASSERT_EQ(manifest.size(), 2u);
  EXPECT_EQ(manifest[0].id, "news");
  EXPECT_EQ(manifest[0].path, std::filesystem::path("/data/news.txt"));
  EXPECT_EQ(manifest[1].path, std::filesystem::path("/abs/web.txt"));
  EXPECT_THROW(ParseManifest("news news.txt\n", "."), ParseError);
  EXPECT_THROW(ParseManifest("a\tx\na\ty\n", "."), ParseError);

  const std::map<std::string, double> counts{{"Tallinn", 3}, {"maja", 12}};
  EXPECT_EQ(ParseCounts(FormatCounts(counts)), counts);

  const Strings ids{"news", "web"};
  const std::vector<double> w{0.25, 0.75};
  const std::string text = FormatWeights(ids, w);
  EXPECT_EQ(text, "news\t0.250000000\nweb\t0.750000000\n");
  const auto parsed = ParseWeights(text);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[1].first, "web");
  EXPECT_DOUBLE_EQ(parsed[1].second, 0.75);
}

TEST(CorpusIoTest, StatsCountUnits) {
  const CorpusStats s = ComputeStats("c", Strings{"a b a", "", "c"});
  EXPECT_EQ(s.sentences, 3u);
  EXPECT_EQ(s.counts.at("a"), 2.0);
  EXPECT_EQ(s.Total(), 4.0);
}

}  // namespace
}  // namespace oovfst
