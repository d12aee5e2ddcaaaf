// Copyright 2026 The Sepsisflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sepsisflow/loadgen/stats.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace sepsisflow::loadgen {
namespace {

// Walks ranks upward until rank >= q * N instead of calling ceil.
double BruteForcePercentile(std::vector<double> samples, double q) {
  std::sort(samples.begin(), samples.end());
  const double target = q * static_cast<double>(samples.size());
  std::size_t rank = 1;
  while (static_cast<double>(rank) < target) ++rank;
  return samples[rank - 1];
}

TEST(PercentileTest, SingleElement) { EXPECT_EQ(Percentile({89.3}, 0.95), 89.3); }

TEST(PercentileTest, OneToHundred) {
  std::vector<double> s;
  for (int i = 100; i >= 1; --i) s.push_back(i);
  EXPECT_EQ(Percentile(s, 0.95), 95.0);
  EXPECT_EQ(Percentile(s, 0.90), 90.0);
  EXPECT_EQ(Percentile(s, 1.0), 100.0);
  EXPECT_EQ(Percentile(s, 0.0), 1.0);
}

TEST(PercentileTest, ConstantList) {
  for (double q : {0.0, 0.1, 0.5, 0.95, 1.0}) EXPECT_EQ(Percentile({5, 5, 5, 5}, q), 5.0);
}

TEST(PercentileTest, EmptySamples) {
  try {
    Percentile({}, 0.5);
    FAIL() << "expected EmptySamples";
  } catch (const EmptySamples& e) {
    EXPECT_EQ(e.code(), "empty_samples");
  }
  EXPECT_THROW(Percentile({1.0}, 1.5), Error);
}

TEST(PercentileTest, MatchesBruteForceOnRandomSets) {
  std::mt19937_64 rng(95);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 2000)(rng);
    std::vector<double> s(n);
    // Mix of heavy tails and ties.
    std::lognormal_distribution<double> latency(3.0, 1.0);
    for (auto& v : s) v = rng() % 4 == 0 ? std::round(latency(rng)) : latency(rng);
    for (double q : {0.5, 0.9, 0.95, 0.99, std::uniform_real_distribution<double>()(rng)}) {
      ASSERT_EQ(Percentile(s, q), BruteForcePercentile(s, q)) << n << " " << q;
    }
    const double p50 = Percentile(s, 0.5), p90 = Percentile(s, 0.9),
                 p95 = Percentile(s, 0.95);
    const double max = *std::max_element(s.begin(), s.end());
    ASSERT_LE(p50, p90);
    ASSERT_LE(p90, p95);
    ASSERT_LE(p95, max);
  }
}

TEST(EvaluateThresholdsTest, ReportedRuns) {
  const Thresholds t;
  const auto light = EvaluateThresholds(89.3, 0.0, t);
  EXPECT_TRUE(light.p95_pass);
  EXPECT_TRUE(light.fail_rate_pass);
  const auto medium = EvaluateThresholds(259.3, 0.0003, t);
  EXPECT_TRUE(medium.pass());
  const auto heavy = EvaluateThresholds(3300.0, 0.174, t);
  EXPECT_FALSE(heavy.p95_pass);
  EXPECT_FALSE(heavy.fail_rate_pass);
}

TEST(EvaluateThresholdsTest, BoundariesFail) {
  const auto v = EvaluateThresholds(500.0, 0.01, Thresholds{});
  EXPECT_FALSE(v.p95_pass);
  EXPECT_FALSE(v.fail_rate_pass);
  EXPECT_THROW((Thresholds{0.0, 0.01}.Validate()), Error);
}

TEST(DeltaP95Test, ReplicaComparisonRows) {
  EXPECT_DOUBLE_EQ(DeltaP95(3300, 1410), -57.3);
  EXPECT_DOUBLE_EQ(DeltaP95(3300, 1530), -53.6);
  EXPECT_DOUBLE_EQ(DeltaP95(3300, 1580), -52.1);
  EXPECT_DOUBLE_EQ(DeltaP95(3300, 1860), -43.6);
  EXPECT_EQ(DeltaP95(1234.5, 1234.5), 0.0);
  EXPECT_FALSE(std::signbit(DeltaP95(3300, 3299.999)));
  EXPECT_THROW(DeltaP95(0, 10), Error);
}

// delta(a, b) = -delta(b, a) * (b / a) for positive a, b.
TEST(DeltaP95Test, SwapAntisymmetry) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(1.0, 10000.0);
  for (int i = 0; i < 10000; ++i) {
    const double a = u(rng), b = u(rng);
    const double lhs = DeltaP95Raw(a, b);
    const double rhs = -DeltaP95Raw(b, a) * (b / a);
    ASSERT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(lhs)));
  }
}

}  // namespace
}  // namespace sepsisflow::loadgen
