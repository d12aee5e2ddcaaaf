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

#include "sepsisflow/clinical/imputation.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace sepsisflow::clinical {
namespace {

constexpr auto kNone = std::nullopt;

TEST(ImputeSeriesTest, InterpolatesInterior) {
  const std::vector<Measurement> s = {1.0, kNone, kNone, 4.0};
  EXPECT_EQ(ImputeSeries(s, 99.0), (std::vector<double>{1.0, 2.0, 3.0, 4.0}));
}

TEST(ImputeSeriesTest, EdgeFill) {
  const std::vector<Measurement> s = {kNone, 5.0, kNone, 7.0, kNone, kNone};
  EXPECT_EQ(ImputeSeries(s, 99.0),
            (std::vector<double>{5.0, 5.0, 6.0, 7.0, 7.0, 7.0}));
}

TEST(ImputeSeriesTest, AllAbsentUsesFallback) {
  const std::vector<Measurement> s = {kNone, kNone, kNone};
  EXPECT_EQ(ImputeSeries(s, 36.98), (std::vector<double>{36.98, 36.98, 36.98}));
}

TEST(ImputeSeriesTest, EmptySeries) {
  try {
    ImputeSeries(std::vector<Measurement>{}, 0.0);
    FAIL() << "expected ImputationError";
  } catch (const ImputationError& e) {
    EXPECT_EQ(e.code(), "empty_series");
  }
}

TEST(ImputerTest, NoFallbackKeepsAllAbsent) {
  const std::vector<Measurement> s = {kNone, kNone};
  const auto out = DefaultImputer().Impute(s, std::nullopt);
  EXPECT_EQ(out, s);
  EXPECT_EQ(DefaultImputer().Tag(),
            "linear-interpolation+edge-fill+population-fallback/v1");
}

// Properties on random series: observed values untouched, no absent output,
// every interior imputed value lies between its bracketing observations.
TEST(ImputeSeriesTest, RandomSeriesProperties) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> value(-50.0, 250.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 48)(rng);
    const double p_absent = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::vector<Measurement> s(n);
    for (auto& v : s) {
      if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) >= p_absent) {
        v = value(rng);
      }
    }
    const double fallback = value(rng);
    const std::vector<double> out = ImputeSeries(s, fallback);
    ASSERT_EQ(out.size(), s.size());

    std::vector<int> observed;
    for (int i = 0; i < n; ++i) {
      if (s[i]) {
        ASSERT_EQ(out[i], *s[i]);
        observed.push_back(i);
      }
    }
    if (observed.empty()) {
      for (double v : out) ASSERT_EQ(v, fallback);
      continue;
    }
    for (int i = 0; i < n; ++i) {
      if (s[i]) continue;
      auto next = std::upper_bound(observed.begin(), observed.end(), i);
      if (next == observed.begin()) {
        ASSERT_EQ(out[i], *s[observed.front()]);
      } else if (next == observed.end()) {
        ASSERT_EQ(out[i], *s[observed.back()]);
      } else {
        const double a = *s[*(next - 1)];
        const double b = *s[*next];
        ASSERT_GE(out[i], std::min(a, b));
        ASSERT_LE(out[i], std::max(a, b));
      }
    }
  }
}

}  // namespace
}  // namespace sepsisflow::clinical
