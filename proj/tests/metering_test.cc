// Copyright 2026 The hequery Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hequery/metering.h"

#include <gtest/gtest.h>

#include <cmath>

#include "hequery/complexity.h"
#include "hequery/gahi.h"
#include "hequery/hqp.h"

namespace hequery {
namespace {

using metering::Op;
using metering::OpCounter;
using metering::Phase;
using metering::PhaseScope;

TEST(OpCounter, PhasesAndTotals) {
  OpCounter c;
  c.OnOp(Op::kEnc);
  {
    PhaseScope outer(&c, Phase::kIndicators);
    c.OnOp(Op::kMul);
    c.OnOp(Op::kMul);
    {
      PhaseScope inner(&c, Phase::kGather);
      c.OnOp(Op::kPlainMul);
    }
    c.OnOp(Op::kAdd);
  }
  c.OnOp(Op::kEnc);
  EXPECT_EQ(c.phase(), Phase::kQuery);
  EXPECT_EQ(c.Get(Phase::kQuery, Op::kEnc), 2u);
  EXPECT_EQ(c.Get(Phase::kIndicators, Op::kMul), 2u);
  EXPECT_EQ(c.Get(Phase::kIndicators, Op::kAdd), 1u);
  EXPECT_EQ(c.Get(Phase::kGather, Op::kPlainMul), 1u);
  EXPECT_EQ(c.PhaseTotal(Phase::kIndicators), 3u);
  EXPECT_EQ(c.OpTotal(Op::kMul), 2u);
  EXPECT_EQ(c.Total(), 6u);

  OpCounter d;
  d.Merge(c);
  d.Merge(c);
  EXPECT_EQ(d.Total(), 12u);
  PhaseScope null_scope(nullptr, Phase::kCount);  // no-op
  metering::Record(nullptr, Op::kAdd);
}

TEST(OpCounter, Names) {
  EXPECT_EQ(metering::PhaseName(Phase::kPartialSums), "partial_sums");
  EXPECT_EQ(metering::PhaseName(Phase::kPositionIndicators), "position_indicators");
  EXPECT_EQ(metering::OpName(Op::kPlainMul), "plain_mul");
  EXPECT_EQ(metering::OpName(Op::kInv), "inv");
}

OpCounter GahiCounts(const std::vector<uint64_t>& values, size_t n_bits, uint64_t query,
                     bool strict, uint64_t seed) {
  gahi::AdvisorOptions advisor;
  advisor.strict_encryption = strict;
  Rng rng(seed);
  const auto keys = dghv::KeyGen(gahi::AdviseParams(std::max<size_t>(values.size(), 1), n_bits, advisor), rng);
  OpCounter counter;
  gahi::Server server(keys.pk, codec::Database::FromValues(values, n_bits), gahi::Options{strict},
                      rng.Next(), &counter);
  const auto q = gahi::EncryptQuery(codec::PlainRecord::FromValue(query, n_bits), keys.pk, rng,
                                    &counter);
  gahi::RunSelect(server, q, [&](const gahi::EncryptedBits& c) {
    return dghv::DecryptUnsigned(c, keys.sk);
  });
  return counter;
}

OpCounter HqpCounts(const std::vector<uint64_t>& values, size_t n_bits, uint64_t query,
                    bool strict, uint64_t seed) {
  const auto params = hqp::AdviseParams(5, 13, values.size(), strict);
  Rng rng(seed);
  const auto keys = ring::KeyGen(params, rng);
  OpCounter counter;
  hqp::Server server(params, keys.pub, codec::Database::FromValues(values, n_bits),
                     hqp::Options{strict}, rng.Next(), &counter);
  const auto q =
      hqp::EncryptQuery(codec::PlainRecord::FromValue(query, n_bits), params, keys.pub, rng, &counter);
  hqp::UserCallbacks user;
  user.decrypt_count = [&](const ring::RingCiphertext& c) {
    return hqp::DecodeCount(hqp::DecryptElement(c, keys.f, params), values.size());
  };
  hqp::RunSelect(server, q, {}, user);
  return counter;
}

TEST(Metering, GahiCountsAreDataIndependent) {
  const OpCounter a = GahiCounts({1, 2, 3, 1}, 3, 1, false, 1);
  const OpCounter b = GahiCounts({0, 0, 0, 0}, 3, 5, false, 2);
  const OpCounter c = GahiCounts({1, 2, 3, 1}, 3, 1, false, 1);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  // m (n_bits - 1) multiplications for the equality products.
  EXPECT_EQ(a.Get(Phase::kIndicators, Op::kMul), 4u * 2u);
  EXPECT_EQ(a.Get(Phase::kQuery, Op::kEnc), 3u);
}

TEST(Metering, HqpCountsDependOnDistinctValuesOnly) {
  const OpCounter a = HqpCounts({1, 2, 3, 1}, 3, 1, false, 1);
  const OpCounter b = HqpCounts({4, 6, 5, 6}, 3, 6, false, 2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.Get(Phase::kQuery, Op::kEnc), 1u);
  // One D_i inversion per distinct value.
  EXPECT_EQ(a.Get(Phase::kContext, Op::kInv), 3u);
  // (distinct - 1) multiplications per record.
  EXPECT_EQ(a.Get(Phase::kIndicators, Op::kMul), 4u * 2u);
}

TEST(Metering, StrictModeEncryptsMore) {
  for (bool hqp : {false, true}) {
    const std::vector<uint64_t> values{1, 2, 3, 1, 0};
    const OpCounter plain = hqp ? HqpCounts(values, 3, 1, false, 3) : GahiCounts(values, 3, 1, false, 3);
    const OpCounter strict = hqp ? HqpCounts(values, 3, 1, true, 3) : GahiCounts(values, 3, 1, true, 3);
    EXPECT_GT(strict.OpTotal(Op::kEnc), plain.OpTotal(Op::kEnc)) << hqp;
    EXPECT_GE(strict.OpTotal(Op::kAdd) + strict.OpTotal(Op::kMul),
              plain.OpTotal(Op::kAdd) + plain.OpTotal(Op::kMul))
        << hqp;
    EXPECT_GE(strict.Total(), plain.Total()) << hqp;
  }
}

TEST(Metering, EmptyDatabaseOnlyEncryptsTheQuery) {
  const OpCounter g = GahiCounts({}, 3, 1, false, 4);
  EXPECT_EQ(g.Total(), 3u);
  const OpCounter h = HqpCounts({}, 3, 1, false, 4);
  EXPECT_EQ(h.Total(), 1u);
}

// Least squares by the normal equations, written out independently.
TEST(Complexity, FitLinearOracle) {
  const std::vector<double> x{2, 4, 8}, exact{3, 7, 15};
  const auto fit = complexity::FitLinear(x, exact);
  EXPECT_NEAR(fit.slope, 2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, -1.0, 1e-12);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_NEAR(fit.max_slope_deviation, 0.0, 1e-12);

  const std::vector<double> noisy{3, 8, 14};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < 3; ++i) {
    sx += x[i];
    sy += noisy[i];
    sxx += x[i] * x[i];
    sxy += x[i] * noisy[i];
  }
  const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / 3;
  double ss_res = 0, ss_tot = 0;
  for (size_t i = 0; i < 3; ++i) {
    ss_res += std::pow(noisy[i] - (slope * x[i] + intercept), 2);
    ss_tot += std::pow(noisy[i] - sy / 3, 2);
  }
  const auto nf = complexity::FitLinear(x, noisy);
  EXPECT_NEAR(nf.slope, slope, 1e-12);
  EXPECT_NEAR(nf.intercept, intercept, 1e-12);
  EXPECT_NEAR(nf.r2, 1 - ss_res / ss_tot, 1e-12);
  // Segment slopes 2.5 and 1.5 against the fitted slope.
  EXPECT_NEAR(nf.max_slope_deviation,
              std::max(std::abs(2.5 / slope - 1), std::abs(1.5 / slope - 1)), 1e-12);

  const auto flat = complexity::FitLinear(x, std::vector<double>{5, 5, 5});
  EXPECT_EQ(flat.slope, 0.0);
  EXPECT_EQ(flat.r2, 1.0);
}

TEST(Complexity, BenchDatabase) {
  const auto db = complexity::BenchDatabase(8, 3);
  std::vector<uint64_t> values;
  for (const auto& r : db.records) values.push_back(r.Value());
  EXPECT_EQ(values, (std::vector<uint64_t>{0, 1, 2, 3, 0, 1, 2, 3}));
  EXPECT_EQ(complexity::BenchDatabase(2, 5).records[1].Value(), 1u);
}

TEST(Complexity, SmallGridShape) {
  complexity::GridOptions options;
  options.m_values = {2, 4};
  options.n_bits_values = {2, 4};
  options.hqp_n = 7;
  options.hqp_p = 17;
  const auto report = complexity::RunGrid(options);
  ASSERT_EQ(report.points.size(), 4u);
  for (const auto& pt : report.points) {
    EXPECT_EQ(pt.gahi.Get(Phase::kIndicators, Op::kMul), pt.m * (pt.n_bits - 1));
    EXPECT_EQ(pt.gahi_matches, 1u);
    EXPECT_EQ(pt.hqp_matches, 1u);
  }
  // Same m, growing n_bits: HQP indicator work unchanged, ratio up.
  for (size_t base : {0u, 2u}) {
    const auto& lo = report.points[base];
    const auto& hi = report.points[base + 1];
    EXPECT_EQ(lo.hqp.PhaseTotal(Phase::kIndicators), hi.hqp.PhaseTotal(Phase::kIndicators));
    EXPECT_LT(complexity::PhaseRatio(lo, Phase::kIndicators),
              complexity::PhaseRatio(hi, Phase::kIndicators));
    EXPECT_LT(complexity::SessionRatio(lo), complexity::SessionRatio(hi));
  }
  const auto j = complexity::ToJson(report);
  EXPECT_EQ(j["points"].size(), 4u);
  EXPECT_FALSE(j["points"][0].contains("ms"));
  EXPECT_TRUE(complexity::ToJson(report, true)["points"][0].contains("ms"));
  EXPECT_EQ(j["indicator_fits"].size(), 2u);
  EXPECT_FALSE(complexity::ToTable(report).empty());
}

}  // namespace
}  // namespace hequery
