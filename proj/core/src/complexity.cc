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

#include "hequery/complexity.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "hequery/dghv.h"
#include "hequery/gahi.h"
#include "hequery/hqp.h"
#include "hequery/ring_fhe.h"

namespace hequery::complexity {
namespace {

using metering::Op;
using metering::OpCounter;
using metering::Phase;

double Millis(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

uint64_t CoreTotal(const OpCounter& c) {
  uint64_t total = 0;
  for (Phase p : kCorePhases) total += c.PhaseTotal(p);
  return total;
}

// The growth laws claimed for each phase, as functions of (n_bits, m).
double ClaimedGahi(Phase phase, double n, double m) {
  switch (phase) {
    case Phase::kIndicators:
    case Phase::kPositionIndicators:
      return n * m;
    default:
      return n * m * m;
  }
}

double ClaimedHqp(Phase phase, double m) {
  switch (phase) {
    case Phase::kIndicators:
    case Phase::kPositionIndicators:
      return m;
    default:
      return m * m;
  }
}

}  // namespace

LinearFit FitLinear(std::span<const double> x, std::span<const double> y) {
  LinearFit fit;
  const size_t n = std::min(x.size(), y.size());
  if (n == 0) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2 || denom == 0) {
    fit.intercept = sy / n;
    return fit;
  }
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double mean = sy / n;
  double ss_res = 0, ss_tot = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  fit.r2 = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  for (size_t i = 1; i < n; ++i) {
    if (x[i] == x[i - 1]) continue;
    const double segment = (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    const double dev = fit.slope == 0 ? std::abs(segment) : std::abs(segment / fit.slope - 1.0);
    fit.max_slope_deviation = std::max(fit.max_slope_deviation, dev);
  }
  return fit;
}

codec::Database BenchDatabase(size_t m, size_t n_bits) {
  std::vector<uint64_t> values(m);
  const size_t k = std::max<size_t>(std::min<size_t>(m, 4), 1);
  for (size_t r = 0; r < m; ++r) values[r] = r % k;
  return codec::Database::FromValues(values, n_bits);
}

Report RunGrid(const GridOptions& options) {
  Report report;
  report.options = options;
  Rng seeds(options.seed);
  for (size_t m : options.m_values) {
    for (size_t n_bits : options.n_bits_values) {
      GridPoint point;
      point.m = m;
      point.n_bits = n_bits;
      const codec::Database db = BenchDatabase(m, n_bits);
      std::set<uint64_t> distinct;
      for (const auto& r : db.records) distinct.insert(r.Value());
      point.distinct_values = distinct.size();
      const codec::PlainRecord query = codec::PlainRecord::FromValue(0, n_bits);

      {
        Rng rng(seeds.Next());
        gahi::AdvisorOptions advisor;
        advisor.strict_encryption = options.strict_encryption;
        const dghv::KeyPair keys = dghv::KeyGen(gahi::AdviseParams(m, n_bits, advisor), rng);
        auto start = std::chrono::steady_clock::now();
        gahi::Server server(keys.pk, db, gahi::Options{options.strict_encryption}, rng.Next(),
                            &point.gahi);
        const gahi::GahiQuery q = gahi::EncryptQuery(query, keys.pk, rng, &point.gahi);
        auto result = gahi::RunSelect(server, q, [&](const gahi::EncryptedBits& c) {
          return dghv::DecryptUnsigned(c, keys.sk);
        });
        point.gahi_ms = Millis(start);
        point.gahi_matches = result.count;
      }
      {
        Rng rng(seeds.Next());
        const ring::RingParams params =
            hqp::AdviseParams(options.hqp_n, options.hqp_p, m, options.strict_encryption);
        const ring::RingKeys keys = ring::KeyGen(params, rng);
        auto start = std::chrono::steady_clock::now();
        hqp::Server server(params, keys.pub, db, hqp::Options{options.strict_encryption},
                           rng.Next(), &point.hqp);
        const auto q = hqp::EncryptQuery(query, params, keys.pub, rng, &point.hqp);
        hqp::UserCallbacks user;
        user.decrypt_count = [&](const ring::RingCiphertext& c) {
          return hqp::DecodeCount(hqp::DecryptElement(c, keys.f, params), m);
        };
        auto result = hqp::RunSelect(server, q, {}, user);
        point.hqp_ms = Millis(start);
        point.hqp_matches = result.count.value_or(0);
      }
      report.points.push_back(std::move(point));
    }
  }
  return report;
}

double PhaseRatio(const GridPoint& point, Phase phase, bool mul_only) {
  const double g = mul_only ? point.gahi.Get(phase, Op::kMul) : point.gahi.PhaseTotal(phase);
  const double h = mul_only ? point.hqp.Get(phase, Op::kMul) : point.hqp.PhaseTotal(phase);
  return h == 0 ? 0.0 : g / h;
}

double SessionRatio(const GridPoint& point) {
  const double h = static_cast<double>(CoreTotal(point.hqp));
  return h == 0 ? 0.0 : static_cast<double>(CoreTotal(point.gahi)) / h;
}

double ComparisonRatio(const GridPoint& point) {
  if (point.m == 0 || point.distinct_values < 2) return 0.0;
  const double gahi_per_record =
      static_cast<double>(point.gahi.PhaseTotal(Phase::kIndicators)) / point.m;
  const double hqp_per_comparison = static_cast<double>(point.hqp.PhaseTotal(Phase::kIndicators)) /
                                    (point.m * (point.distinct_values - 1));
  return hqp_per_comparison == 0 ? 0.0 : gahi_per_record / hqp_per_comparison;
}

nlohmann::json CounterJson(const OpCounter& counter) {
  nlohmann::json out = nlohmann::json::object();
  for (int p = 0; p < metering::kNumPhases; ++p) {
    const Phase phase = static_cast<Phase>(p);
    if (counter.PhaseTotal(phase) == 0) continue;
    nlohmann::json ops = nlohmann::json::object();
    for (int o = 0; o < metering::kNumOps; ++o) {
      const Op op = static_cast<Op>(o);
      if (counter.Get(phase, op) != 0) ops[std::string(metering::OpName(op))] = counter.Get(phase, op);
    }
    out[std::string(metering::PhaseName(phase))] = std::move(ops);
  }
  return out;
}

nlohmann::json ToJson(const Report& report, bool include_timings) {
  nlohmann::json out;
  out["grid"] = {{"m", report.options.m_values},
                 {"n_bits", report.options.n_bits_values},
                 {"seed", report.options.seed},
                 {"strict_encryption", report.options.strict_encryption},
                 {"hqp_field", {{"n", report.options.hqp_n}, {"p", report.options.hqp_p}}}};
  nlohmann::json points = nlohmann::json::array();
  for (const auto& pt : report.points) {
    nlohmann::json ratios = nlohmann::json::object();
    for (Phase p : kCorePhases) ratios[std::string(metering::PhaseName(p))] = PhaseRatio(pt, p);
    points.push_back({{"m", pt.m},
                      {"n_bits", pt.n_bits},
                      {"distinct_values", pt.distinct_values},
                      {"gahi", CounterJson(pt.gahi)},
                      {"hqp", CounterJson(pt.hqp)},
                      {"matches", {{"gahi", pt.gahi_matches}, {"hqp", pt.hqp_matches}}},
                      {"ratio", ratios},
                      {"ratio_session", SessionRatio(pt)},
                      {"ratio_per_comparison", ComparisonRatio(pt)}});
    if (include_timings) points.back()["ms"] = {{"gahi", pt.gahi_ms}, {"hqp", pt.hqp_ms}};
  }
  out["points"] = std::move(points);

  // Fits: indicator multiplications against n_bits at each m, and every core
  // phase's total against its claimed growth law over the whole grid.
  nlohmann::json fits = nlohmann::json::array();
  for (size_t m : report.options.m_values) {
    std::vector<double> x, g, h;
    for (const auto& pt : report.points) {
      if (pt.m != m) continue;
      x.push_back(static_cast<double>(pt.n_bits));
      g.push_back(static_cast<double>(pt.gahi.Get(Phase::kIndicators, Op::kMul)));
      h.push_back(static_cast<double>(pt.hqp.Get(Phase::kIndicators, Op::kMul)));
    }
    const LinearFit fg = FitLinear(x, g), fh = FitLinear(x, h);
    fits.push_back({{"m", m},
                    {"gahi_indicator_mul", {{"slope", fg.slope}, {"intercept", fg.intercept},
                                            {"r2", fg.r2},
                                            {"max_slope_deviation", fg.max_slope_deviation}}},
                    {"hqp_indicator_mul", {{"slope", fh.slope}, {"intercept", fh.intercept},
                                           {"r2", fh.r2}}}});
  }
  out["indicator_fits"] = std::move(fits);

  nlohmann::json laws = nlohmann::json::object();
  for (Phase p : kCorePhases) {
    std::vector<double> xg, yg, xh, yh;
    for (const auto& pt : report.points) {
      xg.push_back(ClaimedGahi(p, pt.n_bits, pt.m));
      yg.push_back(static_cast<double>(pt.gahi.PhaseTotal(p)));
      xh.push_back(ClaimedHqp(p, pt.m));
      yh.push_back(static_cast<double>(pt.hqp.PhaseTotal(p)));
    }
    const LinearFit fg = FitLinear(xg, yg), fh = FitLinear(xh, yh);
    laws[std::string(metering::PhaseName(p))] = {
        {"gahi_law", p == Phase::kIndicators || p == Phase::kPositionIndicators ? "n*m" : "n*m^2"},
        {"gahi_r2", fg.r2},
        {"hqp_law", p == Phase::kIndicators || p == Phase::kPositionIndicators ? "m" : "m^2"},
        {"hqp_r2", fh.r2}};
  }
  out["claimed_law_fits"] = std::move(laws);
  return out;
}

std::string ToTable(const Report& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%4s %6s  %-20s %10s %10s %8s %8s\n", "m", "n_bits", "phase",
                "gahi_ops", "hqp_ops", "ratio", "mul_rat");
  out << line;
  for (const auto& pt : report.points) {
    for (Phase p : kCorePhases) {
      std::snprintf(line, sizeof(line), "%4zu %6zu  %-20s %10llu %10llu %8.2f %8.2f\n", pt.m,
                    pt.n_bits, std::string(metering::PhaseName(p)).c_str(),
                    static_cast<unsigned long long>(pt.gahi.PhaseTotal(p)),
                    static_cast<unsigned long long>(pt.hqp.PhaseTotal(p)), PhaseRatio(pt, p),
                    PhaseRatio(pt, p, true));
      out << line;
    }
    std::snprintf(line, sizeof(line), "%4zu %6zu  %-20s %10llu %10llu %8.2f %8s\n", pt.m, pt.n_bits,
                  "session", static_cast<unsigned long long>(CoreTotal(pt.gahi)),
                  static_cast<unsigned long long>(CoreTotal(pt.hqp)), SessionRatio(pt), "");
    out << line;
  }
  return out.str();
}

}  // namespace hequery::complexity
