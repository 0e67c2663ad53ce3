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

// Operation-count comparison of the two protocols over an (m, n_bits) grid.

#ifndef HEQUERY_COMPLEXITY_H_
#define HEQUERY_COMPLEXITY_H_

#include <cstdint>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "hequery/metering.h"
#include "hequery/record_codec.h"

namespace hequery::complexity {

struct GridOptions {
  std::vector<size_t> m_values{2, 4, 8};
  std::vector<size_t> n_bits_values{2, 4, 8};
  uint64_t seed = 1;
  bool strict_encryption = false;
  // Ring field shared by every HQP point; needs phi(n) > max n_bits and
  // p > max m.
  unsigned hqp_n = 11;
  uint64_t hqp_p = 13;
};

struct GridPoint {
  size_t m = 0;
  size_t n_bits = 0;
  size_t distinct_values = 0;
  metering::OpCounter gahi;
  metering::OpCounter hqp;
  uint64_t gahi_matches = 0;
  uint64_t hqp_matches = 0;
  double gahi_ms = 0;
  double hqp_ms = 0;
};

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 1;
  // Largest |segment slope / fitted slope - 1| over consecutive points;
  // 0 when the data is exactly linear.
  double max_slope_deviation = 0;
};

LinearFit FitLinear(std::span<const double> x, std::span<const double> y);

struct Report {
  GridOptions options;
  std::vector<GridPoint> points;
};

// Record r (1-based) holds (r - 1) mod min(m, 4); the query is 0. The set of
// distinct values therefore does not depend on n_bits.
codec::Database BenchDatabase(size_t m, size_t n_bits);

// Runs one select session per protocol and grid point with freshly advised
// parameters, counting every backend primitive.
Report RunGrid(const GridOptions& options);

// Gahi/HQP over a phase's total ops (ciphertext multiplications when
// `mul_only`); 0 when HQP did nothing in that phase.
double PhaseRatio(const GridPoint& point, metering::Phase phase, bool mul_only = false);
// Same over the four core phases combined.
double SessionRatio(const GridPoint& point);
// Indicator-phase ops per record for Gahi over ops per distinct-value
// comparison for HQP.
double ComparisonRatio(const GridPoint& point);

// The four phases the comparison is about.
inline constexpr metering::Phase kCorePhases[] = {
    metering::Phase::kIndicators, metering::Phase::kPartialSums,
    metering::Phase::kPositionIndicators, metering::Phase::kGather};

// Timings are left out unless asked for, so reports diff cleanly across runs.
nlohmann::json ToJson(const Report& report, bool include_timings = false);
std::string ToTable(const Report& report);
nlohmann::json CounterJson(const metering::OpCounter& counter);

}  // namespace hequery::complexity

#endif  // HEQUERY_COMPLEXITY_H_
