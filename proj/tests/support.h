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

// Plaintext oracles and session drivers shared by the unit and acceptance
// tests. Nothing here calls into the protocol code to compute an expected
// value.

#ifndef HEQUERY_TESTS_SUPPORT_H_
#define HEQUERY_TESTS_SUPPORT_H_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hequery/dghv.h"
#include "hequery/gahi.h"
#include "hequery/hqp.h"
#include "hequery/record_codec.h"
#include "hequery/ring_fhe.h"

namespace hequery::testing {

// Records equal to the query, in database order, as display strings.
std::vector<std::string> CompactionOracle(const std::vector<std::string>& rows,
                                          const std::string& query);

// Every m-tuple of width-bit values, as display strings.
std::vector<std::vector<std::string>> AllDatabases(size_t m, size_t width);
// Every ordered m-tuple of pairwise distinct width-bit values.
std::vector<std::vector<std::string>> AllDistinctDatabases(size_t m, size_t width);
std::string ToDisplay(uint64_t value, size_t width);

struct NoiseProbe {
  // Smallest key-free tracked budget (Gahi) or measured budget (HQP) seen.
  double min_budget = std::numeric_limits<double>::infinity();
  // Gahi only: smallest log2(p/2) - log2|exact noise| over nonzero noise.
  double min_exact_budget = std::numeric_limits<double>::infinity();
  bool overflow = false;
};

struct GahiOutcome {
  std::vector<std::string> result;  // decrypted, truncated
  uint64_t count = 0;
  std::vector<int> I;
  std::vector<uint64_t> S;
  std::vector<std::vector<int>> Iprime;
  NoiseProbe noise;
};

GahiOutcome RunGahi(const dghv::KeyPair& keys, const std::vector<std::string>& rows,
                    const std::string& query, bool strict, uint64_t seed);

struct HqpOutcome {
  hqp::SelectStatus status = hqp::SelectStatus::kOk;
  std::vector<std::string> result;  // decoded, truncated; "?" for non-records
  std::optional<uint64_t> count;
  std::vector<uint64_t> F;
  std::vector<uint64_t> G;
  std::vector<std::vector<uint64_t>> Fprime;
  bool well_formed = true;
  NoiseProbe noise;
};

// Constant field elements decode to their value; anything else to 2^63.
HqpOutcome RunHqp(const ring::RingParams& params, const ring::RingKeys& keys,
                  const std::vector<std::string>& rows, const std::string& query,
                  const hqp::SelectOptions& select, bool strict, uint64_t seed);

}  // namespace hequery::testing

#endif  // HEQUERY_TESTS_SUPPORT_H_
