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

namespace hequery::metering {

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kQuery: return "query";
    case Phase::kContext: return "context";
    case Phase::kIndicators: return "indicators";
    case Phase::kPartialSums: return "partial_sums";
    case Phase::kPositionIndicators: return "position_indicators";
    case Phase::kGather: return "gather";
    case Phase::kCount: return "count";
    case Phase::kPrecheck: return "precheck";
    case Phase::kUpdate: return "update";
  }
  return "unknown";
}

std::string_view OpName(Op op) {
  switch (op) {
    case Op::kEnc: return "enc";
    case Op::kAdd: return "add";
    case Op::kMul: return "mul";
    case Op::kPlainAdd: return "plain_add";
    case Op::kPlainMul: return "plain_mul";
    case Op::kInv: return "inv";
  }
  return "unknown";
}

uint64_t OpCounter::PhaseTotal(Phase phase) const {
  uint64_t total = 0;
  for (uint64_t c : counts_[Index(phase)]) total += c;
  return total;
}

uint64_t OpCounter::OpTotal(Op op) const {
  uint64_t total = 0;
  for (const auto& row : counts_) total += row[Index(op)];
  return total;
}

uint64_t OpCounter::Total() const {
  uint64_t total = 0;
  for (const auto& row : counts_) {
    for (uint64_t c : row) total += c;
  }
  return total;
}

void OpCounter::Merge(const OpCounter& other) {
  for (int p = 0; p < kNumPhases; ++p) {
    for (int o = 0; o < kNumOps; ++o) counts_[p][o] += other.counts_[p][o];
  }
}

}  // namespace hequery::metering
