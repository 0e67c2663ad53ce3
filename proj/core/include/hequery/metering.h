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

#ifndef HEQUERY_METERING_H_
#define HEQUERY_METERING_H_

#include <array>
#include <cstdint>
#include <string_view>

namespace hequery::metering {

// Protocol phases. The four middle phases form the selection pipeline;
// kQuery, kContext, kCount, kPrecheck and kUpdate hold the work around it
// so the pipeline phases stay comparable across protocols.
enum class Phase : int {
  kQuery = 0,
  kContext,
  kIndicators,
  kPartialSums,
  kPositionIndicators,
  kGather,
  kCount,
  kPrecheck,
  kUpdate,
};
inline constexpr int kNumPhases = 9;

// One backend primitive invocation each.
enum class Op : int { kEnc = 0, kAdd, kMul, kPlainAdd, kPlainMul, kInv };
inline constexpr int kNumOps = 6;

std::string_view PhaseName(Phase phase);
std::string_view OpName(Op op);

// Receives one event per homomorphic primitive. Backends hold a nullable
// pointer to one of these.
class OpObserver {
 public:
  virtual ~OpObserver() = default;
  virtual void OnOp(Op op) = 0;
};

inline void Record(OpObserver* observer, Op op) {
  if (observer != nullptr) observer->OnOp(op);
}

// Per-session tally keyed by (phase, op). The active phase is switched with
// PhaseScope; counts only ever grow.
class OpCounter : public OpObserver {
 public:
  void OnOp(Op op) override { ++counts_[Index(phase_)][Index(op)]; }

  Phase phase() const { return phase_; }
  void set_phase(Phase phase) { phase_ = phase; }

  uint64_t Get(Phase phase, Op op) const { return counts_[Index(phase)][Index(op)]; }
  uint64_t PhaseTotal(Phase phase) const;
  uint64_t OpTotal(Op op) const;
  uint64_t Total() const;

  // Adds another counter's tallies into this one (per-worker aggregation).
  void Merge(const OpCounter& other);

  bool operator==(const OpCounter& other) const { return counts_ == other.counts_; }

 private:
  static int Index(Phase p) { return static_cast<int>(p); }
  static int Index(Op o) { return static_cast<int>(o); }

  Phase phase_ = Phase::kQuery;
  std::array<std::array<uint64_t, kNumOps>, kNumPhases> counts_{};
};

// Sets the counter's phase for the lifetime of the scope, restoring the
// previous one afterwards. A null counter makes this a no-op.
class PhaseScope {
 public:
  PhaseScope(OpCounter* counter, Phase phase) : counter_(counter) {
    if (counter_ != nullptr) {
      previous_ = counter_->phase();
      counter_->set_phase(phase);
    }
  }
  ~PhaseScope() {
    if (counter_ != nullptr) counter_->set_phase(previous_);
  }
  PhaseScope(const PhaseScope&) = delete;
  PhaseScope& operator=(const PhaseScope&) = delete;

 private:
  OpCounter* counter_;
  Phase previous_ = Phase::kQuery;
};

}  // namespace hequery::metering

#endif  // HEQUERY_METERING_H_
