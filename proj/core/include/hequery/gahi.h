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

// Bitwise blind search over DGHV ciphertexts.
//
//   I_r      = prod_i (1 + c_i + v_i)                 record r matches
//   S_r      = sum_{t <= r} I_t                       encrypted binary counter
//   I'_{r,j} = I_r prod_i (1 + j_i + S_{r,i})         r is the j-th match
//   R'       = sum_r R_r (I'_r)                       compacted matches
//   n        = sum_r I_r                              match count
//
// S_r is kept as a vector of encrypted bits produced by a ripple-carry
// adder, since a plain ciphertext sum would only carry the parity.

#ifndef HEQUERY_GAHI_H_
#define HEQUERY_GAHI_H_

#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <span>
#include <vector>

#include "hequery/dghv.h"
#include "hequery/metering.h"
#include "hequery/record_codec.h"

namespace hequery::gahi {

using dghv::BitCiphertext;
using EncryptedBits = std::vector<BitCiphertext>;  // little-endian
using Sequence = codec::EncryptedSequence<EncryptedBits>;

struct Options {
  // Encrypt record bits and loop counters under the user's key instead of
  // using them as plaintext constants.
  bool strict_encryption = false;
};

struct GahiQuery {
  EncryptedBits bits;
};

struct GahiTrace {
  std::vector<BitCiphertext> I;
  std::vector<EncryptedBits> S;
  std::vector<std::vector<BitCiphertext>> Iprime;
  EncryptedBits count;
  Sequence result;
};

// Client side: one encryption per query bit, metered under kQuery.
GahiQuery EncryptQuery(const codec::PlainRecord& query, const dghv::PublicKey& pk, Rng& rng,
                       metering::OpCounter* counter = nullptr);

// ceil(log2(m + 1)), at least 1: bits needed to hold any count in 0..m.
size_t CounterWidth(size_t m);

struct AdvisorOptions;

class Server {
 public:
  // Only the public key is held; `seed` drives padding and strict-mode
  // encryptions.
  Server(const dghv::PublicKey& pk, codec::Database db, Options options, uint64_t seed,
         metering::OpCounter* counter = nullptr);

  // I_r for the record at 0-based index r.
  BitCiphertext MatchIndicator(const GahiQuery& query, size_t r);
  std::vector<BitCiphertext> MatchIndicators(const GahiQuery& query);

  // S_1..S_m; S_r is at most CounterWidth(m) bits wide.
  std::vector<EncryptedBits> PartialSums(std::span<const BitCiphertext> I);

  // I'_{r,1..r} for the 1-based record index r.
  std::vector<BitCiphertext> PositionIndicators(const BitCiphertext& I_r, const EncryptedBits& S_r,
                                                size_t r);

  Sequence Gather(const std::vector<std::vector<BitCiphertext>>& Iprime);
  EncryptedBits MatchCount(std::span<const BitCiphertext> I);

  // Full server computation: every trace field, including the untruncated
  // result.
  GahiTrace Evaluate(const GahiQuery& query);

  // First n entries; n larger than the sequence keeps everything.
  static Sequence Truncate(const Sequence& seq, uint64_t n);

  // Per record, bitwise (1 + I_r) R + I_r U. Returned as a new encrypted
  // view; the plaintext store is left alone.
  std::vector<EncryptedBits> Update(std::span<const BitCiphertext> I, const EncryptedBits& U);
  // Per record, bitwise (1 + I_r) R.
  std::vector<EncryptedBits> Delete(std::span<const BitCiphertext> I);

  const codec::Database& database() const { return db_; }
  const Options& options() const { return options_; }
  uint64_t key_id() const { return key_id_; }
  bool noise_overflow() const { return eval_.noise_overflow(); }
  const mpz_class& max_bound() const { return eval_.max_bound(); }

 private:
  friend mpz_class WorstCaseBound(size_t m, size_t n_bits, const AdvisorOptions& options);

  // Constant fed to a plaintext op; pinned to its largest value (1) during
  // bound analysis so every data-dependent branch takes its worst case.
  unsigned Constant(unsigned bit) const { return bound_analysis_ ? 1 : bit; }
  BitCiphertext FreshZero();
  const EncryptedBits& EncryptedRecord(size_t r);
  BitCiphertext EqualityFactor(const BitCiphertext& x, unsigned plain_bit,
                               const BitCiphertext* encrypted_bit);

  const dghv::PublicKey* pk_;
  codec::Database db_;
  Options options_;
  Rng rng_;
  metering::OpCounter* counter_;
  dghv::Evaluator eval_;
  uint64_t key_id_;
  bool bound_analysis_ = false;
  std::vector<EncryptedBits> encrypted_db_;  // strict mode only, built lazily
};

struct SelectResult {
  Sequence result;
  uint64_t count = 0;
  GahiTrace trace;
};

// Two-round session: the server evaluates everything, `decrypt_count`
// plays the user revealing n, and the result is truncated to n entries.
SelectResult RunSelect(Server& server, const GahiQuery& query,
                       const std::function<uint64_t(const EncryptedBits&)>& decrypt_count);

struct AdvisorOptions {
  unsigned noise_bits = 4;
  unsigned pubkey_size = 8;
  bool strict_encryption = false;
  unsigned margin_bits = 2;
  // Q - P; only affects how well q hides p, not correctness.
  unsigned extra_rand_bits = 64;
};

// Largest tracked noise bound over a full select plus update/delete on any
// database of m records of n_bits bits, from fresh public-key encryptions.
mpz_class WorstCaseBound(size_t m, size_t n_bits, const AdvisorOptions& options = {});

// Parameters whose secret is large enough for WorstCaseBound.
dghv::DghvParams AdviseParams(size_t m, size_t n_bits, const AdvisorOptions& options = {});

// Session transcript; decrypted columns are filled in when `sk` is given.
nlohmann::json Transcript(const GahiTrace& trace, const codec::Database& db,
                          const dghv::SecretKey* sk);

}  // namespace hequery::gahi

#endif  // HEQUERY_GAHI_H_
