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

// Block-wise blind search over ring ciphertexts whose plaintext space is the
// field F = Z_p[x]/<Phi_n>. Each record is a single field element.
//
//   F_i      = D_i prod_{v != val(R_i)} (m - v)      Lagrange-style indicator
//   G_i      = sum_{j <= i} F_j
//   F'_{i,k} = F_i L_k(G_i),  L_k(x) = prod_{j != k} (x - j) / (k - j)
//   R'       = sum_i R_i (F'_i)
//
// The products run over distinct database values. D_i is the inverse of
// prod_{v != val(R_i)} (R_i - v), known to the server and encrypted once.

#ifndef HEQUERY_HQP_H_
#define HEQUERY_HQP_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <vector>

#include "hequery/cyclotomic.h"
#include "hequery/metering.h"
#include "hequery/record_codec.h"
#include "hequery/ring_fhe.h"

namespace hequery::hqp {

using ring::RingCiphertext;
using Sequence = codec::EncryptedSequence<RingCiphertext>;

struct Options {
  // Encrypt record values, counters and Lagrange scalars instead of using
  // them as plaintext constants.
  bool strict_encryption = false;
};

struct HqpContext {
  std::shared_ptr<const field::FieldContext> field;
  codec::Database db;
  std::vector<field::FieldElement> encoded;          // R_i
  std::vector<field::FieldElement> distinct_values;  // first-occurrence order
  std::vector<size_t> value_index;                   // record -> distinct_values slot
  std::vector<field::FieldElement> D;                // plaintext D_i
  std::vector<RingCiphertext> D_enc;                 // one encryption per record
  std::vector<RingCiphertext> distinct_enc;          // strict mode only
  uint64_t key_id = 0;
};

// Throws kFieldTooSmall (p <= m), kDegreeTooSmall (n_bits >= phi(n)) or
// kInvalidParams (Phi_n reducible mod p).
HqpContext BuildContext(const codec::Database& db, const ring::RingParams& params,
                        const ring::RingPublicKey& pk, Rng& rng, bool strict_encryption,
                        metering::OpCounter* counter = nullptr);

ring::PlainPoly ToPlain(const field::FieldElement& x, const ring::RingParams& params);
field::FieldElement FromPlain(const ring::PlainPoly& m,
                              const std::shared_ptr<const field::FieldContext>& field);

// The field the ring parameters induce (t = p, modulus Phi_n).
std::shared_ptr<const field::FieldContext> FieldOf(const ring::RingParams& params);

struct HqpTrace {
  std::vector<RingCiphertext> F;
  std::vector<RingCiphertext> G;
  std::vector<std::vector<RingCiphertext>> Fprime;
  std::optional<RingCiphertext> count;
  Sequence result;
};

// Client side, metered under kQuery.
RingCiphertext EncryptQuery(const codec::PlainRecord& query, const ring::RingParams& params,
                            const ring::RingPublicKey& pk, Rng& rng,
                            metering::OpCounter* counter = nullptr);

class Server {
 public:
  Server(const ring::RingParams& params, const ring::RingPublicKey& pk, const codec::Database& db,
         Options options, uint64_t seed, metering::OpCounter* counter = nullptr);

  // F_i for the 0-based record index i.
  RingCiphertext MatchIndicator(const RingCiphertext& query, size_t i);
  std::vector<RingCiphertext> MatchIndicators(const RingCiphertext& query);

  std::vector<RingCiphertext> PartialSums(std::span<const RingCiphertext> F);

  // F'_{i,1..i} for the 1-based record index i.
  std::vector<RingCiphertext> PositionIndicators(const RingCiphertext& F_i,
                                                 const RingCiphertext& G_i, size_t i);

  Sequence Gather(const std::vector<std::vector<RingCiphertext>>& Fprime);
  RingCiphertext MatchCount(std::span<const RingCiphertext> F);

  // prod_i (m - R_i): zero exactly when the query value is in the database.
  RingCiphertext MembershipPrecheck(const RingCiphertext& query);

  HqpTrace Evaluate(const RingCiphertext& query);

  static Sequence Truncate(const Sequence& seq, uint64_t n);

  const HqpContext& context() const { return ctx_; }
  const ring::RingParams& params() const { return *params_; }
  const Options& options() const { return options_; }

 private:
  RingCiphertext FreshEncryption(const field::FieldElement& x);
  RingCiphertext ScaledBy(const RingCiphertext& c, const field::FieldElement& x);

  const ring::RingParams* params_;
  const ring::RingPublicKey* pk_;
  Options options_;
  Rng rng_;
  metering::OpCounter* counter_;
  ring::Evaluator eval_;
  HqpContext ctx_;
};

struct SelectOptions {
  bool precheck = false;
  // Return the full-length sequence and skip the count round.
  bool no_leak = false;
};

// The user's side of the interactive rounds.
struct UserCallbacks {
  // Decrypts the pre-check product; true when it is zero.
  std::function<bool(const RingCiphertext&)> precheck_is_zero;
  // Decrypts the count; nullopt when it is not a valid count.
  std::function<std::optional<uint64_t>(const RingCiphertext&)> decrypt_count;
};

enum class SelectStatus { kOk, kNotFound };

struct SelectResult {
  SelectStatus status = SelectStatus::kOk;
  Sequence result;
  std::optional<uint64_t> count;
  HqpTrace trace;
};

SelectResult RunSelect(Server& server, const RingCiphertext& query, const SelectOptions& options,
                       const UserCallbacks& user);

// User-side decryption helpers.
field::FieldElement DecryptElement(const RingCiphertext& c, const poly::Poly& f,
                                   const ring::RingParams& params);
// The constant term when the element is a constant in [0, max_count].
std::optional<uint64_t> DecodeCount(const field::FieldElement& x, uint64_t max_count);

// True when every entry is zero or a valid record encoding of width n_bits.
// False means the query was not in the database and the result is noise.
bool IsWellFormed(std::span<const field::FieldElement> decrypted, size_t n_bits);

// Smallest cyclotomic index with phi(n) > n_bits whose field search above
// `min_p` succeeds, together with that prime.
struct FieldChoice {
  unsigned n = 0;
  uint64_t p = 0;
};
FieldChoice ChooseField(size_t n_bits, uint64_t min_p);

struct RingAdvice {
  unsigned q_bits = 0;
  unsigned decomp_bits = 16;
  unsigned depth = 0;  // multiplicative depth the session needs
};

// Modulus size for a select (optionally with pre-check) over m records.
RingAdvice AdviseRing(unsigned n, uint64_t p, size_t m, bool strict_encryption);
ring::RingParams AdviseParams(unsigned n, uint64_t p, size_t m, bool strict_encryption);

nlohmann::json Transcript(const HqpTrace& trace, const HqpContext& ctx,
                          const ring::RingParams& params, const poly::Poly* secret_f);

}  // namespace hequery::hqp

#endif  // HEQUERY_HQP_H_
