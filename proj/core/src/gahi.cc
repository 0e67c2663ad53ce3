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

#include "hequery/gahi.h"

#include <algorithm>

namespace hequery::gahi {

using metering::Op;
using metering::Phase;
using metering::PhaseScope;

GahiQuery EncryptQuery(const codec::PlainRecord& query, const dghv::PublicKey& pk, Rng& rng,
                       metering::OpCounter* counter) {
  PhaseScope scope(counter, Phase::kQuery);
  return GahiQuery{dghv::EncryptBitsPub(query.bits, pk, rng, counter)};
}

size_t CounterWidth(size_t m) {
  size_t w = 0;
  while ((size_t{1} << w) < m + 1) ++w;
  return std::max<size_t>(w, 1);
}

Server::Server(const dghv::PublicKey& pk, codec::Database db, Options options, uint64_t seed,
               metering::OpCounter* counter)
    : pk_(&pk),
      db_(std::move(db)),
      options_(options),
      rng_(seed),
      counter_(counter),
      eval_(pk, counter),
      key_id_(pk.Fingerprint()) {
  db_.Validate();
}

BitCiphertext Server::FreshZero() {
  metering::Record(counter_, Op::kEnc);
  return dghv::EncryptPub(0, *pk_, rng_);
}

const EncryptedBits& Server::EncryptedRecord(size_t r) {
  if (encrypted_db_.empty()) {
    PhaseScope scope(counter_, Phase::kContext);
    encrypted_db_.reserve(db_.size());
    for (const auto& rec : db_.records) {
      std::vector<uint8_t> bits = rec.bits;
      if (bound_analysis_) std::fill(bits.begin(), bits.end(), 1);
      encrypted_db_.push_back(dghv::EncryptBitsPub(bits, *pk_, rng_, counter_));
    }
  }
  return encrypted_db_[r];
}

// 1 + x + b for a known bit b (one plaintext add), or 1 + x + Enc(b) in
// strict mode.
BitCiphertext Server::EqualityFactor(const BitCiphertext& x, unsigned plain_bit,
                                     const BitCiphertext* encrypted_bit) {
  if (encrypted_bit != nullptr) return eval_.AddPlain(eval_.Add(x, *encrypted_bit), 1);
  return eval_.AddPlain(x, Constant(1 ^ plain_bit));
}

BitCiphertext Server::MatchIndicator(const GahiQuery& query, size_t r) {
  const auto& record = db_.records.at(r);
  if (query.bits.size() != record.bits.size()) {
    throw Error(ErrorCode::kWidthMismatch, "query has " + std::to_string(query.bits.size()) +
                                               " bits, records have " +
                                               std::to_string(record.bits.size()));
  }
  const EncryptedBits* enc = options_.strict_encryption ? &EncryptedRecord(r) : nullptr;
  PhaseScope scope(counter_, Phase::kIndicators);
  std::optional<BitCiphertext> acc;
  for (size_t i = 0; i < record.bits.size(); ++i) {
    BitCiphertext factor =
        EqualityFactor(query.bits[i], record.bits[i], enc != nullptr ? &(*enc)[i] : nullptr);
    acc = acc ? eval_.Mul(*acc, factor) : std::move(factor);
  }
  return acc ? *acc : dghv::Trivial(1);
}

std::vector<BitCiphertext> Server::MatchIndicators(const GahiQuery& query) {
  std::vector<BitCiphertext> I;
  I.reserve(db_.size());
  for (size_t r = 0; r < db_.size(); ++r) I.push_back(MatchIndicator(query, r));
  return I;
}

std::vector<EncryptedBits> Server::PartialSums(std::span<const BitCiphertext> I) {
  if (I.empty()) throw Error(ErrorCode::kInvalidParams, "partial sums need at least one indicator");
  PhaseScope scope(counter_, Phase::kPartialSums);
  const size_t width = CounterWidth(I.size());
  std::vector<EncryptedBits> S;
  S.reserve(I.size());
  EncryptedBits running;
  for (const auto& indicator : I) {
    running = eval_.BinaryAdd(running, std::span<const BitCiphertext>(&indicator, 1), width);
    S.push_back(running);
  }
  return S;
}

std::vector<BitCiphertext> Server::PositionIndicators(const BitCiphertext& I_r,
                                                      const EncryptedBits& S_r, size_t r) {
  PhaseScope scope(counter_, Phase::kPositionIndicators);
  std::vector<BitCiphertext> out;
  out.reserve(r);
  for (size_t j = 1; j <= r; ++j) {
    BitCiphertext acc = I_r;
    for (size_t i = 0; i < S_r.size(); ++i) {
      const unsigned j_bit = i < 64 ? static_cast<unsigned>((j >> i) & 1) : 0;
      std::optional<BitCiphertext> enc_bit;
      if (options_.strict_encryption) {
        metering::Record(counter_, Op::kEnc);
        enc_bit = dghv::EncryptPub(bound_analysis_ ? 1 : static_cast<int>(j_bit), *pk_, rng_);
      }
      acc = eval_.Mul(acc, EqualityFactor(S_r[i], j_bit, enc_bit ? &*enc_bit : nullptr));
    }
    out.push_back(std::move(acc));
  }
  return out;
}

Sequence Server::Gather(const std::vector<std::vector<BitCiphertext>>& Iprime) {
  if (options_.strict_encryption && !Iprime.empty()) EncryptedRecord(0);
  PhaseScope scope(counter_, Phase::kGather);
  std::vector<Sequence> scaled;
  scaled.reserve(Iprime.size());
  for (size_t r = 0; r < Iprime.size(); ++r) {
    const auto& record = db_.records.at(r);
    Sequence seq;
    seq.key_id = key_id_;
    for (const auto& indicator : Iprime[r]) {
      EncryptedBits entry;
      entry.reserve(record.bits.size());
      for (size_t i = 0; i < record.bits.size(); ++i) {
        entry.push_back(options_.strict_encryption
                            ? eval_.Mul(indicator, encrypted_db_[r][i])
                            : eval_.MulPlain(indicator, Constant(record.bits[i])));
      }
      seq.entries.push_back(std::move(entry));
    }
    scaled.push_back(std::move(seq));
  }
  const size_t n_bits = db_.n_bits;
  Sequence out = codec::PadAdd<EncryptedBits>(
      scaled,
      [&](const EncryptedBits& a, const EncryptedBits& b) {
        EncryptedBits sum;
        sum.reserve(a.size());
        for (size_t i = 0; i < a.size(); ++i) sum.push_back(eval_.Add(a[i], b[i]));
        return sum;
      },
      [&] {
        EncryptedBits zero;
        zero.reserve(n_bits);
        for (size_t i = 0; i < n_bits; ++i) zero.push_back(FreshZero());
        return zero;
      });
  out.key_id = key_id_;
  return out;
}

EncryptedBits Server::MatchCount(std::span<const BitCiphertext> I) {
  PhaseScope scope(counter_, Phase::kCount);
  const size_t width = CounterWidth(I.size());
  EncryptedBits running;
  for (const auto& indicator : I) {
    running = eval_.BinaryAdd(running, std::span<const BitCiphertext>(&indicator, 1), width);
  }
  while (running.size() < width) running.push_back(dghv::Trivial(0));
  return running;
}

GahiTrace Server::Evaluate(const GahiQuery& query) {
  GahiTrace trace;
  trace.result.key_id = key_id_;
  if (db_.size() == 0) return trace;
  trace.I = MatchIndicators(query);
  trace.S = PartialSums(trace.I);
  trace.Iprime.reserve(db_.size());
  for (size_t r = 0; r < db_.size(); ++r) {
    trace.Iprime.push_back(PositionIndicators(trace.I[r], trace.S[r], r + 1));
  }
  trace.result = Gather(trace.Iprime);
  trace.count = MatchCount(trace.I);
  return trace;
}

Sequence Server::Truncate(const Sequence& seq, uint64_t n) {
  Sequence out;
  out.key_id = seq.key_id;
  const size_t keep = static_cast<size_t>(std::min<uint64_t>(n, seq.size()));
  out.entries.assign(seq.entries.begin(), seq.entries.begin() + static_cast<ptrdiff_t>(keep));
  return out;
}

std::vector<EncryptedBits> Server::Update(std::span<const BitCiphertext> I, const EncryptedBits& U) {
  if (U.size() != db_.n_bits) {
    throw Error(ErrorCode::kWidthMismatch, "update value has " + std::to_string(U.size()) +
                                               " bits, records have " +
                                               std::to_string(db_.n_bits));
  }
  if (I.size() != db_.size()) {
    throw Error(ErrorCode::kInvalidParams, "one indicator per record is required");
  }
  if (options_.strict_encryption && !I.empty()) EncryptedRecord(0);
  PhaseScope scope(counter_, Phase::kUpdate);
  std::vector<EncryptedBits> view;
  view.reserve(db_.size());
  for (size_t r = 0; r < db_.size(); ++r) {
    const BitCiphertext keep = eval_.AddPlain(I[r], 1);
    EncryptedBits row;
    row.reserve(db_.n_bits);
    for (size_t i = 0; i < db_.n_bits; ++i) {
      BitCiphertext old = options_.strict_encryption
                              ? eval_.Mul(keep, encrypted_db_[r][i])
                              : eval_.MulPlain(keep, Constant(db_.records[r].bits[i]));
      row.push_back(eval_.Add(old, eval_.Mul(I[r], U[i])));
    }
    view.push_back(std::move(row));
  }
  return view;
}

std::vector<EncryptedBits> Server::Delete(std::span<const BitCiphertext> I) {
  if (I.size() != db_.size()) {
    throw Error(ErrorCode::kInvalidParams, "one indicator per record is required");
  }
  if (options_.strict_encryption && !I.empty()) EncryptedRecord(0);
  PhaseScope scope(counter_, Phase::kUpdate);
  std::vector<EncryptedBits> view;
  view.reserve(db_.size());
  for (size_t r = 0; r < db_.size(); ++r) {
    const BitCiphertext keep = eval_.AddPlain(I[r], 1);
    EncryptedBits row;
    row.reserve(db_.n_bits);
    for (size_t i = 0; i < db_.n_bits; ++i) {
      row.push_back(options_.strict_encryption
                        ? eval_.Mul(keep, encrypted_db_[r][i])
                        : eval_.MulPlain(keep, Constant(db_.records[r].bits[i])));
    }
    view.push_back(std::move(row));
  }
  return view;
}

SelectResult RunSelect(Server& server, const GahiQuery& query,
                       const std::function<uint64_t(const EncryptedBits&)>& decrypt_count) {
  SelectResult out;
  out.trace = server.Evaluate(query);
  out.count = server.database().size() == 0 ? 0 : decrypt_count(out.trace.count);
  out.result = Server::Truncate(out.trace.result, out.count);
  return out;
}

mpz_class WorstCaseBound(size_t m, size_t n_bits, const AdvisorOptions& options) {
  if (m == 0 || n_bits == 0) return 0;
  // One public-key element carrying the summed bound of a full subset makes
  // every public-key encryption take the worst case.
  dghv::PublicKey pk;
  const mpz_class zero_bound = 2 * ((mpz_class(1) << options.noise_bits) - 1);
  pk.zeros.push_back(BitCiphertext{0, zero_bound * options.pubkey_size});
  pk.noise_bits = options.noise_bits;

  codec::Database db = codec::Database::FromValues(std::vector<uint64_t>(m, 0), n_bits);
  Server server(pk, db, Options{options.strict_encryption}, 0);
  server.bound_analysis_ = true;

  Rng rng(0);
  codec::PlainRecord query = codec::PlainRecord::FromValue(0, n_bits);
  GahiQuery q = EncryptQuery(query, pk, rng);
  GahiTrace trace = server.Evaluate(q);
  EncryptedBits U = dghv::EncryptBitsPub(query.bits, pk, rng);
  server.Update(trace.I, U);
  server.Delete(trace.I);

  mpz_class bound = server.max_bound();
  bound = std::max(bound, U.front().noise_bound);
  return bound;
}

dghv::DghvParams AdviseParams(size_t m, size_t n_bits, const AdvisorOptions& options) {
  dghv::DghvParams params;
  params.noise_bits = options.noise_bits;
  params.pubkey_size = options.pubkey_size;
  const mpz_class bound = WorstCaseBound(std::max<size_t>(m, 1), std::max<size_t>(n_bits, 1), options);
  params.secret_bits = std::max(dghv::MinSecretBits(bound, options.margin_bits),
                                options.noise_bits + 2);
  params.rand_bits = params.secret_bits + options.extra_rand_bits;
  params.lambda = options.noise_bits;
  params.Validate();
  return params;
}

nlohmann::json Transcript(const GahiTrace& trace, const codec::Database& db,
                          const dghv::SecretKey* sk) {
  nlohmann::json out;
  out["protocol"] = "gahi";
  out["m"] = db.size();
  out["n_bits"] = db.n_bits;
  out["key_id"] = trace.result.key_id;
  out["result_length"] = trace.result.size();
  if (sk == nullptr) return out;

  nlohmann::json I = nlohmann::json::array(), S = nlohmann::json::array(),
                 Iprime = nlohmann::json::array(), result = nlohmann::json::array();
  for (const auto& c : trace.I) I.push_back(dghv::Decrypt(c, *sk));
  for (const auto& s : trace.S) S.push_back(dghv::DecryptUnsigned(s, *sk));
  for (const auto& seq : trace.Iprime) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : seq) row.push_back(dghv::Decrypt(c, *sk));
    Iprime.push_back(std::move(row));
  }
  for (const auto& entry : trace.result.entries) {
    codec::PlainRecord rec;
    rec.bits = dghv::DecryptBits(entry, *sk);
    result.push_back(rec.Display());
  }
  out["I"] = std::move(I);
  out["S"] = std::move(S);
  out["Iprime"] = std::move(Iprime);
  out["count"] = dghv::DecryptUnsigned(trace.count, *sk);
  out["result"] = std::move(result);
  return out;
}

}  // namespace hequery::gahi
