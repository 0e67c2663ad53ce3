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

#include "hequery/hqp.h"

#include <algorithm>
#include <map>

namespace hequery::hqp {
namespace {

using metering::Op;
using metering::Phase;
using metering::PhaseScope;

unsigned CeilLog2(size_t x) {
  unsigned k = 0;
  while ((size_t{1} << k) < x) ++k;
  return k;
}

// out[k] = outside * prod_{j != k} leaves[j] for every k, with O(len) muls and
// logarithmic depth: each half inherits `outside` times the other half's
// product.
class ExclusiveProducts {
 public:
  ExclusiveProducts(ring::Evaluator& eval, std::span<const RingCiphertext> leaves)
      : eval_(eval), leaves_(leaves) {}

  std::vector<RingCiphertext> Run(const RingCiphertext& outside) {
    out_.assign(leaves_.size(), RingCiphertext{});
    if (!leaves_.empty()) Descend(0, leaves_.size(), outside);
    return std::move(out_);
  }

 private:
  const RingCiphertext& Product(size_t lo, size_t hi) {
    auto key = std::make_pair(lo, hi);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    RingCiphertext value;
    if (hi - lo == 1) {
      value = leaves_[lo];
    } else {
      const size_t mid = lo + (hi - lo) / 2;
      value = eval_.Mul(Product(lo, mid), Product(mid, hi));
    }
    return cache_.emplace(key, std::move(value)).first->second;
  }

  void Descend(size_t lo, size_t hi, const RingCiphertext& outside) {
    if (hi - lo == 1) {
      out_[lo] = outside;
      return;
    }
    const size_t mid = lo + (hi - lo) / 2;
    Descend(lo, mid, eval_.Mul(outside, Product(mid, hi)));
    Descend(mid, hi, eval_.Mul(outside, Product(lo, mid)));
  }

  ring::Evaluator& eval_;
  std::span<const RingCiphertext> leaves_;
  std::map<std::pair<size_t, size_t>, RingCiphertext> cache_;
  std::vector<RingCiphertext> out_;
};

nlohmann::json ElementJson(const field::FieldElement& x) {
  if (poly::Degree(x.coeffs()) <= 0) {
    return x.IsZero() ? 0UL : x.coeffs()[0].get_ui();
  }
  return poly::ToString(x.coeffs());
}

}  // namespace

ring::PlainPoly ToPlain(const field::FieldElement& x, const ring::RingParams& params) {
  return ring::MakePlain(x.coeffs(), params);
}

field::FieldElement FromPlain(const ring::PlainPoly& m,
                              const std::shared_ptr<const field::FieldContext>& field) {
  return field::FieldElement(field, m.coeffs);
}

std::shared_ptr<const field::FieldContext> FieldOf(const ring::RingParams& params) {
  return field::FieldContext::Create(params.t, params.f_mod);
}

HqpContext BuildContext(const codec::Database& db, const ring::RingParams& params,
                        const ring::RingPublicKey& pk, Rng& rng, bool strict_encryption,
                        metering::OpCounter* counter) {
  db.Validate();
  if (params.t <= static_cast<unsigned long>(db.size())) {
    throw Error(ErrorCode::kFieldTooSmall, "p = " + params.t.get_str() +
                                               " must exceed the record count " +
                                               std::to_string(db.size()));
  }
  if (db.n_bits >= params.degree()) {
    throw Error(ErrorCode::kDegreeTooSmall, "record width " + std::to_string(db.n_bits) +
                                                " needs phi(n) > width; phi(n) = " +
                                                std::to_string(params.degree()));
  }
  PhaseScope scope(counter, Phase::kContext);
  ring::Evaluator eval(params, pk, counter);

  HqpContext ctx;
  ctx.field = FieldOf(params);
  ctx.db = db;
  ctx.key_id = pk.Fingerprint();
  std::map<uint64_t, size_t> slot_of;
  for (const auto& rec : db.records) {
    ctx.encoded.push_back(codec::EncodeField(rec, ctx.field));
    auto [it, inserted] = slot_of.emplace(rec.Value(), ctx.distinct_values.size());
    if (inserted) ctx.distinct_values.push_back(ctx.encoded.back());
    ctx.value_index.push_back(it->second);
  }

  std::vector<field::FieldElement> inverse_products;
  for (size_t v = 0; v < ctx.distinct_values.size(); ++v) {
    field::FieldElement prod = field::FieldElement::One(ctx.field);
    for (size_t u = 0; u < ctx.distinct_values.size(); ++u) {
      if (u != v) prod = prod * (ctx.distinct_values[v] - ctx.distinct_values[u]);
    }
    metering::Record(counter, Op::kInv);
    inverse_products.push_back(prod.Inverse());
  }
  for (size_t i = 0; i < db.size(); ++i) {
    ctx.D.push_back(inverse_products[ctx.value_index[i]]);
    ctx.D_enc.push_back(eval.Encrypt(ToPlain(ctx.D.back(), params), rng));
  }
  if (strict_encryption) {
    for (const auto& v : ctx.distinct_values) {
      ctx.distinct_enc.push_back(eval.Encrypt(ToPlain(v, params), rng));
    }
  }
  return ctx;
}

RingCiphertext EncryptQuery(const codec::PlainRecord& query, const ring::RingParams& params,
                            const ring::RingPublicKey& pk, Rng& rng,
                            metering::OpCounter* counter) {
  if (query.bits.size() >= params.degree()) {
    throw Error(ErrorCode::kWidthOverflow, "query width " + std::to_string(query.bits.size()) +
                                               " needs phi(n) > width");
  }
  PhaseScope scope(counter, Phase::kQuery);
  ring::Evaluator eval(params, pk, counter);
  poly::Poly coeffs(query.bits.begin(), query.bits.end());
  return eval.Encrypt(ring::MakePlain(coeffs, params), rng);
}

Server::Server(const ring::RingParams& params, const ring::RingPublicKey& pk,
               const codec::Database& db, Options options, uint64_t seed,
               metering::OpCounter* counter)
    : params_(&params),
      pk_(&pk),
      options_(options),
      rng_(seed),
      counter_(counter),
      eval_(params, pk, counter),
      ctx_(BuildContext(db, params, pk, rng_, options.strict_encryption, counter)) {}

RingCiphertext Server::FreshEncryption(const field::FieldElement& x) {
  return eval_.Encrypt(ToPlain(x, *params_), rng_);
}

RingCiphertext Server::ScaledBy(const RingCiphertext& c, const field::FieldElement& x) {
  if (options_.strict_encryption) return eval_.Mul(c, FreshEncryption(x));
  return eval_.MulPlain(c, ToPlain(x, *params_));
}

RingCiphertext Server::MatchIndicator(const RingCiphertext& query, size_t i) {
  PhaseScope scope(counter_, Phase::kIndicators);
  const size_t own = ctx_.value_index.at(i);
  std::vector<RingCiphertext> factors{ctx_.D_enc[i]};
  for (size_t v = 0; v < ctx_.distinct_values.size(); ++v) {
    if (v == own) continue;
    factors.push_back(options_.strict_encryption
                          ? eval_.Sub(query, ctx_.distinct_enc[v])
                          : eval_.SubPlain(query, ToPlain(ctx_.distinct_values[v], *params_)));
  }
  return eval_.Product(std::move(factors));
}

std::vector<RingCiphertext> Server::MatchIndicators(const RingCiphertext& query) {
  std::vector<RingCiphertext> F;
  F.reserve(ctx_.db.size());
  for (size_t i = 0; i < ctx_.db.size(); ++i) F.push_back(MatchIndicator(query, i));
  return F;
}

std::vector<RingCiphertext> Server::PartialSums(std::span<const RingCiphertext> F) {
  PhaseScope scope(counter_, Phase::kPartialSums);
  std::vector<RingCiphertext> G;
  G.reserve(F.size());
  for (size_t i = 0; i < F.size(); ++i) {
    G.push_back(i == 0 ? F[0] : eval_.Add(G.back(), F[i]));
  }
  return G;
}

std::vector<RingCiphertext> Server::PositionIndicators(const RingCiphertext& F_i,
                                                       const RingCiphertext& G_i, size_t i) {
  PhaseScope scope(counter_, Phase::kPositionIndicators);
  const auto& field = ctx_.field;
  std::vector<RingCiphertext> leaves;
  leaves.reserve(i);
  for (size_t j = 1; j <= i; ++j) {
    field::FieldElement node = codec::EncodeCounter(j, field);
    leaves.push_back(options_.strict_encryption ? eval_.Sub(G_i, FreshEncryption(node))
                                                : eval_.SubPlain(G_i, ToPlain(node, *params_)));
  }
  std::vector<RingCiphertext> out = ExclusiveProducts(eval_, leaves).Run(F_i);
  for (size_t k = 1; k <= i; ++k) {
    field::FieldElement denom = field::FieldElement::One(field);
    for (size_t j = 1; j <= i; ++j) {
      if (j != k) {
        denom = denom * (codec::EncodeCounter(k, field) - codec::EncodeCounter(j, field));
      }
    }
    metering::Record(counter_, Op::kInv);
    out[k - 1] = ScaledBy(out[k - 1], denom.Inverse());
  }
  return out;
}

Sequence Server::Gather(const std::vector<std::vector<RingCiphertext>>& Fprime) {
  PhaseScope scope(counter_, Phase::kGather);
  std::vector<Sequence> scaled;
  scaled.reserve(Fprime.size());
  for (size_t i = 0; i < Fprime.size(); ++i) {
    Sequence seq;
    seq.key_id = ctx_.key_id;
    for (const auto& indicator : Fprime[i]) {
      seq.entries.push_back(
          options_.strict_encryption
              ? eval_.Mul(indicator, ctx_.distinct_enc[ctx_.value_index[i]])
              : eval_.MulPlain(indicator, ToPlain(ctx_.encoded[i], *params_)));
    }
    scaled.push_back(std::move(seq));
  }
  Sequence out = codec::PadAdd<RingCiphertext>(
      scaled, [&](const RingCiphertext& a, const RingCiphertext& b) { return eval_.Add(a, b); },
      [&] { return FreshEncryption(field::FieldElement::Zero(ctx_.field)); });
  out.key_id = ctx_.key_id;
  return out;
}

RingCiphertext Server::MatchCount(std::span<const RingCiphertext> F) {
  if (F.empty()) throw Error(ErrorCode::kInvalidParams, "count needs at least one indicator");
  PhaseScope scope(counter_, Phase::kCount);
  RingCiphertext acc = F[0];
  for (size_t i = 1; i < F.size(); ++i) acc = eval_.Add(acc, F[i]);
  return acc;
}

RingCiphertext Server::MembershipPrecheck(const RingCiphertext& query) {
  if (ctx_.db.size() == 0) {
    throw Error(ErrorCode::kInvalidParams, "pre-check needs a nonempty database");
  }
  PhaseScope scope(counter_, Phase::kPrecheck);
  std::vector<RingCiphertext> factors;
  factors.reserve(ctx_.db.size());
  for (size_t i = 0; i < ctx_.db.size(); ++i) {
    factors.push_back(options_.strict_encryption
                          ? eval_.Sub(query, ctx_.distinct_enc[ctx_.value_index[i]])
                          : eval_.SubPlain(query, ToPlain(ctx_.encoded[i], *params_)));
  }
  return eval_.Product(std::move(factors));
}

HqpTrace Server::Evaluate(const RingCiphertext& query) {
  HqpTrace trace;
  trace.result.key_id = ctx_.key_id;
  if (ctx_.db.size() == 0) return trace;
  trace.F = MatchIndicators(query);
  trace.G = PartialSums(trace.F);
  trace.Fprime.reserve(trace.F.size());
  for (size_t i = 0; i < trace.F.size(); ++i) {
    trace.Fprime.push_back(PositionIndicators(trace.F[i], trace.G[i], i + 1));
  }
  trace.result = Gather(trace.Fprime);
  trace.count = MatchCount(trace.F);
  return trace;
}

Sequence Server::Truncate(const Sequence& seq, uint64_t n) {
  Sequence out;
  out.key_id = seq.key_id;
  const size_t keep = static_cast<size_t>(std::min<uint64_t>(n, seq.size()));
  out.entries.assign(seq.entries.begin(), seq.entries.begin() + static_cast<ptrdiff_t>(keep));
  return out;
}

SelectResult RunSelect(Server& server, const RingCiphertext& query, const SelectOptions& options,
                       const UserCallbacks& user) {
  SelectResult out;
  out.result.key_id = server.context().key_id;
  if (server.context().db.size() == 0) {
    if (options.precheck) {
      out.status = SelectStatus::kNotFound;
    } else if (!options.no_leak) {
      out.count = 0;
    }
    return out;
  }
  if (options.precheck && !user.precheck_is_zero(server.MembershipPrecheck(query))) {
    out.status = SelectStatus::kNotFound;
    return out;
  }
  out.trace = server.Evaluate(query);
  if (options.no_leak) {
    out.result = out.trace.result;
    return out;
  }
  out.count = user.decrypt_count(*out.trace.count);
  out.result = out.count ? Server::Truncate(out.trace.result, *out.count) : out.trace.result;
  return out;
}

field::FieldElement DecryptElement(const RingCiphertext& c, const poly::Poly& f,
                                   const ring::RingParams& params) {
  return FromPlain(ring::Decrypt(c, f, params), FieldOf(params));
}

std::optional<uint64_t> DecodeCount(const field::FieldElement& x, uint64_t max_count) {
  if (x.IsZero()) return 0;
  if (poly::Degree(x.coeffs()) != 0) return std::nullopt;
  const mpz_class& c = x.coeffs()[0];
  if (c > static_cast<unsigned long>(max_count)) return std::nullopt;
  return c.get_ui();
}

bool IsWellFormed(std::span<const field::FieldElement> decrypted, size_t n_bits) {
  return std::all_of(decrypted.begin(), decrypted.end(), [&](const field::FieldElement& x) {
    return codec::DecodeField(x, n_bits).has_value();
  });
}

FieldChoice ChooseField(size_t n_bits, uint64_t min_p) {
  for (unsigned n = 2; n < 4096; ++n) {
    if (field::EulerPhi(n) <= n_bits) continue;
    try {
      field::FieldSearchOptions options;
      options.lower_bound = min_p;
      options.upper_limit = std::max<uint64_t>(10'000, 64 * min_p);
      return FieldChoice{n, field::FindFieldPrime(n, options).chosen_p};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSquareDiscriminant && e.code() != ErrorCode::kSearchExhausted) {
        throw;
      }
    }
  }
  throw Error(ErrorCode::kSearchExhausted, "no cyclotomic field found for the record width");
}

RingAdvice AdviseRing(unsigned n, uint64_t p, size_t m, bool strict_encryption) {
  RingAdvice advice;
  const size_t records = std::max<size_t>(m, 1);
  // Indicator product, leave-one-out products plus the outer multiply, and
  // the ciphertext-ciphertext scalings strict mode adds.
  advice.depth = CeilLog2(records) + CeilLog2(records) + 1 + (strict_encryption ? 2 : 0);
  const unsigned d = field::EulerPhi(n);
  // Each level multiplies the noise by roughly t * d * ||f||, and every key
  // switch adds about d * w * digits * sigma * t.
  const unsigned level_bits = CeilLog2(p) + 2 * CeilLog2(d) + 4;
  const unsigned switch_bits = advice.decomp_bits + 2 * CeilLog2(d) + CeilLog2(p) + 12;
  advice.q_bits = switch_bits + advice.depth * level_bits + CeilLog2(p);
  return advice;
}

ring::RingParams AdviseParams(unsigned n, uint64_t p, size_t m, bool strict_encryption) {
  const RingAdvice advice = AdviseRing(n, p, m, strict_encryption);
  return ring::RingParams::Create(n, mpz_class(static_cast<unsigned long>(p)), advice.q_bits,
                                  advice.decomp_bits);
}

nlohmann::json Transcript(const HqpTrace& trace, const HqpContext& ctx,
                          const ring::RingParams& params, const poly::Poly* secret_f) {
  nlohmann::json out;
  out["protocol"] = "hqp";
  out["field"] = {{"n", params.n}, {"p", params.t.get_ui()}, {"degree", params.degree()}};
  out["m"] = ctx.db.size();
  out["n_bits"] = ctx.db.n_bits;
  out["key_id"] = ctx.key_id;
  out["result_length"] = trace.result.size();
  if (secret_f == nullptr) return out;

  auto dec = [&](const RingCiphertext& c) { return DecryptElement(c, *secret_f, params); };
  nlohmann::json F = nlohmann::json::array(), G = nlohmann::json::array(),
                 Fprime = nlohmann::json::array(), result = nlohmann::json::array();
  for (const auto& c : trace.F) F.push_back(ElementJson(dec(c)));
  for (const auto& c : trace.G) G.push_back(ElementJson(dec(c)));
  for (const auto& seq : trace.Fprime) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : seq) row.push_back(ElementJson(dec(c)));
    Fprime.push_back(std::move(row));
  }
  for (const auto& c : trace.result.entries) {
    auto rec = codec::DecodeField(dec(c), ctx.db.n_bits);
    result.push_back(rec ? nlohmann::json(rec->Display()) : ElementJson(dec(c)));
  }
  out["F"] = std::move(F);
  out["G"] = std::move(G);
  out["Fprime"] = std::move(Fprime);
  if (trace.count) out["count"] = ElementJson(dec(*trace.count));
  out["result"] = std::move(result);
  return out;
}

}  // namespace hequery::hqp
