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

#include "hequery/ring_fhe.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "hequery/cyclotomic.h"

namespace hequery::ring {
namespace {

using metering::Op;

Poly Dense(Poly a, unsigned d) {
  a.resize(d, 0);
  return a;
}

// Any integer polynomial -> dense canonical element of R_q.
Poly ReduceQ(const Poly& a, const RingParams& params) {
  Poly r = poly::ReduceModP(a, params.q);
  if (poly::Degree(r) >= static_cast<int>(params.degree())) {
    r = poly::RemMonic(r, params.f_mod);
    r = poly::ReduceModP(r, params.q);
  }
  return Dense(std::move(r), params.degree());
}

Poly MulQ(const Poly& a, const Poly& b, const RingParams& params) {
  return ReduceQ(poly::Mul(a, b), params);
}

Poly SampleUniformSmall(const RingParams& params, Rng& rng) {
  Poly out(params.degree());
  for (auto& c : out) c = rng.Uniform(-params.key_bound, params.key_bound);
  return out;
}

Poly SampleError(const RingParams& params, Rng& rng) {
  Poly out(params.degree());
  for (auto& c : out) c = rng.RoundedGaussian(params.err_stddev);
  return out;
}

Poly CenteredPlain(const PlainPoly& m, const RingParams& params) {
  Poly out(m.coeffs.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = CenteredMod(m.coeffs[i], params.t);
  return out;
}

}  // namespace

RingParams RingParams::Create(unsigned n, const mpz_class& t, unsigned q_bits,
                              unsigned decomp_bits, double err_stddev) {
  RingParams params;
  params.n = n;
  params.f_mod = field::CyclotomicPoly(n);
  mpz_class base = mpz_class(1) << q_bits;
  mpz_nextprime(params.q.get_mpz_t(), base.get_mpz_t());
  params.t = t;
  params.err_stddev = err_stddev;
  params.decomp_base = mpz_class(1) << decomp_bits;
  params.Validate();
  return params;
}

unsigned RingParams::digits() const {
  unsigned count = 0;
  mpz_class power = 1;
  while (power < q) {
    power *= decomp_base;
    ++count;
  }
  return std::max(count, 1u);
}

void RingParams::Validate() const {
  if (poly::Degree(f_mod) < 1 || poly::Lead(f_mod) != 1) {
    throw Error(ErrorCode::kInvalidParams, "ring modulus must be monic of degree >= 1");
  }
  if (!(t > 1 && t < q)) throw Error(ErrorCode::kInvalidParams, "need 1 < t < q");
  if (decomp_base < 2) throw Error(ErrorCode::kInvalidParams, "decomposition base must be >= 2");
  if (key_bound < 0 || err_stddev < 0) {
    throw Error(ErrorCode::kInvalidParams, "distribution widths must be nonnegative");
  }
}

uint64_t RingPublicKey::Fingerprint() const {
  std::string material;
  for (const auto& c : h) material += c.get_str(16) + ",";
  return std::hash<std::string>{}(material);
}

PlainPoly MakePlain(const Poly& coeffs, const RingParams& params) {
  Poly r = poly::ReduceModP(coeffs, params.t);
  if (poly::Degree(r) >= static_cast<int>(params.degree())) {
    r = poly::RemModP(r, params.f_mod, params.t);
  }
  return PlainPoly{Dense(std::move(r), params.degree())};
}

PlainPoly PlainConstant(const mpz_class& c, const RingParams& params) {
  return MakePlain(Poly{c}, params);
}

RingKeys KeyGen(const RingParams& params, Rng& rng, int max_attempts) {
  params.Validate();
  RingKeys keys;
  Poly f_inv;
  bool found = false;
  for (int attempt = 0; attempt < max_attempts && !found; ++attempt) {
    Poly f_prime = SampleUniformSmall(params, rng);
    Poly f = poly::Scale(f_prime, params.t);
    if (f.empty()) f.push_back(0);
    f[0] += 1;
    f = ReduceQ(f, params);
    try {
      f_inv = Dense(poly::InverseMod(f, params.f_mod, params.q), params.degree());
      keys.f = std::move(f);
      found = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroInverse) throw;
    }
  }
  if (!found) {
    throw Error(ErrorCode::kNonInvertibleExhausted,
                "no invertible f after " + std::to_string(max_attempts) + " attempts");
  }
  Poly g = SampleUniformSmall(params, rng);
  keys.pub.h = MulQ(poly::Scale(g, params.t), f_inv, params);

  const unsigned ell = params.digits();
  mpz_class power = 1;
  keys.pub.evk.reserve(ell);
  for (unsigned i = 0; i < ell; ++i) {
    Poly s = SampleError(params, rng);
    Poly e = SampleError(params, rng);
    Poly evk = poly::Add(poly::Add(poly::Scale(keys.f, power), e), poly::Mul(keys.pub.h, s));
    keys.pub.evk.push_back(ReduceQ(evk, params));
    power *= params.decomp_base;
  }
  return keys;
}

RingCiphertext EncryptWith(const PlainPoly& m, const RingPublicKey& pk, const RingParams& params,
                           const Poly& s, const Poly& e) {
  Poly scaled = poly::Scale(poly::ReduceModP(m.coeffs, params.t), params.delta());
  Poly c = poly::Add(poly::Add(scaled, e), poly::Mul(pk.h, s));
  return RingCiphertext{ReduceQ(c, params)};
}

RingCiphertext Encrypt(const PlainPoly& m, const RingPublicKey& pk, const RingParams& params,
                       Rng& rng) {
  Poly s = SampleError(params, rng);
  Poly e = SampleError(params, rng);
  return EncryptWith(m, pk, params, s, e);
}

PlainPoly Decrypt(const RingCiphertext& c, const Poly& f, const RingParams& params) {
  Poly fc = MulQ(f, c.coeffs, params);
  Poly out(params.degree());
  for (size_t i = 0; i < fc.size(); ++i) {
    mpz_class x = CenteredMod(fc[i], params.q);
    out[i] = Mod(RoundDiv(params.t * x, params.q), params.t);
  }
  return PlainPoly{std::move(out)};
}

RingCiphertext HomAdd(const RingCiphertext& a, const RingCiphertext& b, const RingParams& params) {
  return RingCiphertext{ReduceQ(poly::Add(a.coeffs, b.coeffs), params)};
}

RingCiphertext HomSub(const RingCiphertext& a, const RingCiphertext& b, const RingParams& params) {
  return RingCiphertext{ReduceQ(poly::Sub(a.coeffs, b.coeffs), params)};
}

RingCiphertext AddPlain(const RingCiphertext& c, const PlainPoly& m, const RingParams& params) {
  return RingCiphertext{ReduceQ(poly::Add(c.coeffs, poly::Scale(m.coeffs, params.delta())), params)};
}

RingCiphertext SubPlain(const RingCiphertext& c, const PlainPoly& m, const RingParams& params) {
  return RingCiphertext{ReduceQ(poly::Sub(c.coeffs, poly::Scale(m.coeffs, params.delta())), params)};
}

RingCiphertext MulPlain(const RingCiphertext& c, const PlainPoly& m, const RingParams& params) {
  return RingCiphertext{MulQ(c.coeffs, CenteredPlain(m, params), params)};
}

RingCiphertext ScaleRoundProduct(const RingCiphertext& a, const RingCiphertext& b,
                                 const RingParams& params) {
  // Centered representatives keep the q-multiples dropped by the scaling
  // small.
  Poly ac(a.coeffs.size()), bc(b.coeffs.size());
  for (size_t i = 0; i < ac.size(); ++i) ac[i] = CenteredMod(a.coeffs[i], params.q);
  for (size_t i = 0; i < bc.size(); ++i) bc[i] = CenteredMod(b.coeffs[i], params.q);
  Poly product = poly::Mul(ac, bc);
  for (auto& coeff : product) coeff = RoundDiv(params.t * coeff, params.q);
  Poly reduced = poly::RemMonic(poly::Trimmed(std::move(product)), params.f_mod);
  return RingCiphertext{ReduceQ(reduced, params)};
}

std::vector<Poly> Decompose(const RingCiphertext& c, const RingParams& params) {
  const unsigned ell = params.digits();
  std::vector<Poly> digits(ell, Poly(params.degree(), 0));
  for (size_t j = 0; j < c.coeffs.size(); ++j) {
    mpz_class rest = Mod(c.coeffs[j], params.q);
    for (unsigned i = 0; i < ell; ++i) {
      mpz_fdiv_qr(rest.get_mpz_t(), digits[i][j].get_mpz_t(), rest.get_mpz_t(),
                  params.decomp_base.get_mpz_t());
    }
  }
  return digits;
}

RingCiphertext KeySwitch(const RingCiphertext& c_tilde, const std::vector<Poly>& evk,
                         const RingParams& params) {
  std::vector<Poly> digits = Decompose(c_tilde, params);
  if (digits.size() != evk.size()) {
    throw Error(ErrorCode::kKeyContextMismatch, "evaluation key does not match parameters");
  }
  Poly acc;
  for (size_t i = 0; i < digits.size(); ++i) acc = poly::Add(acc, poly::Mul(digits[i], evk[i]));
  return RingCiphertext{ReduceQ(acc, params)};
}

RingCiphertext HomMul(const RingCiphertext& a, const RingCiphertext& b, const RingPublicKey& pk,
                      const RingParams& params) {
  return KeySwitch(ScaleRoundProduct(a, b, params), pk.evk, params);
}

PlainPoly EncodeInteger(const mpz_class& z, const RingParams& params) {
  mpz_class mag = abs(z);
  const size_t bits = mag == 0 ? 0 : mpz_sizeinbase(mag.get_mpz_t(), 2);
  if (bits >= params.degree()) {
    throw Error(ErrorCode::kOverflow, z.get_str() + " needs " + std::to_string(bits) +
                                          " bits; ring degree is " +
                                          std::to_string(params.degree()));
  }
  Poly coeffs(params.degree(), 0);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(mag.get_mpz_t(), i)) coeffs[i] = z < 0 ? mpz_class(-1) : mpz_class(1);
  }
  return MakePlain(coeffs, params);
}

mpz_class DecodeInteger(const PlainPoly& m, const RingParams& params) {
  Poly centered = CenteredPlain(m, params);
  return poly::Evaluate(centered, 2);
}

double NoiseBudget(const RingCiphertext& c, const Poly& f, const RingParams& params) {
  Poly fc = MulQ(f, c.coeffs, params);
  mpz_class worst = 0;
  for (const auto& coeff : fc) {
    mpz_class x = CenteredMod(coeff, params.q);
    mpz_class v = abs(CenteredMod(params.t * x, params.q));
    if (v > worst) worst = v;
  }
  const double half_q = Log2(params.q) - 1.0;
  if (worst == 0) return half_q;
  return half_q - Log2(worst);
}

RingCiphertext Evaluator::Encrypt(const PlainPoly& m, Rng& rng) {
  metering::Record(observer_, Op::kEnc);
  return ring::Encrypt(m, *pk_, *params_, rng);
}

RingCiphertext Evaluator::Add(const RingCiphertext& a, const RingCiphertext& b) {
  metering::Record(observer_, Op::kAdd);
  return HomAdd(a, b, *params_);
}

RingCiphertext Evaluator::Sub(const RingCiphertext& a, const RingCiphertext& b) {
  metering::Record(observer_, Op::kAdd);
  return HomSub(a, b, *params_);
}

RingCiphertext Evaluator::AddPlain(const RingCiphertext& c, const PlainPoly& m) {
  metering::Record(observer_, Op::kPlainAdd);
  return ring::AddPlain(c, m, *params_);
}

RingCiphertext Evaluator::SubPlain(const RingCiphertext& c, const PlainPoly& m) {
  metering::Record(observer_, Op::kPlainAdd);
  return ring::SubPlain(c, m, *params_);
}

RingCiphertext Evaluator::MulPlain(const RingCiphertext& c, const PlainPoly& m) {
  metering::Record(observer_, Op::kPlainMul);
  return ring::MulPlain(c, m, *params_);
}

RingCiphertext Evaluator::Mul(const RingCiphertext& a, const RingCiphertext& b) {
  metering::Record(observer_, Op::kMul);
  return HomMul(a, b, *pk_, *params_);
}

RingCiphertext Evaluator::Product(std::vector<RingCiphertext> factors) {
  if (factors.empty()) throw Error(ErrorCode::kInvalidParams, "empty product");
  while (factors.size() > 1) {
    std::vector<RingCiphertext> next;
    next.reserve((factors.size() + 1) / 2);
    for (size_t i = 0; i + 1 < factors.size(); i += 2) next.push_back(Mul(factors[i], factors[i + 1]));
    if (factors.size() % 2 == 1) next.push_back(std::move(factors.back()));
    factors = std::move(next);
  }
  return std::move(factors.front());
}

}  // namespace hequery::ring
