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

#include "hequery/cyclotomic.h"

#include <chrono>
#include <map>
#include <utility>

namespace hequery::field {
namespace {

constexpr int kMillerRabinRounds = 25;
constexpr uint64_t kTrialDivisionLimit = uint64_t{1} << 20;

std::vector<unsigned> PrimeFactors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Word-sized polynomial arithmetic over Z_p for p < 2^31, used by the Rabin
// test where the same handful of operations runs millions of times.
class SmallPrimePolys {
 public:
  using Vec = std::vector<uint64_t>;

  SmallPrimePolys(uint64_t p, Vec modulus) : p_(p), f_(std::move(modulus)) {
    MakeMonic(f_);
  }

  const Vec& modulus() const { return f_; }

  static void Trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  uint64_t Inv(uint64_t a) const {
    // Fermat: a^(p-2).
    uint64_t result = 1, base = a % p_, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return result;
  }

  void MakeMonic(Vec& a) const {
    Trim(a);
    if (a.empty()) return;
    uint64_t inv = Inv(a.back());
    for (auto& c : a) c = c * inv % p_;
  }

  Vec Rem(Vec a, const Vec& b) const {
    Trim(a);
    const size_t db = b.size() - 1;
    const uint64_t inv = Inv(b.back());
    while (a.size() > db) {
      uint64_t coeff = a.back() * inv % p_;
      size_t shift = a.size() - 1 - db;
      if (coeff != 0) {
        for (size_t j = 0; j <= db; ++j) {
          a[shift + j] = (a[shift + j] + (p_ - coeff) * b[j]) % p_;
        }
      }
      a.pop_back();
      Trim(a);
    }
    return a;
  }

  Vec MulMod(const Vec& a, const Vec& b) const {
    if (a.empty() || b.empty()) return {};
    Vec out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j) {
        out[i + j] = (out[i + j] + a[i] * b[j]) % p_;
      }
    }
    return Rem(std::move(out), f_);
  }

  Vec Pow(const Vec& base, uint64_t e) const {
    Vec result = Rem(Vec{1}, f_);
    Vec b = Rem(base, f_);
    while (e > 0) {
      if (e & 1) result = MulMod(result, b);
      e >>= 1;
      if (e > 0) b = MulMod(b, b);
    }
    return result;
  }

  Vec Gcd(Vec a, Vec b) const {
    Trim(a);
    Trim(b);
    while (!b.empty()) {
      Vec r = Rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    MakeMonic(a);
    return a;
  }

  Vec SubX(Vec a) const {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p_ - 1) % p_;
    Trim(a);
    return a;
  }

 private:
  uint64_t p_;
  Vec f_;
};

bool RabinSmall(const Poly& f, uint64_t p) {
  SmallPrimePolys::Vec fv(f.size());
  for (size_t i = 0; i < f.size(); ++i) fv[i] = Mod(f[i], p).get_ui();
  SmallPrimePolys ring(p, fv);
  const auto& monic = ring.modulus();
  const int d = static_cast<int>(monic.size()) - 1;
  if (d <= 0) return false;
  if (d == 1) return true;

  // frob[k] = x^(p^k) mod f.
  std::vector<SmallPrimePolys::Vec> frob(d + 1);
  frob[0] = ring.Rem({0, 1}, monic);
  for (int k = 1; k <= d; ++k) frob[k] = ring.Pow(frob[k - 1], p);

  if (ring.SubX(frob[d]).size() != 0) return false;
  for (unsigned r : PrimeFactors(static_cast<unsigned>(d))) {
    auto g = ring.Gcd(monic, ring.SubX(frob[d / r]));
    if (g.size() != 1) return false;
  }
  return true;
}

bool RabinGeneral(const Poly& f, const mpz_class& p) {
  Poly monic = poly::ReduceModP(f, p);
  const int d = poly::Degree(monic);
  if (d <= 0) return false;
  if (d == 1) return true;
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), monic[d].get_mpz_t(), p.get_mpz_t());
  for (auto& c : monic) c = Mod(c * inv, p);

  const Poly x{0, 1};
  std::vector<Poly> frob(d + 1);
  frob[0] = poly::RemModP(x, monic, p);
  for (int k = 1; k <= d; ++k) frob[k] = poly::PowMod(frob[k - 1], p, monic, p);

  if (!poly::IsZero(poly::SubModP(frob[d], x, p))) return false;
  for (unsigned r : PrimeFactors(static_cast<unsigned>(d))) {
    Poly g = poly::GcdModP(monic, poly::SubModP(frob[d / r], x, p), p);
    if (poly::Degree(g) != 0) return false;
  }
  return true;
}

mpz_class Pow(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

}  // namespace

unsigned EulerPhi(unsigned n) {
  unsigned result = n;
  for (unsigned f : PrimeFactors(n)) result = result / f * (f - 1);
  return result;
}

Poly CyclotomicPoly(unsigned n) {
  if (n == 0) throw Error(ErrorCode::kInvalidParams, "cyclotomic index must be >= 1");
  // x^k - 1 = prod_{d | k} Phi_d; build Phi_k for every divisor k of n in
  // increasing order, peeling off the already-known proper divisors.
  std::map<unsigned, Poly> known;
  for (unsigned k = 1; k <= n; ++k) {
    if (n % k != 0) continue;
    Poly acc = poly::Sub(poly::Monomial(static_cast<int>(k)), Poly{1});
    for (const auto& [d, phi_d] : known) {
      if (k % d == 0) acc = poly::ExactDivide(acc, phi_d);
    }
    known.emplace(k, std::move(acc));
  }
  return known.at(n);
}

mpz_class Resultant(const Poly& a_in, const Poly& b_in) {
  Poly a = poly::Trimmed(a_in);
  Poly b = poly::Trimmed(b_in);
  if (poly::IsZero(a) || poly::IsZero(b)) return 0;

  // Subresultant algorithm for the resultant over a UFD.
  mpz_class ca = poly::Content(a);
  mpz_class cb = poly::Content(b);
  for (auto& c : a) c /= ca;
  for (auto& c : b) c /= cb;
  mpz_class g = 1, h = 1, sign = 1;
  mpz_class t = Pow(ca, poly::Degree(b)) * Pow(cb, poly::Degree(a));
  if (poly::Degree(a) < poly::Degree(b)) {
    std::swap(a, b);
    if ((poly::Degree(a) & 1) && (poly::Degree(b) & 1)) sign = -1;
  }

  while (poly::Degree(b) > 0) {
    const int da = poly::Degree(a);
    const int db = poly::Degree(b);
    const unsigned long delta = static_cast<unsigned long>(da - db);
    if ((da & 1) && (db & 1)) sign = -sign;
    Poly r = poly::PseudoRem(a, b);
    a = std::move(b);
    mpz_class divisor = g * Pow(h, delta);
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
    b = std::move(r);
    g = poly::Lead(a);
    if (delta == 0) {
      // h stays.
    } else {
      mpz_class num = Pow(g, delta);
      mpz_class den = Pow(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
  }

  const int da = poly::Degree(a);
  if (da == 0) return sign * t;
  mpz_class lb = poly::IsZero(b) ? mpz_class(0) : b[0];
  mpz_class num = Pow(lb, static_cast<unsigned long>(da));
  mpz_class den = Pow(h, static_cast<unsigned long>(da - 1));
  mpz_class final_h;
  mpz_divexact(final_h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return sign * t * final_h;
}

mpz_class Discriminant(const Poly& f_in) {
  Poly f = poly::Trimmed(f_in);
  const int d = poly::Degree(f);
  if (d < 1) throw Error(ErrorCode::kInvalidParams, "discriminant needs degree >= 1");
  if (d == 1) return 1;
  mpz_class res = Resultant(f, poly::Derivative(f));
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), poly::Lead(f).get_mpz_t());
  const long pairs = static_cast<long>(d) * (d - 1) / 2;
  if (pairs & 1) out = -out;
  return out;
}

bool IsSquare(const mpz_class& z) {
  if (z < 0) return false;
  return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

bool IsPrime(const mpz_class& n) {
  if (n < 2) return false;
  if (n < kTrialDivisionLimit) {
    uint64_t v = n.get_ui();
    for (uint64_t f = 2; f * f <= v; ++f) {
      if (v % f == 0) return false;
    }
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), kMillerRabinRounds) > 0;
}

bool RabinIrreducible(const Poly& f, const mpz_class& p) {
  if (p < 2) throw Error(ErrorCode::kInvalidParams, "Rabin test needs a prime modulus");
  if (poly::Degree(f) < 1) return false;
  if (Mod(poly::Lead(f), p) == 0) {
    throw Error(ErrorCode::kInvalidParams, "leading coefficient vanishes mod p");
  }
  if (p < (mpz_class(1) << 31)) return RabinSmall(f, p.get_ui());
  return RabinGeneral(f, p);
}

FieldSearchReport FindFieldPrime(unsigned n, const FieldSearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  FieldSearchReport report;
  report.n = n;
  Poly phi = CyclotomicPoly(n);
  report.degree = static_cast<unsigned>(poly::Degree(phi));
  report.discriminant = Discriminant(phi);
  report.disc_is_square = IsSquare(report.discriminant);
  report.primality_rounds = kMillerRabinRounds;

  auto finish = [&] {
    report.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  };

  // A linear Phi_n is irreducible everywhere even though its discriminant (1)
  // is a square, so the guard only applies from degree 2 on.
  if (report.degree >= 2 && report.disc_is_square) {
    finish();
    throw Error(ErrorCode::kSquareDiscriminant,
                "disc(Phi_" + std::to_string(n) + ") = " + report.discriminant.get_str() +
                    " is a square; Phi_n is reducible modulo every prime");
  }

  auto consider = [&](uint64_t candidate) {
    report.primes_tested.push_back(candidate);
    if (RabinIrreducible(phi, candidate)) {
      report.irreducible_primes.push_back(candidate);
      if (report.chosen_p == 0) report.chosen_p = candidate;
      return true;
    }
    return false;
  };

  if (options.candidates) {
    for (uint64_t c : *options.candidates) {
      if (c <= options.lower_bound || !IsPrime(c)) continue;
      if (consider(c) && !options.collect_all) break;
    }
  } else {
    mpz_class candidate = options.lower_bound;
    for (;;) {
      mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
      if (candidate > options.upper_limit) break;
      if (consider(candidate.get_ui()) && !options.collect_all) break;
    }
  }
  finish();
  if (report.chosen_p == 0) {
    throw Error(ErrorCode::kSearchExhausted,
                "no prime in range makes Phi_" + std::to_string(n) + " irreducible");
  }
  return report;
}

FieldContext::FieldContext(mpz_class p, Poly modulus)
    : p_(std::move(p)), modulus_(std::move(modulus)) {
  degree_ = static_cast<unsigned>(poly::Degree(modulus_));
}

std::shared_ptr<const FieldContext> FieldContext::Create(const mpz_class& p, Poly modulus) {
  if (!IsPrime(p)) throw Error(ErrorCode::kInvalidParams, p.get_str() + " is not prime");
  Poly reduced = poly::ReduceModP(modulus, p);
  if (poly::Degree(reduced) < 1 || !RabinIrreducible(reduced, p)) {
    throw Error(ErrorCode::kInvalidParams,
                "modulus " + poly::ToString(modulus) + " is not irreducible mod " + p.get_str());
  }
  // Normalize to monic so reductions never need an inverse.
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), poly::Lead(reduced).get_mpz_t(), p.get_mpz_t());
  for (auto& c : reduced) c = Mod(c * inv, p);
  return std::shared_ptr<const FieldContext>(new FieldContext(p, std::move(reduced)));
}

std::shared_ptr<const FieldContext> FieldContext::Cyclotomic(unsigned n, const mpz_class& p) {
  return Create(p, CyclotomicPoly(n));
}

FieldElement::FieldElement(std::shared_ptr<const FieldContext> ctx, const Poly& coeffs)
    : ctx_(std::move(ctx)) {
  coeffs_ = poly::RemModP(coeffs, ctx_->modulus(), ctx_->p());
}

FieldElement FieldElement::Zero(std::shared_ptr<const FieldContext> ctx) {
  return FieldElement(std::move(ctx), {});
}

FieldElement FieldElement::One(std::shared_ptr<const FieldContext> ctx) {
  return FieldElement(std::move(ctx), {1});
}

FieldElement FieldElement::Constant(std::shared_ptr<const FieldContext> ctx, const mpz_class& c) {
  return FieldElement(std::move(ctx), {c});
}

Poly FieldElement::Dense() const {
  Poly out = coeffs_;
  out.resize(ctx_->degree(), 0);
  return out;
}

void FieldElement::CheckSameContext(const FieldElement& other) const {
  if (ctx_ != other.ctx_ &&
      (ctx_->p() != other.ctx_->p() || ctx_->modulus() != other.ctx_->modulus())) {
    throw Error(ErrorCode::kKeyContextMismatch, "field elements from different fields");
  }
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
  CheckSameContext(other);
  return FieldElement(ctx_, poly::AddModP(coeffs_, other.coeffs_, ctx_->p()));
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
  CheckSameContext(other);
  return FieldElement(ctx_, poly::SubModP(coeffs_, other.coeffs_, ctx_->p()));
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
  CheckSameContext(other);
  return FieldElement(ctx_, poly::MulMod(coeffs_, other.coeffs_, ctx_->modulus(), ctx_->p()));
}

FieldElement FieldElement::operator-() const {
  return FieldElement(ctx_, poly::ReduceModP(poly::Neg(coeffs_), ctx_->p()));
}

bool FieldElement::operator==(const FieldElement& other) const {
  CheckSameContext(other);
  return coeffs_ == other.coeffs_;
}

FieldElement FieldElement::Inverse() const {
  if (IsZero()) throw Error(ErrorCode::kZeroInverse, "zero has no inverse");
  return FieldElement(ctx_, poly::InverseMod(coeffs_, ctx_->modulus(), ctx_->p()));
}

}  // namespace hequery::field
