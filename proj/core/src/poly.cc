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

#include "hequery/poly.h"

#include <algorithm>
#include <sstream>

#include "hequery/common.h"

namespace hequery::poly {
namespace {

const mpz_class kZero = 0;

mpz_class InverseModP(const mpz_class& a, const mpz_class& p) {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0) {
    throw Error(ErrorCode::kZeroInverse, "coefficient not invertible mod p");
  }
  return inv;
}

}  // namespace

void Trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly Trimmed(Poly a) {
  Trim(a);
  return a;
}

int Degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i] != 0) return i;
  }
  return -1;
}

const mpz_class& Lead(const Poly& a) {
  int d = Degree(a);
  return d < 0 ? kZero : a[d];
}

bool IsZero(const Poly& a) { return Degree(a) < 0; }

Poly Monomial(int degree, const mpz_class& coeff) {
  Poly out(degree + 1, 0);
  out[degree] = coeff;
  return Trimmed(std::move(out));
}

Poly Add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return Trimmed(std::move(out));
}

Poly Sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return Trimmed(std::move(out));
}

Poly Neg(const Poly& a) {
  Poly out = a;
  for (auto& c : out) c = -c;
  return out;
}

Poly Mul(const Poly& a, const Poly& b) {
  if (IsZero(a) || IsZero(b)) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return Trimmed(std::move(out));
}

Poly Scale(const Poly& a, const mpz_class& k) {
  Poly out = a;
  for (auto& c : out) c *= k;
  return Trimmed(std::move(out));
}

Poly Derivative(const Poly& a) {
  if (a.size() <= 1) return {};
  Poly out(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * static_cast<unsigned long>(i);
  return Trimmed(std::move(out));
}

void DivRemMonic(const Poly& a, const Poly& divisor, Poly* quot, Poly* rem) {
  int db = Degree(divisor);
  if (db < 0 || Lead(divisor) != 1) {
    throw Error(ErrorCode::kInvalidParams, "DivRemMonic needs a monic divisor");
  }
  Poly r = Trimmed(a);
  int da = Degree(r);
  Poly q(da >= db ? da - db + 1 : 0, 0);
  for (int i = da; i >= db; --i) {
    if (r[i] == 0) continue;
    mpz_class coeff = r[i];
    q[i - db] = coeff;
    for (int j = 0; j <= db; ++j) {
      mpz_submul(r[i - db + j].get_mpz_t(), coeff.get_mpz_t(), divisor[j].get_mpz_t());
    }
  }
  Trim(r);
  if (quot != nullptr) *quot = Trimmed(std::move(q));
  if (rem != nullptr) *rem = std::move(r);
}

Poly RemMonic(const Poly& a, const Poly& divisor) {
  Poly r;
  DivRemMonic(a, divisor, nullptr, &r);
  return r;
}

Poly ExactDivide(const Poly& a, const Poly& divisor) {
  const mpz_class& lead = Lead(divisor);
  if (lead != 1 && lead != -1) {
    throw Error(ErrorCode::kInvalidParams, "ExactDivide needs a unit leading coefficient");
  }
  Poly monic = lead == 1 ? divisor : Neg(divisor);
  Poly q, r;
  DivRemMonic(a, Trimmed(monic), &q, &r);
  if (!IsZero(r)) throw Error(ErrorCode::kInvalidParams, "division is not exact");
  return lead == 1 ? q : Neg(q);
}

mpz_class Content(const Poly& a) {
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

Poly PseudoRem(const Poly& a, const Poly& b) {
  int db = Degree(b);
  Poly r = Trimmed(a);
  int da = Degree(r);
  if (da < db) return r;
  const mpz_class lb = Lead(b);
  // One multiplication by lb per step, da - db + 1 steps in total.
  for (int i = da; i >= db; --i) {
    mpz_class coeff = i < static_cast<int>(r.size()) ? r[i] : mpz_class(0);
    for (auto& c : r) c *= lb;
    if (coeff != 0) {
      for (int j = 0; j <= db; ++j) {
        mpz_submul(r[i - db + j].get_mpz_t(), coeff.get_mpz_t(), b[j].get_mpz_t());
      }
    }
  }
  Trim(r);
  return r;
}

mpz_class Evaluate(const Poly& a, const mpz_class& x) {
  mpz_class acc = 0;
  for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

std::string ToString(const Poly& a) {
  if (IsZero(a)) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = Degree(a); i >= 0; --i) {
    if (a[i] == 0) continue;
    mpz_class c = a[i];
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    mpz_class mag = abs(c);
    if (mag != 1 || i == 0) out << mag.get_str();
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

Poly ReduceModP(const Poly& a, const mpz_class& p) {
  Poly out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = Mod(a[i], p);
  return Trimmed(std::move(out));
}

Poly AddModP(const Poly& a, const Poly& b, const mpz_class& p) {
  return ReduceModP(Add(a, b), p);
}

Poly SubModP(const Poly& a, const Poly& b, const mpz_class& p) {
  return ReduceModP(Sub(a, b), p);
}

Poly MulModP(const Poly& a, const Poly& b, const mpz_class& p) {
  return ReduceModP(Mul(a, b), p);
}

void DivRemModP(const Poly& a, const Poly& divisor, const mpz_class& p,
                Poly* quot, Poly* rem) {
  Poly b = ReduceModP(divisor, p);
  int db = Degree(b);
  if (db < 0) throw Error(ErrorCode::kZeroInverse, "division by zero polynomial");
  mpz_class inv_lead = InverseModP(b[db], p);
  Poly r = ReduceModP(a, p);
  int da = Degree(r);
  Poly q(da >= db ? da - db + 1 : 0, 0);
  for (int i = da; i >= db; --i) {
    if (r[i] == 0) continue;
    mpz_class coeff = Mod(r[i] * inv_lead, p);
    q[i - db] = coeff;
    for (int j = 0; j <= db; ++j) {
      mpz_submul(r[i - db + j].get_mpz_t(), coeff.get_mpz_t(), b[j].get_mpz_t());
      mpz_mod(r[i - db + j].get_mpz_t(), r[i - db + j].get_mpz_t(), p.get_mpz_t());
    }
  }
  Trim(r);
  if (quot != nullptr) *quot = Trimmed(std::move(q));
  if (rem != nullptr) *rem = std::move(r);
}

Poly RemModP(const Poly& a, const Poly& divisor, const mpz_class& p) {
  Poly r;
  DivRemModP(a, divisor, p, nullptr, &r);
  return r;
}

Poly MulMod(const Poly& a, const Poly& b, const Poly& modulus, const mpz_class& p) {
  return RemModP(Mul(a, b), modulus, p);
}

Poly PowMod(const Poly& base, const mpz_class& exponent, const Poly& modulus,
            const mpz_class& p) {
  Poly result = RemModP(Poly{1}, modulus, p);
  Poly b = RemModP(base, modulus, p);
  size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  if (exponent == 0) return result;
  for (size_t i = bits; i-- > 0;) {
    result = MulMod(result, result, modulus, p);
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = MulMod(result, b, modulus, p);
  }
  return result;
}

Poly GcdModP(const Poly& a, const Poly& b, const mpz_class& p) {
  Poly x = ReduceModP(a, p);
  Poly y = ReduceModP(b, p);
  while (!IsZero(y)) {
    Poly r = RemModP(x, y, p);
    x = std::move(y);
    y = std::move(r);
  }
  if (IsZero(x)) return x;
  mpz_class inv = InverseModP(Lead(x), p);
  for (auto& c : x) c = Mod(c * inv, p);
  return x;
}

Poly InverseMod(const Poly& a, const Poly& modulus, const mpz_class& p) {
  // Invariant: s_i * a == r_i  (mod modulus, p).
  Poly r0 = ReduceModP(modulus, p);
  Poly r1 = RemModP(a, modulus, p);
  Poly s0;
  Poly s1{1};
  while (!IsZero(r1)) {
    Poly q, r;
    DivRemModP(r0, r1, p, &q, &r);
    Poly s = SubModP(s0, MulModP(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (Degree(r0) != 0) {
    throw Error(ErrorCode::kZeroInverse, "element shares a factor with the modulus");
  }
  mpz_class inv = InverseModP(r0[0], p);
  Poly out(s0.size());
  for (size_t i = 0; i < s0.size(); ++i) out[i] = Mod(s0[i] * inv, p);
  return RemModP(out, modulus, p);
}

}  // namespace hequery::poly
