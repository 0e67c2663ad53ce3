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

// Cyclotomic polynomials and the finite fields Z_p[x]/<Phi_n> they induce.
//
// The pipeline is: build Phi_n exactly, compute its discriminant through the
// resultant with its derivative, reject indices whose discriminant is a
// perfect square (Phi_n then splits modulo every prime), and otherwise walk
// primes in ascending order running Rabin's irreducibility test until one
// qualifies. FieldContext/FieldElement provide arithmetic, including
// inversion, in the resulting field.

#ifndef HEQUERY_CYCLOTOMIC_H_
#define HEQUERY_CYCLOTOMIC_H_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hequery/common.h"
#include "hequery/poly.h"

namespace hequery::field {

using poly::Poly;

// Phi_n with exact integer coefficients, by dividing x^n - 1 by Phi_d for
// every proper divisor d of n.
Poly CyclotomicPoly(unsigned n);

// Euler's totient; equals the degree of Phi_n.
unsigned EulerPhi(unsigned n);

// Res(a, b) over Z via the subresultant remainder sequence.
mpz_class Resultant(const Poly& a, const Poly& b);

// (-1)^(d(d-1)/2) * Res(f, f') / lc(f). Zero when f has a repeated root.
mpz_class Discriminant(const Poly& f);

bool IsSquare(const mpz_class& z);

// True iff f reduced mod p is irreducible over Z_p (p prime, f of positive
// degree with lc(f) not divisible by p). Deterministic Rabin test.
bool RabinIrreducible(const Poly& f, const mpz_class& p);

struct FieldSearchOptions {
  // Only primes strictly greater than this qualify.
  uint64_t lower_bound = 0;
  // Search stops (SearchExhausted) once primes exceed this value.
  uint64_t upper_limit = 1'000'000;
  // When set, exactly these candidates are tried, in order.
  std::optional<std::vector<uint64_t>> candidates;
  // Keep testing after the first hit (used for full irreducibility scans).
  bool collect_all = false;
};

struct FieldSearchReport {
  unsigned n = 0;
  unsigned degree = 0;
  mpz_class discriminant;
  bool disc_is_square = false;
  std::vector<uint64_t> primes_tested;
  std::vector<uint64_t> irreducible_primes;
  uint64_t chosen_p = 0;
  double elapsed_ms = 0;
  // Primality of candidates is decided by trial division below 2^20 and a
  // fixed-round Miller-Rabin above; recorded for the report.
  int primality_rounds = 0;
};

// Finds the smallest prime (above options.lower_bound) modulo which Phi_n is
// irreducible. Throws kSquareDiscriminant when disc(Phi_n) is a square and
// deg(Phi_n) > 1, kSearchExhausted when no candidate qualifies.
FieldSearchReport FindFieldPrime(unsigned n, const FieldSearchOptions& options = {});

// Z_p[x]/<modulus> with modulus irreducible mod p.
class FieldContext {
 public:
  // Verifies primality of p and irreducibility of modulus mod p; throws
  // kInvalidParams otherwise.
  static std::shared_ptr<const FieldContext> Create(const mpz_class& p, Poly modulus);
  static std::shared_ptr<const FieldContext> Cyclotomic(unsigned n, const mpz_class& p);

  const mpz_class& p() const { return p_; }
  const Poly& modulus() const { return modulus_; }
  unsigned degree() const { return degree_; }

 private:
  FieldContext(mpz_class p, Poly modulus);

  mpz_class p_;
  Poly modulus_;
  unsigned degree_;
};

class FieldElement {
 public:
  FieldElement(std::shared_ptr<const FieldContext> ctx, const Poly& coeffs);

  static FieldElement Zero(std::shared_ptr<const FieldContext> ctx);
  static FieldElement One(std::shared_ptr<const FieldContext> ctx);
  static FieldElement Constant(std::shared_ptr<const FieldContext> ctx, const mpz_class& c);

  const std::shared_ptr<const FieldContext>& context() const { return ctx_; }

  // Canonical coefficients, trimmed (zero element is empty).
  const Poly& coeffs() const { return coeffs_; }

  // Coefficients padded to the field degree.
  Poly Dense() const;

  bool IsZero() const { return poly::IsZero(coeffs_); }

  FieldElement operator+(const FieldElement& other) const;
  FieldElement operator-(const FieldElement& other) const;
  FieldElement operator*(const FieldElement& other) const;
  FieldElement operator-() const;
  bool operator==(const FieldElement& other) const;
  bool operator!=(const FieldElement& other) const { return !(*this == other); }

  // Throws kZeroInverse for zero.
  FieldElement Inverse() const;

 private:
  void CheckSameContext(const FieldElement& other) const;

  std::shared_ptr<const FieldContext> ctx_;
  Poly coeffs_;
};

bool IsPrime(const mpz_class& n);

}  // namespace hequery::field

#endif  // HEQUERY_CYCLOTOMIC_H_
