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

// Dense univariate polynomials with arbitrary-precision coefficients,
// little-endian by degree. The zero polynomial is the empty vector once
// trimmed. Two families of routines live here: exact arithmetic over Z, and
// arithmetic over Z_p for a prime p (gcd, inverse, powering modulo a monic
// polynomial).

#ifndef HEQUERY_POLY_H_
#define HEQUERY_POLY_H_

#include <gmpxx.h>

#include <string>
#include <vector>

namespace hequery::poly {

using Poly = std::vector<mpz_class>;

// Drops high zero coefficients.
void Trim(Poly& a);
Poly Trimmed(Poly a);

// Degree of a trimmed view; -1 for the zero polynomial.
int Degree(const Poly& a);
const mpz_class& Lead(const Poly& a);
bool IsZero(const Poly& a);

Poly Monomial(int degree, const mpz_class& coeff = 1);

// --- Exact arithmetic over Z -------------------------------------------

Poly Add(const Poly& a, const Poly& b);
Poly Sub(const Poly& a, const Poly& b);
Poly Neg(const Poly& a);
Poly Mul(const Poly& a, const Poly& b);
Poly Scale(const Poly& a, const mpz_class& k);
Poly Derivative(const Poly& a);

// Division by a monic divisor over Z. Throws if divisor is not monic.
void DivRemMonic(const Poly& a, const Poly& divisor, Poly* quot, Poly* rem);
Poly RemMonic(const Poly& a, const Poly& divisor);

// Exact quotient over Z when divisor divides a and has leading coefficient
// +-1. Throws Error(kInvalidParams) on a nonzero remainder.
Poly ExactDivide(const Poly& a, const Poly& divisor);

// Content (gcd of coefficients, nonnegative) and primitive part.
mpz_class Content(const Poly& a);

// lc(b)^(deg a - deg b + 1) * a = b*q + r over Z.
Poly PseudoRem(const Poly& a, const Poly& b);

// Evaluation at an integer point (Horner).
mpz_class Evaluate(const Poly& a, const mpz_class& x);

std::string ToString(const Poly& a);

// --- Arithmetic over Z_p -----------------------------------------------

// Coefficients reduced into [0, p), trimmed.
Poly ReduceModP(const Poly& a, const mpz_class& p);

Poly AddModP(const Poly& a, const Poly& b, const mpz_class& p);
Poly SubModP(const Poly& a, const Poly& b, const mpz_class& p);
Poly MulModP(const Poly& a, const Poly& b, const mpz_class& p);

// Division over Z_p (p prime, divisor nonzero).
void DivRemModP(const Poly& a, const Poly& divisor, const mpz_class& p,
                Poly* quot, Poly* rem);
Poly RemModP(const Poly& a, const Poly& divisor, const mpz_class& p);

// a*b mod (modulus, p).
Poly MulMod(const Poly& a, const Poly& b, const Poly& modulus,
            const mpz_class& p);

// base^exponent mod (modulus, p), square-and-multiply.
Poly PowMod(const Poly& base, const mpz_class& exponent, const Poly& modulus,
            const mpz_class& p);

// Monic gcd over Z_p.
Poly GcdModP(const Poly& a, const Poly& b, const mpz_class& p);

// Inverse of a modulo (modulus, p) by the extended Euclidean algorithm.
// Throws Error(kZeroInverse) when gcd(a, modulus) != 1.
Poly InverseMod(const Poly& a, const Poly& modulus, const mpz_class& p);

}  // namespace hequery::poly

#endif  // HEQUERY_POLY_H_
