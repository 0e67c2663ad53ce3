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

#include "hequery/common.h"

#include <cmath>
#include <limits>

namespace hequery {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kEmptyPublicKey: return "EmptyPublicKey";
    case ErrorCode::kNonInvertibleExhausted: return "NonInvertibleExhausted";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kZeroInverse: return "ZeroInverse";
    case ErrorCode::kSquareDiscriminant: return "SquareDiscriminant";
    case ErrorCode::kSearchExhausted: return "SearchExhausted";
    case ErrorCode::kWidthOverflow: return "WidthOverflow";
    case ErrorCode::kWidthMismatch: return "WidthMismatch";
    case ErrorCode::kCounterOverflow: return "CounterOverflow";
    case ErrorCode::kKeyContextMismatch: return "KeyContextMismatch";
    case ErrorCode::kFieldTooSmall: return "FieldTooSmall";
    case ErrorCode::kDegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::kUnsupportedOperation: return "UnsupportedOperation";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

mpz_class Rng::Bits(unsigned bits) {
  mpz_class out = 0;
  unsigned remaining = bits;
  while (remaining > 0) {
    unsigned take = remaining >= 64 ? 64 : remaining;
    uint64_t word = Next();
    if (take < 64) word &= (uint64_t{1} << take) - 1;
    mpz_class chunk;
    mpz_import(chunk.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
    out <<= take;
    out += chunk;
    remaining -= take;
  }
  return out;
}

mpz_class Rng::Below(const mpz_class& bound) {
  if (bound <= 0) throw Error(ErrorCode::kInvalidParams, "Below() needs a positive bound");
  // Rejection sampling on the bit length of bound.
  unsigned bits = static_cast<unsigned>(mpz_sizeinbase(bound.get_mpz_t(), 2));
  for (;;) {
    mpz_class candidate = Bits(bits);
    if (candidate < bound) return candidate;
  }
}

int64_t Rng::Uniform(int64_t lo, int64_t hi) {
  std::uniform_int_distribution<int64_t> dist(lo, hi);
  return dist(engine_);
}

int64_t Rng::RoundedGaussian(double stddev) {
  if (stddev <= 0) return 0;
  std::normal_distribution<double> dist(0.0, stddev);
  return static_cast<int64_t>(std::llround(dist(engine_)));
}

std::string ToHex(const mpz_class& value) { return value.get_str(16); }

mpz_class FromHex(std::string_view hex) {
  std::string text(hex);
  if (text.rfind("0x", 0) == 0) text = text.substr(2);
  mpz_class out;
  if (text.empty() || out.set_str(text, 16) != 0) {
    throw Error(ErrorCode::kParse, "bad hex integer '" + std::string(hex) + "'");
  }
  return out;
}

double Log2(const mpz_class& value) {
  if (value == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

mpz_class Mod(const mpz_class& value, const mpz_class& modulus) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

mpz_class CenteredMod(const mpz_class& value, const mpz_class& modulus) {
  mpz_class r = Mod(value, modulus);
  // r in [0, m); move (m/2, m) down so the result lies in (-m/2, m/2].
  if (2 * r > modulus) r -= modulus;
  return r;
}

mpz_class RoundDiv(const mpz_class& num, const mpz_class& den) {
  mpz_class quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  // rem in [0, den)
  mpz_class twice = 2 * rem;
  int cmp = mpz_cmp(twice.get_mpz_t(), den.get_mpz_t());
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(quot.get_mpz_t()))) quot += 1;
  return quot;
}

}  // namespace hequery
