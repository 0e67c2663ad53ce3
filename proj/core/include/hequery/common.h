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

#ifndef HEQUERY_COMMON_H_
#define HEQUERY_COMMON_H_

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hequery {

enum class ErrorCode {
  kInvalidParams,
  kEmptyPublicKey,
  kNonInvertibleExhausted,
  kOverflow,
  kZeroInverse,
  kSquareDiscriminant,
  kSearchExhausted,
  kWidthOverflow,
  kWidthMismatch,
  kCounterOverflow,
  kKeyContextMismatch,
  kFieldTooSmall,
  kDegreeTooSmall,
  kUnsupportedOperation,
  kParse,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type; the code
// lets callers (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Seedable randomness source. Every randomized operation takes one of these
// explicitly, so identical seeds reproduce identical keys and ciphertexts.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, 2^bits).
  mpz_class Bits(unsigned bits);

  // Uniform integer in [0, bound). bound must be positive.
  mpz_class Below(const mpz_class& bound);

  // Uniform integer in [lo, hi].
  int64_t Uniform(int64_t lo, int64_t hi);

  // Gaussian with the given standard deviation, rounded to the nearest
  // integer.
  int64_t RoundedGaussian(double stddev);

  // Derives an independent stream; used to give sub-computations their own
  // randomness without disturbing the parent sequence.
  Rng Fork() { return Rng(Next()); }

 private:
  std::mt19937_64 engine_;
};

// Lowercase hex without prefix; negative values carry a leading '-'.
std::string ToHex(const mpz_class& value);
mpz_class FromHex(std::string_view hex);

// log2(|value|) as a double; -infinity for zero.
double Log2(const mpz_class& value);

// Representative of value mod modulus in (-modulus/2, modulus/2].
mpz_class CenteredMod(const mpz_class& value, const mpz_class& modulus);

// Nonnegative representative of value mod modulus.
mpz_class Mod(const mpz_class& value, const mpz_class& modulus);

// round(num / den) for den > 0, ties to even.
mpz_class RoundDiv(const mpz_class& num, const mpz_class& den);

}  // namespace hequery

#endif  // HEQUERY_COMMON_H_
