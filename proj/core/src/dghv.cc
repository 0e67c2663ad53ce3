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

#include "hequery/dghv.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

namespace hequery::dghv {
namespace {

using metering::Op;

void CheckBit(int bit) {
  if (bit != 0 && bit != 1) {
    throw Error(ErrorCode::kInvalidParams, "plaintext must be a bit, got " + std::to_string(bit));
  }
}

mpz_class PowerOfTwo(unsigned e) {
  mpz_class out = 1;
  out <<= e;
  return out;
}

// Uniform odd integer with exactly `bits` bits.
mpz_class OddWithExactBits(unsigned bits, Rng& rng) {
  if (bits < 2) throw Error(ErrorCode::kInvalidParams, "secret needs at least 2 bits");
  mpz_class p = PowerOfTwo(bits - 1);
  if (bits > 2) p += rng.Bits(bits - 2) << 1;
  p += 1;
  return p;
}

}  // namespace

DghvParams DghvParams::FromLambda(unsigned lambda, unsigned pubkey_size) {
  DghvParams params;
  params.lambda = lambda;
  params.noise_bits = lambda;
  params.secret_bits = lambda * lambda;
  unsigned long q = 1;
  for (int i = 0; i < 5; ++i) q *= lambda;
  params.rand_bits = static_cast<unsigned>(q);
  params.pubkey_size = pubkey_size;
  return params;
}

void DghvParams::Validate() const {
  if (noise_bits < 1 || secret_bits < 1 || rand_bits < 1) {
    throw Error(ErrorCode::kInvalidParams, "N, P, Q must all be >= 1");
  }
  if (!(noise_bits < secret_bits && secret_bits < rand_bits)) {
    throw Error(ErrorCode::kInvalidParams,
                "need N < P < Q, got N=" + std::to_string(noise_bits) +
                    " P=" + std::to_string(secret_bits) + " Q=" + std::to_string(rand_bits));
  }
  if (pubkey_size < 1) throw Error(ErrorCode::kInvalidParams, "pubkey_size must be >= 1");
}

uint64_t PublicKey::Fingerprint() const {
  std::string material = x0.get_str(16);
  for (const auto& z : zeros) material += ":" + z.value.get_str(16);
  return std::hash<std::string>{}(material);
}

KeyPair KeyGen(const DghvParams& params, Rng& rng) {
  params.Validate();
  KeyPair keys;
  keys.params = params;
  keys.sk.p = OddWithExactBits(params.secret_bits, rng);
  const mpz_class& p = keys.sk.p;

  // Public bound on 2r for r < 2^N.
  const mpz_class zero_bound = 2 * (PowerOfTwo(params.noise_bits) - 1);
  keys.pk.zeros.reserve(params.pubkey_size);
  for (unsigned i = 0; i < params.pubkey_size; ++i) {
    mpz_class r = rng.Bits(params.noise_bits);
    mpz_class q = rng.Bits(params.rand_bits);
    keys.pk.zeros.push_back(BitCiphertext{2 * r + p * q, zero_bound});
  }
  mpz_class q0 = PowerOfTwo(params.rand_bits - 1) + rng.Bits(params.rand_bits - 1);
  keys.pk.x0 = p * q0;
  keys.pk.secret_bits = params.secret_bits;
  keys.pk.noise_bits = params.noise_bits;
  return keys;
}

BitCiphertext EncryptSymWith(int bit, const SecretKey& sk, const mpz_class& r,
                             const mpz_class& q) {
  CheckBit(bit);
  return BitCiphertext{bit + 2 * r + sk.p * q, 2 * r + 1};
}

BitCiphertext EncryptSym(int bit, const SecretKey& sk, const DghvParams& params, Rng& rng) {
  mpz_class r = rng.Bits(params.noise_bits);
  mpz_class q = rng.Bits(params.rand_bits);
  return EncryptSymWith(bit, sk, r, q);
}

BitCiphertext EncryptPubWithSubset(int bit, const PublicKey& pk, std::span<const size_t> subset) {
  CheckBit(bit);
  if (pk.zeros.empty()) throw Error(ErrorCode::kEmptyPublicKey, "public key has no elements");
  BitCiphertext c{bit, 1};
  for (size_t idx : subset) {
    if (idx >= pk.zeros.size()) throw Error(ErrorCode::kInvalidParams, "subset index out of range");
    c.value += pk.zeros[idx].value;
    c.noise_bound += pk.zeros[idx].noise_bound;
  }
  return c;
}

BitCiphertext EncryptPub(int bit, const PublicKey& pk, Rng& rng) {
  if (pk.zeros.empty()) throw Error(ErrorCode::kEmptyPublicKey, "public key has no elements");
  std::vector<size_t> subset;
  while (subset.empty()) {
    for (size_t i = 0; i < pk.zeros.size(); ++i) {
      if (rng.Next() & 1) subset.push_back(i);
    }
  }
  return EncryptPubWithSubset(bit, pk, subset);
}

BitCiphertext Trivial(int bit) {
  CheckBit(bit);
  return BitCiphertext{bit, bit};
}

mpz_class ExactNoise(const BitCiphertext& c, const SecretKey& sk) {
  return CenteredMod(c.value, sk.p);
}

int Decrypt(const BitCiphertext& c, const SecretKey& sk) {
  // p is odd, so (-p/2, p/2] and (-p/2, p/2) coincide.
  mpz_class residue = CenteredMod(c.value, sk.p);
  return mpz_odd_p(residue.get_mpz_t()) ? 1 : 0;
}

BitCiphertext HomAdd(const BitCiphertext& a, const BitCiphertext& b) {
  return BitCiphertext{a.value + b.value, a.noise_bound + b.noise_bound};
}

BitCiphertext HomMul(const BitCiphertext& a, const BitCiphertext& b) {
  return BitCiphertext{a.value * b.value, a.noise_bound * b.noise_bound};
}

BitCiphertext AddPlain(const BitCiphertext& c, unsigned k) {
  return BitCiphertext{c.value + k, c.noise_bound + k};
}

BitCiphertext MulPlain(const BitCiphertext& c, unsigned k) {
  return BitCiphertext{c.value * k, c.noise_bound * k};
}

double NoiseBudget(const BitCiphertext& c, const SecretKey& sk) {
  const double half_p = Log2(sk.p) - 1.0;
  if (c.noise_bound == 0) return half_p;
  return half_p - Log2(c.noise_bound);
}

double NoiseBudget(const BitCiphertext& c, const DghvParams& params) {
  const double half_p = static_cast<double>(params.secret_bits) - 2.0;
  if (c.noise_bound == 0) return half_p;
  return half_p - Log2(c.noise_bound);
}

unsigned MinSecretBits(const mpz_class& max_bound, unsigned margin_bits) {
  // bound < 2^b  with b = bitlength(bound); need b <= P - 2.
  unsigned b = max_bound <= 0 ? 1 : static_cast<unsigned>(mpz_sizeinbase(max_bound.get_mpz_t(), 2));
  return b + 2 + margin_bits;
}

Evaluator::Evaluator(const PublicKey& pk, metering::OpObserver* observer)
    : x0_(pk.x0), secret_bits_(pk.secret_bits), observer_(observer) {}

Evaluator::Evaluator(mpz_class x0, unsigned secret_bits, metering::OpObserver* observer)
    : x0_(std::move(x0)), secret_bits_(secret_bits), observer_(observer) {}

BitCiphertext Evaluator::Finish(BitCiphertext c) {
  if (x0_ > 0 && c.value >= x0_) mpz_mod(c.value.get_mpz_t(), c.value.get_mpz_t(), x0_.get_mpz_t());
  if (c.noise_bound > max_bound_) max_bound_ = c.noise_bound;
  if (secret_bits_ >= 2 && !overflow_) {
    if (mpz_sizeinbase(c.noise_bound.get_mpz_t(), 2) > secret_bits_ - 2 && c.noise_bound > 0) {
      overflow_ = true;
    }
  }
  return c;
}

BitCiphertext Evaluator::Add(const BitCiphertext& a, const BitCiphertext& b) {
  metering::Record(observer_, Op::kAdd);
  return Finish(HomAdd(a, b));
}

BitCiphertext Evaluator::Mul(const BitCiphertext& a, const BitCiphertext& b) {
  metering::Record(observer_, Op::kMul);
  return Finish(HomMul(a, b));
}

BitCiphertext Evaluator::AddPlain(const BitCiphertext& c, unsigned k) {
  metering::Record(observer_, Op::kPlainAdd);
  return Finish(dghv::AddPlain(c, k));
}

BitCiphertext Evaluator::MulPlain(const BitCiphertext& c, unsigned k) {
  metering::Record(observer_, Op::kPlainMul);
  return Finish(dghv::MulPlain(c, k));
}

std::vector<BitCiphertext> Evaluator::BinaryAdd(std::span<const BitCiphertext> a,
                                                 std::span<const BitCiphertext> b,
                                                 size_t max_width) {
  const size_t width = std::max(a.size(), b.size());
  const size_t out_width = std::min(width + 1, max_width);
  std::vector<BitCiphertext> out;
  out.reserve(out_width);
  std::optional<BitCiphertext> carry;
  for (size_t i = 0; i < width && out.size() < out_width; ++i) {
    const BitCiphertext* x = i < a.size() ? &a[i] : nullptr;
    const BitCiphertext* y = i < b.size() ? &b[i] : nullptr;
    if (x == nullptr) std::swap(x, y);
    const bool need_carry = out.size() + 1 < out_width;
    if (y != nullptr) {
      // Full position: sum = x ^ y ^ c, carry = xy ^ c(x ^ y).
      BitCiphertext xy_sum = Add(*x, *y);
      std::optional<BitCiphertext> next;
      if (need_carry) next = Mul(*x, *y);
      if (carry) {
        out.push_back(Add(xy_sum, *carry));
        if (need_carry) next = Add(*next, Mul(*carry, xy_sum));
      } else {
        out.push_back(xy_sum);
      }
      carry = std::move(next);
    } else if (carry) {
      // Half adder against the running carry.
      out.push_back(Add(*x, *carry));
      if (need_carry) carry = Mul(*x, *carry);
      else carry.reset();
    } else {
      out.push_back(*x);
    }
  }
  if (out.size() < out_width) out.push_back(carry ? *carry : Trivial(0));
  while (out.size() < out_width) out.push_back(Trivial(0));
  return out;
}

std::vector<BitCiphertext> EncryptBitsPub(std::span<const uint8_t> bits, const PublicKey& pk,
                                          Rng& rng, metering::OpObserver* observer) {
  std::vector<BitCiphertext> out;
  out.reserve(bits.size());
  for (uint8_t b : bits) {
    metering::Record(observer, Op::kEnc);
    out.push_back(EncryptPub(b, pk, rng));
  }
  return out;
}

std::vector<uint8_t> DecryptBits(std::span<const BitCiphertext> bits, const SecretKey& sk) {
  std::vector<uint8_t> out;
  out.reserve(bits.size());
  for (const auto& c : bits) out.push_back(static_cast<uint8_t>(Decrypt(c, sk)));
  return out;
}

uint64_t DecryptUnsigned(std::span<const BitCiphertext> bits, const SecretKey& sk) {
  uint64_t value = 0;
  for (size_t i = 0; i < bits.size() && i < 64; ++i) {
    value |= static_cast<uint64_t>(Decrypt(bits[i], sk)) << i;
  }
  return value;
}

}  // namespace hequery::dghv
