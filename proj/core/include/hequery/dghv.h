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

// Somewhat-homomorphic bit encryption over the integers (DGHV).
//
// A bit m is encrypted as c = m + 2r + p*q for the odd secret p. Decryption
// takes the residue of c modulo p in (-p/2, p/2) and returns its parity, so
// it succeeds while the noise m + 2r (and whatever the homomorphic ops grow
// it into) stays below p/2. Ciphertexts carry a conservative upper bound on
// that noise which is maintained without the secret key:
//
//   add:       bound(a) + bound(b)
//   mul:       bound(a) * bound(b)
//   add_plain: bound + k
//   mul_plain: bound * k
//
// The public key also holds x0 = p*q0, an exact multiple of p. The Evaluator
// reduces results modulo x0, which keeps ciphertext sizes flat without
// touching the noise.

#ifndef HEQUERY_DGHV_H_
#define HEQUERY_DGHV_H_

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "hequery/common.h"
#include "hequery/metering.h"

namespace hequery::dghv {

struct DghvParams {
  unsigned lambda = 0;       // informational when fields are overridden
  unsigned noise_bits = 0;   // N: bit-length of fresh noise r
  unsigned secret_bits = 0;  // P: bit-length of the secret p
  unsigned rand_bits = 0;    // Q: bit-length of the multipliers q
  unsigned pubkey_size = 0;  // number of encryptions of zero in pk

  // N = lambda, P = lambda^2, Q = lambda^5.
  static DghvParams FromLambda(unsigned lambda, unsigned pubkey_size = 8);

  // Throws kInvalidParams unless 1 <= N < P < Q and pubkey_size >= 1.
  void Validate() const;

  bool operator==(const DghvParams&) const = default;
};

struct BitCiphertext {
  mpz_class value;
  mpz_class noise_bound;

  bool operator==(const BitCiphertext&) const = default;
};

struct SecretKey {
  mpz_class p;
};

struct PublicKey {
  std::vector<BitCiphertext> zeros;
  // Exact multiple of p used to reduce evaluation results; 0 disables.
  mpz_class x0;
  unsigned secret_bits = 0;
  unsigned noise_bits = 0;

  // Stable fingerprint of the key material.
  uint64_t Fingerprint() const;
};

struct KeyPair {
  DghvParams params;
  SecretKey sk;
  PublicKey pk;
};

KeyPair KeyGen(const DghvParams& params, Rng& rng);

// Symmetric encryption with fresh r (N bits) and q (Q bits).
BitCiphertext EncryptSym(int bit, const SecretKey& sk, const DghvParams& params, Rng& rng);

// Symmetric encryption with caller-chosen randomness: m + 2r + p*q, noise
// bound 2r + 1.
BitCiphertext EncryptSymWith(int bit, const SecretKey& sk, const mpz_class& r,
                             const mpz_class& q);

// m plus a uniformly random nonempty subset sum of pk.zeros.
BitCiphertext EncryptPub(int bit, const PublicKey& pk, Rng& rng);

// m plus the subset sum selected by `subset` (indices into pk.zeros).
BitCiphertext EncryptPubWithSubset(int bit, const PublicKey& pk, std::span<const size_t> subset);

// Trivial encryption: value = bit, bound = bit. Used for internal padding
// and constants; not hiding.
BitCiphertext Trivial(int bit);

int Decrypt(const BitCiphertext& c, const SecretKey& sk);

// Exact centered residue of the ciphertext mod p; test-side noise probe.
mpz_class ExactNoise(const BitCiphertext& c, const SecretKey& sk);

// Plain homomorphisms on the raw integers (no reduction, no metering).
BitCiphertext HomAdd(const BitCiphertext& a, const BitCiphertext& b);
BitCiphertext HomMul(const BitCiphertext& a, const BitCiphertext& b);
BitCiphertext AddPlain(const BitCiphertext& c, unsigned k);
BitCiphertext MulPlain(const BitCiphertext& c, unsigned k);

// log2(p/2) - log2(noise_bound). Nonnegative means decryption is
// guaranteed. A zero bound reports the full log2(p/2).
double NoiseBudget(const BitCiphertext& c, const SecretKey& sk);
// Key-free variant: uses p >= 2^(P-1), i.e. log2(p/2) >= P - 2.
double NoiseBudget(const BitCiphertext& c, const DghvParams& params);

// Smallest P such that every bound up to max_bound satisfies bound < 2^(P-2)
// (hence < p/2), plus `margin_bits`.
unsigned MinSecretBits(const mpz_class& max_bound, unsigned margin_bits = 2);

// Applies the homomorphisms with x0 reduction, metering and overflow
// tracking. One evaluator belongs to one session.
class Evaluator {
 public:
  Evaluator() = default;
  Evaluator(const PublicKey& pk, metering::OpObserver* observer = nullptr);
  Evaluator(mpz_class x0, unsigned secret_bits, metering::OpObserver* observer = nullptr);

  BitCiphertext Add(const BitCiphertext& a, const BitCiphertext& b);
  BitCiphertext Mul(const BitCiphertext& a, const BitCiphertext& b);
  BitCiphertext AddPlain(const BitCiphertext& c, unsigned k);
  BitCiphertext MulPlain(const BitCiphertext& c, unsigned k);

  // Ripple-carry addition of little-endian encrypted bit vectors. The result
  // has width max(|a|, |b|) + 1, or max_width when that is smaller (the
  // dropped high carries are then never computed). A missing operand bit is
  // treated as zero, turning that position into a half adder.
  std::vector<BitCiphertext> BinaryAdd(std::span<const BitCiphertext> a,
                                       std::span<const BitCiphertext> b,
                                       size_t max_width = SIZE_MAX);

  // Sticky NoiseOverflow signal: set once any result's tracked bound reaches
  // 2^(P-2), the largest value certified below p/2 without the key.
  bool noise_overflow() const { return overflow_; }
  const mpz_class& max_bound() const { return max_bound_; }

  metering::OpObserver* observer() const { return observer_; }
  void set_observer(metering::OpObserver* observer) { observer_ = observer; }

 private:
  BitCiphertext Finish(BitCiphertext c);

  mpz_class x0_ = 0;
  unsigned secret_bits_ = 0;
  metering::OpObserver* observer_ = nullptr;
  bool overflow_ = false;
  mpz_class max_bound_ = 0;
};

// Little-endian bit-vector helpers for tests and protocols.
std::vector<BitCiphertext> EncryptBitsPub(std::span<const uint8_t> bits, const PublicKey& pk,
                                          Rng& rng, metering::OpObserver* observer = nullptr);
std::vector<uint8_t> DecryptBits(std::span<const BitCiphertext> bits, const SecretKey& sk);
uint64_t DecryptUnsigned(std::span<const BitCiphertext> bits, const SecretKey& sk);

}  // namespace hequery::dghv

#endif  // HEQUERY_DGHV_H_
