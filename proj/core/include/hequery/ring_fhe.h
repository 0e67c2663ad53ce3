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

// Scale-invariant NTRU-style ring encryption (YASHE') over
// R = Z[x]/<Phi_n>.
//
//   keygen:   f = [t f' + 1]_q,  h = [t g f^-1]_q,  f', g <- chi_key
//   encrypt:  c = [floor(q/t) [m]_t + e + h s]_q,    s, e <- chi_err
//   decrypt:  m = [ round(t/q [f c]_q) ]_t
//   add:      [c1 + c2]_q
//   mul:      c~ = [ round(t/q c1 c2) ]_q, then key switching
//
// Key switching decomposes c~ in base w and takes the inner product with
// evk_i = [w^i f + e_i + h s_i]_q, so that f * sum_i D_i(c~) evk_i is
// approximately f^2 c~ and the original key decrypts the result.
//
// All arithmetic is exact (GMP); there is no floating point outside noise
// sampling.

#ifndef HEQUERY_RING_FHE_H_
#define HEQUERY_RING_FHE_H_

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "hequery/common.h"
#include "hequery/metering.h"
#include "hequery/poly.h"

namespace hequery::ring {

using poly::Poly;

struct RingParams {
  unsigned n = 0;         // cyclotomic index
  Poly f_mod;             // Phi_n, monic, degree d = phi(n)
  mpz_class q;            // ciphertext modulus
  mpz_class t;            // plaintext modulus, 1 < t < q
  double err_stddev = 3.2;
  int key_bound = 1;      // chi_key is uniform on [-key_bound, key_bound]
  mpz_class decomp_base = mpz_class(1) << 16;

  // Phi_n, q = next prime above 2^q_bits.
  static RingParams Create(unsigned n, const mpz_class& t, unsigned q_bits,
                           unsigned decomp_bits = 16, double err_stddev = 3.2);

  unsigned degree() const { return static_cast<unsigned>(f_mod.size()) - 1; }
  mpz_class delta() const { return q / t; }
  // ceil(log_w q): number of key-switching digits.
  unsigned digits() const;

  // Throws kInvalidParams unless 1 < t < q, f_mod monic of degree >= 1,
  // w >= 2.
  void Validate() const;

  bool operator==(const RingParams&) const = default;
};

// Canonical residues mod t, dense length d.
struct PlainPoly {
  Poly coeffs;
  bool operator==(const PlainPoly&) const = default;
};

// Canonical residues mod q, dense length d.
struct RingCiphertext {
  Poly coeffs;
  bool operator==(const RingCiphertext&) const = default;
};

struct RingPublicKey {
  Poly h;
  std::vector<Poly> evk;
  uint64_t Fingerprint() const;
};

struct RingKeys {
  Poly f;  // secret
  RingPublicKey pub;
};

// Reduces an arbitrary integer polynomial into canonical dense form.
PlainPoly MakePlain(const Poly& coeffs, const RingParams& params);
PlainPoly PlainConstant(const mpz_class& c, const RingParams& params);

// Throws kNonInvertibleExhausted when no invertible f is found within
// `max_attempts` resamples.
RingKeys KeyGen(const RingParams& params, Rng& rng, int max_attempts = 64);

RingCiphertext Encrypt(const PlainPoly& m, const RingPublicKey& pk, const RingParams& params,
                       Rng& rng);
// Encryption with caller-chosen s and e.
RingCiphertext EncryptWith(const PlainPoly& m, const RingPublicKey& pk, const RingParams& params,
                           const Poly& s, const Poly& e);

PlainPoly Decrypt(const RingCiphertext& c, const Poly& f, const RingParams& params);

RingCiphertext HomAdd(const RingCiphertext& a, const RingCiphertext& b, const RingParams& params);
RingCiphertext HomSub(const RingCiphertext& a, const RingCiphertext& b, const RingParams& params);
// c + floor(q/t) m.
RingCiphertext AddPlain(const RingCiphertext& c, const PlainPoly& m, const RingParams& params);
RingCiphertext SubPlain(const RingCiphertext& c, const PlainPoly& m, const RingParams& params);
// c * m with m's coefficients centered mod t.
RingCiphertext MulPlain(const RingCiphertext& c, const PlainPoly& m, const RingParams& params);

// [round(t/q * c1 c2)]_q, the product computed over Z before scaling.
RingCiphertext ScaleRoundProduct(const RingCiphertext& a, const RingCiphertext& b,
                                 const RingParams& params);
// Base-w digits of every coefficient: c = sum_i w^i D_i.
std::vector<Poly> Decompose(const RingCiphertext& c, const RingParams& params);
RingCiphertext KeySwitch(const RingCiphertext& c_tilde, const std::vector<Poly>& evk,
                         const RingParams& params);
RingCiphertext HomMul(const RingCiphertext& a, const RingCiphertext& b, const RingPublicKey& pk,
                      const RingParams& params);

// Integer <-> polynomial encoding: bit i of |z| becomes the coefficient of
// X^i, all coefficients negated when z < 0. Throws kOverflow when |z| needs
// d or more bits.
PlainPoly EncodeInteger(const mpz_class& z, const RingParams& params);
mpz_class DecodeInteger(const PlainPoly& m, const RingParams& params);

// Remaining noise budget in bits, measured with the secret key: with
// x = [f c]_q and v = [t x]_q, budget = log2(q/2) - log2(max |v|).
// Positive means the ciphertext decrypts correctly. Ciphertexts without
// noise report log2(q/2).
double NoiseBudget(const RingCiphertext& c, const Poly& f, const RingParams& params);

// Metered evaluator bound to one parameter set and public key.
class Evaluator {
 public:
  Evaluator(const RingParams& params, const RingPublicKey& pk,
            metering::OpObserver* observer = nullptr)
      : params_(&params), pk_(&pk), observer_(observer) {}

  RingCiphertext Encrypt(const PlainPoly& m, Rng& rng);
  RingCiphertext Add(const RingCiphertext& a, const RingCiphertext& b);
  RingCiphertext Sub(const RingCiphertext& a, const RingCiphertext& b);
  RingCiphertext AddPlain(const RingCiphertext& c, const PlainPoly& m);
  RingCiphertext SubPlain(const RingCiphertext& c, const PlainPoly& m);
  RingCiphertext MulPlain(const RingCiphertext& c, const PlainPoly& m);
  RingCiphertext Mul(const RingCiphertext& a, const RingCiphertext& b);

  // Balanced product tree; factors.size() - 1 multiplications, depth
  // ceil(log2(size)). Requires a nonempty input.
  RingCiphertext Product(std::vector<RingCiphertext> factors);

  const RingParams& params() const { return *params_; }
  const RingPublicKey& public_key() const { return *pk_; }
  metering::OpObserver* observer() const { return observer_; }
  void set_observer(metering::OpObserver* observer) { observer_ = observer; }

 private:
  const RingParams* params_;
  const RingPublicKey* pk_;
  metering::OpObserver* observer_;
};

}  // namespace hequery::ring

#endif  // HEQUERY_RING_FHE_H_
