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

#include <gtest/gtest.h>

#include "hequery/dghv.h"
#include "hequery/metering.h"

namespace hequery::dghv {
namespace {

DghvParams TestParams() {
  DghvParams params;
  params.noise_bits = 8;
  params.secret_bits = 96;
  params.rand_bits = 160;
  params.pubkey_size = 8;
  return params;
}

mpz_class Abs(const mpz_class& x) { return x < 0 ? mpz_class(-x) : x; }

TEST(DghvParams, FromLambdaAndValidate) {
  const DghvParams p = DghvParams::FromLambda(5);
  EXPECT_EQ(p.noise_bits, 5u);
  EXPECT_EQ(p.secret_bits, 25u);
  EXPECT_EQ(p.rand_bits, 3125u);
  EXPECT_NO_THROW(p.Validate());
  for (auto mutate : std::vector<void (*)(DghvParams&)>{
           [](DghvParams& q) { q.noise_bits = 0; },
           [](DghvParams& q) { q.secret_bits = q.noise_bits; },
           [](DghvParams& q) { q.rand_bits = q.secret_bits; },
           [](DghvParams& q) { q.pubkey_size = 0; }}) {
    DghvParams bad = TestParams();
    mutate(bad);
    try {
      bad.Validate();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidParams);
    }
  }
}

TEST(Dghv, TruthTablesOverSeeds) {
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    const KeyPair keys = KeyGen(TestParams(), rng);
    Evaluator eval(keys.pk);
    for (int a = 0; a <= 1; ++a) {
      for (int b = 0; b <= 1; ++b) {
        const auto ca = EncryptPub(a, keys.pk, rng);
        const auto cb = EncryptPub(b, keys.pk, rng);
        EXPECT_EQ(Decrypt(eval.Add(ca, cb), keys.sk), a ^ b) << seed;
        EXPECT_EQ(Decrypt(eval.Mul(ca, cb), keys.sk), a & b) << seed;
        const auto sa = EncryptSym(a, keys.sk, keys.params, rng);
        const auto sb = EncryptSym(b, keys.sk, keys.params, rng);
        EXPECT_EQ(Decrypt(HomAdd(sa, sb), keys.sk), a ^ b) << seed;
        EXPECT_EQ(Decrypt(HomMul(sa, sb), keys.sk), a & b) << seed;
        EXPECT_EQ(Decrypt(eval.AddPlain(ca, b), keys.sk), a ^ b) << seed;
        EXPECT_EQ(Decrypt(eval.MulPlain(ca, b), keys.sk), a & b) << seed;
      }
    }
    EXPECT_FALSE(eval.noise_overflow());
  }
}

TEST(Dghv, SymmetricEncryptionIsExact) {
  Rng rng(3);
  const KeyPair keys = KeyGen(TestParams(), rng);
  for (int m = 0; m <= 1; ++m) {
    const mpz_class r = 37, q = mpz_class(1) << 100;
    const auto c = EncryptSymWith(m, keys.sk, r, q);
    EXPECT_EQ(c.value, m + 2 * r + keys.sk.p * q);
    EXPECT_EQ(ExactNoise(c, keys.sk), m + 2 * r);
    EXPECT_EQ(c.noise_bound, 2 * r + 1);
    EXPECT_EQ(Decrypt(c, keys.sk), m);
  }
}

TEST(Dghv, KeysAreWellFormed) {
  Rng rng(4);
  const KeyPair keys = KeyGen(TestParams(), rng);
  EXPECT_EQ(keys.pk.zeros.size(), 8u);
  EXPECT_EQ(mpz_sizeinbase(keys.sk.p.get_mpz_t(), 2), 96u);
  EXPECT_EQ(keys.sk.p % 2, 1);
  EXPECT_EQ(keys.pk.x0 % keys.sk.p, 0);
  const mpz_class zero_bound = 2 * ((mpz_class(1) << 8) - 1);
  for (const auto& z : keys.pk.zeros) {
    EXPECT_EQ(Decrypt(z, keys.sk), 0);
    EXPECT_LE(Abs(ExactNoise(z, keys.sk)), z.noise_bound);
    EXPECT_LE(z.noise_bound, zero_bound);
  }
}

TEST(Dghv, SameSeedSameKeys) {
  Rng a(11), b(11), c(12);
  EXPECT_EQ(KeyGen(TestParams(), a).pk.Fingerprint(), KeyGen(TestParams(), b).pk.Fingerprint());
  Rng d(11);
  EXPECT_NE(KeyGen(TestParams(), c).pk.Fingerprint(), KeyGen(TestParams(), d).pk.Fingerprint());
}

TEST(Dghv, PublicEncryptionBoundCoversSubset) {
  Rng rng(5);
  const KeyPair keys = KeyGen(TestParams(), rng);
  const std::vector<size_t> subset{0, 2, 5};
  const auto c = EncryptPubWithSubset(1, keys.pk, subset);
  mpz_class expected = 1;
  for (size_t i : subset) expected += keys.pk.zeros[i].noise_bound;
  EXPECT_EQ(c.noise_bound, expected);
  EXPECT_EQ(Decrypt(c, keys.sk), 1);
}

TEST(Dghv, TrackedBoundDominatesExactNoise) {
  Rng rng(6);
  const KeyPair keys = KeyGen(TestParams(), rng);
  Evaluator eval(keys.pk);
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> plain;
    std::vector<BitCiphertext> cts;
    for (int i = 0; i < 4; ++i) {
      plain.push_back(static_cast<int>(gen() & 1));
      cts.push_back(EncryptPub(plain.back(), keys.pk, rng));
    }
    // ((c0 + c1) * c2 + 1) * c3
    auto x = eval.MulPlain(eval.AddPlain(eval.Mul(eval.Add(cts[0], cts[1]), cts[2]), 1), 1);
    x = eval.Mul(x, cts[3]);
    const int want = ((((plain[0] ^ plain[1]) & plain[2]) ^ 1) & plain[3]);
    EXPECT_EQ(Decrypt(x, keys.sk), want);
    EXPECT_LE(Abs(ExactNoise(x, keys.sk)), x.noise_bound);
    EXPECT_LE(NoiseBudget(x, keys.params), NoiseBudget(x, keys.sk));
    EXPECT_GE(NoiseBudget(x, keys.params), 0);
    // x0 reduction keeps ciphertexts below x0.
    EXPECT_GE(x.value, 0);
    EXPECT_LT(x.value, keys.pk.x0);
  }
  EXPECT_FALSE(eval.noise_overflow());
}

TEST(Dghv, OverflowIsSticky) {
  DghvParams params = TestParams();
  params.secret_bits = 24;
  params.rand_bits = 64;
  Rng rng(7);
  const KeyPair keys = KeyGen(params, rng);
  Evaluator eval(keys.pk);
  auto c = EncryptPub(1, keys.pk, rng);
  EXPECT_FALSE(eval.noise_overflow());
  for (int i = 0; i < 4 && !eval.noise_overflow(); ++i) c = eval.Mul(c, c);
  EXPECT_TRUE(eval.noise_overflow());
  eval.Add(Trivial(0), Trivial(1));
  EXPECT_TRUE(eval.noise_overflow());
  EXPECT_LT(NoiseBudget(c, params), 0);
}

TEST(Dghv, BinaryAddMatchesIntegerAddition) {
  Rng rng(8);
  const KeyPair keys = KeyGen(TestParams(), rng);
  for (size_t wa = 0; wa <= 3; ++wa) {
    for (size_t wb = 0; wb <= 3; ++wb) {
      for (uint64_t a = 0; a < (uint64_t{1} << wa); ++a) {
        for (uint64_t b = 0; b < (uint64_t{1} << wb); ++b) {
          for (size_t max_width : {size_t{2}, SIZE_MAX}) {
            std::vector<uint8_t> abits, bbits;
            for (size_t i = 0; i < wa; ++i) abits.push_back((a >> i) & 1);
            for (size_t i = 0; i < wb; ++i) bbits.push_back((b >> i) & 1);
            Evaluator eval(keys.pk);
            const auto ca = EncryptBitsPub(abits, keys.pk, rng);
            const auto cb = EncryptBitsPub(bbits, keys.pk, rng);
            const auto sum = eval.BinaryAdd(ca, cb, max_width);
            const size_t width = std::min(std::max(wa, wb) + 1, max_width);
            ASSERT_EQ(sum.size(), width);
            EXPECT_EQ(DecryptUnsigned(sum, keys.sk), (a + b) % (uint64_t{1} << width))
                << a << "+" << b << " width " << width;
          }
        }
      }
    }
  }
}

TEST(Dghv, EvaluatorMetersEveryPrimitive) {
  Rng rng(9);
  const KeyPair keys = KeyGen(TestParams(), rng);
  metering::OpCounter counter;
  Evaluator eval(keys.pk, &counter);
  const auto a = EncryptPub(1, keys.pk, rng);
  eval.Add(a, a);
  eval.Mul(a, a);
  eval.Mul(a, a);
  eval.AddPlain(a, 1);
  eval.MulPlain(a, 1);
  EXPECT_EQ(counter.OpTotal(metering::Op::kAdd), 1u);
  EXPECT_EQ(counter.OpTotal(metering::Op::kMul), 2u);
  EXPECT_EQ(counter.OpTotal(metering::Op::kPlainAdd), 1u);
  EXPECT_EQ(counter.OpTotal(metering::Op::kPlainMul), 1u);
  // Full adder: 2 XOR for the sum, carry = ab + c(a + b).
  metering::OpCounter adder;
  eval.set_observer(&adder);
  const std::vector<BitCiphertext> one{a};
  eval.BinaryAdd(one, one);
  EXPECT_GT(adder.Total(), 0u);
}

TEST(Dghv, MinSecretBitsOracle) {
  for (unsigned margin : {0u, 2u}) {
    const std::vector<mpz_class> bounds{0, 1, 3, 4, 1000, (mpz_class(1) << 100) - 1,
                                        mpz_class(1) << 100};
    for (const mpz_class& bound : bounds) {
      unsigned p = 3;  // smallest odd secret worth having
      while (!(bound < (mpz_class(1) << (p - 2)))) ++p;
      EXPECT_EQ(MinSecretBits(bound, margin), p + margin) << bound.get_str();
    }
  }
}

TEST(Dghv, EmptyPublicKeyIsRejected) {
  PublicKey pk;
  Rng rng(1);
  try {
    EncryptPub(0, pk, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyPublicKey);
  }
}

}  // namespace
}  // namespace hequery::dghv
