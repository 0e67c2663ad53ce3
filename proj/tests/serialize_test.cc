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

#include "hequery/serialize.h"

#include <gtest/gtest.h>

#include <filesystem>

namespace hequery::serialize {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

dghv::DghvParams SmallDghv() {
  dghv::DghvParams p;
  p.noise_bits = 6;
  p.secret_bits = 80;
  p.rand_bits = 140;
  p.pubkey_size = 4;
  return p;
}

TEST(Serialize, DghvRoundTrip) {
  Rng rng(1);
  const auto keys = dghv::KeyGen(SmallDghv(), rng);
  const json pj = DghvParamsToJson(keys.params);
  EXPECT_EQ(pj["format_version"], 1);
  EXPECT_EQ(pj["p_bits"], 80);
  const auto params = DghvParamsFromJson(pj);
  EXPECT_EQ(params.noise_bits, 6u);
  EXPECT_EQ(params.secret_bits, 80u);
  EXPECT_EQ(params.rand_bits, 140u);
  EXPECT_EQ(params.pubkey_size, 4u);

  const auto pk = PublicKeyFromJson(PublicKeyToJson(keys.pk, keys.params));
  EXPECT_EQ(pk.zeros, keys.pk.zeros);
  EXPECT_EQ(pk.x0, keys.pk.x0);
  EXPECT_EQ(pk.Fingerprint(), keys.pk.Fingerprint());
  EXPECT_EQ(SecretKeyFromJson(SecretKeyToJson(keys.sk, keys.params)).p, keys.sk.p);

  const auto c = dghv::EncryptPub(1, keys.pk, rng);
  EXPECT_EQ(CiphertextFromJson(CiphertextToJson(c)), c);
}

TEST(Serialize, DghvRejectsUnknownKeys) {
  json pj = DghvParamsToJson(SmallDghv());
  pj["extra"] = 1;
  EXPECT_EQ(CodeOf([&] { DghvParamsFromJson(pj); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { DghvParamsFromJson(json::array()); }), ErrorCode::kParse);
  json lambda_only = DghvParamsToJson(SmallDghv());
  lambda_only["lambda"] = 6;
  EXPECT_NO_THROW(DghvParamsFromJson(lambda_only));
}

TEST(Serialize, RingRoundTrip) {
  const auto params = ring::RingParams::Create(11, 7, 90);
  Rng rng(2);
  const auto keys = ring::KeyGen(params, rng);
  const json pj = RingParamsToJson(params);
  EXPECT_EQ(pj["version"], 1);
  const auto back = RingParamsFromJson(pj);
  EXPECT_EQ(back, params);

  json by_bits = pj;
  by_bits.erase("q_hex");
  by_bits["q_bits"] = 90;
  EXPECT_EQ(RingParamsFromJson(by_bits).q, params.q);

  const auto pub = RingPublicKeyFromJson(RingPublicKeyToJson(keys.pub, params));
  EXPECT_EQ(pub.h, keys.pub.h);
  EXPECT_EQ(pub.evk, keys.pub.evk);
  EXPECT_EQ(pub.Fingerprint(), keys.pub.Fingerprint());
  EXPECT_EQ(RingSecretKeyFromJson(RingSecretKeyToJson(keys.f, params)), keys.f);
  const poly::Poly p{mpz_class(-5), mpz_class("123456789abcdef0123", 16)};
  EXPECT_EQ(PolyFromJson(PolyToJson(p)), p);
  EXPECT_EQ(CodeOf([] { PolyFromJson(json{"zz"}); }), ErrorCode::kParse);
}

TEST(Serialize, FieldReport) {
  field::FieldSearchOptions options;
  options.upper_limit = 100;
  const json j = FieldReportToJson(field::FindFieldPrime(107, options));
  EXPECT_EQ(j["n"], 107);
  EXPECT_EQ(j["degree"], 106);
  EXPECT_EQ(j["chosen_p"], 2);
  EXPECT_EQ(j["disc_is_square"], false);
}

TEST(Serialize, Files) {
  const auto path = std::filesystem::temp_directory_path() / "hequery_serialize_test.json";
  WriteJsonFile(path.string(), json{{"a", 1}});
  EXPECT_EQ(ReadJsonFile(path.string())["a"], 1);
  std::filesystem::remove(path);
  EXPECT_EQ(CodeOf([] { ReadJsonFile("/nonexistent/x.json"); }), ErrorCode::kIo);
}

}  // namespace
}  // namespace hequery::serialize
