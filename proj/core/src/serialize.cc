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

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hequery::serialize {
namespace {

constexpr int kFormatVersion = 1;

template <class T>
T Get(const json& j, const char* key, std::string_view what) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::kParse, std::string(what) + ": missing '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": bad '" + key + "': " + e.what());
  }
}

mpz_class Hex(const json& j, const char* key, std::string_view what) {
  try {
    return FromHex(Get<std::string>(j, key, what));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": bad hex in '" + key + "'");
  }
}

void CheckVersion(const json& j, const char* key, std::string_view what) {
  if (Get<int>(j, key, what) != kFormatVersion) {
    throw Error(ErrorCode::kParse, std::string(what) + ": unsupported " + key);
  }
}

}  // namespace

void RequireKeys(const json& object, std::initializer_list<std::string_view> allowed,
                 std::string_view what) {
  if (!object.is_object()) throw Error(ErrorCode::kParse, std::string(what) + " must be an object");
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorCode::kParse, std::string(what) + ": unknown key '" + key + "'");
    }
  }
}

json DghvParamsToJson(const dghv::DghvParams& params) {
  return {{"n_bits", params.noise_bits},
          {"p_bits", params.secret_bits},
          {"q_bits", params.rand_bits},
          {"pubkey_size", params.pubkey_size},
          {"format_version", kFormatVersion}};
}

dghv::DghvParams DghvParamsFromJson(const json& j) {
  RequireKeys(j, {"n_bits", "p_bits", "q_bits", "pubkey_size", "format_version", "lambda"},
              "DGHV params");
  if (j.contains("format_version")) CheckVersion(j, "format_version", "DGHV params");
  dghv::DghvParams params;
  if (j.contains("lambda")) {
    params = dghv::DghvParams::FromLambda(Get<unsigned>(j, "lambda", "DGHV params"));
  }
  if (j.contains("n_bits")) params.noise_bits = Get<unsigned>(j, "n_bits", "DGHV params");
  if (j.contains("p_bits")) params.secret_bits = Get<unsigned>(j, "p_bits", "DGHV params");
  if (j.contains("q_bits")) params.rand_bits = Get<unsigned>(j, "q_bits", "DGHV params");
  if (j.contains("pubkey_size")) params.pubkey_size = Get<unsigned>(j, "pubkey_size", "DGHV params");
  params.Validate();
  return params;
}

json CiphertextToJson(const dghv::BitCiphertext& c) {
  return {{"value", ToHex(c.value)}, {"noise_bound", ToHex(c.noise_bound)}};
}

dghv::BitCiphertext CiphertextFromJson(const json& j) {
  RequireKeys(j, {"value", "noise_bound"}, "ciphertext");
  return {Hex(j, "value", "ciphertext"), Hex(j, "noise_bound", "ciphertext")};
}

json PublicKeyToJson(const dghv::PublicKey& pk, const dghv::DghvParams& params) {
  json zeros = json::array();
  for (const auto& z : pk.zeros) zeros.push_back(CiphertextToJson(z));
  return {{"params", DghvParamsToJson(params)},
          {"zeros", std::move(zeros)},
          {"x0", ToHex(pk.x0)},
          {"fingerprint", pk.Fingerprint()}};
}

dghv::PublicKey PublicKeyFromJson(const json& j) {
  RequireKeys(j, {"params", "zeros", "x0", "fingerprint"}, "DGHV public key");
  const dghv::DghvParams params = DghvParamsFromJson(j.at("params"));
  dghv::PublicKey pk;
  if (!j.contains("zeros") || !j["zeros"].is_array()) {
    throw Error(ErrorCode::kParse, "DGHV public key: 'zeros' must be an array");
  }
  for (const auto& z : j["zeros"]) pk.zeros.push_back(CiphertextFromJson(z));
  pk.x0 = Hex(j, "x0", "DGHV public key");
  pk.secret_bits = params.secret_bits;
  pk.noise_bits = params.noise_bits;
  return pk;
}

json SecretKeyToJson(const dghv::SecretKey& sk, const dghv::DghvParams& params) {
  return {{"params", DghvParamsToJson(params)}, {"p", ToHex(sk.p)}};
}

dghv::SecretKey SecretKeyFromJson(const json& j) {
  RequireKeys(j, {"params", "p"}, "DGHV secret key");
  return {Hex(j, "p", "DGHV secret key")};
}

json RingParamsToJson(const ring::RingParams& params) {
  return {{"n", params.n},
          {"q_hex", ToHex(params.q)},
          {"t", params.t.get_str()},
          {"w", params.decomp_base.get_str()},
          {"sigma", params.err_stddev},
          {"version", kFormatVersion}};
}

ring::RingParams RingParamsFromJson(const json& j) {
  RequireKeys(j, {"n", "q_hex", "q_bits", "t", "w", "sigma", "version"}, "ring params");
  if (j.contains("version")) CheckVersion(j, "version", "ring params");
  const unsigned n = Get<unsigned>(j, "n", "ring params");
  auto big = [&](const char* key) -> mpz_class {
    const json& v = j.at(key);
    if (v.is_number_unsigned()) return mpz_class(v.get<unsigned long>());
    try {
      return mpz_class(v.get<std::string>());
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, std::string("ring params: bad '") + key + "'");
    }
  };
  const mpz_class t = big("t");
  const double sigma = j.contains("sigma") ? Get<double>(j, "sigma", "ring params") : 3.2;
  unsigned decomp_bits = 16;
  if (j.contains("w")) {
    const mpz_class w = big("w");
    decomp_bits = static_cast<unsigned>(mpz_sizeinbase(w.get_mpz_t(), 2)) - 1;
    if (w != mpz_class(1) << decomp_bits) {
      throw Error(ErrorCode::kParse, "ring params: w must be a power of two");
    }
  }
  ring::RingParams params;
  if (j.contains("q_hex")) {
    params = ring::RingParams::Create(n, t, 8, decomp_bits, sigma);
    params.q = Hex(j, "q_hex", "ring params");
  } else {
    params = ring::RingParams::Create(n, t, Get<unsigned>(j, "q_bits", "ring params"), decomp_bits,
                                      sigma);
  }
  params.Validate();
  return params;
}

json PolyToJson(const poly::Poly& p) {
  json out = json::array();
  for (const auto& c : p) out.push_back(ToHex(c));
  return out;
}

poly::Poly PolyFromJson(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "polynomial must be an array of hex strings");
  poly::Poly out;
  for (const auto& c : j) {
    if (!c.is_string()) throw Error(ErrorCode::kParse, "polynomial coefficients must be strings");
    out.push_back(FromHex(c.get<std::string>()));
  }
  return out;
}

json RingPublicKeyToJson(const ring::RingPublicKey& pk, const ring::RingParams& params) {
  json evk = json::array();
  for (const auto& e : pk.evk) evk.push_back(PolyToJson(e));
  return {{"params", RingParamsToJson(params)},
          {"h", PolyToJson(pk.h)},
          {"evk", std::move(evk)},
          {"fingerprint", pk.Fingerprint()}};
}

ring::RingPublicKey RingPublicKeyFromJson(const json& j) {
  RequireKeys(j, {"params", "h", "evk", "fingerprint"}, "ring public key");
  ring::RingPublicKey pk;
  pk.h = PolyFromJson(j.at("h"));
  if (!j.contains("evk") || !j["evk"].is_array()) {
    throw Error(ErrorCode::kParse, "ring public key: 'evk' must be an array");
  }
  for (const auto& e : j["evk"]) pk.evk.push_back(PolyFromJson(e));
  return pk;
}

json RingSecretKeyToJson(const poly::Poly& f, const ring::RingParams& params) {
  return {{"params", RingParamsToJson(params)}, {"f", PolyToJson(f)}};
}

poly::Poly RingSecretKeyFromJson(const json& j) {
  RequireKeys(j, {"params", "f"}, "ring secret key");
  if (!j.contains("f")) throw Error(ErrorCode::kParse, "ring secret key: missing 'f'");
  return PolyFromJson(j.at("f"));
}

json FieldReportToJson(const field::FieldSearchReport& report) {
  return {{"n", report.n},
          {"degree", report.degree},
          {"disc_is_square", report.disc_is_square},
          {"primes_tested", report.primes_tested},
          {"chosen_p", report.chosen_p},
          {"elapsed_ms", report.elapsed_ms}};
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

}  // namespace hequery::serialize
