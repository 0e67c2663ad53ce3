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

// JSON forms of parameters, keys, ciphertexts and field reports. Big
// integers are lowercase hex strings; polynomials are little-endian arrays of
// them. Parsers reject unknown keys and throw kParse.

#ifndef HEQUERY_SERIALIZE_H_
#define HEQUERY_SERIALIZE_H_

#include <initializer_list>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "hequery/cyclotomic.h"
#include "hequery/dghv.h"
#include "hequery/ring_fhe.h"

namespace hequery::serialize {

using nlohmann::json;

// Throws kParse when `object` is not an object or has keys outside `allowed`.
void RequireKeys(const json& object, std::initializer_list<std::string_view> allowed,
                 std::string_view what);

// {n_bits, p_bits, q_bits, pubkey_size, format_version: 1}
json DghvParamsToJson(const dghv::DghvParams& params);
dghv::DghvParams DghvParamsFromJson(const json& j);

json CiphertextToJson(const dghv::BitCiphertext& c);
dghv::BitCiphertext CiphertextFromJson(const json& j);

json PublicKeyToJson(const dghv::PublicKey& pk, const dghv::DghvParams& params);
dghv::PublicKey PublicKeyFromJson(const json& j);
json SecretKeyToJson(const dghv::SecretKey& sk, const dghv::DghvParams& params);
dghv::SecretKey SecretKeyFromJson(const json& j);

// {n, q_hex, t, w, sigma, version: 1}. On input q_bits may replace q_hex.
json RingParamsToJson(const ring::RingParams& params);
ring::RingParams RingParamsFromJson(const json& j);

json PolyToJson(const poly::Poly& p);
poly::Poly PolyFromJson(const json& j);

json RingPublicKeyToJson(const ring::RingPublicKey& pk, const ring::RingParams& params);
ring::RingPublicKey RingPublicKeyFromJson(const json& j);
json RingSecretKeyToJson(const poly::Poly& f, const ring::RingParams& params);
poly::Poly RingSecretKeyFromJson(const json& j);

// {n, degree, disc_is_square, primes_tested, chosen_p, elapsed_ms}
json FieldReportToJson(const field::FieldSearchReport& report);

json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const json& j);

}  // namespace hequery::serialize

#endif  // HEQUERY_SERIALIZE_H_
