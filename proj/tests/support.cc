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

#include "support.h"

#include <algorithm>
#include <cmath>

namespace hequery::testing {

std::vector<std::string> CompactionOracle(const std::vector<std::string>& rows,
                                          const std::string& query) {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    if (row == query) out.push_back(row);
  }
  return out;
}

std::string ToDisplay(uint64_t value, size_t width) {
  std::string s(width, '0');
  for (size_t i = 0; i < width; ++i) {
    if ((value >> i) & 1) s[width - 1 - i] = '1';
  }
  return s;
}

std::vector<std::vector<std::string>> AllDatabases(size_t m, size_t width) {
  const uint64_t values = uint64_t{1} << width;
  uint64_t total = 1;
  for (size_t i = 0; i < m; ++i) total *= values;
  std::vector<std::vector<std::string>> out;
  out.reserve(total);
  for (uint64_t code = 0; code < total; ++code) {
    std::vector<std::string> rows;
    uint64_t c = code;
    for (size_t i = 0; i < m; ++i) {
      rows.push_back(ToDisplay(c % values, width));
      c /= values;
    }
    out.push_back(std::move(rows));
  }
  return out;
}

std::vector<std::vector<std::string>> AllDistinctDatabases(size_t m, size_t width) {
  std::vector<std::vector<std::string>> out;
  for (auto& rows : AllDatabases(m, width)) {
    std::vector<std::string> sorted = rows;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
      out.push_back(std::move(rows));
    }
  }
  return out;
}

namespace {

void ProbeGahi(const dghv::BitCiphertext& c, const dghv::KeyPair& keys, NoiseProbe& probe) {
  probe.min_budget = std::min(probe.min_budget, dghv::NoiseBudget(c, keys.params));
  const mpz_class noise = dghv::ExactNoise(c, keys.sk);
  if (noise != 0) {
    mpz_class half = keys.sk.p / 2;
    probe.min_exact_budget = std::min(probe.min_exact_budget, Log2(half) - Log2(noise));
  }
}

uint64_t ConstantValue(const field::FieldElement& x) {
  if (x.IsZero()) return 0;
  if (poly::Degree(x.coeffs()) != 0) return uint64_t{1} << 63;
  return x.coeffs()[0].get_ui();
}

}  // namespace

GahiOutcome RunGahi(const dghv::KeyPair& keys, const std::vector<std::string>& rows,
                    const std::string& query, bool strict, uint64_t seed) {
  codec::Database db = codec::Database::FromDisplay(rows);
  db.n_bits = query.size();
  Rng rng(seed);
  gahi::Server server(keys.pk, db, gahi::Options{strict}, rng.Next());
  const auto q = gahi::EncryptQuery(codec::PlainRecord::FromDisplay(query), keys.pk, rng);
  const auto select = gahi::RunSelect(server, q, [&](const gahi::EncryptedBits& c) {
    return dghv::DecryptUnsigned(c, keys.sk);
  });

  GahiOutcome out;
  out.count = select.count;
  for (const auto& entry : select.result.entries) {
    codec::PlainRecord r;
    r.bits = dghv::DecryptBits(entry, keys.sk);
    out.result.push_back(r.Display());
  }
  const auto& t = select.trace;
  for (const auto& c : t.I) out.I.push_back(dghv::Decrypt(c, keys.sk));
  for (const auto& s : t.S) out.S.push_back(dghv::DecryptUnsigned(s, keys.sk));
  for (const auto& row : t.Iprime) {
    std::vector<int> bits;
    for (const auto& c : row) bits.push_back(dghv::Decrypt(c, keys.sk));
    out.Iprime.push_back(std::move(bits));
  }

  NoiseProbe& probe = out.noise;
  for (const auto& c : t.I) ProbeGahi(c, keys, probe);
  for (const auto& s : t.S) {
    for (const auto& c : s) ProbeGahi(c, keys, probe);
  }
  for (const auto& row : t.Iprime) {
    for (const auto& c : row) ProbeGahi(c, keys, probe);
  }
  for (const auto& c : t.count) ProbeGahi(c, keys, probe);
  for (const auto& entry : t.result.entries) {
    for (const auto& c : entry) ProbeGahi(c, keys, probe);
  }
  probe.overflow = server.noise_overflow();
  return out;
}

HqpOutcome RunHqp(const ring::RingParams& params, const ring::RingKeys& keys,
                  const std::vector<std::string>& rows, const std::string& query,
                  const hqp::SelectOptions& select_options, bool strict, uint64_t seed) {
  codec::Database db = codec::Database::FromDisplay(rows);
  db.n_bits = query.size();
  Rng rng(seed);
  hqp::Server server(params, keys.pub, db, hqp::Options{strict}, rng.Next());
  const auto q = hqp::EncryptQuery(codec::PlainRecord::FromDisplay(query), params, keys.pub, rng);
  auto decrypt = [&](const ring::RingCiphertext& c) {
    return hqp::DecryptElement(c, keys.f, params);
  };
  hqp::UserCallbacks user;
  user.precheck_is_zero = [&](const ring::RingCiphertext& c) { return decrypt(c).IsZero(); };
  user.decrypt_count = [&](const ring::RingCiphertext& c) {
    return hqp::DecodeCount(decrypt(c), db.size());
  };
  const auto select = hqp::RunSelect(server, q, select_options, user);

  HqpOutcome out;
  out.status = select.status;
  out.count = select.count;
  std::vector<field::FieldElement> plain;
  for (const auto& c : select.result.entries) {
    plain.push_back(decrypt(c));
    const auto record = codec::DecodeField(plain.back(), db.n_bits);
    out.result.push_back(record ? record->Display() : "?");
  }
  out.well_formed = hqp::IsWellFormed(plain, db.n_bits);

  const auto& t = select.trace;
  NoiseProbe& probe = out.noise;
  auto measure = [&](const ring::RingCiphertext& c) {
    probe.min_budget = std::min(probe.min_budget, ring::NoiseBudget(c, keys.f, params));
  };
  for (const auto& c : t.F) {
    out.F.push_back(ConstantValue(decrypt(c)));
    measure(c);
  }
  for (const auto& c : t.G) {
    out.G.push_back(ConstantValue(decrypt(c)));
    measure(c);
  }
  for (const auto& row : t.Fprime) {
    std::vector<uint64_t> values;
    for (const auto& c : row) {
      values.push_back(ConstantValue(decrypt(c)));
      measure(c);
    }
    out.Fprime.push_back(std::move(values));
  }
  if (t.count) measure(*t.count);
  for (const auto& c : t.result.entries) measure(c);
  return out;
}

}  // namespace hequery::testing
