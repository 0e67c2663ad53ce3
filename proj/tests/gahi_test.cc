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

#include "hequery/gahi.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "support.h"

namespace hequery::gahi {
namespace {

using testing::CompactionOracle;
using testing::RunGahi;
using testing::ToDisplay;

const std::vector<std::string> kTable1{"1100", "1010", "1100", "1101", "1000"};

dghv::KeyPair KeysFor(size_t m, size_t n_bits, uint64_t seed, bool strict = false) {
  AdvisorOptions options;
  options.strict_encryption = strict;
  Rng rng(seed);
  return dghv::KeyGen(AdviseParams(m, n_bits, options), rng);
}

EncryptedBits EncryptValue(uint64_t v, size_t width, const dghv::KeyPair& keys, Rng& rng) {
  std::vector<uint8_t> bits;
  for (size_t i = 0; i < width; ++i) bits.push_back((v >> i) & 1);
  return dghv::EncryptBitsPub(bits, keys.pk, rng);
}

TEST(Gahi, TableOne) {
  const auto keys = KeysFor(5, 4, 1);
  const auto out = RunGahi(keys, kTable1, "1100", false, 1);
  EXPECT_EQ(out.I, (std::vector<int>{1, 0, 1, 0, 0}));
  EXPECT_EQ(out.S, (std::vector<uint64_t>{1, 1, 2, 2, 2}));
  EXPECT_EQ(out.Iprime, (std::vector<std::vector<int>>{
                            {1}, {0, 0}, {0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0, 0}}));
  EXPECT_EQ(out.count, 2u);
  EXPECT_EQ(out.result, (std::vector<std::string>{"1100", "1100"}));
  EXPECT_FALSE(out.noise.overflow);
  EXPECT_GT(out.noise.min_exact_budget, 0);
}

TEST(Gahi, CounterWidth) {
  for (size_t m = 0; m <= 40; ++m) {
    size_t w = 0;
    while ((size_t{1} << w) <= m) ++w;
    EXPECT_EQ(CounterWidth(m), std::max<size_t>(w, 1)) << m;
  }
}

TEST(Gahi, IndicatorsOverAllThreeBitPairs) {
  std::vector<std::string> rows;
  for (uint64_t v = 0; v < 8; ++v) rows.push_back(ToDisplay(v, 3));
  const auto keys = KeysFor(rows.size(), 3, 2);
  const codec::Database db = codec::Database::FromDisplay(rows);
  Rng rng(2);
  for (uint64_t q = 0; q < 8; ++q) {
    Server server(keys.pk, db, Options{}, rng.Next());
    const auto query = EncryptQuery(codec::PlainRecord::FromValue(q, 3), keys.pk, rng);
    const auto I = server.MatchIndicators(query);
    for (uint64_t r = 0; r < 8; ++r) {
      EXPECT_EQ(dghv::Decrypt(I[r], keys.sk), r == q ? 1 : 0) << "q=" << q << " r=" << r;
    }
    EXPECT_FALSE(server.noise_overflow());
  }
}

TEST(Gahi, PartialSumsMatchPrefixSums) {
  std::mt19937_64 gen(3);
  for (size_t m = 1; m <= 7; ++m) {
    const auto keys = KeysFor(m, 2, 30 + m);
    const codec::Database db = codec::Database::FromValues(std::vector<uint64_t>(m, 0), 2);
    Rng rng(m);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> plain;
      std::vector<BitCiphertext> I;
      for (size_t r = 0; r < m; ++r) {
        plain.push_back(static_cast<int>(gen() & 1));
        I.push_back(dghv::EncryptPub(plain.back(), keys.pk, rng));
      }
      Server server(keys.pk, db, Options{}, rng.Next());
      const auto S = server.PartialSums(I);
      uint64_t prefix = 0;
      for (size_t r = 0; r < m; ++r) {
        prefix += plain[r];
        ASSERT_LE(S[r].size(), CounterWidth(m));
        EXPECT_EQ(dghv::DecryptUnsigned(S[r], keys.sk), prefix);
      }
      uint64_t total = 0;
      for (int b : plain) total += b;
      EXPECT_EQ(dghv::DecryptUnsigned(server.MatchCount(I), keys.sk), total);
    }
  }
}

TEST(Gahi, PositionIndicatorsSelectTheCounter) {
  const size_t m = 6;
  const auto keys = KeysFor(m, 2, 4);
  const codec::Database db = codec::Database::FromValues(std::vector<uint64_t>(m, 0), 2);
  Rng rng(4);
  for (size_t r = 1; r <= m; ++r) {
    for (uint64_t s = 0; s <= r; ++s) {
      for (int i = 0; i <= 1; ++i) {
        Server server(keys.pk, db, Options{}, rng.Next());
        const auto row = server.PositionIndicators(dghv::EncryptPub(i, keys.pk, rng),
                                                   EncryptValue(s, CounterWidth(m), keys, rng), r);
        ASSERT_EQ(row.size(), r);
        for (size_t j = 1; j <= r; ++j) {
          EXPECT_EQ(dghv::Decrypt(row[j - 1], keys.sk), (i == 1 && s == j) ? 1 : 0)
              << "r=" << r << " s=" << s << " i=" << i << " j=" << j;
        }
      }
    }
  }
}

TEST(Gahi, RandomDatabasesMatchCompactionOracle) {
  std::mt19937_64 gen(5);
  for (bool strict : {false, true}) {
    for (int trial = 0; trial < 24; ++trial) {
      const size_t m = 1 + gen() % 6, width = 1 + gen() % 4;
      std::vector<std::string> rows;
      for (size_t r = 0; r < m; ++r) rows.push_back(ToDisplay(gen() % 3, width));
      const std::string query = ToDisplay(gen() % 3, width);
      const auto keys = KeysFor(m, width, gen(), strict);
      const auto out = RunGahi(keys, rows, query, strict, gen());
      const auto expected = CompactionOracle(rows, query);
      EXPECT_EQ(out.result, expected);
      EXPECT_EQ(out.count, expected.size());
      EXPECT_FALSE(out.noise.overflow);
      EXPECT_GE(out.noise.min_budget, 0);
    }
  }
}

TEST(Gahi, EmptyDatabase) {
  const auto keys = KeysFor(1, 3, 6);
  const auto out = RunGahi(keys, {}, "101", false, 6);
  EXPECT_TRUE(out.result.empty());
  EXPECT_EQ(out.count, 0u);
}

TEST(Gahi, UpdateAndDeleteMatchOracle) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 12; ++trial) {
    const size_t m = 1 + gen() % 5, width = 2 + gen() % 2;
    std::vector<std::string> rows;
    for (size_t r = 0; r < m; ++r) rows.push_back(ToDisplay(gen() % 3, width));
    const uint64_t q = gen() % 3, u = gen() % (uint64_t{1} << width);
    const bool strict = trial % 2 == 1;
    const auto keys = KeysFor(m, width, gen(), strict);
    const codec::Database db = codec::Database::FromDisplay(rows);
    Rng rng(trial);
    Server server(keys.pk, db, Options{strict}, rng.Next());
    const auto query = EncryptQuery(codec::PlainRecord::FromValue(q, width), keys.pk, rng);
    const auto I = server.MatchIndicators(query);
    const auto updated = server.Update(I, EncryptValue(u, width, keys, rng));
    const auto deleted = server.Delete(I);
    ASSERT_EQ(updated.size(), m);
    for (size_t r = 0; r < m; ++r) {
      const uint64_t record = db.records[r].Value();
      EXPECT_EQ(dghv::DecryptUnsigned(updated[r], keys.sk), record == q ? u : record);
      EXPECT_EQ(dghv::DecryptUnsigned(deleted[r], keys.sk), record == q ? 0 : record);
    }
    EXPECT_FALSE(server.noise_overflow());
  }
}

TEST(Gahi, TruncateKeepsPrefix) {
  Sequence seq;
  seq.key_id = 4;
  seq.entries.resize(5);
  EXPECT_EQ(Server::Truncate(seq, 2).size(), 2u);
  EXPECT_EQ(Server::Truncate(seq, 9).size(), 5u);
  EXPECT_EQ(Server::Truncate(seq, 0).key_id, 4u);
}

TEST(Gahi, AdvisorCoversObservedBounds) {
  for (size_t m : {1u, 3u, 5u}) {
    for (size_t width : {1u, 3u}) {
      const auto keys = KeysFor(m, width, 8);
      const mpz_class worst = WorstCaseBound(m, width);
      EXPECT_EQ(keys.params.secret_bits, dghv::MinSecretBits(worst, 2));
      EXPECT_EQ(keys.params.rand_bits, keys.params.secret_bits + 64);
      std::vector<std::string> rows(m, std::string(width, '1'));
      const codec::Database db = codec::Database::FromDisplay(rows);
      Rng rng(m * 10 + width);
      Server server(keys.pk, db, Options{}, rng.Next());
      const auto query = EncryptQuery(db.records[0], keys.pk, rng);
      const auto trace = server.Evaluate(query);
      server.Update(trace.I, EncryptValue(1, width, keys, rng));
      server.Delete(trace.I);
      EXPECT_LE(server.max_bound(), worst);
      EXPECT_FALSE(server.noise_overflow());
    }
  }
  EXPECT_EQ(WorstCaseBound(0, 3), 0);
}

TEST(Gahi, TranscriptShape) {
  const auto keys = KeysFor(5, 4, 9);
  const codec::Database db = codec::Database::FromDisplay(kTable1);
  Rng rng(9);
  Server server(keys.pk, db, Options{}, rng.Next());
  const auto trace = server.Evaluate(EncryptQuery(db.records[0], keys.pk, rng));
  const auto j = Transcript(trace, db, &keys.sk);
  EXPECT_EQ(j["protocol"], "gahi");
  EXPECT_EQ(j["m"], 5);
  EXPECT_EQ(j["n_bits"], 4);
  EXPECT_EQ(j["I"], nlohmann::json({1, 0, 1, 0, 0}));
  EXPECT_EQ(j["S"], nlohmann::json({1, 1, 2, 2, 2}));
  EXPECT_EQ(j["count"], 2);
  EXPECT_EQ(j["result"], nlohmann::json({"1100", "1100", "0000", "0000", "0000"}));
  EXPECT_EQ(j["key_id"], keys.pk.Fingerprint());
}

TEST(Gahi, QueryWidthMustMatch) {
  const auto keys = KeysFor(5, 4, 10);
  Rng rng(10);
  Server server(keys.pk, codec::Database::FromDisplay(kTable1), Options{}, rng.Next());
  const auto query = EncryptQuery(codec::PlainRecord::FromDisplay("110"), keys.pk, rng);
  try {
    server.Evaluate(query);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWidthMismatch);
  }
}

}  // namespace
}  // namespace hequery::gahi
