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


#include <benchmark/benchmark.h>

#include "hequery/cyclotomic.h"
#include "hequery/dghv.h"
#include "hequery/gahi.h"
#include "hequery/hqp.h"
#include "hequery/ring_fhe.h"

namespace hequery {
namespace {

void BM_DghvMul(benchmark::State& state) {
  Rng rng(1);
  const auto keys = dghv::KeyGen(gahi::AdviseParams(state.range(0), 4), rng);
  dghv::Evaluator eval(keys.pk);
  const auto a = dghv::EncryptPub(1, keys.pk, rng);
  const auto b = dghv::EncryptPub(1, keys.pk, rng);
  for (auto _ : state) benchmark::DoNotOptimize(eval.Mul(a, b));
  state.counters["P"] = keys.params.secret_bits;
}
BENCHMARK(BM_DghvMul)->Arg(2)->Arg(8);

void BM_RingHomMul(benchmark::State& state) {
  const auto params = hqp::AdviseParams(static_cast<unsigned>(state.range(0)), 13, 8, false);
  Rng rng(2);
  const auto keys = ring::KeyGen(params, rng);
  const auto a = ring::Encrypt(ring::PlainConstant(3, params), keys.pub, params, rng);
  const auto b = ring::Encrypt(ring::PlainConstant(5, params), keys.pub, params, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ring::HomMul(a, b, keys.pub, params));
  state.counters["degree"] = params.degree();
}
BENCHMARK(BM_RingHomMul)->Arg(5)->Arg(11);

void BM_FieldSearch(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(field::FindFieldPrime(static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_FieldSearch)->Arg(11)->Arg(107)->Unit(benchmark::kMillisecond);

void BM_GahiSelect(benchmark::State& state) {
  const size_t m = state.range(0), n_bits = state.range(1);
  Rng rng(3);
  const auto keys = dghv::KeyGen(gahi::AdviseParams(m, n_bits), rng);
  std::vector<uint64_t> values(m);
  for (size_t r = 0; r < m; ++r) values[r] = r % 4;
  const auto db = codec::Database::FromValues(values, n_bits);
  const auto q = gahi::EncryptQuery(codec::PlainRecord::FromValue(0, n_bits), keys.pk, rng);
  for (auto _ : state) {
    gahi::Server server(keys.pk, db, {}, rng.Next());
    benchmark::DoNotOptimize(gahi::RunSelect(server, q, [&](const gahi::EncryptedBits& c) {
      return dghv::DecryptUnsigned(c, keys.sk);
    }));
  }
}
BENCHMARK(BM_GahiSelect)->ArgsProduct({{2, 4, 8}, {2, 4, 8}})->Unit(benchmark::kMillisecond);

void BM_HqpSelect(benchmark::State& state) {
  const size_t m = state.range(0), n_bits = state.range(1);
  const auto params = hqp::AdviseParams(11, 13, m, false);
  Rng rng(4);
  const auto keys = ring::KeyGen(params, rng);
  std::vector<uint64_t> values(m);
  for (size_t r = 0; r < m; ++r) values[r] = r % 4;
  const auto db = codec::Database::FromValues(values, n_bits);
  const auto q = hqp::EncryptQuery(codec::PlainRecord::FromValue(0, n_bits), params, keys.pub, rng);
  hqp::UserCallbacks user;
  user.decrypt_count = [&](const ring::RingCiphertext& c) {
    return hqp::DecodeCount(hqp::DecryptElement(c, keys.f, params), m);
  };
  for (auto _ : state) {
    hqp::Server server(params, keys.pub, db, {}, rng.Next());
    benchmark::DoNotOptimize(hqp::RunSelect(server, q, {}, user));
  }
}
BENCHMARK(BM_HqpSelect)->ArgsProduct({{2, 4, 8}, {2, 4, 8}})->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace hequery

BENCHMARK_MAIN();
