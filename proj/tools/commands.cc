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

#include "commands.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "hequery/common.h"
#include "hequery/complexity.h"
#include "hequery/cyclotomic.h"
#include "hequery/dghv.h"
#include "hequery/gahi.h"
#include "hequery/hqp.h"
#include "hequery/record_codec.h"
#include "hequery/ring_fhe.h"
#include "hequery/serialize.h"

namespace hequery::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kGahiPublic = "gahi_public.json";
constexpr const char* kGahiSecret = "gahi_secret.json";
constexpr const char* kHqpPublic = "hqp_public.json";
constexpr const char* kHqpSecret = "hqp_secret.json";

codec::Database LoadDb(const CliConfig& config) {
  if (config.db_path.empty()) throw Error(ErrorCode::kInvalidParams, "--db is required");
  return codec::LoadDatabase(config.db_path);
}

codec::PlainRecord ParseQuery(const std::string& bits, const codec::Database& db) {
  codec::PlainRecord q = codec::PlainRecord::FromDisplay(bits);
  if (q.bits.size() != db.n_bits) {
    throw Error(ErrorCode::kWidthMismatch, "query has " + std::to_string(q.bits.size()) +
                                               " bits, database records have " +
                                               std::to_string(db.n_bits));
  }
  return q;
}

void MaybeWrite(const std::string& path, const json& j, std::ostream& out, const char* what) {
  if (path.empty()) return;
  serialize::WriteJsonFile(path, j);
  out << what << ": " << path << "\n";
}

// ---- key material ---------------------------------------------------------

dghv::KeyPair GahiKeys(const CliConfig& config, const codec::Database* db) {
  if (!config.keys_dir.empty()) {
    const fs::path dir(config.keys_dir);
    const json sk_json = serialize::ReadJsonFile((dir / kGahiSecret).string());
    dghv::KeyPair keys;
    keys.params = serialize::DghvParamsFromJson(sk_json.at("params"));
    keys.sk = serialize::SecretKeyFromJson(sk_json);
    keys.pk = serialize::PublicKeyFromJson(serialize::ReadJsonFile((dir / kGahiPublic).string()));
    return keys;
  }
  dghv::DghvParams params;
  if (!config.params_path.empty()) {
    params = serialize::DghvParamsFromJson(serialize::ReadJsonFile(config.params_path));
  } else if (db != nullptr) {
    gahi::AdvisorOptions advisor;
    advisor.strict_encryption = config.strict_encryption;
    params = gahi::AdviseParams(db->size(), db->n_bits, advisor);
  } else {
    params = dghv::DghvParams::FromLambda(config.lambda);
  }
  Rng rng(config.seed);
  return dghv::KeyGen(params, rng);
}

struct HqpMaterial {
  ring::RingParams params;
  ring::RingKeys keys;
};

ring::RingParams HqpParams(const CliConfig& config, const codec::Database* db) {
  if (!config.params_path.empty()) {
    return serialize::RingParamsFromJson(serialize::ReadJsonFile(config.params_path));
  }
  const size_t m = db != nullptr ? db->size() : 8;
  const size_t n_bits = db != nullptr ? db->n_bits : 8;
  unsigned n = config.field_n;
  uint64_t p = config.field_p;
  if (n == 0) {
    const hqp::FieldChoice choice = hqp::ChooseField(n_bits, m);
    n = choice.n;
    p = choice.p;
  } else if (p == 0) {
    field::FieldSearchOptions options;
    options.lower_bound = m;
    p = field::FindFieldPrime(n, options).chosen_p;
  }
  return hqp::AdviseParams(n, p, m, config.strict_encryption);
}

HqpMaterial HqpKeys(const CliConfig& config, const codec::Database* db) {
  HqpMaterial out;
  if (!config.keys_dir.empty()) {
    const fs::path dir(config.keys_dir);
    const json sk_json = serialize::ReadJsonFile((dir / kHqpSecret).string());
    out.params = serialize::RingParamsFromJson(sk_json.at("params"));
    out.keys.f = serialize::RingSecretKeyFromJson(sk_json);
    out.keys.pub =
        serialize::RingPublicKeyFromJson(serialize::ReadJsonFile((dir / kHqpPublic).string()));
    return out;
  }
  out.params = HqpParams(config, db);
  Rng rng(config.seed);
  out.keys = ring::KeyGen(out.params, rng);
  return out;
}

std::string Join(const json& values) {
  std::ostringstream s;
  bool first = true;
  for (const auto& v : values) {
    s << (first ? "" : " ") << (v.is_string() ? v.get<std::string>() : v.dump());
    first = false;
  }
  return s.str();
}

// ---- sessions -------------------------------------------------------------

struct GahiSession {
  gahi::SelectResult select;
  json transcript;
  bool overflow = false;
};

GahiSession RunGahi(const dghv::KeyPair& keys, const codec::Database& db,
                    const codec::PlainRecord& query, const CliConfig& config) {
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  gahi::Server server(keys.pk, db, gahi::Options{config.strict_encryption}, rng.Next());
  const gahi::GahiQuery q = gahi::EncryptQuery(query, keys.pk, rng);
  GahiSession session;
  session.select = gahi::RunSelect(server, q, [&](const gahi::EncryptedBits& count) {
    return dghv::DecryptUnsigned(count, keys.sk);
  });
  session.transcript = gahi::Transcript(session.select.trace, db, &keys.sk);
  session.transcript["returned"] = session.select.result.size();
  session.overflow = server.noise_overflow();
  return session;
}

struct HqpSession {
  hqp::SelectResult select;
  json transcript;
  std::vector<field::FieldElement> decrypted;
  bool well_formed = true;
};

HqpSession RunHqp(const HqpMaterial& mat, const codec::Database& db,
                  const codec::PlainRecord& query, const CliConfig& config) {
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  hqp::Server server(mat.params, mat.keys.pub, db, hqp::Options{config.strict_encryption},
                     rng.Next());
  const auto q = hqp::EncryptQuery(query, mat.params, mat.keys.pub, rng);
  hqp::UserCallbacks user;
  user.precheck_is_zero = [&](const ring::RingCiphertext& c) {
    return hqp::DecryptElement(c, mat.keys.f, mat.params).IsZero();
  };
  user.decrypt_count = [&](const ring::RingCiphertext& c) {
    return hqp::DecodeCount(hqp::DecryptElement(c, mat.keys.f, mat.params), db.size());
  };
  HqpSession session;
  session.select = hqp::RunSelect(server, q, {config.precheck, config.no_leak}, user);
  session.transcript = hqp::Transcript(session.select.trace, server.context(), mat.params,
                                       &mat.keys.f);
  session.transcript["status"] =
      session.select.status == hqp::SelectStatus::kOk ? "ok" : "not_found";
  session.transcript["returned"] = session.select.result.size();
  for (const auto& c : session.select.result.entries) {
    session.decrypted.push_back(hqp::DecryptElement(c, mat.keys.f, mat.params));
  }
  session.well_formed = hqp::IsWellFormed(session.decrypted, db.n_bits);
  session.transcript["well_formed"] = session.well_formed;
  return session;
}

std::vector<size_t> MatchingIds(const json& indicators) {
  std::vector<size_t> ids;
  for (size_t i = 0; i < indicators.size(); ++i) {
    if (indicators[i] == 1) ids.push_back(i + 1);
  }
  return ids;
}

// ---- demo ----------------------------------------------------------------

bool Check(std::ostream& out, const char* label, const json& got, const json& want) {
  const bool ok = got == want;
  out << "  check " << std::left << std::setw(10) << label << (ok ? "ok   " : "FAIL ")
      << got.dump() << (ok ? "" : "  expected " + want.dump()) << "\n";
  return ok;
}

}  // namespace

int CmdKeygen(const CliConfig& config, std::ostream& out) {
  const fs::path dir(config.out.empty() ? "." : config.out);
  fs::create_directories(dir);
  std::unique_ptr<codec::Database> db;
  if (!config.db_path.empty()) db = std::make_unique<codec::Database>(LoadDb(config));
  json summary;
  if (config.scheme == Scheme::kGahi) {
    const dghv::KeyPair keys = GahiKeys(config, db.get());
    serialize::WriteJsonFile((dir / kGahiPublic).string(),
                             serialize::PublicKeyToJson(keys.pk, keys.params));
    serialize::WriteJsonFile((dir / kGahiSecret).string(),
                             serialize::SecretKeyToJson(keys.sk, keys.params));
    out << "scheme: gahi\nparams: " << serialize::DghvParamsToJson(keys.params).dump()
        << "\npublic key fingerprint: " << std::hex << keys.pk.Fingerprint() << std::dec
        << "\nwrote " << (dir / kGahiPublic).string() << ", " << (dir / kGahiSecret).string()
        << "\n";
  } else {
    const HqpMaterial mat = HqpKeys(config, db.get());
    serialize::WriteJsonFile((dir / kHqpPublic).string(),
                             serialize::RingPublicKeyToJson(mat.keys.pub, mat.params));
    serialize::WriteJsonFile((dir / kHqpSecret).string(),
                             serialize::RingSecretKeyToJson(mat.keys.f, mat.params));
    out << "scheme: hqp\nparams: " << serialize::RingParamsToJson(mat.params).dump()
        << "\npublic key fingerprint: " << std::hex << mat.keys.pub.Fingerprint() << std::dec
        << "\nwrote " << (dir / kHqpPublic).string() << ", " << (dir / kHqpSecret).string()
        << "\n";
  }
  return kExitOk;
}

int CmdFieldFind(const FieldFindArgs& args, std::ostream& out) {
  if (args.n == 0) throw Error(ErrorCode::kInvalidParams, "--n is required");
  field::FieldSearchOptions options;
  options.lower_bound = args.lower_bound;
  options.upper_limit = args.upper_limit;
  options.collect_all = args.collect_all;
  const field::FieldSearchReport report = field::FindFieldPrime(args.n, options);
  json j = serialize::FieldReportToJson(report);
  if (args.collect_all) j["irreducible_primes"] = report.irreducible_primes;
  out << "n = " << report.n << ", degree = " << report.degree << "\n"
      << "discriminant = " << report.discriminant.get_str()
      << (report.disc_is_square ? " (square)" : " (not a square)") << "\n"
      << "primes tested: " << report.primes_tested.size() << "\n";
  if (args.collect_all) out << "irreducible modulo: " << Join(j["irreducible_primes"]) << "\n";
  out << "chosen p = " << report.chosen_p << "\n";
  MaybeWrite(args.out, j, out, "report");
  return kExitOk;
}

int CmdQuery(const CliConfig& config, const std::string& query_bits, std::ostream& out) {
  const codec::Database db = LoadDb(config);
  const codec::PlainRecord query = ParseQuery(query_bits, db);
  if (config.scheme == Scheme::kGahi) {
    const dghv::KeyPair keys = GahiKeys(config, &db);
    const GahiSession s = RunGahi(keys, db, query, config);
    out << "scheme: gahi, records: " << db.size() << ", query: " << query.Display() << "\n"
        << "match count: " << s.select.count << "\n";
    for (const auto& entry : s.select.result.entries) {
      codec::PlainRecord r;
      r.bits = dghv::DecryptBits(entry, keys.sk);
      out << "  match: " << r.Display() << "\n";
    }
    out << "matching record ids (from the transcript): ";
    for (size_t id : MatchingIds(s.transcript["I"])) out << id << " ";
    out << "\n";
    if (s.overflow) std::cerr << "warning: tracked noise bound reached the overflow threshold\n";
    MaybeWrite(config.out, s.transcript, out, "transcript");
    return kExitOk;
  }
  const HqpMaterial mat = HqpKeys(config, &db);
  const HqpSession s = RunHqp(mat, db, query, config);
  out << "scheme: hqp, field: n=" << mat.params.n << " p=" << mat.params.t.get_str()
      << " degree=" << mat.params.degree() << ", records: " << db.size()
      << ", query: " << query.Display() << "\n";
  if (s.select.status == hqp::SelectStatus::kNotFound) {
    out << "not found: the pre-check shows the query value is not in the database\n";
    MaybeWrite(config.out, s.transcript, out, "transcript");
    return kExitNotFound;
  }
  if (s.select.count) out << "match count: " << *s.select.count << "\n";
  else out << "match count: not revealed\n";
  for (const auto& x : s.decrypted) {
    auto rec = codec::DecodeField(x, db.n_bits);
    out << "  entry: " << (rec ? rec->Display() : poly::ToString(x.coeffs())) << "\n";
  }
  MaybeWrite(config.out, s.transcript, out, "transcript");
  if (!s.well_formed) {
    out << "not found: the result is not a valid record sequence\n";
    return kExitNotFound;
  }
  out << "matching record ids (from the transcript): ";
  for (size_t id : MatchingIds(s.transcript["F"])) out << id << " ";
  out << "\n";
  return kExitOk;
}

int CmdUpdate(const CliConfig& config, const std::string& query_bits,
              const std::optional<std::string>& new_bits, std::ostream& out) {
  if (config.scheme != Scheme::kGahi) {
    throw Error(ErrorCode::kUnsupportedOperation, "update/delete are only defined for gahi");
  }
  const codec::Database db = LoadDb(config);
  const codec::PlainRecord query = ParseQuery(query_bits, db);
  const dghv::KeyPair keys = GahiKeys(config, &db);
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  gahi::Server server(keys.pk, db, gahi::Options{config.strict_encryption}, rng.Next());
  const gahi::GahiQuery q = gahi::EncryptQuery(query, keys.pk, rng);
  const std::vector<dghv::BitCiphertext> I = server.MatchIndicators(q);
  std::vector<gahi::EncryptedBits> view;
  if (new_bits) {
    const codec::PlainRecord u = ParseQuery(*new_bits, db);
    view = server.Update(I, dghv::EncryptBitsPub(u.bits, keys.pk, rng));
  } else {
    view = server.Delete(I);
  }
  json records = json::array(), decrypted = json::array();
  for (const auto& row : view) {
    json cts = json::array();
    for (const auto& c : row) cts.push_back(serialize::CiphertextToJson(c));
    records.push_back(std::move(cts));
    codec::PlainRecord r;
    r.bits = dghv::DecryptBits(row, keys.sk);
    decrypted.push_back(r.Display());
  }
  out << (new_bits ? "update" : "delete") << " where record = " << query.Display() << "\n";
  for (size_t i = 0; i < view.size(); ++i) {
    out << "  " << (i + 1) << ": " << db.records[i].Display() << " -> "
        << decrypted[i].get<std::string>() << "\n";
  }
  if (server.noise_overflow()) {
    std::cerr << "warning: tracked noise bound reached the overflow threshold\n";
  }
  MaybeWrite(config.out, json{{"key_id", server.key_id()}, {"records", std::move(records)}}, out,
             "encrypted view");
  return kExitOk;
}

int CmdBench(const CliConfig& config, const BenchArgs& args, std::ostream& out) {
  complexity::GridOptions options;
  options.m_values = args.m_values;
  options.n_bits_values = args.n_bits_values;
  options.seed = config.seed;
  options.strict_encryption = config.strict_encryption;
  size_t max_m = 0, max_bits = 0;
  for (size_t m : options.m_values) max_m = std::max(max_m, m);
  for (size_t b : options.n_bits_values) max_bits = std::max(max_bits, b);
  if (config.field_n != 0) {
    options.hqp_n = config.field_n;
    options.hqp_p = config.field_p;
  } else if (field::EulerPhi(options.hqp_n) <= max_bits || options.hqp_p <= max_m) {
    const hqp::FieldChoice choice = hqp::ChooseField(max_bits, max_m);
    options.hqp_n = choice.n;
    options.hqp_p = choice.p;
  }
  const auto start = std::chrono::steady_clock::now();
  const complexity::Report report = complexity::RunGrid(options);
  const std::string table = complexity::ToTable(report);
  out << table;
  out << "elapsed: "
      << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
      << " s\n";
  if (!config.out.empty()) {
    serialize::WriteJsonFile(config.out, complexity::ToJson(report));
    const std::string table_path = fs::path(config.out).replace_extension(".txt").string();
    std::ofstream(table_path) << table;
    out << "report: " << config.out << ", " << table_path << "\n";
  }
  return kExitOk;
}

int CmdDemo(int table, const CliConfig& config, std::ostream& out) {
  if (table != 1 && table != 2) {
    throw Error(ErrorCode::kInvalidParams, "demo table must be 1 or 2");
  }
  bool ok = true;
  if (table == 1) {
    const codec::Database db =
        codec::Database::FromDisplay({"1100", "1010", "1100", "1101", "1000"});
    const codec::PlainRecord query = codec::PlainRecord::FromDisplay("1100");
    CliConfig c = config;
    c.keys_dir.clear();
    c.params_path.clear();
    const dghv::KeyPair keys = GahiKeys(c, &db);
    const GahiSession s = RunGahi(keys, db, query, c);
    const json& t = s.transcript;
    out << "Gahi blind search, query " << query.Display() << "\n";
    out << "  record  I_r  S_r  I'_r\n";
    for (size_t r = 0; r < db.size(); ++r) {
      out << "  " << db.records[r].Display() << "    " << t["I"][r] << "    " << t["S"][r]
          << "    " << t["Iprime"][r].dump() << "\n";
    }
    out << "  result " << t["result"].dump() << ", count " << t["count"] << "\n";
    ok &= Check(out, "I", t["I"], json{1, 0, 1, 0, 0});
    ok &= Check(out, "S", t["S"], json{1, 1, 2, 2, 2});
    ok &= Check(out, "I'", t["Iprime"],
                json::parse("[[1],[0,0],[0,1,0],[0,0,0,0],[0,0,0,0,0]]"));
    ok &= Check(out, "result", t["result"], json{"1100", "1100", "0000", "0000", "0000"});
    ok &= Check(out, "count", t["count"], 2);
    ok &= Check(out, "returned", t["returned"], 2);
  } else {
    const codec::Database db =
        codec::Database::FromDisplay({"0010", "1011", "1001", "1011", "1100"});
    const codec::PlainRecord query = codec::PlainRecord::FromDisplay("1011");
    CliConfig c = config;
    c.keys_dir.clear();
    c.params_path.clear();
    c.field_n = 11;
    c.field_p = 7;
    const HqpMaterial mat = HqpKeys(c, &db);
    const HqpSession s = RunHqp(mat, db, query, c);
    const json& t = s.transcript;
    out << "HQP blind search over Z_7[x]/<Phi_11>, query " << query.Display() << "\n";
    out << "  record  F_i  G_i  F'_i\n";
    for (size_t i = 0; i < db.size(); ++i) {
      out << "  " << db.records[i].Display() << "    " << t["F"][i] << "    " << t["G"][i]
          << "    " << t["Fprime"][i].dump() << "\n";
    }
    out << "  result " << t["result"].dump() << ", count " << t["count"] << "\n";
    ok &= Check(out, "F", t["F"], json{0, 1, 0, 1, 0});
    ok &= Check(out, "G", t["G"], json{0, 1, 1, 2, 2});
    ok &= Check(out, "F'", t["Fprime"],
                json::parse("[[0],[1,0],[0,0,0],[0,1,0,0],[0,0,0,0,0]]"));
    ok &= Check(out, "result", t["result"], json{"1011", "1011", "0000", "0000", "0000"});
    ok &= Check(out, "count", t["count"], 2);
    ok &= Check(out, "returned", t["returned"], 2);
  }
  out << (ok ? "all checks passed\n" : "some checks FAILED\n");
  return ok ? kExitOk : kExitFailure;
}

int RunGuarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kWidthMismatch:
      case ErrorCode::kWidthOverflow:
      case ErrorCode::kFieldTooSmall:
      case ErrorCode::kDegreeTooSmall:
      case ErrorCode::kCounterOverflow:
      case ErrorCode::kSquareDiscriminant:
      case ErrorCode::kSearchExhausted:
      case ErrorCode::kOverflow:
        return kExitData;
      default:
        return kExitUsage;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace hequery::cli
