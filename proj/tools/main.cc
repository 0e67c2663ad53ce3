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

#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "commands.h"

namespace {

using hequery::cli::CliConfig;
using hequery::cli::Scheme;

void AddCommon(CLI::App* cmd, CliConfig& config) {
  static const std::map<std::string, Scheme> kSchemes{{"gahi", Scheme::kGahi},
                                                      {"hqp", Scheme::kHqp}};
  cmd->add_option("--scheme", config.scheme, "Protocol: gahi or hqp")
      ->transform(CLI::CheckedTransformer(kSchemes, CLI::ignore_case));
  cmd->add_option("--seed", config.seed, "64-bit seed for every random choice");
  cmd->add_option("--params", config.params_path, "JSON file with scheme parameters")
      ->check(CLI::ExistingFile);
  cmd->add_option("--keys", config.keys_dir, "Directory holding keys written by keygen")
      ->check(CLI::ExistingDirectory);
  cmd->add_flag("--strict-enc", config.strict_encryption,
                "Encrypt record bits and counters instead of using plaintext constants");
  cmd->add_option("--field-n", config.field_n, "hqp: cyclotomic index n");
  cmd->add_option("--field-p", config.field_p, "hqp: field prime p");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blind equality search over homomorphically encrypted queries"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hequery 0.1.0");

  CliConfig config;
  std::string query;
  std::string new_record;

  auto* keygen = app.add_subcommand("keygen", "Generate and write a key pair");
  AddCommon(keygen, config);
  keygen->add_option("--db", config.db_path, "Size the parameters for this database")
      ->check(CLI::ExistingFile);
  keygen->add_option("--lambda", config.lambda, "gahi: security parameter when no db is given");
  keygen->add_option("--out", config.out, "Output directory (default: .)");

  hequery::cli::FieldFindArgs field_args;
  auto* field_find = app.add_subcommand("field-find", "Find a prime making Phi_n irreducible");
  field_find->add_option("--n", field_args.n, "Cyclotomic index")->required();
  field_find->add_option("--lower-bound", field_args.lower_bound, "Only primes above this");
  field_find->add_option("--upper-limit", field_args.upper_limit, "Give up above this prime");
  field_find->add_flag("--all", field_args.collect_all, "Test every prime up to the limit");
  field_find->add_option("--out", field_args.out, "Write the JSON report here");

  auto* query_cmd = app.add_subcommand("query", "Run a select session");
  AddCommon(query_cmd, config);
  query_cmd->add_option("--db", config.db_path, "Database (CSV id,bits or JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  query_cmd->add_option("--query", query, "Query bits, most significant first")->required();
  query_cmd->add_flag("--precheck", config.precheck, "hqp: abort early when the value is absent");
  query_cmd->add_flag("--no-leak", config.no_leak, "hqp: return the full sequence, hide the count");
  query_cmd->add_option("--out", config.out, "Write the session transcript here");

  auto* update_cmd = app.add_subcommand("update", "Replace matching records (gahi)");
  AddCommon(update_cmd, config);
  update_cmd->add_option("--db", config.db_path, "Database")->required()->check(CLI::ExistingFile);
  update_cmd->add_option("--query", query, "Query bits")->required();
  update_cmd->add_option("--value", new_record, "New record bits")->required();
  update_cmd->add_option("--out", config.out, "Write the encrypted view here");

  auto* delete_cmd = app.add_subcommand("delete", "Zero matching records (gahi)");
  AddCommon(delete_cmd, config);
  delete_cmd->add_option("--db", config.db_path, "Database")->required()->check(CLI::ExistingFile);
  delete_cmd->add_option("--query", query, "Query bits")->required();
  delete_cmd->add_option("--out", config.out, "Write the encrypted view here");

  hequery::cli::BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Count operations over an (m, n_bits) grid");
  AddCommon(bench, config);
  bench->add_option("--m", bench_args.m_values, "Record counts")->delimiter(',');
  bench->add_option("--n-bits", bench_args.n_bits_values, "Record widths")->delimiter(',');
  bench->add_option("--out", config.out, "JSON report path; the table goes next to it as .txt");

  int table = 0;
  auto* demo = app.add_subcommand("demo", "Walk through a sample table and check it");
  AddCommon(demo, config);
  demo->add_option("--table", table, "1 (gahi) or 2 (hqp)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hequery::cli::kExitUsage;
  }

  using namespace hequery::cli;
  return RunGuarded(
      [&]() -> int {
        if (keygen->parsed()) return CmdKeygen(config, std::cout);
        if (field_find->parsed()) return CmdFieldFind(field_args, std::cout);
        if (query_cmd->parsed()) return CmdQuery(config, query, std::cout);
        if (update_cmd->parsed()) return CmdUpdate(config, query, new_record, std::cout);
        if (delete_cmd->parsed()) return CmdUpdate(config, query, std::nullopt, std::cout);
        if (bench->parsed()) return CmdBench(config, bench_args, std::cout);
        return CmdDemo(table, config, std::cout);
      },
      std::cerr);
}
