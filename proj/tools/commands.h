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

#ifndef HEQUERY_TOOLS_COMMANDS_H_
#define HEQUERY_TOOLS_COMMANDS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hequery::cli {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNotFound = 4;

enum class Scheme { kGahi, kHqp };

struct CliConfig {
  Scheme scheme = Scheme::kGahi;
  uint64_t seed = 1;
  std::string params_path;  // scheme parameter overrides (JSON)
  std::string db_path;
  std::string keys_dir;     // existing key files; generated in-process when empty
  bool strict_encryption = false;
  bool precheck = false;
  bool no_leak = false;
  std::string out;          // JSON output path (file or, for keygen, directory)

  // Key generation without a database.
  unsigned lambda = 4;
  // HQP field override; chosen from the data when zero.
  unsigned field_n = 0;
  uint64_t field_p = 0;
};

struct FieldFindArgs {
  unsigned n = 0;
  uint64_t lower_bound = 0;
  uint64_t upper_limit = 1'000'000;
  bool collect_all = false;
  std::string out;
};

struct BenchArgs {
  std::vector<size_t> m_values{2, 4, 8};
  std::vector<size_t> n_bits_values{2, 4, 8};
};

// Each command writes human-readable text to `out`, writes JSON to the
// configured path, and returns an exit status. Library errors are mapped to
// statuses by RunGuarded.
int CmdKeygen(const CliConfig& config, std::ostream& out);
int CmdFieldFind(const FieldFindArgs& args, std::ostream& out);
int CmdQuery(const CliConfig& config, const std::string& query_bits, std::ostream& out);
int CmdUpdate(const CliConfig& config, const std::string& query_bits,
              const std::optional<std::string>& new_bits, std::ostream& out);
int CmdBench(const CliConfig& config, const BenchArgs& args, std::ostream& out);
int CmdDemo(int table, const CliConfig& config, std::ostream& out);

// Runs `body`, translating hequery::Error codes into exit statuses and
// printing the message to `err`.
int RunGuarded(const std::function<int()>& body, std::ostream& err);

}  // namespace hequery::cli

#endif  // HEQUERY_TOOLS_COMMANDS_H_
