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

#include "hequery/record_codec.h"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace hequery::codec {
namespace {

std::string Strip(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

PlainRecord PlainRecord::FromDisplay(std::string_view big_endian, size_t id) {
  PlainRecord r;
  r.id = id;
  r.bits.reserve(big_endian.size());
  for (auto it = big_endian.rbegin(); it != big_endian.rend(); ++it) {
    if (*it != '0' && *it != '1') {
      throw Error(ErrorCode::kParse, "record '" + std::string(big_endian) + "' is not a 0/1 string");
    }
    r.bits.push_back(static_cast<uint8_t>(*it - '0'));
  }
  if (r.bits.empty()) throw Error(ErrorCode::kParse, "empty record");
  return r;
}

PlainRecord PlainRecord::FromValue(uint64_t value, size_t n_bits, size_t id) {
  if (n_bits < 64 && (value >> n_bits) != 0) {
    throw Error(ErrorCode::kWidthOverflow, std::to_string(value) + " does not fit in " +
                                               std::to_string(n_bits) + " bits");
  }
  PlainRecord r;
  r.id = id;
  r.bits.resize(n_bits);
  for (size_t i = 0; i < n_bits; ++i) r.bits[i] = static_cast<uint8_t>((value >> i) & 1);
  return r;
}

std::string PlainRecord::Display() const {
  std::string out;
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) out.push_back(static_cast<char>('0' + *it));
  return out;
}

uint64_t PlainRecord::Value() const {
  uint64_t v = 0;
  for (size_t i = 0; i < bits.size() && i < 64; ++i) v |= static_cast<uint64_t>(bits[i] & 1) << i;
  return v;
}

Database Database::FromDisplay(const std::vector<std::string>& rows) {
  Database db;
  for (size_t i = 0; i < rows.size(); ++i) {
    db.records.push_back(PlainRecord::FromDisplay(rows[i], i + 1));
  }
  db.n_bits = db.records.empty() ? 0 : db.records.front().bits.size();
  db.Validate();
  return db;
}

Database Database::FromValues(const std::vector<uint64_t>& values, size_t n_bits) {
  Database db;
  db.n_bits = n_bits;
  for (size_t i = 0; i < values.size(); ++i) {
    db.records.push_back(PlainRecord::FromValue(values[i], n_bits, i + 1));
  }
  return db;
}

void Database::Validate() const {
  for (size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.bits.size() != n_bits) {
      throw Error(ErrorCode::kWidthMismatch, "record " + std::to_string(i + 1) + " has width " +
                                                 std::to_string(r.bits.size()) + ", expected " +
                                                 std::to_string(n_bits));
    }
    if (r.id != i + 1) {
      throw Error(ErrorCode::kParse, "record ids must be 1..m in order; got " +
                                         std::to_string(r.id) + " at position " +
                                         std::to_string(i + 1));
    }
    for (uint8_t b : r.bits) {
      if (b > 1) throw Error(ErrorCode::kParse, "record bits must be 0/1");
    }
  }
}

Database LoadCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || Strip(line) != "id,bits") {
    throw Error(ErrorCode::kParse, "CSV must start with the header 'id,bits'");
  }
  Database db;
  while (std::getline(in, line)) {
    std::string row = Strip(line);
    if (row.empty()) continue;
    auto comma = row.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::kParse, "bad CSV row '" + row + "'");
    size_t id = 0;
    try {
      id = std::stoul(Strip(row.substr(0, comma)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "bad record id in '" + row + "'");
    }
    db.records.push_back(PlainRecord::FromDisplay(Strip(row.substr(comma + 1)), id));
  }
  db.n_bits = db.records.empty() ? 0 : db.records.front().bits.size();
  db.Validate();
  return db;
}

Database LoadJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("database JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::kParse, "database JSON must be an array of bit strings");
  std::vector<std::string> rows;
  for (const auto& item : doc) {
    if (!item.is_string()) throw Error(ErrorCode::kParse, "database JSON entries must be strings");
    rows.push_back(item.get<std::string>());
  }
  return Database::FromDisplay(rows);
}

Database LoadDatabase(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open database '" + path + "'");
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    std::stringstream buffer;
    buffer << in.rdbuf();
    return LoadJson(buffer.str());
  }
  return LoadCsv(in);
}

std::vector<uint8_t> EncodeBits(const PlainRecord& record) { return record.bits; }

field::FieldElement EncodeField(const PlainRecord& record,
                                const std::shared_ptr<const field::FieldContext>& ctx) {
  if (record.bits.size() >= ctx->degree()) {
    throw Error(ErrorCode::kWidthOverflow, "record width " + std::to_string(record.bits.size()) +
                                               " needs a field of degree > width; degree is " +
                                               std::to_string(ctx->degree()));
  }
  poly::Poly coeffs(record.bits.size());
  for (size_t i = 0; i < record.bits.size(); ++i) coeffs[i] = record.bits[i];
  return field::FieldElement(ctx, coeffs);
}

std::optional<PlainRecord> DecodeField(const field::FieldElement& element, size_t n_bits,
                                       size_t id) {
  const auto& coeffs = element.coeffs();
  if (coeffs.size() > n_bits) return std::nullopt;
  PlainRecord r;
  r.id = id;
  r.bits.assign(n_bits, 0);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0 && coeffs[i] != 1) return std::nullopt;
    r.bits[i] = coeffs[i] == 1 ? 1 : 0;
  }
  return r;
}

field::FieldElement EncodeCounter(uint64_t j,
                                  const std::shared_ptr<const field::FieldContext>& ctx) {
  if (mpz_class(static_cast<unsigned long>(j)) >= ctx->p()) {
    throw Error(ErrorCode::kCounterOverflow, "counter " + std::to_string(j) +
                                                 " does not fit below p = " + ctx->p().get_str());
  }
  return field::FieldElement::Constant(ctx, static_cast<unsigned long>(j));
}

}  // namespace hequery::codec
