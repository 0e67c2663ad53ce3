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

// Records, databases and the encodings that carry them into each plaintext
// space. Bits are little-endian everywhere internally; the big-endian string
// form ("1100") is only used for input files and display.

#ifndef HEQUERY_RECORD_CODEC_H_
#define HEQUERY_RECORD_CODEC_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hequery/common.h"
#include "hequery/cyclotomic.h"

namespace hequery::codec {

struct PlainRecord {
  std::vector<uint8_t> bits;  // little-endian, values 0/1
  size_t id = 0;              // 1-based position in the database

  // "1100" (most significant bit first) -> bits {0,0,1,1}.
  static PlainRecord FromDisplay(std::string_view big_endian, size_t id = 0);
  static PlainRecord FromValue(uint64_t value, size_t n_bits, size_t id = 0);

  std::string Display() const;
  uint64_t Value() const;

  bool operator==(const PlainRecord&) const = default;
};

struct Database {
  std::vector<PlainRecord> records;
  size_t n_bits = 0;

  // Records from display strings, ids assigned 1..m.
  static Database FromDisplay(const std::vector<std::string>& rows);
  static Database FromValues(const std::vector<uint64_t>& values, size_t n_bits);

  size_t size() const { return records.size(); }

  // Uniform width, contiguous 1-based ids, 0/1 bits. Throws kWidthMismatch
  // or kParse.
  void Validate() const;
};

// CSV with header `id,bits`, bits as a big-endian 0/1 string.
Database LoadCsv(std::istream& in);
// JSON array of big-endian bit strings.
Database LoadJson(std::string_view text);
// Dispatches on the extension (.csv / .json).
Database LoadDatabase(const std::string& path);

std::vector<uint8_t> EncodeBits(const PlainRecord& record);

// Bit i becomes the coefficient of X^i. Throws kWidthOverflow unless
// n_bits < field degree.
field::FieldElement EncodeField(const PlainRecord& record,
                                const std::shared_ptr<const field::FieldContext>& ctx);

// Inverse of EncodeField: nullopt unless every coefficient is 0/1 and the
// degree fits in n_bits.
std::optional<PlainRecord> DecodeField(const field::FieldElement& element, size_t n_bits,
                                       size_t id = 0);

// Constant polynomial j. Throws kCounterOverflow when j >= p.
field::FieldElement EncodeCounter(uint64_t j,
                                  const std::shared_ptr<const field::FieldContext>& ctx);

// Ordered list of encrypted records; `key_id` ties it to one key context.
template <class Entry>
struct EncryptedSequence {
  std::vector<Entry> entries;
  uint64_t key_id = 0;

  size_t size() const { return entries.size(); }
};

// Right-pads every sequence with fresh encryptions of zero to the longest
// length, then adds entry-wise. Throws kKeyContextMismatch when the
// sequences disagree on key_id.
template <class Entry, class AddFn, class ZeroFn>
EncryptedSequence<Entry> PadAdd(std::span<const EncryptedSequence<Entry>> seqs, AddFn&& add,
                                ZeroFn&& fresh_zero) {
  EncryptedSequence<Entry> out;
  if (seqs.empty()) return out;
  out.key_id = seqs.front().key_id;
  size_t length = 0;
  for (const auto& s : seqs) {
    if (s.key_id != out.key_id) {
      throw Error(ErrorCode::kKeyContextMismatch, "sequences encrypted under different keys");
    }
    length = std::max(length, s.size());
  }
  out.entries.reserve(length);
  for (size_t j = 0; j < length; ++j) {
    std::optional<Entry> acc;
    for (const auto& s : seqs) {
      Entry term = j < s.size() ? s.entries[j] : fresh_zero();
      acc = acc ? add(*acc, term) : std::move(term);
    }
    out.entries.push_back(std::move(*acc));
  }
  return out;
}

}  // namespace hequery::codec

#endif  // HEQUERY_RECORD_CODEC_H_
