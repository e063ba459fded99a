// Copyright 2026 The DFSL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DFSL_BITSTREAM_HPP_
#define DFSL_BITSTREAM_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dfsl/error.hpp"

namespace dfsl {

// Field value wider than 64 bits. The bits are right-aligned in `data`
// (big-endian), so data.size() == ceil(width / 8).
struct RawBits {
  std::vector<std::uint8_t> data;
  std::uint64_t width = 0;

  friend bool operator==(const RawBits&, const RawBits&) = default;
};

// "0x" followed by the lowercase hex digits of the big-endian bytes.
std::string to_hex(const RawBits& bits);

struct HexOrigin {
  int hex_digit_count = 0;
};
struct FileOrigin {
  std::string path;
};

// Immutable bit stream. Bit offset 0 is the most significant bit of byte 0.
class BitSource {
 public:
  BitSource() = default;
  BitSource(std::vector<std::uint8_t> bytes, std::uint64_t total_bits,
            std::variant<HexOrigin, FileOrigin> origin);

  std::span<const std::uint8_t> bytes() const { return *bytes_; }
  std::uint64_t total_bits() const { return total_bits_; }
  const std::variant<HexOrigin, FileOrigin>& origin() const { return origin_; }

  // Single bit at `offset` (0 or 1); offset < total_bits().
  unsigned bit(std::uint64_t offset) const {
    return ((*bytes_)[offset >> 3] >> (7 - (offset & 7))) & 1u;
  }

  // Stream rendered as '0'/'1' characters.
  std::string to_binary_string() const;

 private:
  std::shared_ptr<const std::vector<std::uint8_t>> bytes_ =
      std::make_shared<const std::vector<std::uint8_t>>();
  std::uint64_t total_bits_ = 0;
  std::variant<HexOrigin, FileOrigin> origin_;
};

// A hex literal of `hex_digit_count` digits; leading zero nibbles count.
// Throws std::invalid_argument when the digit count is out of range for the
// value.
BitSource source_from_hex_literal(std::uint64_t value, int hex_digit_count);

// Arbitrary-length hex digit string, with or without a "0x" prefix.
// Throws std::invalid_argument on a non-hex character or an empty string.
BitSource source_from_hex_string(std::string_view digits);

// Loads the whole file verbatim. Throws IoError.
BitSource source_from_file(const std::filesystem::path& path);

struct FieldBits {
  std::variant<std::uint64_t, RawBits> value;
  std::uint64_t offset_bits = 0;
  std::uint64_t width_bits = 0;
};

// Moving bit pointer over a shared BitSource. All reads assemble MSB-first.
// The positional forms (read_bits_at, read_range) use significance indexing:
// the stream bit at offset o has index W-1-o with W = total_bits. They move
// the cursor to just past the field.
class BitCursor {
 public:
  explicit BitCursor(const BitSource& source, std::uint64_t position = 0);

  const BitSource& source() const { return source_; }
  std::uint64_t position() const { return position_; }
  std::uint64_t remaining() const { return source_.total_bits() - position_; }

  FieldBits read_bits(std::uint64_t count);
  FieldBits peek_bits(std::uint64_t count) const;

  FieldBits read_bits_at(std::uint64_t position_index, std::uint64_t count);
  FieldBits peek_bits_at(std::uint64_t position_index, std::uint64_t count) const;

  // Bits start..stop inclusive, start >= stop.
  FieldBits read_range(std::uint64_t start, std::uint64_t stop);
  FieldBits peek_range(std::uint64_t start, std::uint64_t stop) const;

  FieldBits read_bytes(std::uint64_t count);
  FieldBits peek_bytes(std::uint64_t count) const;

 private:
  FieldBits extract(std::uint64_t offset, std::uint64_t count) const;
  std::uint64_t offset_for_index(std::uint64_t position_index, std::uint64_t count) const;
  std::uint64_t offset_for_range(std::uint64_t start, std::uint64_t stop) const;

  BitSource source_;
  std::uint64_t position_;
};

}  // namespace dfsl

#endif  // DFSL_BITSTREAM_HPP_
