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

#include "dfsl/bitstream.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace dfsl {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

[[noreturn]] void exhausted(std::uint64_t position, std::uint64_t count, std::uint64_t total) {
  throw StreamError(StreamError::Kind::kStreamExhausted,
                    "stream exhausted: cannot read " + std::to_string(count) + " bit(s) at bit " +
                        std::to_string(position) + " of a " + std::to_string(total) +
                        "-bit stream");
}

void check_count(std::uint64_t count) {
  if (count < 1) {
    throw StreamError(StreamError::Kind::kInvalidCount, "bit count must be at least 1");
  }
}

}  // namespace

std::string to_hex(const RawBits& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = "0x";
  for (std::uint8_t b : bits.data) {
    out += kDigits[b >> 4];
    out += kDigits[b & 0xf];
  }
  return out;
}

BitSource::BitSource(std::vector<std::uint8_t> bytes, std::uint64_t total_bits,
                     std::variant<HexOrigin, FileOrigin> origin)
    : bytes_(std::make_shared<const std::vector<std::uint8_t>>(std::move(bytes))),
      total_bits_(total_bits),
      origin_(std::move(origin)) {
  if (total_bits_ > 8 * static_cast<std::uint64_t>(bytes_->size())) {
    throw std::invalid_argument("bit source: total_bits exceeds byte storage");
  }
}

std::string BitSource::to_binary_string() const {
  std::string out;
  out.reserve(total_bits_);
  for (std::uint64_t o = 0; o < total_bits_; ++o) out += bit(o) ? '1' : '0';
  return out;
}

BitSource source_from_hex_literal(std::uint64_t value, int hex_digit_count) {
  if (hex_digit_count < 1 || hex_digit_count > 16) {
    throw std::invalid_argument("hex literal must have 1 to 16 digits");
  }
  if (hex_digit_count < 16 && (value >> (4 * hex_digit_count)) != 0) {
    throw std::invalid_argument("hex literal value does not fit its digit count");
  }
  std::string digits(static_cast<std::size_t>(hex_digit_count), '0');
  for (int i = hex_digit_count - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = "0123456789abcdef"[value & 0xf];
    value >>= 4;
  }
  return source_from_hex_string(digits);
}

BitSource source_from_hex_string(std::string_view digits) {
  if (digits.size() >= 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    digits.remove_prefix(2);
  }
  if (digits.empty()) throw std::invalid_argument("hex string has no digits");
  std::vector<std::uint8_t> bytes((digits.size() + 1) / 2, 0);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    int v = hex_value(digits[i]);
    if (v < 0) {
      throw std::invalid_argument(std::string("invalid hex digit '") + digits[i] + "'");
    }
    bytes[i / 2] |= static_cast<std::uint8_t>(i % 2 == 0 ? v << 4 : v);
  }
  return BitSource(std::move(bytes), 4 * static_cast<std::uint64_t>(digits.size()),
                   HexOrigin{static_cast<int>(std::min<std::size_t>(digits.size(), INT32_MAX))});
}

BitSource source_from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open data file '" + path.string() + "'", path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading data file '" + path.string() + "'", path.string());
  std::uint64_t bits = 8 * static_cast<std::uint64_t>(bytes.size());
  return BitSource(std::move(bytes), bits, FileOrigin{path.string()});
}

BitCursor::BitCursor(const BitSource& source, std::uint64_t position)
    : source_(source), position_(position) {
  if (position_ > source_.total_bits()) {
    throw StreamError(StreamError::Kind::kPositionOutOfRange,
                      "cursor position " + std::to_string(position) + " beyond end of stream");
  }
}

FieldBits BitCursor::extract(std::uint64_t offset, std::uint64_t count) const {
  check_count(count);
  const std::uint64_t total = source_.total_bits();
  if (offset > total || count > total - offset) exhausted(offset, count, total);

  FieldBits out;
  out.offset_bits = offset;
  out.width_bits = count;
  const auto bytes = source_.bytes();

  if (count <= 64) {
    std::uint64_t value = 0;
    std::uint64_t o = offset;
    std::uint64_t left = count;
    while (left > 0) {
      unsigned in_byte = static_cast<unsigned>(o & 7);
      unsigned avail = 8 - in_byte;
      unsigned take = static_cast<unsigned>(std::min<std::uint64_t>(avail, left));
      unsigned chunk = (bytes[o >> 3] >> (avail - take)) & ((1u << take) - 1u);
      value = (value << take) | chunk;
      o += take;
      left -= take;
    }
    out.value = value;
    return out;
  }

  RawBits raw;
  raw.width = count;
  raw.data.assign((count + 7) / 8, 0);
  const std::uint64_t pad = 8 * raw.data.size() - count;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (source_.bit(offset + i)) {
      std::uint64_t d = pad + i;
      raw.data[d >> 3] |= static_cast<std::uint8_t>(0x80u >> (d & 7));
    }
  }
  out.value = std::move(raw);
  return out;
}

std::uint64_t BitCursor::offset_for_index(std::uint64_t position_index,
                                          std::uint64_t count) const {
  const std::uint64_t total = source_.total_bits();
  if (position_index >= total) {
    throw StreamError(StreamError::Kind::kPositionOutOfRange,
                      "bit position @" + std::to_string(position_index) + " outside a " +
                          std::to_string(total) + "-bit stream");
  }
  check_count(count);
  const std::uint64_t offset = total - 1 - position_index;
  if (count > position_index + 1) exhausted(offset, count, total);
  return offset;
}

std::uint64_t BitCursor::offset_for_range(std::uint64_t start, std::uint64_t stop) const {
  if (start < stop) {
    throw StreamError(StreamError::Kind::kInvalidRange,
                      "invalid bit range " + std::to_string(start) + " ~ " + std::to_string(stop) +
                          ": start must not be below stop");
  }
  return offset_for_index(start, start - stop + 1);
}

FieldBits BitCursor::read_bits(std::uint64_t count) {
  FieldBits f = extract(position_, count);
  position_ += count;
  return f;
}

FieldBits BitCursor::peek_bits(std::uint64_t count) const { return extract(position_, count); }

FieldBits BitCursor::read_bits_at(std::uint64_t position_index, std::uint64_t count) {
  FieldBits f = peek_bits_at(position_index, count);
  position_ = f.offset_bits + f.width_bits;
  return f;
}

FieldBits BitCursor::peek_bits_at(std::uint64_t position_index, std::uint64_t count) const {
  return extract(offset_for_index(position_index, count), count);
}

FieldBits BitCursor::read_range(std::uint64_t start, std::uint64_t stop) {
  FieldBits f = peek_range(start, stop);
  position_ = f.offset_bits + f.width_bits;
  return f;
}

FieldBits BitCursor::peek_range(std::uint64_t start, std::uint64_t stop) const {
  std::uint64_t offset = offset_for_range(start, stop);
  return extract(offset, start - stop + 1);
}

FieldBits BitCursor::read_bytes(std::uint64_t count) {
  check_count(count);
  if (count > UINT64_MAX / 8) exhausted(position_, count, source_.total_bits());
  return read_bits(8 * count);
}

FieldBits BitCursor::peek_bytes(std::uint64_t count) const {
  check_count(count);
  if (count > UINT64_MAX / 8) exhausted(position_, count, source_.total_bits());
  return peek_bits(8 * count);
}

}  // namespace dfsl
