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

#ifndef DFSL_EMITTER_HPP_
#define DFSL_EMITTER_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dfsl/interpreter.hpp"

namespace dfsl {

// Serializes a run as
//   <?xml version="1.0" encoding="UTF-8"?>
//   <dfsl-parse script="NAME" stream-bits="W">
//     <domain name="...">
//       <field name="..." offset="O" width="B" value="V"/>
//       ...
// Offsets are absolute stream bit offsets. Values are decimal for integers
// and 0x-hex for fields wider than 64 bits.
std::string to_xml(const RunReport& report, std::string_view script_name);

// Captured print output, optionally followed by one "name = value" line per
// leaf field in read order.
std::string to_text(const RunReport& report, bool include_field_dump);

// Minimal XML 1.0 reader (elements, attributes, character data, comments,
// processing instructions; no DTDs).
struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlElement> children;
  std::string text;  // concatenated character data

  const std::string* attribute(std::string_view key) const;
};

class XmlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws XmlError describing the first well-formedness violation.
XmlElement parse_xml(std::string_view doc);

// nullopt when `doc` is well-formed and follows the dfsl-parse schema;
// otherwise a description of the first violation.
std::optional<std::string> validate_xml(std::string_view doc);

struct XmlField {
  std::string name;
  std::uint64_t offset = 0;
  std::uint64_t width = 0;
  std::string value;

  friend bool operator==(const XmlField&, const XmlField&) = default;
};

// Field tuples of a dfsl-parse document in document order. Throws XmlError.
std::vector<XmlField> read_xml_fields(std::string_view doc);

// The same tuples taken directly from a report, for round-trip comparison.
std::vector<XmlField> report_fields(const RunReport& report);

}  // namespace dfsl

#endif  // DFSL_EMITTER_HPP_
