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

#include "dfsl/error.hpp"

#include <string>

namespace dfsl {

std::string format_error(const Error& error, std::string_view source) {
  std::string category = "error";
  if (dynamic_cast<const LexError*>(&error)) {
    category = "lexical error";
  } else if (dynamic_cast<const ParseError*>(&error)) {
    category = "parse error";
  } else if (dynamic_cast<const SemanticError*>(&error)) {
    category = "semantic error";
  } else if (dynamic_cast<const RuntimeError*>(&error) || dynamic_cast<const StreamError*>(&error)) {
    category = "runtime error";
  } else if (dynamic_cast<const IoError*>(&error)) {
    category = "I/O error";
  }

  std::string out;
  if (error.has_span()) {
    const SourceSpan& s = error.span();
    out = "line " + std::to_string(s.line) + ", column " + std::to_string(s.column) + ": ";
  }
  out += category + ": " + error.message();
  if (const auto* rt = dynamic_cast<const RuntimeError*>(&error); rt && !rt->domain_path().empty()) {
    out += " (in $" + rt->domain_path() + ")";
  }

  // Quote the offending source line when it is short enough to stay readable.
  if (error.has_span() && error.span().byte_offset <= source.size()) {
    std::size_t offset = error.span().byte_offset;
    std::size_t begin = 0;
    if (offset > 0) {
      std::size_t nl = source.rfind('\n', offset - 1);
      if (nl != std::string_view::npos) begin = nl + 1;
    }
    std::size_t end = source.find('\n', begin);
    std::string_view text = source.substr(begin, end == std::string_view::npos ? end : end - begin);
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
      text.remove_suffix(1);
    }
    if (!text.empty() && text.size() <= 80) out += " [near: " + std::string(text) + "]";
  }
  return out;
}

}  // namespace dfsl
