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

#ifndef DFSL_LEXER_HPP_
#define DFSL_LEXER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dfsl/error.hpp"

namespace dfsl {

enum class TokenKind {
  kNumber,
  kWord,
  kDomainName,     // $name
  kSubDomainName,  // %name
  kStringLit,
  kOperator,
  kPunct,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kPunct;
  // Words and names are lowercased; names drop their sigil. String literals
  // hold the unescaped contents. Numbers hold the canonical lexeme.
  std::string text;
  // std::uint64_t for integer literals, double for reals. Unused otherwise.
  std::variant<std::monostate, std::uint64_t, double> number_value;
  // Number of digits after "0x" for hexadecimal literals, else 0.
  int hex_digit_count = 0;
  SourceSpan span;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_word(std::string_view t) const { return is(TokenKind::kWord, t); }
  bool is_op(std::string_view t) const { return is(TokenKind::kOperator, t); }
  bool is_punct(std::string_view t) const { return is(TokenKind::kPunct, t); }
};

// Equality on everything except the span.
bool same_lexeme(const Token& a, const Token& b);

// Throws LexError on an unterminated string, a character outside the
// alphabet, or a malformed number.
std::vector<Token> tokenize(std::string_view source);

// Re-renders tokens as source text joined by single spaces; numbers use their
// canonical lexeme and strings are re-escaped. tokenize(render_tokens(t)) is
// lexeme-equal to t.
std::string render_tokens(const std::vector<Token>& tokens);

}  // namespace dfsl

#endif  // DFSL_LEXER_HPP_
