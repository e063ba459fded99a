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

#include "dfsl/lexer.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace dfsl {
namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (at_end()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  SourceSpan here() const { return SourceSpan{line_, col_, pos_}; }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::string text, SourceSpan span) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.span = span;
    return t;
  }

  Token next() {
    SourceSpan start = here();
    char c = peek();

    if (is_digit(c)) return number(start);
    if (c == '"') return string_lit(start);
    if (c == '$' || c == '%') {
      if (is_name_char(peek(1))) {
        advance();
        std::size_t begin = pos_;
        while (!at_end() && is_name_char(peek())) advance();
        return make(c == '$' ? TokenKind::kDomainName : TokenKind::kSubDomainName,
                    lowercase(src_.substr(begin, pos_ - begin)), start);
      }
      if (c == '$') throw LexError("'$' must be followed by a domain name", start);
      advance();
      return make(TokenKind::kOperator, "%", start);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t begin = pos_;
      while (!at_end() && is_name_char(peek())) advance();
      return make(TokenKind::kWord, lowercase(src_.substr(begin, pos_ - begin)), start);
    }

    static constexpr std::string_view kTwoChar[] = {":=", "==", "!=", "<=", ">=", "&&", "||"};
    for (std::string_view op : kTwoChar) {
      if (c == op[0] && peek(1) == op[1]) {
        advance();
        advance();
        return make(TokenKind::kOperator, std::string(op), start);
      }
    }
    switch (c) {
      case '=': case '+': case '-': case '*': case '/': case '<': case '>':
      case '!': case '~': case '@':
        advance();
        return make(TokenKind::kOperator, std::string(1, c), start);
      case ';': case ',': case '(': case ')': case '{': case '}': case ':':
        advance();
        return make(TokenKind::kPunct, std::string(1, c), start);
      default:
        break;
    }
    std::string shown = std::isprint(static_cast<unsigned char>(c))
                            ? std::string("'") + c + "'"
                            : "byte " + std::to_string(static_cast<unsigned char>(c));
    throw LexError("unexpected character " + shown, start);
  }

  Token number(SourceSpan start) {
    std::size_t begin = pos_;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance();
      advance();
      std::size_t digits_begin = pos_;
      while (!at_end() && std::isxdigit(static_cast<unsigned char>(peek()))) advance();
      std::size_t n = pos_ - digits_begin;
      if (n == 0) throw LexError("malformed number: hexadecimal literal has no digits", start);
      if (is_name_char(peek())) {
        throw LexError("malformed number '" + std::string(src_.substr(begin, pos_ + 1 - begin)) + "'",
                       start);
      }
      if (n > 16) throw LexError("malformed number: hexadecimal literal wider than 64 bits", start);
      std::string digits = lowercase(src_.substr(digits_begin, n));
      std::uint64_t v = 0;
      std::from_chars(digits.data(), digits.data() + digits.size(), v, 16);
      Token t = make(TokenKind::kNumber, "0x" + digits, start);
      t.number_value = v;
      t.hex_digit_count = static_cast<int>(n);
      return t;
    }

    while (!at_end() && is_digit(peek())) advance();
    bool real = false;
    if (peek() == '.') {
      real = true;
      advance();
      if (!is_digit(peek())) throw LexError("malformed number: missing digits after '.'", start);
      while (!at_end() && is_digit(peek())) advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t k = 1;
      if (peek(1) == '+' || peek(1) == '-') k = 2;
      if (!is_digit(peek(k))) throw LexError("malformed number: bad exponent", start);
      real = true;
      for (std::size_t i = 0; i < k; ++i) advance();
      while (!at_end() && is_digit(peek())) advance();
    }
    if (is_name_char(peek()) || peek() == '.') {
      throw LexError("malformed number '" + std::string(src_.substr(begin, pos_ + 1 - begin)) + "'",
                     start);
    }
    std::string text = lowercase(src_.substr(begin, pos_ - begin));
    Token t = make(TokenKind::kNumber, text, start);
    if (real) {
      double d = 0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
      if (ec != std::errc{}) throw LexError("malformed number '" + text + "'", start);
      t.number_value = d;
    } else {
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{}) throw LexError("malformed number: '" + text + "' exceeds 64 bits", start);
      t.number_value = v;
    }
    return t;
  }

  Token string_lit(SourceSpan start) {
    advance();  // opening quote
    std::string value;
    while (true) {
      if (at_end() || peek() == '\n') throw LexError("unterminated string literal", start);
      char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (at_end()) throw LexError("unterminated string literal", start);
        char e = peek();
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          default:
            throw LexError(std::string("unknown escape '\\") + e + "' in string literal", here());
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    return make(TokenKind::kStringLit, std::move(value), start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kNumber: return "number";
    case TokenKind::kWord: return "word";
    case TokenKind::kDomainName: return "domain name";
    case TokenKind::kSubDomainName: return "sub-domain name";
    case TokenKind::kStringLit: return "string";
    case TokenKind::kOperator: return "operator";
    case TokenKind::kPunct: return "punctuation";
  }
  return "token";
}

bool same_lexeme(const Token& a, const Token& b) {
  return a.kind == b.kind && a.text == b.text && a.number_value == b.number_value &&
         a.hex_digit_count == b.hex_digit_count;
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

std::string render_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (const Token& t : tokens) {
    if (!out.empty()) out += ' ';
    switch (t.kind) {
      case TokenKind::kDomainName: out += '$' + t.text; break;
      case TokenKind::kSubDomainName: out += '%' + t.text; break;
      case TokenKind::kStringLit:
        out += '"';
        for (char c : t.text) {
          switch (c) {
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            default: out += c;
          }
        }
        out += '"';
        break;
      default: out += t.text;
    }
  }
  return out;
}

}  // namespace dfsl
