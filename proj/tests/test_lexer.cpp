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

#include <doctest.h>

#include <random>

#include "test_support.hpp"

using namespace dfsl;

TEST_CASE("binding statement tokens") {
  auto toks = tokenize("$PMD3 = 0x9351 ;");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].kind == TokenKind::kDomainName);
  CHECK(toks[0].text == "pmd3");
  CHECK(toks[1].is_op("="));
  CHECK(toks[2].kind == TokenKind::kNumber);
  CHECK(std::get<std::uint64_t>(toks[2].number_value) == 37713);
  CHECK(toks[2].hex_digit_count == 4);
  CHECK(toks[3].is_punct(";"));
}

TEST_CASE("comments and whitespace produce nothing") {
  CHECK(tokenize("// note\n").empty());
  CHECK(tokenize("").empty());
  CHECK(tokenize("  \t\n// a\n   // b").empty());
}

TEST_CASE("sigils and words") {
  auto sub = tokenize("%height");
  REQUIRE(sub.size() == 1);
  CHECK(sub[0].kind == TokenKind::kSubDomainName);
  CHECK(sub[0].text == "height");

  auto cmd = tokenize("getBit 15 ~ 9");
  REQUIRE(cmd.size() == 4);
  CHECK(cmd[0].is_word("getbit"));
  CHECK(std::get<std::uint64_t>(cmd[1].number_value) == 15);
  CHECK(cmd[2].is_op("~"));
  CHECK(std::get<std::uint64_t>(cmd[3].number_value) == 9);

  auto modulo = tokenize("%a % 4");
  REQUIRE(modulo.size() == 3);
  CHECK(modulo[1].is_op("%"));
}

TEST_CASE("number forms") {
  auto toks = tokenize("2356 0x3 0xb3f5 123.45 0.023e-5 0X0AB");
  REQUIRE(toks.size() == 6);
  CHECK(std::get<std::uint64_t>(toks[0].number_value) == 2356);
  CHECK(toks[0].hex_digit_count == 0);
  CHECK(std::get<std::uint64_t>(toks[1].number_value) == 3);
  CHECK(toks[1].hex_digit_count == 1);
  CHECK(std::get<std::uint64_t>(toks[2].number_value) == 0xb3f5);
  CHECK(std::get<double>(toks[3].number_value) == doctest::Approx(123.45));
  CHECK(std::get<double>(toks[4].number_value) == doctest::Approx(0.023e-5));
  CHECK(toks[5].text == "0x0ab");
  CHECK(toks[5].hex_digit_count == 3);
}

TEST_CASE("operators and punctuation") {
  auto toks = tokenize(":= == != <= >= && || ! @ ; , ( ) { } : < >");
  std::vector<std::string> texts;
  for (const auto& t : toks) texts.push_back(t.text);
  CHECK(texts == std::vector<std::string>{":=", "==", "!=", "<=", ">=", "&&", "||", "!", "@", ";",
                                          ",", "(", ")", "{", "}", ":", "<", ">"});
  CHECK(toks[9].kind == TokenKind::kPunct);
  CHECK(toks[0].kind == TokenKind::kOperator);
}

TEST_CASE("string literals") {
  auto toks = tokenize(R"(println("a \"q\" b");)");
  REQUIRE(toks.size() == 5);
  CHECK(toks[2].kind == TokenKind::kStringLit);
  CHECK(toks[2].text == "a \"q\" b");
}

TEST_CASE("lexical errors carry spans") {
  try {
    tokenize("$a = 1;\n\n  \"open");
    FAIL("expected LexError");
  } catch (const LexError& e) {
    CHECK(e.span().line == 3);
    CHECK(e.span().column == 3);
    CHECK(format_error(e, "$a = 1;\n\n  \"open").find("line 3") != std::string::npos);
  }
  try {
    tokenize("$a #");
    FAIL("expected LexError");
  } catch (const LexError& e) {
    CHECK(e.span().line == 1);
    CHECK(e.span().column == 4);
  }
  try {
    tokenize("abc #");
    FAIL("expected LexError");
  } catch (const LexError& e) {
    std::string msg = format_error(e, "abc #");
    CHECK(msg.find("line 1") != std::string::npos);
    CHECK(msg.find("column 5") != std::string::npos);
  }
  CHECK_THROWS_AS(tokenize("0x"), LexError);
  CHECK_THROWS_AS(tokenize("12abc"), LexError);
  CHECK_THROWS_AS(tokenize("1."), LexError);
  CHECK_THROWS_AS(tokenize("1e+"), LexError);
  CHECK_THROWS_AS(tokenize("0x12345678901234567"), LexError);
  CHECK_THROWS_AS(tokenize("99999999999999999999999"), LexError);
  CHECK_THROWS_AS(tokenize("$ x"), LexError);
}

TEST_CASE("spans are 1-based lines and columns") {
  auto toks = tokenize("$a := {\n  %x = getBit 4;\n}");
  for (const auto& t : toks) {
    CHECK(t.span.line >= 1);
    CHECK(t.span.column >= 1);
  }
  CHECK(toks[3].span.line == 2);
  CHECK(toks[3].span.column == 3);
}

TEST_CASE("case insensitivity of word tokens") {
  auto upper = tokenize("GETBIT $PMD3 %TxPower");
  auto lower = tokenize("getbit $pmd3 %txpower");
  REQUIRE(upper.size() == lower.size());
  for (std::size_t i = 0; i < upper.size(); ++i) CHECK(same_lexeme(upper[i], lower[i]));
}

TEST_CASE("property: tokenize(render(tokens)) is lexeme-stable") {
  const std::string pmd = dfsl::testing::read_text(dfsl::testing::scripts_dir() + "/pmd.dfsl");
  const std::string icmp = dfsl::testing::read_text(dfsl::testing::scripts_dir() + "/icmp.dfsl");

  // Random token soup built from a fixed alphabet of lexemes.
  static const std::vector<std::string> kAlphabet = {
      "$dom",  "%sub",  "getBit", "seeByte", "0x1F",  "0x0",     "42",  "3.5",  "1e3",
      "\"s\"", "\"a\\\"b\"", ":=", "==",   "!=",   "<=",   ">=",  "&&",   "||",   "!",
      "@",     "~",     "+",      "-",       "*",     "/",       "%",   ";",    ",",
      "(",     ")",     "{",      "}",       ":",     "<",       ">",   "where"};
  std::mt19937_64 rng(99);
  std::vector<std::string> sources = {pmd, icmp};
  for (int i = 0; i < 300; ++i) {
    std::string s;
    const int n = 1 + static_cast<int>(rng() % 30);
    for (int k = 0; k < n; ++k) s += kAlphabet[rng() % kAlphabet.size()] + " ";
    sources.push_back(s);
  }

  for (const auto& src : sources) {
    auto toks = tokenize(src);
    auto again = tokenize(render_tokens(toks));
    REQUIRE(again.size() == toks.size());
    for (std::size_t i = 0; i < toks.size(); ++i) REQUIRE(same_lexeme(toks[i], again[i]));
  }
}
