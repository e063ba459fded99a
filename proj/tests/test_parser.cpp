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

#include "dfsl/parser.hpp"

#include <doctest.h>

#include <algorithm>
#include <cctype>

#include "test_support.hpp"

using namespace dfsl;

namespace {

std::string pmd_source() {
  return dfsl::testing::read_text(dfsl::testing::scripts_dir() + "/pmd.dfsl");
}

ParseError parse_error_of(std::string_view src) {
  try {
    parse_source(src);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected ParseError");
  throw;  // unreachable
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// Drops string literal contents from an S-expression so that scripts
// differing only in literal case compare equal.
std::string strip_strings(const std::string& s) {
  std::string out;
  bool in = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) {
      in = !in;
      out += '"';
      continue;
    }
    if (!in) out += s[i];
  }
  return out;
}

}  // namespace

TEST_CASE("PMD script structure") {
  ScriptAst ast = parse_source(pmd_source());
  REQUIRE(ast.items.size() == 2);

  const auto& binding = std::get<DomainBinding>(ast.items[0]);
  CHECK(binding.name == "pmd3");
  const auto& lit = std::get<NumberLit>(binding.init->node);
  CHECK(std::get<std::uint64_t>(lit.value) == 0x9351);
  CHECK(lit.hex_digit_count == 4);

  const auto& def = std::get<DomainDef>(ast.items[1]);
  CHECK(def.name == "pmd3");
  REQUIRE(def.body.size() == 8);
  const std::vector<std::string> names = {"txpowervalue", "txpowermode", "sbm",        "supstream",
                                          "chinaloop",    "oldisable",   "roldisable", "hybridselect"};
  for (std::size_t i = 0; i < 8; ++i) {
    const auto& f = std::get<FieldStmt>(def.body[i]);
    CHECK(f.name == names[i]);
  }
  const auto& first = std::get<ReadCommand>(std::get<FieldStmt>(def.body[0]).rvalue);
  CHECK(first.verb == ReadVerb::kGetBit);
  CHECK(to_sexpr(first) == "(getbit 15 ~ 11)");
  const auto& sbm = std::get<ReadCommand>(std::get<FieldStmt>(def.body[2]).rvalue);
  CHECK(to_sexpr(sbm) == "(getbit @8 1)");

  REQUIRE(def.where_block.has_value());
  CHECK(def.where_block->size() >= 13);
  const auto& sw = std::get<SwitchStmt>((*def.where_block)[2]->node);
  CHECK(sw.cases.size() == 3);
  CHECK(sw.cases[1].has_break);
  CHECK(sw.default_block.has_value());
  CHECK(sw.default_position == 3);
}

TEST_CASE("order preservation: i-th field is the i-th '%name =' in source") {
  const std::string src = dfsl::testing::read_text(dfsl::testing::scripts_dir() + "/icmp.dfsl");
  ScriptAst ast = parse_source(src);
  std::vector<std::string> from_ast;
  for (const auto& item : ast.items) {
    if (const auto* def = std::get_if<DomainDef>(&item)) {
      for (const auto& b : def->body) from_ast.push_back(std::get<FieldStmt>(b).name);
    }
  }
  std::vector<std::string> from_tokens;
  auto toks = tokenize(src);
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].kind == TokenKind::kSubDomainName && toks[i + 1].is_op("=")) {
      from_tokens.push_back(toks[i].text);
    }
  }
  CHECK(from_ast == from_tokens);
  CHECK(from_ast.size() == 21 + 7);  // reads + links
}

TEST_CASE("empty input") { CHECK(parse_source("").items.empty()); }

TEST_CASE("missing brace reports end of input") {
  ParseError e = parse_error_of("$a := { %x = getBit 4 ");
  CHECK(std::string(e.what()).find("end of input") != std::string::npos);
  CHECK(e.span().line == 1);
}

TEST_CASE("syntax errors") {
  CHECK(parse_error_of("$a := { %x = getBit 4 }").expected() == "';'");
  parse_error_of("%x = 1;");
  parse_error_of("$a := { %x = getByte @3, 1; }");
  parse_error_of("$a := { %x = getByte 3 ~ 1; }");
  parse_error_of("$a := { print(\"x\" ; }");
  parse_error_of("$a := { %x = getBit 1; } where { %y = $a; }");
  parse_error_of("$a := { %x = getFile <\"f\">; }");
  parse_error_of("$a := { switch (1) { case 1: break; print(1); } }");
  parse_error_of("$a := { switch (1) { default: ; default: ; } }");
  parse_error_of("$a := { break; }");
  parse_error_of("$a = ;");
  parse_error_of("$a := { if 1 { } }");
  ParseError e = parse_error_of("$a := {\n  %x = getBit 4;\n  %y = = 2;\n}");
  CHECK(e.span().line == 3);
  CHECK(format_error(e, "$a := {\n  %x = getBit 4;\n  %y = = 2;\n}").find("line 3") !=
        std::string::npos);
}

TEST_CASE("read command forms") {
  auto rvalue = [](std::string_view body) {
    ScriptAst ast = parse_source("$a := { %f = " + std::string(body) + "; }");
    return to_sexpr(std::get<ReadCommand>(
        std::get<FieldStmt>(std::get<DomainDef>(ast.items[0]).body[0]).rvalue));
  };
  CHECK(rvalue("getBit") == "(getbit _)");
  CHECK(rvalue("getBit 4") == "(getbit 4)");
  CHECK(rvalue("getBit %ihl") == "(getbit %ihl)");
  CHECK(rvalue("getBit (%ihl - 5) * 4") == "(getbit (* (- %ihl 5) 4))");
  CHECK(rvalue("getBit 2+2") == "(getbit (+ 2 2))");
  CHECK(rvalue("getByte") == "(getbytes _)");
  CHECK(rvalue("getBytes 3") == "(getbytes 3)");
  CHECK(rvalue("seeByte 2") == "(seebytes 2)");
  CHECK(rvalue("seeBit @15, 3") == "(seebit @15 3)");
  CHECK(rvalue("seeBit 15 ~ 9") == "(seebit 15 ~ 9)");
}

TEST_CASE("body items: fields, links, assignments and inline statements") {
  ScriptAst ast = parse_source(R"(
    $a := {
      %x = getBit 4;
      %link = $b;
      %sum = %x + 1;
      %viaread = getBit 4 == 1;
      println("x = ", %x);
    }
    $b := { %y = getByte; };
  )");
  const auto& def = std::get<DomainDef>(ast.items[0]);
  REQUIRE(def.body.size() == 5);
  CHECK(std::holds_alternative<FieldStmt>(def.body[0]));
  CHECK(std::holds_alternative<DomainRef>(std::get<FieldStmt>(def.body[1]).rvalue));
  CHECK(std::holds_alternative<AssignStmt>(std::get<StmtPtr>(def.body[2])->node));
  CHECK(std::holds_alternative<AssignStmt>(std::get<StmtPtr>(def.body[3])->node));
  CHECK(std::holds_alternative<PrintStmt>(std::get<StmtPtr>(def.body[4])->node));
}

TEST_CASE("statement grammar") {
  ScriptAst ast = parse_source(R"(
    $a := { %x = getBit 4; } where {
      %i = 0;
      while (%i < 3) { %i = %i + 1; }
      do { %i = %i - 1; } while (%i > 0);
      for (%j = 0; %j < 2; %j = %j + 1) print(%j);
      if (%x == 1 && !(%x > 2) || %x != 0) println("a"); else if (%x) println("b"); else { println("c"); }
      switch (%x) { default: println("d"); case 1: case 2: println("e"); break; }
      -%x;
    };
  )");
  const auto& def = std::get<DomainDef>(ast.items[0]);
  const Block& where = *def.where_block;
  REQUIRE(where.size() == 7);
  CHECK(std::holds_alternative<WhileStmt>(where[1]->node));
  CHECK(std::holds_alternative<DoWhileStmt>(where[2]->node));
  CHECK(std::holds_alternative<ForStmt>(where[3]->node));
  const auto& iff = std::get<IfStmt>(where[4]->node);
  CHECK(to_sexpr(*iff.cond) == "(|| (&& (== %x 1) (! (> %x 2))) (!= %x 0))");
  REQUIRE(iff.else_block.has_value());
  CHECK(std::holds_alternative<IfStmt>((*iff.else_block)[0]->node));
  const auto& sw = std::get<SwitchStmt>(where[5]->node);
  CHECK(sw.default_position == 0);
  CHECK(sw.cases.size() == 2);
  CHECK(sw.cases[0].body.empty());
  CHECK_FALSE(sw.cases[0].has_break);
  CHECK(sw.cases[1].has_break);
}

TEST_CASE("operator precedence") {
  auto expr = [](std::string_view e) {
    ScriptAst ast = parse_source("$a := {} where { %r = " + std::string(e) + "; }");
    const auto& st = std::get<AssignStmt>((*std::get<DomainDef>(ast.items[0]).where_block)[0]->node);
    return to_sexpr(*st.value);
  };
  CHECK(expr("2 + 3 * 4") == "(+ 2 (* 3 4))");
  CHECK(expr("(2 + 3) * 4") == "(* (+ 2 3) 4)");
  CHECK(expr("10 - 4 - 3") == "(- (- 10 4) 3)");
  CHECK(expr("1 < 2 == 3 >= 4") == "(== (< 1 2) (>= 3 4))");
  CHECK(expr("-1 + !0") == "(+ (neg 1) (! 0))");
  CHECK(expr("%a % 4") == "(% %a 4)");
}

TEST_CASE("getFile binding and optional terminators") {
  ScriptAst ast = parse_source("$d = getFile < \"x.dat\" >; $d := { %a = getByte; }; $e := {}");
  REQUIRE(ast.items.size() == 3);
  const auto& b = std::get<DomainBinding>(ast.items[0]);
  CHECK(std::get<GetFile>(b.init->node).path == "x.dat");
}

TEST_CASE("upper-cased script parses to the same tree") {
  const std::string src = pmd_source();
  CHECK(strip_strings(to_sexpr(parse_source(src))) == strip_strings(to_sexpr(parse_source(upper(src)))));
}
