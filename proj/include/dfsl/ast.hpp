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

#ifndef DFSL_AST_HPP_
#define DFSL_AST_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dfsl/error.hpp"

namespace dfsl {

struct Expr;
struct Stmt;
using ExprPtr = std::shared_ptr<const Expr>;
using StmtPtr = std::shared_ptr<const Stmt>;
using Block = std::vector<StmtPtr>;

// ---- read commands -------------------------------------------------------

enum class ReadVerb { kGetBit, kSeeBit, kGetBytes, kSeeBytes };

constexpr bool is_peek(ReadVerb v) { return v == ReadVerb::kSeeBit || v == ReadVerb::kSeeBytes; }
constexpr bool is_byte_verb(ReadVerb v) {
  return v == ReadVerb::kGetBytes || v == ReadVerb::kSeeBytes;
}

// "getBit 4", "getBytes" (count omitted means one unit).
struct CountForm {
  ExprPtr count;  // may be null
};
// "getBit @8, 1"
struct AtForm {
  ExprPtr position;
  ExprPtr count;
};
// "getBit 15 ~ 11"
struct RangeForm {
  ExprPtr start;
  ExprPtr stop;
};

struct ReadCommand {
  ReadVerb verb = ReadVerb::kGetBit;
  std::variant<CountForm, AtForm, RangeForm> form;
  SourceSpan span;
};

// ---- expressions ---------------------------------------------------------

enum class BinaryOp { kAdd, kSub, kMul, kDiv, kMod, kEq, kNe, kLt, kLe, kGt, kGe, kAnd, kOr };
enum class UnaryOp { kNot, kNeg };

struct NumberLit {
  std::variant<std::uint64_t, double> value;
  int hex_digit_count = 0;
};
struct StringLit {
  std::string value;
};
struct SubDomainRef {
  std::string name;
};
struct BinaryExpr {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct UnaryExpr {
  UnaryOp op;
  ExprPtr operand;
};
struct ReadExpr {
  ReadCommand command;
};
struct DomainRef {
  std::string name;
};
struct GetFile {
  std::string path;
};

struct Expr {
  std::variant<NumberLit, StringLit, SubDomainRef, BinaryExpr, UnaryExpr, ReadExpr, DomainRef,
               GetFile>
      node;
  SourceSpan span;
};

// ---- statements ----------------------------------------------------------

struct PrintStmt {
  std::vector<ExprPtr> args;
  bool newline = false;
};
struct IfStmt {
  ExprPtr cond;
  Block then_block;
  std::optional<Block> else_block;
};
struct SwitchCase {
  ExprPtr value;
  Block body;
  bool has_break = false;
};
struct SwitchStmt {
  ExprPtr scrutinee;
  std::vector<SwitchCase> cases;
  std::optional<Block> default_block;
  bool default_has_break = false;
  // Index into cases before which "default:" appeared (cases.size() when last).
  std::size_t default_position = 0;
};
struct WhileStmt {
  ExprPtr cond;
  Block body;
};
struct DoWhileStmt {
  Block body;
  ExprPtr cond;
};
struct ForStmt {
  StmtPtr init;  // may be null
  ExprPtr cond;  // may be null (always true)
  StmtPtr step;  // may be null
  Block body;
};
struct AssignStmt {
  std::string name;
  ExprPtr value;
};
struct ExprStmt {
  ExprPtr expr;
};

struct Stmt {
  std::variant<PrintStmt, IfStmt, SwitchStmt, WhileStmt, DoWhileStmt, ForStmt, AssignStmt,
               ExprStmt>
      node;
  SourceSpan span;
};

// ---- top level -----------------------------------------------------------

// "%name = getBit 4;" or "%name = $domain;"
struct FieldStmt {
  std::string name;
  std::variant<ReadCommand, DomainRef> rvalue;
  SourceSpan span;
};

using BodyItem = std::variant<FieldStmt, StmtPtr>;

// "$d = 0x9351;" or "$d = getFile <"x.dat">;"
struct DomainBinding {
  std::string name;
  ExprPtr init;
  SourceSpan span;
};

// "$d := { ... } where { ... }"
struct DomainDef {
  std::string name;
  std::vector<BodyItem> body;
  std::optional<Block> where_block;
  SourceSpan span;
};

using TopLevelItem = std::variant<DomainBinding, DomainDef>;

struct ScriptAst {
  std::vector<TopLevelItem> items;
};

}  // namespace dfsl

#endif  // DFSL_AST_HPP_
