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

#ifndef DFSL_INTERPRETER_HPP_
#define DFSL_INTERPRETER_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dfsl/ast.hpp"
#include "dfsl/bitstream.hpp"
#include "dfsl/semantics.hpp"

namespace dfsl {

struct ResultNode;
using ResultNodePtr = std::shared_ptr<const ResultNode>;

// Runtime value. UInt fields of width w are < 2^w.
struct Value {
  std::variant<std::uint64_t, double, std::string, RawBits, ResultNodePtr, bool> data;

  Value() : data(std::uint64_t{0}) {}
  Value(std::uint64_t v) : data(v) {}  // NOLINT(google-explicit-constructor)
  Value(double v) : data(v) {}         // NOLINT
  Value(std::string v) : data(std::move(v)) {}  // NOLINT
  Value(RawBits v) : data(std::move(v)) {}      // NOLINT
  Value(ResultNodePtr v) : data(std::move(v)) {}  // NOLINT
  Value(bool v) : data(v) {}                      // NOLINT

  bool is_uint() const { return std::holds_alternative<std::uint64_t>(data); }
  bool is_real() const { return std::holds_alternative<double>(data); }
  bool is_str() const { return std::holds_alternative<std::string>(data); }
  bool is_bytes() const { return std::holds_alternative<RawBits>(data); }
  bool is_struct() const { return std::holds_alternative<ResultNodePtr>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }

  std::uint64_t as_uint() const { return std::get<std::uint64_t>(data); }
};

std::string_view type_name(const Value& v);

// Print form: UInt decimal, Real shortest round-trip, Str verbatim, Bytes as
// 0x-hex, Bool as 1/0, StructRef as "$domain{...}".
std::string to_display(const Value& v);

struct ResultNode {
  enum class Kind { kField, kDomain };
  Kind kind = Kind::kField;
  std::string name;
  Value value;  // kField only
  std::uint64_t offset_bits = 0;
  std::uint64_t width_bits = 0;
  bool peek = false;  // field read by seeBit/seeByte
  std::vector<ResultNodePtr> children;  // kDomain only
  std::string source_domain;
};

// Leaves of a result tree in read order.
std::vector<const ResultNode*> leaves(const ResultNode& root);

struct RunReport {
  std::vector<ResultNodePtr> roots;
  std::string printed_output;
  // Sum over executed bindings of the final cursor position.
  std::uint64_t bits_consumed = 0;
  // Sum over executed bindings of the source width.
  std::uint64_t stream_bits = 0;
};

struct ExecOptions {
  // Replaces the data of the first executed binding.
  std::optional<BitSource> data_override;
  // Relative getFile paths resolve against this directory.
  std::filesystem::path base_dir;
  // Per-loop iteration cap.
  std::uint64_t loop_limit = 10'000'000;
};

// Runs every domain that has both a binding and a definition, in script
// order. Throws RuntimeError (stream, type, arithmetic and binding failures)
// and IoError (getFile).
RunReport execute(const ScriptAst& ast, const DomainTable& table, const ExecOptions& options = {});

// Convenience: parse, analyze and execute a script held in memory.
RunReport run_source(std::string_view source, const ExecOptions& options = {});

// Lower-level entry points used by execute(); exposed for focused testing.
class Interpreter {
 public:
  Interpreter(const DomainTable& table, std::string& output, std::uint64_t loop_limit = 10'000'000);

  // Parses one instance of `domain` at the cursor. `node_name` names the
  // resulting node (the sub-domain name, or the domain name for a root).
  ResultNodePtr parse_domain(const std::string& domain, const std::string& node_name,
                             BitCursor& cursor);

  // Evaluates in a one-frame environment holding `bindings`.
  Value eval(const Expr& expr, BitCursor& cursor, const std::map<std::string, Value>& bindings = {});
  void exec(const Stmt& stmt, BitCursor& cursor, std::map<std::string, Value>& bindings);

 private:
  struct Frame {
    std::map<std::string, Value> vars;
  };

  ResultNodePtr parse_domain_in_frame(const DomainDef& def, const std::string& node_name,
                                      BitCursor& cursor);
  Value eval_expr(const Expr& expr, BitCursor& cursor);
  void exec_stmt(const Stmt& stmt, BitCursor& cursor);
  void exec_block(const Block& block, BitCursor& cursor);
  FieldBits run_read(const ReadCommand& cmd, BitCursor& cursor);
  std::uint64_t operand(const ExprPtr& expr, BitCursor& cursor, const char* what);
  bool truthy(const Value& v, SourceSpan span) const;
  Value binary(const BinaryExpr& b, SourceSpan span, BitCursor& cursor);
  [[noreturn]] void fail(RuntimeError::Kind kind, const std::string& message, SourceSpan span) const;
  std::string domain_path() const;

  const DomainTable& table_;
  std::string& output_;
  std::uint64_t loop_limit_;
  std::vector<Frame> frames_;
  std::vector<std::string> path_;
};

}  // namespace dfsl

#endif  // DFSL_INTERPRETER_HPP_
