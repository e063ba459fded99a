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

#include "dfsl/interpreter.hpp"

#include <charconv>
#include <cmath>

#include "dfsl/parser.hpp"

namespace dfsl {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_numeric(const Value& v) { return v.is_uint() || v.is_real() || v.is_bool(); }

// Bool promotes to 0/1 in numeric contexts.
std::uint64_t as_unsigned(const Value& v) {
  return v.is_bool() ? (std::get<bool>(v.data) ? 1 : 0) : v.as_uint();
}

double as_real(const Value& v) {
  if (v.is_real()) return std::get<double>(v.data);
  return static_cast<double>(as_unsigned(v));
}

void collect_leaves(const ResultNode& node, std::vector<const ResultNode*>& out) {
  if (node.kind == ResultNode::Kind::kField) {
    out.push_back(&node);
    return;
  }
  for (const auto& c : node.children) collect_leaves(*c, out);
}

// nullopt when the two values are not comparable for equality.
std::optional<bool> values_equal(const Value& a, const Value& b) {
  if (is_numeric(a) && is_numeric(b)) {
    if (a.is_real() || b.is_real()) return as_real(a) == as_real(b);
    return as_unsigned(a) == as_unsigned(b);
  }
  if (a.is_str() && b.is_str()) return std::get<std::string>(a.data) == std::get<std::string>(b.data);
  if (a.is_bytes() && b.is_bytes()) return std::get<RawBits>(a.data) == std::get<RawBits>(b.data);
  return std::nullopt;
}

Value field_value(FieldBits bits) {
  if (auto* u = std::get_if<std::uint64_t>(&bits.value)) return Value(*u);
  return Value(std::move(std::get<RawBits>(bits.value)));
}

}  // namespace

std::string_view type_name(const Value& v) {
  switch (v.data.index()) {
    case 0: return "unsigned integer";
    case 1: return "real";
    case 2: return "string";
    case 3: return "raw bits";
    case 4: return "structure";
    default: return "boolean";
  }
}

std::string to_display(const Value& v) {
  return std::visit(Overloaded{
                        [](std::uint64_t u) { return std::to_string(u); },
                        [](double d) {
                          char buf[64];
                          auto [p, ec] = std::to_chars(buf, buf + sizeof buf, d);
                          return std::string(buf, p);
                        },
                        [](const std::string& s) { return s; },
                        [](const RawBits& r) { return to_hex(r); },
                        [](const ResultNodePtr& n) {
                          return "$" + (n ? n->source_domain : std::string()) + "{...}";
                        },
                        [](bool b) { return std::string(b ? "1" : "0"); },
                    },
                    v.data);
}

std::vector<const ResultNode*> leaves(const ResultNode& root) {
  std::vector<const ResultNode*> out;
  collect_leaves(root, out);
  return out;
}

Interpreter::Interpreter(const DomainTable& table, std::string& output, std::uint64_t loop_limit)
    : table_(table), output_(output), loop_limit_(loop_limit) {}

std::string Interpreter::domain_path() const {
  std::string out;
  for (std::size_t i = 0; i < path_.size(); ++i) out += (i ? "/" : "") + path_[i];
  return out;
}

void Interpreter::fail(RuntimeError::Kind kind, const std::string& message, SourceSpan span) const {
  throw RuntimeError(kind, message, span, domain_path());
}

ResultNodePtr Interpreter::parse_domain(const std::string& domain, const std::string& node_name,
                                        BitCursor& cursor) {
  const DomainEntry* entry = table_.find(domain);
  if (!entry || !entry->def) {
    fail(RuntimeError::Kind::kInvalidBinding, "domain '$" + domain + "' has no structure definition",
         SourceSpan{});
  }
  frames_.emplace_back();
  path_.push_back(node_name);
  ResultNodePtr node = parse_domain_in_frame(*entry->def, node_name, cursor);
  path_.pop_back();
  frames_.pop_back();
  return node;
}

ResultNodePtr Interpreter::parse_domain_in_frame(const DomainDef& def, const std::string& node_name,
                                                 BitCursor& cursor) {
  auto node = std::make_shared<ResultNode>();
  node->kind = ResultNode::Kind::kDomain;
  node->name = node_name;
  node->source_domain = def.name;
  node->offset_bits = cursor.position();

  for (const auto& member : def.body) {
    if (const auto* stmt = std::get_if<StmtPtr>(&member)) {
      exec_stmt(**stmt, cursor);
      continue;
    }
    const auto& field = std::get<FieldStmt>(member);
    if (const auto* ref = std::get_if<DomainRef>(&field.rvalue)) {
      ResultNodePtr child = parse_domain(ref->name, field.name, cursor);
      frames_.back().vars[field.name] = Value(child);
      node->width_bits += child->width_bits;
      node->children.push_back(std::move(child));
      continue;
    }
    const auto& cmd = std::get<ReadCommand>(field.rvalue);
    FieldBits bits = run_read(cmd, cursor);
    auto leaf = std::make_shared<ResultNode>();
    leaf->kind = ResultNode::Kind::kField;
    leaf->name = field.name;
    leaf->offset_bits = bits.offset_bits;
    leaf->width_bits = bits.width_bits;
    leaf->peek = is_peek(cmd.verb);
    leaf->source_domain = def.name;
    leaf->value = field_value(std::move(bits));
    frames_.back().vars[field.name] = leaf->value;
    node->width_bits += leaf->width_bits;
    node->children.push_back(std::move(leaf));
  }

  if (def.where_block) exec_block(*def.where_block, cursor);
  return node;
}

std::uint64_t Interpreter::operand(const ExprPtr& expr, BitCursor& cursor, const char* what) {
  Value v = eval_expr(*expr, cursor);
  if (!v.is_uint()) {
    fail(RuntimeError::Kind::kType,
         std::string(what) + " must be an unsigned integer, got " + std::string(type_name(v)),
         expr->span);
  }
  return v.as_uint();
}

FieldBits Interpreter::run_read(const ReadCommand& cmd, BitCursor& cursor) {
  const bool peek = is_peek(cmd.verb);
  const bool bytes = is_byte_verb(cmd.verb);
  try {
    return std::visit(
        Overloaded{
            [&](const CountForm& f) {
              std::uint64_t n = f.count ? operand(f.count, cursor, "count") : 1;
              if (bytes) return peek ? cursor.peek_bytes(n) : cursor.read_bytes(n);
              return peek ? cursor.peek_bits(n) : cursor.read_bits(n);
            },
            [&](const AtForm& f) {
              std::uint64_t p = operand(f.position, cursor, "bit position");
              std::uint64_t c = operand(f.count, cursor, "count");
              return peek ? cursor.peek_bits_at(p, c) : cursor.read_bits_at(p, c);
            },
            [&](const RangeForm& f) {
              std::uint64_t s = operand(f.start, cursor, "range start");
              std::uint64_t t = operand(f.stop, cursor, "range stop");
              return peek ? cursor.peek_range(s, t) : cursor.read_range(s, t);
            },
        },
        cmd.form);
  } catch (const StreamError& e) {
    fail(RuntimeError::Kind::kStream, e.message(), cmd.span);
  }
}

bool Interpreter::truthy(const Value& v, SourceSpan span) const {
  if (v.is_bool()) return std::get<bool>(v.data);
  if (v.is_uint()) return v.as_uint() != 0;
  if (v.is_real()) return std::get<double>(v.data) != 0.0;
  fail(RuntimeError::Kind::kType, "a " + std::string(type_name(v)) + " cannot be used as a condition",
       span);
}

Value Interpreter::binary(const BinaryExpr& b, SourceSpan span, BitCursor& cursor) {
  if (b.op == BinaryOp::kAnd) {
    if (!truthy(eval_expr(*b.lhs, cursor), b.lhs->span)) return Value(false);
    return Value(truthy(eval_expr(*b.rhs, cursor), b.rhs->span));
  }
  if (b.op == BinaryOp::kOr) {
    if (truthy(eval_expr(*b.lhs, cursor), b.lhs->span)) return Value(true);
    return Value(truthy(eval_expr(*b.rhs, cursor), b.rhs->span));
  }

  Value l = eval_expr(*b.lhs, cursor);
  Value r = eval_expr(*b.rhs, cursor);
  auto type_error = [&](const char* op) {
    fail(RuntimeError::Kind::kType,
         std::string("operator '") + op + "' cannot combine " + std::string(type_name(l)) +
             " and " + std::string(type_name(r)),
         span);
  };

  switch (b.op) {
    case BinaryOp::kEq:
    case BinaryOp::kNe:
    case BinaryOp::kLt:
    case BinaryOp::kLe:
    case BinaryOp::kGt:
    case BinaryOp::kGe: {
      int cmp = 0;
      if (is_numeric(l) && is_numeric(r)) {
        if (l.is_real() || r.is_real()) {
          double x = as_real(l), y = as_real(r);
          cmp = x < y ? -1 : (x > y ? 1 : 0);
        } else {
          std::uint64_t x = as_unsigned(l), y = as_unsigned(r);
          cmp = x < y ? -1 : (x > y ? 1 : 0);
        }
      } else if (l.is_str() && r.is_str()) {
        cmp = std::get<std::string>(l.data).compare(std::get<std::string>(r.data));
        cmp = cmp < 0 ? -1 : (cmp > 0 ? 1 : 0);
      } else if (l.is_bytes() && r.is_bytes() && (b.op == BinaryOp::kEq || b.op == BinaryOp::kNe)) {
        cmp = std::get<RawBits>(l.data) == std::get<RawBits>(r.data) ? 0 : 1;
      } else {
        type_error("comparison");
      }
      switch (b.op) {
        case BinaryOp::kEq: return Value(cmp == 0);
        case BinaryOp::kNe: return Value(cmp != 0);
        case BinaryOp::kLt: return Value(cmp < 0);
        case BinaryOp::kLe: return Value(cmp <= 0);
        case BinaryOp::kGt: return Value(cmp > 0);
        default: return Value(cmp >= 0);
      }
    }
    default:
      break;
  }

  const char* op_text = "%";
  switch (b.op) {
    case BinaryOp::kAdd: op_text = "+"; break;
    case BinaryOp::kSub: op_text = "-"; break;
    case BinaryOp::kMul: op_text = "*"; break;
    case BinaryOp::kDiv: op_text = "/"; break;
    default: op_text = "%"; break;
  }

  if (b.op == BinaryOp::kAdd && l.is_str() && r.is_str()) {
    return Value(std::get<std::string>(l.data) + std::get<std::string>(r.data));
  }
  if (!is_numeric(l) || !is_numeric(r)) type_error(op_text);

  if (l.is_real() || r.is_real()) {
    double x = as_real(l), y = as_real(r);
    switch (b.op) {
      case BinaryOp::kAdd: return Value(x + y);
      case BinaryOp::kSub: return Value(x - y);
      case BinaryOp::kMul: return Value(x * y);
      case BinaryOp::kDiv:
        if (y == 0.0) fail(RuntimeError::Kind::kDivisionByZero, "division by zero", span);
        return Value(x / y);
      default:
        if (y == 0.0) fail(RuntimeError::Kind::kDivisionByZero, "modulo by zero", span);
        return Value(std::fmod(x, y));
    }
  }

  std::uint64_t x = as_unsigned(l), y = as_unsigned(r);
  switch (b.op) {
    case BinaryOp::kAdd:
      if (x > UINT64_MAX - y) fail(RuntimeError::Kind::kArithmetic, "unsigned overflow in '+'", span);
      return Value(x + y);
    case BinaryOp::kSub:
      if (x < y) {
        fail(RuntimeError::Kind::kArithmetic,
             "unsigned result of " + std::to_string(x) + " - " + std::to_string(y) + " is negative",
             span);
      }
      return Value(x - y);
    case BinaryOp::kMul:
      if (y != 0 && x > UINT64_MAX / y) {
        fail(RuntimeError::Kind::kArithmetic, "unsigned overflow in '*'", span);
      }
      return Value(x * y);
    case BinaryOp::kDiv:
      if (y == 0) fail(RuntimeError::Kind::kDivisionByZero, "division by zero", span);
      return Value(x / y);
    default:
      if (y == 0) fail(RuntimeError::Kind::kDivisionByZero, "modulo by zero", span);
      return Value(x % y);
  }
}

Value Interpreter::eval_expr(const Expr& expr, BitCursor& cursor) {
  return std::visit(
      Overloaded{
          [](const NumberLit& n) {
            if (const auto* u = std::get_if<std::uint64_t>(&n.value)) return Value(*u);
            return Value(std::get<double>(n.value));
          },
          [](const StringLit& s) { return Value(s.value); },
          [&](const SubDomainRef& ref) {
            const auto& vars = frames_.back().vars;
            auto it = vars.find(ref.name);
            if (it == vars.end()) {
              fail(RuntimeError::Kind::kUnboundVariable,
                   "sub-domain '%" + ref.name + "' is not bound in this domain", expr.span);
            }
            return it->second;
          },
          [&](const BinaryExpr& b) { return binary(b, expr.span, cursor); },
          [&](const UnaryExpr& u) {
            Value v = eval_expr(*u.operand, cursor);
            if (u.op == UnaryOp::kNot) return Value(!truthy(v, expr.span));
            if (v.is_real()) return Value(-std::get<double>(v.data));
            if (v.is_uint() || v.is_bool()) {
              std::uint64_t x = as_unsigned(v);
              return x == 0 ? Value(std::uint64_t{0}) : Value(-static_cast<double>(x));
            }
            fail(RuntimeError::Kind::kType,
                 "cannot negate a " + std::string(type_name(v)), expr.span);
          },
          [&](const ReadExpr& r) { return field_value(run_read(r.command, cursor)); },
          [&](const DomainRef& d) -> Value {
            fail(RuntimeError::Kind::kType, "domain '$" + d.name + "' is not a value", expr.span);
          },
          [&](const GetFile&) -> Value {
            fail(RuntimeError::Kind::kType, "getFile is only valid in a data binding", expr.span);
          },
      },
      expr.node);
}

void Interpreter::exec_block(const Block& block, BitCursor& cursor) {
  for (const auto& s : block) exec_stmt(*s, cursor);
}

void Interpreter::exec_stmt(const Stmt& stmt, BitCursor& cursor) {
  auto guard = [&](std::uint64_t& iterations) {
    if (++iterations > loop_limit_) {
      fail(RuntimeError::Kind::kLoopLimit,
           "loop exceeded " + std::to_string(loop_limit_) + " iterations", stmt.span);
    }
  };

  std::visit(
      Overloaded{
          [&](const PrintStmt& p) {
            for (const auto& a : p.args) output_ += to_display(eval_expr(*a, cursor));
            if (p.newline) output_ += '\n';
          },
          [&](const IfStmt& s) {
            if (truthy(eval_expr(*s.cond, cursor), s.cond->span)) {
              exec_block(s.then_block, cursor);
            } else if (s.else_block) {
              exec_block(*s.else_block, cursor);
            }
          },
          [&](const SwitchStmt& s) {
            Value scrutinee = eval_expr(*s.scrutinee, cursor);
            struct Label {
              const Block* body;
              bool has_break;
            };
            std::vector<Label> labels;
            std::optional<std::size_t> start;
            std::optional<std::size_t> default_label;
            for (std::size_t i = 0; i <= s.cases.size(); ++i) {
              if (s.default_block && s.default_position == i) {
                default_label = labels.size();
                labels.push_back({&*s.default_block, s.default_has_break});
              }
              if (i == s.cases.size()) break;
              const SwitchCase& c = s.cases[i];
              if (!start) {
                Value v = eval_expr(*c.value, cursor);
                std::optional<bool> equal = values_equal(scrutinee, v);
                if (!equal) {
                  fail(RuntimeError::Kind::kType,
                       "cannot compare " + std::string(type_name(scrutinee)) + " with case " +
                           std::string(type_name(v)),
                       c.value->span);
                }
                if (*equal) start = labels.size();
              }
              labels.push_back({&c.body, c.has_break});
            }
            if (!start) start = default_label;
            if (!start) return;
            for (std::size_t i = *start; i < labels.size(); ++i) {
              exec_block(*labels[i].body, cursor);
              if (labels[i].has_break) break;
            }
          },
          [&](const WhileStmt& s) {
            std::uint64_t n = 0;
            while (truthy(eval_expr(*s.cond, cursor), s.cond->span)) {
              guard(n);
              exec_block(s.body, cursor);
            }
          },
          [&](const DoWhileStmt& s) {
            std::uint64_t n = 0;
            do {
              guard(n);
              exec_block(s.body, cursor);
            } while (truthy(eval_expr(*s.cond, cursor), s.cond->span));
          },
          [&](const ForStmt& s) {
            if (s.init) exec_stmt(*s.init, cursor);
            std::uint64_t n = 0;
            while (!s.cond || truthy(eval_expr(*s.cond, cursor), s.cond->span)) {
              guard(n);
              exec_block(s.body, cursor);
              if (s.step) exec_stmt(*s.step, cursor);
            }
          },
          [&](const AssignStmt& s) { frames_.back().vars[s.name] = eval_expr(*s.value, cursor); },
          [&](const ExprStmt& s) { (void)eval_expr(*s.expr, cursor); },
      },
      stmt.node);
}

Value Interpreter::eval(const Expr& expr, BitCursor& cursor,
                        const std::map<std::string, Value>& bindings) {
  frames_.push_back(Frame{bindings});
  try {
    Value v = eval_expr(expr, cursor);
    frames_.pop_back();
    return v;
  } catch (...) {
    frames_.pop_back();
    throw;
  }
}

void Interpreter::exec(const Stmt& stmt, BitCursor& cursor, std::map<std::string, Value>& bindings) {
  frames_.push_back(Frame{bindings});
  try {
    exec_stmt(stmt, cursor);
    bindings = std::move(frames_.back().vars);
    frames_.pop_back();
  } catch (...) {
    frames_.pop_back();
    throw;
  }
}

RunReport execute(const ScriptAst& ast, const DomainTable& table, const ExecOptions& options) {
  (void)ast;  // execution order comes from the table, which preserves script order
  RunReport report;
  Interpreter interp(table, report.printed_output, options.loop_limit);
  bool first = true;
  for (const std::string& name : table.order()) {
    const DomainEntry& entry = *table.find(name);
    if (!entry.binding || !entry.def) continue;

    BitSource source;
    if (first && options.data_override) {
      source = *options.data_override;
    } else {
      const Expr& init = *entry.binding->init;
      if (const auto* file = std::get_if<GetFile>(&init.node)) {
        std::filesystem::path p(file->path);
        if (p.is_relative() && !options.base_dir.empty()) p = options.base_dir / p;
        source = source_from_file(p);
      } else {
        const auto& lit = std::get<NumberLit>(init.node);
        source = source_from_hex_literal(std::get<std::uint64_t>(lit.value), lit.hex_digit_count);
      }
    }
    first = false;

    BitCursor cursor(source);
    report.roots.push_back(interp.parse_domain(name, name, cursor));
    report.bits_consumed += cursor.position();
    report.stream_bits += source.total_bits();
  }
  return report;
}

RunReport run_source(std::string_view source, const ExecOptions& options) {
  ScriptAst ast = parse_source(source);
  DomainTable table = analyze(ast);
  return execute(ast, table, options);
}

}  // namespace dfsl
