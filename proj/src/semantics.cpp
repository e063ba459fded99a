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

#include "dfsl/semantics.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "dfsl/parser.hpp"

namespace dfsl {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool block_consumes(const Block& block) {
  for (const auto& s : block) {
    if (consumes_stream(*s)) return true;
  }
  return false;
}

bool opt_consumes(const ExprPtr& e) { return e && consumes_stream(*e); }

void check_binding(const DomainBinding& b) {
  const Expr& init = *b.init;
  if (std::holds_alternative<GetFile>(init.node)) return;
  if (const auto* lit = std::get_if<NumberLit>(&init.node); lit && lit->hex_digit_count > 0) return;
  throw SemanticError(SemanticError::Kind::kInvalidBinding,
                      "data binding for '$" + b.name +
                          "' must be a hexadecimal literal or getFile <\"path\">",
                      b.span, {b.name});
}

}  // namespace

std::string to_string(const SizeAnnotation& size) {
  return size.is_fixed() ? "Fixed(" + std::to_string(size.bits) + ")" : "Dynamic";
}

const DomainEntry* DomainTable::find(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

DomainEntry* DomainTable::find(const std::string& name) {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

DomainEntry& DomainTable::get_or_add(const std::string& name) {
  auto [it, inserted] = entries_.try_emplace(name);
  if (inserted) {
    it->second.name = name;
    order_.push_back(name);
  }
  return it->second;
}

DomainTable build_domain_table(const ScriptAst& ast) {
  DomainTable table;
  for (const auto& item : ast.items) {
    if (const auto* b = std::get_if<DomainBinding>(&item)) {
      check_binding(*b);
      table.get_or_add(b->name).binding = *b;
      continue;
    }
    const auto& def = std::get<DomainDef>(item);
    DomainEntry& entry = table.get_or_add(def.name);
    if (entry.def) {
      throw SemanticError(SemanticError::Kind::kDuplicateDefinition,
                          "domain '$" + def.name + "' is defined more than once (first at line " +
                              std::to_string(entry.def->span.line) + ")",
                          def.span, {def.name});
    }
    entry.def = def;
  }

  for (const std::string& name : table.order()) {
    const DomainEntry& entry = *table.find(name);
    if (!entry.def) continue;
    for (const auto& member : entry.def->body) {
      const auto* field = std::get_if<FieldStmt>(&member);
      if (!field) continue;
      const auto* ref = std::get_if<DomainRef>(&field->rvalue);
      if (!ref) continue;
      const DomainEntry* target = table.find(ref->name);
      if (!target || !target->def) {
        throw SemanticError(SemanticError::Kind::kUnresolvedDomain,
                            "domain '$" + ref->name + "' referenced by '%" + field->name +
                                "' is never defined",
                            field->span, {ref->name});
      }
    }
  }
  return table;
}

std::optional<std::vector<std::string>> detect_cycles(const DomainTable& table) {
  enum class Color { kWhite, kGray, kBlack };
  std::unordered_map<std::string, Color> color;
  std::vector<std::string> stack;
  std::optional<std::vector<std::string>> cycle;

  std::function<bool(const std::string&)> visit = [&](const std::string& name) -> bool {
    color[name] = Color::kGray;
    stack.push_back(name);
    const DomainEntry* entry = table.find(name);
    if (entry && entry->def) {
      for (const auto& member : entry->def->body) {
        const auto* field = std::get_if<FieldStmt>(&member);
        if (!field) continue;
        const auto* ref = std::get_if<DomainRef>(&field->rvalue);
        if (!ref) continue;
        Color c = color.count(ref->name) ? color[ref->name] : Color::kWhite;
        if (c == Color::kGray) {
          auto it = std::find(stack.begin(), stack.end(), ref->name);
          cycle.emplace(it, stack.end());
          cycle->push_back(ref->name);
          return true;
        }
        if (c == Color::kWhite && visit(ref->name)) return true;
      }
    }
    stack.pop_back();
    color[name] = Color::kBlack;
    return false;
  };

  for (const std::string& name : table.order()) {
    const DomainEntry* entry = table.find(name);
    if (!entry->def || color.count(name)) continue;
    if (visit(name)) return cycle;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> static_uint(const Expr& expr) {
  return std::visit(
      Overloaded{
          [](const NumberLit& n) -> std::optional<std::uint64_t> {
            if (const auto* u = std::get_if<std::uint64_t>(&n.value)) return *u;
            return std::nullopt;
          },
          [](const BinaryExpr& b) -> std::optional<std::uint64_t> {
            auto l = static_uint(*b.lhs);
            auto r = static_uint(*b.rhs);
            if (!l || !r) return std::nullopt;
            switch (b.op) {
              case BinaryOp::kAdd:
                if (*l > UINT64_MAX - *r) return std::nullopt;
                return *l + *r;
              case BinaryOp::kSub:
                if (*l < *r) return std::nullopt;
                return *l - *r;
              case BinaryOp::kMul:
                if (*r != 0 && *l > UINT64_MAX / *r) return std::nullopt;
                return *l * *r;
              case BinaryOp::kDiv:
                if (*r == 0) return std::nullopt;
                return *l / *r;
              case BinaryOp::kMod:
                if (*r == 0) return std::nullopt;
                return *l % *r;
              default:
                return std::nullopt;
            }
          },
          [](const auto&) -> std::optional<std::uint64_t> { return std::nullopt; },
      },
      expr.node);
}

std::optional<std::uint64_t> static_width(const ReadCommand& cmd) {
  return std::visit(
      Overloaded{
          [&](const CountForm& f) -> std::optional<std::uint64_t> {
            std::optional<std::uint64_t> n = f.count ? static_uint(*f.count) : 1;
            if (!n || *n == 0) return std::nullopt;
            if (!is_byte_verb(cmd.verb)) return n;
            if (*n > UINT64_MAX / 8) return std::nullopt;
            return 8 * *n;
          },
          [](const AtForm& f) -> std::optional<std::uint64_t> {
            auto p = static_uint(*f.position);
            auto c = static_uint(*f.count);
            if (!p || !c || *c == 0 || *c > *p + 1) return std::nullopt;
            return c;
          },
          [](const RangeForm& f) -> std::optional<std::uint64_t> {
            auto s = static_uint(*f.start);
            auto t = static_uint(*f.stop);
            if (!s || !t || *s < *t) return std::nullopt;
            return *s - *t + 1;
          },
      },
      cmd.form);
}

bool consumes_stream(const Expr& expr) {
  return std::visit(Overloaded{
                        [](const ReadExpr& r) {
                          if (!is_peek(r.command.verb)) return true;
                          return std::visit(Overloaded{
                                                [](const CountForm& f) { return opt_consumes(f.count); },
                                                [](const AtForm& f) {
                                                  return consumes_stream(*f.position) ||
                                                         consumes_stream(*f.count);
                                                },
                                                [](const RangeForm& f) {
                                                  return consumes_stream(*f.start) ||
                                                         consumes_stream(*f.stop);
                                                },
                                            },
                                            r.command.form);
                        },
                        [](const BinaryExpr& b) {
                          return consumes_stream(*b.lhs) || consumes_stream(*b.rhs);
                        },
                        [](const UnaryExpr& u) { return consumes_stream(*u.operand); },
                        [](const auto&) { return false; },
                    },
                    expr.node);
}

bool consumes_stream(const Stmt& stmt) {
  return std::visit(
      Overloaded{
          [](const PrintStmt& p) {
            for (const auto& a : p.args) {
              if (consumes_stream(*a)) return true;
            }
            return false;
          },
          [](const IfStmt& s) {
            return consumes_stream(*s.cond) || block_consumes(s.then_block) ||
                   (s.else_block && block_consumes(*s.else_block));
          },
          [](const SwitchStmt& s) {
            if (consumes_stream(*s.scrutinee)) return true;
            for (const auto& c : s.cases) {
              if (consumes_stream(*c.value) || block_consumes(c.body)) return true;
            }
            return s.default_block && block_consumes(*s.default_block);
          },
          [](const WhileStmt& s) { return consumes_stream(*s.cond) || block_consumes(s.body); },
          [](const DoWhileStmt& s) { return consumes_stream(*s.cond) || block_consumes(s.body); },
          [](const ForStmt& s) {
            return (s.init && consumes_stream(*s.init)) || opt_consumes(s.cond) ||
                   (s.step && consumes_stream(*s.step)) || block_consumes(s.body);
          },
          [](const AssignStmt& s) { return consumes_stream(*s.value); },
          [](const ExprStmt& s) { return consumes_stream(*s.expr); },
      },
      stmt.node);
}

DomainTable propagate_sizes(DomainTable table) {
  std::unordered_map<std::string, SizeAnnotation> memo;

  std::function<SizeAnnotation(const std::string&)> size_of =
      [&](const std::string& name) -> SizeAnnotation {
    if (auto it = memo.find(name); it != memo.end()) return it->second;
    const DomainEntry* entry = table.find(name);
    SizeAnnotation result = SizeAnnotation::dynamic();
    if (entry && entry->def) {
      bool fixed = true;
      std::uint64_t bits = 0;
      for (const auto& member : entry->def->body) {
        if (const auto* field = std::get_if<FieldStmt>(&member)) {
          if (const auto* ref = std::get_if<DomainRef>(&field->rvalue)) {
            SizeAnnotation child = size_of(ref->name);
            if (child.is_fixed()) {
              bits += child.bits;
            } else {
              fixed = false;
            }
          } else {
            const auto& cmd = std::get<ReadCommand>(field->rvalue);
            auto w = static_width(cmd);
            if (!w) {
              fixed = false;
            } else if (!is_peek(cmd.verb)) {
              bits += *w;
            }
          }
        } else if (consumes_stream(*std::get<StmtPtr>(member))) {
          fixed = false;
        }
      }
      if (entry->def->where_block && block_consumes(*entry->def->where_block)) fixed = false;
      if (fixed) result = SizeAnnotation::fixed(bits);
    }
    memo[name] = result;
    return result;
  };

  for (const std::string& name : table.order()) {
    DomainEntry* entry = table.find(name);
    if (entry->def) entry->size = size_of(name);
  }
  return table;
}

DomainTable analyze(const ScriptAst& ast) {
  DomainTable table = build_domain_table(ast);
  if (auto cycle = detect_cycles(table)) {
    std::string path;
    for (std::size_t i = 0; i < cycle->size(); ++i) path += (i ? " -> $" : "$") + (*cycle)[i];
    const DomainEntry* first = table.find(cycle->front());
    throw SemanticError(SemanticError::Kind::kCycle, "recursive domain reference: " + path,
                        first->def->span, *cycle);
  }
  return propagate_sizes(std::move(table));
}

const ElabDomain* ElaboratedTree::find(const std::string& name) const {
  for (const auto& d : domains) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

namespace {

std::vector<ElabNode> elaborate_members(const DomainTable& table, const DomainDef& def) {
  std::vector<ElabNode> out;
  for (const auto& member : def.body) {
    ElabNode node;
    if (const auto* field = std::get_if<FieldStmt>(&member)) {
      node.name = field->name;
      node.span = field->span;
      if (const auto* ref = std::get_if<DomainRef>(&field->rvalue)) {
        const DomainEntry* target = table.find(ref->name);
        node.target_domain = ref->name;
        if (target->size && target->size->is_fixed()) {
          node.kind = ElabNode::Kind::kInlined;
          node.width_bits = target->size->bits;
          node.children = elaborate_members(table, *target->def);
        } else {
          node.kind = ElabNode::Kind::kLink;
        }
      } else {
        const auto& cmd = std::get<ReadCommand>(field->rvalue);
        node.kind = ElabNode::Kind::kRead;
        node.read = cmd;
        node.width_bits = static_width(cmd);
        node.peek = is_peek(cmd.verb);
      }
    } else {
      node.kind = ElabNode::Kind::kStatement;
      node.span = std::get<StmtPtr>(member)->span;
    }
    out.push_back(std::move(node));
  }
  return out;
}

void collect_leaves(const std::vector<ElabNode>& nodes, const std::string& prefix,
                    std::vector<std::string>& out) {
  for (const auto& n : nodes) {
    switch (n.kind) {
      case ElabNode::Kind::kRead: out.push_back(prefix + n.name); break;
      case ElabNode::Kind::kInlined: collect_leaves(n.children, prefix + n.name + ".", out); break;
      case ElabNode::Kind::kLink: out.push_back(prefix + n.name + "->$" + n.target_domain); break;
      case ElabNode::Kind::kStatement: break;
    }
  }
}

void render_nodes(const std::vector<ElabNode>& nodes, int depth, std::ostringstream& out) {
  std::string indent(static_cast<std::size_t>(2 * depth), ' ');
  for (const auto& n : nodes) {
    switch (n.kind) {
      case ElabNode::Kind::kRead:
        out << indent << "%" << n.name << " = " << to_sexpr(*n.read) << "  ["
            << (n.width_bits ? std::to_string(*n.width_bits) + " bits" : "dynamic width")
            << (n.peek ? ", peek" : "") << "]\n";
        break;
      case ElabNode::Kind::kInlined:
        out << indent << "%" << n.name << " = $" << n.target_domain << "  [Fixed("
            << *n.width_bits << "), inlined]\n";
        render_nodes(n.children, depth + 1, out);
        break;
      case ElabNode::Kind::kLink:
        out << indent << "%" << n.name << " = $" << n.target_domain << "  [Dynamic, link]\n";
        break;
      case ElabNode::Kind::kStatement:
        out << indent << "<statement at line " << n.span.line << ">\n";
        break;
    }
  }
}

}  // namespace

ElaboratedTree elaborate(const DomainTable& table) {
  ElaboratedTree tree;
  for (const std::string& name : table.order()) {
    const DomainEntry& entry = *table.find(name);
    if (!entry.def) continue;
    ElabDomain d;
    d.name = name;
    d.size = entry.size.value_or(SizeAnnotation::dynamic());
    d.members = elaborate_members(table, *entry.def);
    d.has_binding = entry.binding.has_value();
    d.has_where = entry.def->where_block.has_value();
    tree.domains.push_back(std::move(d));
  }
  return tree;
}

std::vector<std::string> leaf_paths(const ElabDomain& domain) {
  std::vector<std::string> out;
  collect_leaves(domain.members, "", out);
  return out;
}

std::string render(const ElaboratedTree& tree) {
  std::ostringstream out;
  for (const auto& d : tree.domains) {
    out << "$" << d.name << " := " << to_string(d.size) << (d.has_binding ? " (bound)" : "")
        << (d.has_where ? " (where)" : "") << "\n";
    render_nodes(d.members, 1, out);
  }
  return out.str();
}

}  // namespace dfsl
