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

#include <charconv>
#include <sstream>

namespace dfsl {
namespace {

bool is_read_verb(const Token& t, ReadVerb* verb) {
  if (t.kind != TokenKind::kWord) return false;
  static constexpr std::pair<std::string_view, ReadVerb> kVerbs[] = {
      {"getbit", ReadVerb::kGetBit},     {"seebit", ReadVerb::kSeeBit},
      {"getbyte", ReadVerb::kGetBytes},  {"getbytes", ReadVerb::kGetBytes},
      {"seebyte", ReadVerb::kSeeBytes},  {"seebytes", ReadVerb::kSeeBytes},
  };
  for (const auto& [word, v] : kVerbs) {
    if (t.text == word) {
      if (verb) *verb = v;
      return true;
    }
  }
  return false;
}

template <typename Node>
ExprPtr make_expr(Node node, SourceSpan span) {
  return std::make_shared<const Expr>(Expr{std::move(node), span});
}

template <typename Node>
StmtPtr make_stmt(Node node, SourceSpan span) {
  return std::make_shared<const Stmt>(Stmt{std::move(node), span});
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::kDomainName: return "'$" + t.text + "'";
    case TokenKind::kSubDomainName: return "'%" + t.text + "'";
    case TokenKind::kStringLit: return "string \"" + t.text + "\"";
    case TokenKind::kNumber: return "number " + t.text;
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {
    if (!toks_.empty()) {
      const Token& last = toks_.back();
      eof_span_ = last.span;
      eof_span_.column += static_cast<std::uint32_t>(last.text.size());
      eof_span_.byte_offset += last.text.size();
    }
  }

  ScriptAst script() {
    ScriptAst ast;
    while (!at_end()) ast.items.push_back(top_level_item());
    return ast;
  }

 private:
  // ---- token helpers ----
  bool at_end() const { return pos_ >= toks_.size(); }
  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
  }
  SourceSpan span() const { return at_end() ? eof_span_ : toks_[pos_].span; }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = at_end() ? "end of input" : describe(toks_[pos_]);
    throw ParseError("expected " + expected + ", found " + found, span(), expected);
  }

  bool check_punct(std::string_view p) const { return peek() && peek()->is_punct(p); }
  bool check_op(std::string_view o) const { return peek() && peek()->is_op(o); }
  bool check_word(std::string_view w) const { return peek() && peek()->is_word(w); }
  bool check_kind(TokenKind k) const { return peek() && peek()->kind == k; }

  const Token& advance() { return toks_[pos_++]; }

  bool accept_punct(std::string_view p) {
    if (!check_punct(p)) return false;
    ++pos_;
    return true;
  }
  bool accept_op(std::string_view o) {
    if (!check_op(o)) return false;
    ++pos_;
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!check_word(w)) return false;
    ++pos_;
    return true;
  }
  const Token& expect_punct(std::string_view p) {
    if (!check_punct(p)) fail("'" + std::string(p) + "'");
    return advance();
  }
  const Token& expect_op(std::string_view o) {
    if (!check_op(o)) fail("'" + std::string(o) + "'");
    return advance();
  }
  const Token& expect_word(std::string_view w) {
    if (!check_word(w)) fail("'" + std::string(w) + "'");
    return advance();
  }

  // ---- top level ----
  TopLevelItem top_level_item() {
    if (!check_kind(TokenKind::kDomainName)) fail("domain name ('$name')");
    const Token& name = advance();
    if (accept_op(":=")) return domain_def(name);
    if (accept_op("=")) {
      ExprPtr init = binding_init();
      expect_punct(";");
      return DomainBinding{name.text, std::move(init), name.span};
    }
    fail("'=' or ':=' after domain name");
  }

  ExprPtr binding_init() {
    if (check_word("getfile")) {
      SourceSpan s = advance().span;
      expect_op("<");
      if (!check_kind(TokenKind::kStringLit)) fail("file path string");
      std::string path = advance().text;
      expect_op(">");
      return make_expr(GetFile{std::move(path)}, s);
    }
    return expression();
  }

  DomainDef domain_def(const Token& name) {
    DomainDef def;
    def.name = name.text;
    def.span = name.span;
    expect_punct("{");
    while (!check_punct("}")) {
      if (at_end()) fail("'}' closing the structure of '$" + name.text + "'");
      if (accept_punct(";")) continue;
      def.body.push_back(body_item());
    }
    advance();
    if (accept_word("where")) def.where_block = block("where-clause");
    accept_punct(";");
    return def;
  }

  BodyItem body_item() {
    if (check_kind(TokenKind::kSubDomainName) && peek(1) && peek(1)->is_op("=")) {
      const Token& name = advance();
      advance();
      if (check_kind(TokenKind::kDomainName)) {
        const Token& target = advance();
        expect_punct(";");
        return FieldStmt{name.text, DomainRef{target.text}, name.span};
      }
      ExprPtr value = expression();
      expect_punct(";");
      if (const auto* read = std::get_if<ReadExpr>(&value->node)) {
        return FieldStmt{name.text, read->command, name.span};
      }
      return make_stmt(AssignStmt{name.text, std::move(value)}, name.span);
    }
    return statement();
  }

  // ---- statements ----
  Block block(const std::string& what) {
    if (!check_punct("{")) fail("'{' opening " + what);
    advance();
    Block out;
    while (!check_punct("}")) {
      if (at_end()) fail("'}' closing " + what);
      if (accept_punct(";")) continue;
      out.push_back(statement());
    }
    advance();
    return out;
  }

  Block block_or_statement(const std::string& what) {
    if (check_punct("{")) return block(what);
    return Block{statement()};
  }

  StmtPtr statement() {
    if (at_end()) fail("statement");
    SourceSpan s = span();
    if (check_word("print") || check_word("println")) {
      bool newline = advance().text == "println";
      expect_punct("(");
      PrintStmt p;
      p.newline = newline;
      if (!check_punct(")")) {
        p.args.push_back(expression());
        while (accept_punct(",")) p.args.push_back(expression());
      }
      expect_punct(")");
      expect_punct(";");
      return make_stmt(std::move(p), s);
    }
    if (accept_word("if")) {
      IfStmt st;
      st.cond = paren_expression();
      st.then_block = block_or_statement("if body");
      if (accept_word("else")) st.else_block = block_or_statement("else body");
      accept_punct(";");
      return make_stmt(std::move(st), s);
    }
    if (accept_word("switch")) return switch_statement(s);
    if (accept_word("while")) {
      WhileStmt st;
      st.cond = paren_expression();
      st.body = block_or_statement("while body");
      accept_punct(";");
      return make_stmt(std::move(st), s);
    }
    if (accept_word("do")) {
      DoWhileStmt st;
      st.body = block_or_statement("do body");
      expect_word("while");
      st.cond = paren_expression();
      expect_punct(";");
      return make_stmt(std::move(st), s);
    }
    if (accept_word("for")) {
      ForStmt st;
      expect_punct("(");
      if (!check_punct(";")) st.init = simple_statement();
      expect_punct(";");
      if (!check_punct(";")) st.cond = expression();
      expect_punct(";");
      if (!check_punct(")")) st.step = simple_statement();
      expect_punct(")");
      st.body = block_or_statement("for body");
      accept_punct(";");
      return make_stmt(std::move(st), s);
    }
    if (check_word("break")) fail("statement ('break' is only allowed at the end of a switch case)");
    StmtPtr st = simple_statement();
    expect_punct(";");
    return st;
  }

  // Assignment or bare expression, without the terminator.
  StmtPtr simple_statement() {
    SourceSpan s = span();
    if (check_kind(TokenKind::kSubDomainName) && peek(1) && peek(1)->is_op("=")) {
      std::string name = advance().text;
      advance();
      return make_stmt(AssignStmt{std::move(name), expression()}, s);
    }
    return make_stmt(ExprStmt{expression()}, s);
  }

  StmtPtr switch_statement(SourceSpan s) {
    SwitchStmt st;
    st.scrutinee = paren_expression();
    expect_punct("{");
    bool seen_default = false;
    while (!accept_punct("}")) {
      if (accept_word("case")) {
        SwitchCase c;
        c.value = expression();
        expect_punct(":");
        c.has_break = case_body(c.body);
        st.cases.push_back(std::move(c));
      } else if (check_word("default")) {
        if (seen_default) fail("'case' or '}' (duplicate 'default')");
        advance();
        expect_punct(":");
        seen_default = true;
        st.default_position = st.cases.size();
        Block body;
        st.default_has_break = case_body(body);
        st.default_block = std::move(body);
      } else {
        fail("'case', 'default' or '}'");
      }
    }
    if (!seen_default) st.default_position = st.cases.size();
    accept_punct(";");
    return make_stmt(std::move(st), s);
  }

  // Statements up to the next label; returns true when terminated by break.
  bool case_body(Block& body) {
    while (!check_word("case") && !check_word("default") && !check_punct("}")) {
      if (at_end()) fail("'}' closing switch");
      if (accept_punct(";")) continue;
      if (accept_word("break")) {
        expect_punct(";");
        if (!check_word("case") && !check_word("default") && !check_punct("}")) {
          fail("'case', 'default' or '}' after 'break'");
        }
        return true;
      }
      body.push_back(statement());
    }
    return false;
  }

  ExprPtr paren_expression() {
    expect_punct("(");
    ExprPtr e = expression();
    expect_punct(")");
    return e;
  }

  // ---- expressions (C precedence) ----
  ExprPtr expression() { return logical_or(); }

  ExprPtr binary_level(ExprPtr (Parser::*next)(),
                       std::initializer_list<std::pair<std::string_view, BinaryOp>> ops) {
    ExprPtr lhs = (this->*next)();
    while (true) {
      bool matched = false;
      for (const auto& [text, op] : ops) {
        if (check_op(text)) {
          SourceSpan s = advance().span;
          ExprPtr rhs = (this->*next)();
          lhs = make_expr(BinaryExpr{op, std::move(lhs), std::move(rhs)}, s);
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  ExprPtr logical_or() { return binary_level(&Parser::logical_and, {{"||", BinaryOp::kOr}}); }
  ExprPtr logical_and() { return binary_level(&Parser::equality, {{"&&", BinaryOp::kAnd}}); }
  ExprPtr equality() {
    return binary_level(&Parser::relational, {{"==", BinaryOp::kEq}, {"!=", BinaryOp::kNe}});
  }
  ExprPtr relational() {
    return binary_level(&Parser::additive, {{"<", BinaryOp::kLt},
                                            {"<=", BinaryOp::kLe},
                                            {">", BinaryOp::kGt},
                                            {">=", BinaryOp::kGe}});
  }
  ExprPtr additive() {
    return binary_level(&Parser::multiplicative, {{"+", BinaryOp::kAdd}, {"-", BinaryOp::kSub}});
  }
  ExprPtr multiplicative() {
    return binary_level(&Parser::unary, {{"*", BinaryOp::kMul},
                                         {"/", BinaryOp::kDiv},
                                         {"%", BinaryOp::kMod}});
  }

  ExprPtr unary() {
    SourceSpan s = span();
    if (accept_op("!")) return make_expr(UnaryExpr{UnaryOp::kNot, unary()}, s);
    if (accept_op("-")) return make_expr(UnaryExpr{UnaryOp::kNeg, unary()}, s);
    return primary();
  }

  ExprPtr primary() {
    if (at_end()) fail("expression");
    const Token& t = *peek();
    SourceSpan s = t.span;
    switch (t.kind) {
      case TokenKind::kNumber: {
        advance();
        NumberLit lit;
        if (const auto* u = std::get_if<std::uint64_t>(&t.number_value)) {
          lit.value = *u;
        } else {
          lit.value = std::get<double>(t.number_value);
        }
        lit.hex_digit_count = t.hex_digit_count;
        return make_expr(lit, s);
      }
      case TokenKind::kStringLit:
        advance();
        return make_expr(StringLit{t.text}, s);
      case TokenKind::kSubDomainName:
        advance();
        return make_expr(SubDomainRef{t.text}, s);
      case TokenKind::kDomainName:
        fail("expression (a domain reference is only allowed as a field value)");
      case TokenKind::kPunct:
        if (t.text == "(") {
          advance();
          ExprPtr e = expression();
          expect_punct(")");
          return e;
        }
        break;
      case TokenKind::kWord: {
        ReadVerb verb;
        if (is_read_verb(t, &verb)) {
          advance();
          return make_expr(ReadExpr{read_command(verb, s)}, s);
        }
        if (t.text == "getfile") fail("expression (getFile is only allowed in a data binding)");
        break;
      }
      default:
        break;
    }
    fail("expression");
  }

  bool starts_operand() const {
    return check_kind(TokenKind::kNumber) || check_kind(TokenKind::kSubDomainName) ||
           check_punct("(");
  }

  ReadCommand read_command(ReadVerb verb, SourceSpan s) {
    ReadCommand cmd;
    cmd.verb = verb;
    cmd.span = s;
    if (check_op("@")) {
      if (is_byte_verb(verb)) fail("count ('@position' is only valid for getBit/seeBit)");
      advance();
      AtForm at;
      at.position = additive();
      expect_punct(",");
      at.count = additive();
      cmd.form = std::move(at);
      return cmd;
    }
    if (!starts_operand()) {
      cmd.form = CountForm{};
      return cmd;
    }
    ExprPtr first = additive();
    if (check_op("~")) {
      if (is_byte_verb(verb)) fail("';' ('start ~ stop' is only valid for getBit/seeBit)");
      advance();
      cmd.form = RangeForm{std::move(first), additive()};
      return cmd;
    }
    cmd.form = CountForm{std::move(first)};
    return cmd;
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  SourceSpan eof_span_;
};

// ---- S-expression rendering ----

std::string op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kMod: return "%";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kAnd: return "&&";
    case BinaryOp::kOr: return "||";
  }
  return "?";
}

std::string verb_text(ReadVerb v) {
  switch (v) {
    case ReadVerb::kGetBit: return "getbit";
    case ReadVerb::kSeeBit: return "seebit";
    case ReadVerb::kGetBytes: return "getbytes";
    case ReadVerb::kSeeBytes: return "seebytes";
  }
  return "?";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string opt_expr(const ExprPtr& e) { return e ? to_sexpr(*e) : "_"; }

std::string block_sexpr(const Block& b);

std::string stmt_sexpr(const Stmt& st) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PrintStmt>) {
          std::string out = n.newline ? "(println" : "(print";
          for (const auto& a : n.args) out += " " + to_sexpr(*a);
          return out + ")";
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          return "(if " + to_sexpr(*n.cond) + " " + block_sexpr(n.then_block) +
                 (n.else_block ? " " + block_sexpr(*n.else_block) : "") + ")";
        } else if constexpr (std::is_same_v<T, SwitchStmt>) {
          std::string out = "(switch " + to_sexpr(*n.scrutinee);
          for (std::size_t i = 0; i <= n.cases.size(); ++i) {
            if (n.default_block && n.default_position == i) {
              out += " (default " + block_sexpr(*n.default_block) +
                     (n.default_has_break ? " break" : "") + ")";
            }
            if (i < n.cases.size()) {
              const auto& c = n.cases[i];
              out += " (case " + to_sexpr(*c.value) + " " + block_sexpr(c.body) +
                     (c.has_break ? " break" : "") + ")";
            }
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          return "(while " + to_sexpr(*n.cond) + " " + block_sexpr(n.body) + ")";
        } else if constexpr (std::is_same_v<T, DoWhileStmt>) {
          return "(do " + block_sexpr(n.body) + " " + to_sexpr(*n.cond) + ")";
        } else if constexpr (std::is_same_v<T, ForStmt>) {
          return "(for " + (n.init ? stmt_sexpr(*n.init) : "_") + " " + opt_expr(n.cond) + " " +
                 (n.step ? stmt_sexpr(*n.step) : "_") + " " + block_sexpr(n.body) + ")";
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          return "(set %" + n.name + " " + to_sexpr(*n.value) + ")";
        } else {
          return to_sexpr(*n.expr);
        }
      },
      st.node);
}

std::string block_sexpr(const Block& b) {
  std::string out = "{";
  for (std::size_t i = 0; i < b.size(); ++i) out += (i ? " " : "") + stmt_sexpr(*b[i]);
  return out + "}";
}

}  // namespace

ScriptAst parse_script(const std::vector<Token>& tokens) { return Parser(tokens).script(); }

ScriptAst parse_source(std::string_view source) { return parse_script(tokenize(source)); }

std::string to_sexpr(const ReadCommand& cmd) {
  std::string out = "(" + verb_text(cmd.verb);
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CountForm>) {
          out += " " + opt_expr(f.count);
        } else if constexpr (std::is_same_v<T, AtForm>) {
          out += " @" + to_sexpr(*f.position) + " " + to_sexpr(*f.count);
        } else {
          out += " " + to_sexpr(*f.start) + " ~ " + to_sexpr(*f.stop);
        }
      },
      cmd.form);
  return out + ")";
}

std::string to_sexpr(const Expr& expr) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NumberLit>) {
          if (const auto* u = std::get_if<std::uint64_t>(&n.value)) return std::to_string(*u);
          char buf[64];
          auto [p, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(n.value));
          return std::string(buf, p);
        } else if constexpr (std::is_same_v<T, StringLit>) {
          return quote(n.value);
        } else if constexpr (std::is_same_v<T, SubDomainRef>) {
          return "%" + n.name;
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return "(" + op_text(n.op) + " " + to_sexpr(*n.lhs) + " " + to_sexpr(*n.rhs) + ")";
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          return std::string(n.op == UnaryOp::kNot ? "(! " : "(neg ") + to_sexpr(*n.operand) + ")";
        } else if constexpr (std::is_same_v<T, ReadExpr>) {
          return to_sexpr(n.command);
        } else if constexpr (std::is_same_v<T, DomainRef>) {
          return "$" + n.name;
        } else {
          return "(getfile " + quote(n.path) + ")";
        }
      },
      expr.node);
}

std::string to_sexpr(const ScriptAst& ast) {
  std::ostringstream out;
  for (const auto& item : ast.items) {
    if (const auto* b = std::get_if<DomainBinding>(&item)) {
      out << "(bind $" << b->name << " " << to_sexpr(*b->init) << ")\n";
      continue;
    }
    const auto& def = std::get<DomainDef>(item);
    out << "(define $" << def.name;
    for (const auto& body_item : def.body) {
      if (const auto* f = std::get_if<FieldStmt>(&body_item)) {
        out << "\n  (field %" << f->name << " ";
        if (const auto* r = std::get_if<ReadCommand>(&f->rvalue)) {
          out << to_sexpr(*r);
        } else {
          out << "$" << std::get<DomainRef>(f->rvalue).name;
        }
        out << ")";
      } else {
        out << "\n  " << stmt_sexpr(*std::get<StmtPtr>(body_item));
      }
    }
    if (def.where_block) out << "\n  (where " << block_sexpr(*def.where_block) << ")";
    out << ")\n";
  }
  return out.str();
}

}  // namespace dfsl
