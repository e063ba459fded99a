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

#ifndef DFSL_SEMANTICS_HPP_
#define DFSL_SEMANTICS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dfsl/ast.hpp"

namespace dfsl {

struct SizeAnnotation {
  enum class Kind { kFixed, kDynamic };
  Kind kind = Kind::kDynamic;
  std::uint64_t bits = 0;  // meaningful when kFixed

  static SizeAnnotation fixed(std::uint64_t bits) { return {Kind::kFixed, bits}; }
  static SizeAnnotation dynamic() { return {Kind::kDynamic, 0}; }
  bool is_fixed() const { return kind == Kind::kFixed; }

  friend bool operator==(const SizeAnnotation&, const SizeAnnotation&) = default;
};

std::string to_string(const SizeAnnotation& size);

struct DomainEntry {
  std::string name;
  std::optional<DomainDef> def;
  std::optional<DomainBinding> binding;
  std::optional<SizeAnnotation> size;  // set by propagate_sizes
};

class DomainTable {
 public:
  const DomainEntry* find(const std::string& name) const;
  DomainEntry* find(const std::string& name);
  DomainEntry& get_or_add(const std::string& name);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Names in order of first appearance in the script.
  const std::vector<std::string>& order() const { return order_; }

 private:
  std::map<std::string, DomainEntry> entries_;
  std::vector<std::string> order_;
};

// Merges bindings and definitions by name and resolves domain references.
// Throws SemanticError (kDuplicateDefinition, kUnresolvedDomain,
// kInvalidBinding).
DomainTable build_domain_table(const ScriptAst& ast);

// First cycle in the domain-reference graph as a name path whose first and
// last elements coincide, or nullopt when the graph is acyclic.
std::optional<std::vector<std::string>> detect_cycles(const DomainTable& table);

// Annotates every defined domain as Fixed(bits) or Dynamic. A domain is
// Fixed when each member is a read command with statically known operands or
// a link to a Fixed domain, and no inline statement or where-clause consumes
// stream bits. Peek members contribute zero bits. Precondition: acyclic.
DomainTable propagate_sizes(DomainTable table);

// build_domain_table + detect_cycles (throwing kCycle) + propagate_sizes.
DomainTable analyze(const ScriptAst& ast);

// Statically evaluates an arithmetic expression over integer literals.
std::optional<std::uint64_t> static_uint(const Expr& expr);

// Statically known width in bits of a read command, if any.
std::optional<std::uint64_t> static_width(const ReadCommand& cmd);

// True when the expression or statement contains a cursor-moving read.
bool consumes_stream(const Expr& expr);
bool consumes_stream(const Stmt& stmt);

struct ElabNode {
  enum class Kind {
    kRead,       // leaf: read command
    kInlined,    // link to a fixed-size domain, flattened into children
    kLink,       // link to a dynamic domain, kept indirect
    kStatement,  // inline statement in a structure body
  };
  Kind kind = Kind::kRead;
  std::string name;           // sub-domain name (empty for kStatement)
  std::string target_domain;  // kInlined / kLink
  std::optional<ReadCommand> read;
  std::optional<std::uint64_t> width_bits;
  bool peek = false;
  std::vector<ElabNode> children;  // kInlined
  SourceSpan span;
};

struct ElabDomain {
  std::string name;
  SizeAnnotation size;
  std::vector<ElabNode> members;
  bool has_binding = false;
  bool has_where = false;
};

struct ElaboratedTree {
  std::vector<ElabDomain> domains;  // table order; defined domains only

  const ElabDomain* find(const std::string& name) const;
};

// Precondition: sizes propagated.
ElaboratedTree elaborate(const DomainTable& table);

// Depth-first dotted leaf paths of a domain, e.g. "destination.vendor".
// Dynamic links appear as a single "name->$domain" entry.
std::vector<std::string> leaf_paths(const ElabDomain& domain);

// Indented human-readable tree with size annotations (for --dump-ast).
std::string render(const ElaboratedTree& tree);

}  // namespace dfsl

#endif  // DFSL_SEMANTICS_HPP_
