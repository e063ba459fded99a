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

#ifndef DFSL_PARSER_HPP_
#define DFSL_PARSER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "dfsl/ast.hpp"
#include "dfsl/lexer.hpp"

namespace dfsl {

// Recursive-descent parser over a token list. Throws ParseError on the first
// syntax error; there is no recovery.
ScriptAst parse_script(const std::vector<Token>& tokens);

// tokenize + parse_script.
ScriptAst parse_source(std::string_view source);

// Canonical S-expression rendering of a parse tree, used for structural
// comparison and debugging. Spans are omitted.
std::string to_sexpr(const ScriptAst& ast);
std::string to_sexpr(const Expr& expr);
std::string to_sexpr(const ReadCommand& cmd);

}  // namespace dfsl

#endif  // DFSL_PARSER_HPP_
