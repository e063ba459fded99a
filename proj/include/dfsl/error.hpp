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

#ifndef DFSL_ERROR_HPP_
#define DFSL_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dfsl {

// Position of a lexeme in script text. line and column are 1-based.
struct SourceSpan {
  std::uint32_t line = 1;
  std::uint32_t column = 1;
  std::size_t byte_offset = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

// Base of every error raised by the library. The span is meaningful only
// when has_span() is true (stream and I/O errors may arise outside a script).
class Error : public std::runtime_error {
 public:
  Error(std::string message, SourceSpan span, bool has_span = true)
      : std::runtime_error(message),
        message_(std::move(message)),
        span_(span),
        has_span_(has_span) {}

  const std::string& message() const { return message_; }
  const SourceSpan& span() const { return span_; }
  bool has_span() const { return has_span_; }

 private:
  std::string message_;
  SourceSpan span_;
  bool has_span_;
};

class LexError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, SourceSpan span, std::string expected)
      : Error(std::move(message), span), expected_(std::move(expected)) {}

  const std::string& expected() const { return expected_; }

 private:
  std::string expected_;
};

class SemanticError : public Error {
 public:
  enum class Kind { kDuplicateDefinition, kUnresolvedDomain, kCycle, kInvalidBinding };

  SemanticError(Kind kind, std::string message, SourceSpan span,
                std::vector<std::string> names)
      : Error(std::move(message), span), kind_(kind), names_(std::move(names)) {}

  Kind kind() const { return kind_; }
  // Offending domain name, or the full cycle path for kCycle.
  const std::vector<std::string>& names() const { return names_; }

 private:
  Kind kind_;
  std::vector<std::string> names_;
};

// Raised by the bit engine; carries no script span.
class StreamError : public Error {
 public:
  enum class Kind { kStreamExhausted, kInvalidCount, kPositionOutOfRange, kInvalidRange };

  StreamError(Kind kind, std::string message)
      : Error(std::move(message), SourceSpan{}, false), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class IoError : public Error {
 public:
  IoError(std::string message, std::string path)
      : Error(std::move(message), SourceSpan{}, false), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Failure while executing a script. domain_path lists the domain instances
// from the root down to the one being parsed, e.g. "icmp_response/ip_header".
class RuntimeError : public Error {
 public:
  enum class Kind {
    kStream,
    kType,
    kArithmetic,
    kDivisionByZero,
    kUnboundVariable,
    kLoopLimit,
    kInvalidBinding,
  };

  RuntimeError(Kind kind, std::string message, SourceSpan span,
               std::string domain_path = {})
      : Error(std::move(message), span),
        kind_(kind),
        domain_path_(std::move(domain_path)) {}

  Kind kind() const { return kind_; }
  const std::string& domain_path() const { return domain_path_; }

 private:
  Kind kind_;
  std::string domain_path_;
};

// One-line report naming line and column, e.g.
//   "line 3, column 5: parse error: expected ';', found '}'".
std::string format_error(const Error& error, std::string_view source);

}  // namespace dfsl

#endif  // DFSL_ERROR_HPP_
