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

#include "dfsl/emitter.hpp"

#include <charconv>
#include <cctype>
#include <set>

namespace dfsl {
namespace {

std::string escape_attr(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n': out += "&#10;"; break;
      case '\t': out += "&#9;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string field_value_text(const Value& v) {
  if (v.is_bytes()) return to_hex(std::get<RawBits>(v.data));
  return to_display(v);
}

void emit_node(const ResultNode& node, int depth, std::string& out) {
  std::string indent(static_cast<std::size_t>(2 * depth), ' ');
  if (node.kind == ResultNode::Kind::kField) {
    out += indent + "<field name=\"" + escape_attr(node.name) + "\" offset=\"" +
           std::to_string(node.offset_bits) + "\" width=\"" + std::to_string(node.width_bits) +
           "\" value=\"" + escape_attr(field_value_text(node.value)) + "\"/>\n";
    return;
  }
  if (node.children.empty()) {
    out += indent + "<domain name=\"" + escape_attr(node.name) + "\"/>\n";
    return;
  }
  out += indent + "<domain name=\"" + escape_attr(node.name) + "\">\n";
  for (const auto& c : node.children) emit_node(*c, depth + 1, out);
  out += indent + "</domain>\n";
}

// ---- reader ----

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xc0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xe0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  } else {
    out += static_cast<char>(0xf0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  }
}

class XmlReader {
 public:
  explicit XmlReader(std::string_view doc) : doc_(doc) {}

  XmlElement document() {
    if (doc_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    misc();
    if (at_end() || peek() != '<') fail("expected root element");
    XmlElement root = element();
    misc();
    if (!at_end()) fail("content after the root element");
    return root;
  }

 private:
  bool at_end() const { return pos_ >= doc_.size(); }
  char peek() const { return doc_[pos_]; }
  bool starts_with(std::string_view s) const { return doc_.substr(pos_, s.size()) == s; }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < doc_.size(); ++i) line += doc_[i] == '\n';
    throw XmlError("XML line " + std::to_string(line) + ": " + what);
  }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) {
      ++pos_;
    }
  }

  void skip_past(std::string_view terminator, const char* what) {
    std::size_t end = doc_.find(terminator, pos_);
    if (end == std::string_view::npos) fail(std::string("unterminated ") + what);
    pos_ = end + terminator.size();
  }

  // Whitespace, comments and processing instructions.
  void misc() {
    while (true) {
      skip_ws();
      if (starts_with("<!--")) {
        skip_past("-->", "comment");
      } else if (starts_with("<?")) {
        skip_past("?>", "processing instruction");
      } else if (starts_with("<!DOCTYPE")) {
        fail("DOCTYPE declarations are not supported");
      } else {
        return;
      }
    }
  }

  std::string name() {
    if (at_end() || !is_name_start(peek())) fail("expected a name");
    std::size_t begin = pos_;
    while (!at_end() && is_name_char(peek())) ++pos_;
    return std::string(doc_.substr(begin, pos_ - begin));
  }

  std::string decode(std::string_view raw) {
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      char c = raw[i];
      if (c == '<') fail("'<' inside character data or attribute value");
      if (c != '&') {
        out += c;
        continue;
      }
      std::size_t semi = raw.find(';', i);
      if (semi == std::string_view::npos) fail("unterminated entity reference");
      std::string_view ent = raw.substr(i + 1, semi - i - 1);
      if (ent == "lt") out += '<';
      else if (ent == "gt") out += '>';
      else if (ent == "amp") out += '&';
      else if (ent == "quot") out += '"';
      else if (ent == "apos") out += '\'';
      else if (ent.size() > 1 && ent[0] == '#') {
        std::uint32_t cp = 0;
        bool hex = ent[1] == 'x';
        std::string_view digits = ent.substr(hex ? 2 : 1);
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
        if (digits.empty() || ec != std::errc{} || p != digits.data() + digits.size() || cp == 0 ||
            cp > 0x10ffff) {
          fail("bad character reference '&" + std::string(ent) + ";'");
        }
        append_utf8(out, cp);
      } else {
        fail("unknown entity '&" + std::string(ent) + ";'");
      }
      i = semi;
    }
    return out;
  }

  XmlElement element() {
    ++pos_;  // '<'
    XmlElement el;
    el.name = name();
    std::set<std::string> seen;
    while (true) {
      bool had_ws = !at_end() && std::isspace(static_cast<unsigned char>(peek()));
      skip_ws();
      if (at_end()) fail("unterminated start tag <" + el.name + ">");
      if (starts_with("/>")) {
        pos_ += 2;
        return el;
      }
      if (peek() == '>') {
        ++pos_;
        break;
      }
      if (!had_ws) fail("expected whitespace between attributes of <" + el.name + ">");
      std::string key = name();
      skip_ws();
      if (at_end() || peek() != '=') fail("expected '=' after attribute '" + key + "'");
      ++pos_;
      skip_ws();
      if (at_end() || (peek() != '"' && peek() != '\'')) fail("attribute value must be quoted");
      char q = peek();
      ++pos_;
      std::size_t end = doc_.find(q, pos_);
      if (end == std::string_view::npos) fail("unterminated attribute value");
      std::string value = decode(doc_.substr(pos_, end - pos_));
      pos_ = end + 1;
      if (!seen.insert(key).second) fail("duplicate attribute '" + key + "' on <" + el.name + ">");
      el.attributes.emplace_back(std::move(key), std::move(value));
    }

    while (true) {
      if (at_end()) fail("unclosed element <" + el.name + ">");
      if (starts_with("</")) {
        pos_ += 2;
        std::string closing = name();
        skip_ws();
        if (at_end() || peek() != '>') fail("malformed end tag </" + closing + ">");
        ++pos_;
        if (closing != el.name) {
          fail("end tag </" + closing + "> does not match <" + el.name + ">");
        }
        return el;
      }
      if (starts_with("<!--")) {
        skip_past("-->", "comment");
      } else if (starts_with("<![CDATA[")) {
        pos_ += 9;
        std::size_t end = doc_.find("]]>", pos_);
        if (end == std::string_view::npos) fail("unterminated CDATA section");
        el.text += doc_.substr(pos_, end - pos_);
        pos_ = end + 3;
      } else if (starts_with("<?")) {
        skip_past("?>", "processing instruction");
      } else if (peek() == '<') {
        el.children.push_back(element());
      } else {
        std::size_t end = doc_.find('<', pos_);
        if (end == std::string_view::npos) end = doc_.size();
        el.text += decode(doc_.substr(pos_, end - pos_));
        pos_ = end;
      }
    }
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
};

bool is_lower_ncname(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::islower(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
          c == '_' || c == '-' || c == '.')) {
      return false;
    }
  }
  return true;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

bool is_field_value(std::string_view s) {
  if (s.size() > 2 && s[0] == '0' && s[1] == 'x') {
    for (char c : s.substr(2)) {
      if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  }
  return parse_uint(s).has_value();
}

bool blank(const std::string& text) {
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::optional<std::string> check_node(const XmlElement& el, const std::string& where) {
  if (!is_lower_ncname(el.name)) return where + ": element name '" + el.name + "' is not a lowercase NCName";
  if (!blank(el.text)) return where + ": unexpected character data in <" + el.name + ">";
  for (const auto& [k, v] : el.attributes) {
    (void)v;
    if (!is_lower_ncname(k)) return where + ": attribute name '" + k + "' is not a lowercase NCName";
  }
  const std::string* name = el.attribute("name");
  if (el.name == "domain") {
    if (!name) return where + ": <domain> is missing attribute 'name'";
    for (std::size_t i = 0; i < el.children.size(); ++i) {
      auto err = check_node(el.children[i], where + "/" + *name + "[" + std::to_string(i) + "]");
      if (err) return err;
    }
    return std::nullopt;
  }
  if (el.name == "field") {
    for (const char* attr : {"name", "offset", "width", "value"}) {
      if (!el.attribute(attr)) return where + ": <field> is missing attribute '" + attr + "'";
    }
    if (!parse_uint(*el.attribute("offset"))) return where + ": <field> offset is not a non-negative integer";
    auto width = parse_uint(*el.attribute("width"));
    if (!width || *width == 0) return where + ": <field> width is not a positive integer";
    if (!is_field_value(*el.attribute("value"))) {
      return where + ": <field> value '" + *el.attribute("value") + "' is neither decimal nor 0x-hex";
    }
    if (!el.children.empty()) return where + ": <field> must be empty";
    return std::nullopt;
  }
  return where + ": unexpected element <" + el.name + ">";
}

void collect_xml_fields(const XmlElement& el, std::vector<XmlField>& out) {
  for (const auto& c : el.children) {
    if (c.name == "field") {
      XmlField f;
      f.name = *c.attribute("name");
      f.offset = *parse_uint(*c.attribute("offset"));
      f.width = *parse_uint(*c.attribute("width"));
      f.value = *c.attribute("value");
      out.push_back(std::move(f));
    } else {
      collect_xml_fields(c, out);
    }
  }
}

}  // namespace

const std::string* XmlElement::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string to_xml(const RunReport& report, std::string_view script_name) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<dfsl-parse script=\"" + escape_attr(script_name) + "\" stream-bits=\"" +
         std::to_string(report.stream_bits) + "\"";
  if (report.roots.empty()) return out + "/>\n";
  out += ">\n";
  for (const auto& root : report.roots) emit_node(*root, 1, out);
  return out + "</dfsl-parse>\n";
}

std::string to_text(const RunReport& report, bool include_field_dump) {
  std::string out = report.printed_output;
  if (!include_field_dump) return out;
  if (!out.empty() && out.back() != '\n') out += '\n';
  for (const auto& root : report.roots) {
    for (const ResultNode* leaf : leaves(*root)) {
      out += leaf->name + " = " + field_value_text(leaf->value) + "\n";
    }
  }
  return out;
}

XmlElement parse_xml(std::string_view doc) { return XmlReader(doc).document(); }

std::optional<std::string> validate_xml(std::string_view doc) {
  XmlElement root;
  try {
    root = parse_xml(doc);
  } catch (const XmlError& e) {
    return std::string(e.what());
  }
  if (root.name != "dfsl-parse") return "root element must be <dfsl-parse>, found <" + root.name + ">";
  if (!root.attribute("script")) return "<dfsl-parse> is missing attribute 'script'";
  const std::string* bits = root.attribute("stream-bits");
  if (!bits) return "<dfsl-parse> is missing attribute 'stream-bits'";
  if (!parse_uint(*bits)) return "<dfsl-parse> stream-bits is not a non-negative integer";
  if (!blank(root.text)) return "unexpected character data in <dfsl-parse>";
  for (std::size_t i = 0; i < root.children.size(); ++i) {
    const XmlElement& child = root.children[i];
    if (child.name != "domain") return "<dfsl-parse> may only contain <domain>, found <" + child.name + ">";
    if (auto err = check_node(child, "root[" + std::to_string(i) + "]")) return err;
  }
  return std::nullopt;
}

std::vector<XmlField> read_xml_fields(std::string_view doc) {
  if (auto err = validate_xml(doc)) throw XmlError(*err);
  std::vector<XmlField> out;
  collect_xml_fields(parse_xml(doc), out);
  return out;
}

std::vector<XmlField> report_fields(const RunReport& report) {
  std::vector<XmlField> out;
  for (const auto& root : report.roots) {
    for (const ResultNode* leaf : leaves(*root)) {
      out.push_back({leaf->name, leaf->offset_bits, leaf->width_bits, field_value_text(leaf->value)});
    }
  }
  return out;
}

}  // namespace dfsl
