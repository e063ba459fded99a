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

#include "dfsl/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "dfsl/emitter.hpp"
#include "test_support.hpp"

using namespace dfsl;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = main_with_args(args, out, err);
  return {code, out.str(), err.str()};
}

std::string script(const char* name) { return dfsl::testing::scripts_dir() + "/" + name; }
std::string fixture(const char* name) { return dfsl::testing::fixtures_dir() + "/" + name; }

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "dfsl_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("successful run prints the interpretation") {
  Result r = cli({"run", script("pmd.dfsl")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("Tx Power Cutback Value = 18\n") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("exit codes per error class") {
  CHECK(cli({"run", fixture("unterminated_brace.dfsl")}).code == kExitSyntax);
  CHECK(cli({"run", fixture("undefined_domain.dfsl")}).code == kExitSemantic);
  CHECK(cli({"run", fixture("cycle.dfsl")}).code == kExitSemantic);
  CHECK(cli({"run", fixture("duplicate.dfsl")}).code == kExitSemantic);
  CHECK(cli({"run", script("icmp.dfsl"), "--data", fixture("truncated_icmp.dat")}).code == kExitRuntime);
  CHECK(cli({"run", "/no/such/script.dfsl"}).code == kExitIo);
  CHECK(cli({"run", script("pmd.dfsl"), "--data", "/no/such/data.bin"}).code == kExitIo);
  CHECK(cli({"run", script("pmd.dfsl"), "--hex", "xyz"}).code == kExitIo);

  Result syntax = cli({"run", fixture("unterminated_brace.dfsl")});
  CHECK(syntax.err.find("parse error") != std::string::npos);
  CHECK(syntax.err.find("line ") != std::string::npos);
  Result runtime = cli({"run", script("icmp.dfsl"), "--data", fixture("truncated_icmp.dat")});
  CHECK(runtime.err.find("runtime error") != std::string::npos);
}

TEST_CASE("usage handling") {
  Result help = cli({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("--xml") != std::string::npos);
  CHECK(help.out.find("--dump-ast") != std::string::npos);
  CHECK(cli({"run", "--help"}).code == kExitOk);

  Result version = cli({"--version"});
  CHECK(version.code == kExitOk);
  CHECK(version.out == "dfsl 1.0.0\n");

  Result unknown = cli({"run", script("pmd.dfsl"), "--bogus"});
  CHECK(unknown.code == kExitIo);
  CHECK(unknown.err.find("Usage:") != std::string::npos);
  CHECK(cli({}).code == kExitIo);
  CHECK(cli({"run"}).code == kExitIo);
  CHECK(cli({"run", script("pmd.dfsl"), "--data", "a", "--hex", "00"}).code == kExitIo);
}

TEST_CASE("--hex replaces the bound literal transparently") {
  Result same = cli({"run", script("pmd.dfsl"), "--hex", "9351", "--dump-fields"});
  Result base = cli({"run", script("pmd.dfsl"), "--dump-fields"});
  CHECK(same.code == kExitOk);
  CHECK(same.out == base.out);

  Result other = cli({"run", script("pmd.dfsl"), "--hex", "0x0000", "--dump-fields"});
  CHECK(other.code == kExitOk);
  CHECK(other.out.find("txpowervalue = 0\n") != std::string::npos);
}

TEST_CASE("--data with the capture matches getFile") {
  Result via_flag = cli({"run", script("icmp.dfsl"), "--data", script("icmp.dat"), "--dump-fields"});
  Result via_script = cli({"run", script("icmp.dfsl"), "--dump-fields"});
  CHECK(via_flag.code == kExitOk);
  CHECK(via_flag.out == via_script.out);
  CHECK(via_flag.out.find("version = 4\n") != std::string::npos);
}

TEST_CASE("--xml and --out write files") {
  const fs::path dir = temp_dir();
  const fs::path xml = dir / "pmd.xml";
  const fs::path txt = dir / "pmd.txt";
  fs::remove(xml);
  fs::remove(txt);
  Result r = cli({"run", script("pmd.dfsl"), "--xml", xml.string(), "--out", txt.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  const std::string doc = dfsl::testing::read_text(xml.string());
  CHECK_FALSE(validate_xml(doc).has_value());
  CHECK(doc.find("script=\"pmd.dfsl\"") != std::string::npos);
  CHECK(dfsl::testing::read_text(txt.string()).find("Tx Power Cutback Value = 18") != std::string::npos);

  CHECK(cli({"run", script("pmd.dfsl"), "--xml", (dir / "missing" / "x.xml").string()}).code == kExitIo);
}

TEST_CASE("--dump-ast shows size annotations before the output") {
  Result r = cli({"run", script("icmp.dfsl"), "--dump-ast"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("$icmp_response := Fixed(288)", 0) == 0);
  CHECK(r.out.find("$ip_header := Fixed(144)") != std::string::npos);
  CHECK(r.out.find("$mac_address := Fixed(48)") != std::string::npos);
}

TEST_CASE("--strict warns about unread trailing bits") {
  Result r = cli({"run", script("icmp.dfsl"), "--strict"});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("496 trailing data bit(s)") != std::string::npos);
  CHECK(cli({"run", script("pmd.dfsl"), "--strict"}).err.empty());
}
