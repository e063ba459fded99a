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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dfsl/emitter.hpp"
#include "dfsl/interpreter.hpp"
#include "dfsl/parser.hpp"
#include "dfsl/semantics.hpp"

namespace dfsl {
namespace {

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (f) f << content;
  if (!f) {
    err << "dfsl: I/O error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

std::string usage_text() {
  return "Usage: dfsl run <script.dfsl> [options]\n"
         "       dfsl --help | --version\n"
         "\n"
         "Interprets binary data according to a DFSL layout script.\n"
         "\n"
         "Options:\n"
         "  --data FILE       read the first bound domain's data from FILE\n"
         "  --hex HEXSTRING   use HEXSTRING as the first bound domain's data\n"
         "  --xml PATH        write the parsed structure as XML to PATH\n"
         "  --out PATH        write text output to PATH instead of stdout\n"
         "  --dump-ast        print the elaborated layout with size annotations\n"
         "  --dump-fields     append one 'name = value' line per field\n"
         "  --strict          warn when trailing data bits are left unread\n"
         "  -h, --help        show this help\n"
         "  --version         show the version\n"
         "\n"
         "Exit codes: 0 ok, 1 syntax error, 2 semantic error, 3 runtime error,\n"
         "            4 I/O or usage error.\n";
}

std::string version_text() { return std::string("dfsl ") + kVersion + "\n"; }

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::ifstream in(config.script_path, std::ios::binary);
  if (!in) {
    err << "dfsl: I/O error: cannot open script '" << config.script_path << "'\n";
    return kExitIo;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string source = buf.str();
  const std::string script = config.script_path;

  ExecOptions options;
  options.base_dir = std::filesystem::path(config.script_path).parent_path();
  try {
    if (config.hex_override) options.data_override = source_from_hex_string(*config.hex_override);
  } catch (const std::invalid_argument& e) {
    err << "dfsl: invalid --hex value: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    if (config.data_path) options.data_override = source_from_file(*config.data_path);

    ScriptAst ast = parse_source(source);
    DomainTable table = analyze(ast);

    std::string text;
    if (config.dump_ast) text += render(elaborate(table));
    RunReport report = execute(ast, table, options);
    text += to_text(report, config.dump_fields);

    if (config.strict && report.bits_consumed < report.stream_bits) {
      err << script << ": warning: " << (report.stream_bits - report.bits_consumed)
          << " trailing data bit(s) left unread\n";
    }
    if (config.out) {
      if (!write_file(*config.out, text, err)) return kExitIo;
    } else {
      out << text;
    }
    if (config.xml_out) {
      std::string name = std::filesystem::path(config.script_path).filename().string();
      if (!write_file(*config.xml_out, to_xml(report, name), err)) return kExitIo;
    }
    return kExitOk;
  } catch (const LexError& e) {
    err << script << ": " << format_error(e, source) << "\n";
    return kExitSyntax;
  } catch (const ParseError& e) {
    err << script << ": " << format_error(e, source) << "\n";
    return kExitSyntax;
  } catch (const SemanticError& e) {
    err << script << ": " << format_error(e, source) << "\n";
    return kExitSemantic;
  } catch (const RuntimeError& e) {
    err << script << ": " << format_error(e, source) << "\n";
    return kExitRuntime;
  } catch (const StreamError& e) {
    err << script << ": " << format_error(e, source) << "\n";
    return kExitRuntime;
  } catch (const IoError& e) {
    err << script << ": " << format_error(e, source) << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    // Malformed literal binding (e.g. digit count out of range).
    err << script << ": runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DFSL binary data interpreter", "dfsl"};
  app.set_help_flag();
  bool help = false;
  bool version = false;
  app.add_flag("-h,--help", help);
  app.add_flag("--version", version);

  CliConfig config;
  CLI::App* run_cmd = app.add_subcommand("run", "interpret a script");
  run_cmd->set_help_flag();
  run_cmd->add_flag("-h,--help", help);
  run_cmd->add_option("script", config.script_path)->required();
  auto* data = run_cmd->add_option("--data", config.data_path);
  auto* hex = run_cmd->add_option("--hex", config.hex_override);
  data->excludes(hex);
  run_cmd->add_option("--xml", config.xml_out);
  run_cmd->add_option("--out", config.out);
  run_cmd->add_flag("--dump-ast", config.dump_ast);
  run_cmd->add_flag("--dump-fields", config.dump_fields);
  run_cmd->add_flag("--strict", config.strict);

  // CLI11 parses a reversed argument vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (help) {
      out << usage_text();
      return kExitOk;
    }
    err << "dfsl: " << e.what() << "\n\n" << usage_text();
    return kExitIo;
  }
  if (help) {
    out << usage_text();
    return kExitOk;
  }
  if (version) {
    out << version_text();
    return kExitOk;
  }
  if (!run_cmd->parsed()) {
    err << "dfsl: missing command\n\n" << usage_text();
    return kExitIo;
  }
  return run(config, out, err);
}

}  // namespace dfsl
