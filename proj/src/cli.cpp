#include "sil/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sil/derivation.hpp"
#include "sil/parser.hpp"
#include "sil/semantics.hpp"
#include "sil/sep/derivation.hpp"
#include "sil/sep/satisfaction.hpp"
#include "sil/state_format.hpp"
#include "sil/taxonomy.hpp"
#include "sil/triples.hpp"

namespace sil {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Accepts "64" or "B=64".
Value parse_modulus(const std::string& text) {
  std::string digits = text;
  if (digits.rfind("B=", 0) == 0) digits = digits.substr(2);
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(digits, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != digits.size() || value < 2)
    throw ConfigError("bad --domain '" + text + "': expected an integer modulus of at least 2");
  return static_cast<Value>(value);
}

sep::SepConfig sep_config(const Program& p) {
  return p.heap_bounds ? sep::config_from_bounds(*p.heap_bounds) : sep::SepConfig{};
}

enum class Format { text, json };

struct Options {
  std::string logic;
  std::string pre;
  std::string post;
  std::string program;
  std::string domain = "8";
  std::string format = "text";
  std::string emit;
  std::string derivation;
  bool sep = false;
  std::uint64_t seed = 0;
  std::uint64_t instances = 500;
  std::vector<std::string> properties;
  bool timing = false;
};

Format parse_format(const std::string& f) {
  if (f == "text") return Format::text;
  if (f == "json") return Format::json;
  throw ConfigError("unknown format '" + f + "'");
}

void emit_verdict(std::ostream& out, Format fmt, const std::string& logic, bool valid, const std::string& text) {
  if (fmt == Format::json) {
    nlohmann::ordered_json j{{"logic", logic}, {"valid", valid}, {"verdict", text}};
    out << j.dump() << '\n';
  } else {
    out << text << '\n';
  }
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto fmt = parse_format(o.format);
  const Logic logic = parse_logic(o.logic);
  const auto program = parse_program(read_file(o.program));
  if (program.heap_mode) {
    if (logic != Logic::sil) throw ConfigError("heap programs support only --logic sil");
    const auto cfg = sep_config(program);
    const auto pre = sep::parse_asl(o.pre);
    const auto post = sep::parse_asl(o.post);
    const auto v = sep::check_sep_validity(*pre, *program.body, *post, cfg, program.vars);
    emit_verdict(out, fmt, o.logic, v.valid, v.describe());
    return v.valid ? kExitOk : kExitFalse;
  }
  const auto domain = make_domain(program.vars, parse_modulus(o.domain));
  const auto pre = predicate_set(*parse_bexp(o.pre, program.vars), domain);
  const auto post = predicate_set(*parse_bexp(o.post, program.vars), domain);
  const auto v = check_validity(logic, pre, *program.body, post);
  emit_verdict(out, fmt, o.logic, v.valid, v.describe(*domain));
  return v.valid ? kExitOk : kExitFalse;
}

int cmd_infer(const Options& o, std::ostream& out) {
  const auto fmt = parse_format(o.format);
  const auto program = parse_program(read_file(o.program));
  if (program.heap_mode) throw ConfigError("infer supports programs without heap commands");
  const auto domain = make_domain(program.vars, parse_modulus(o.domain));
  const auto post = predicate_set(*parse_bexp(o.post, program.vars), domain);
  const auto pre = weakest_sil_pre(*program.body, post);
  const auto text = describe_state_set(pre);
  if (!o.emit.empty()) {
    std::ofstream file(o.emit, std::ios::binary);
    if (!file) throw Error("cannot write '" + o.emit + "'");
    file << encode_derivation(synthesize_derivation(program.body, post)) << '\n';
  }
  if (fmt == Format::json) {
    nlohmann::ordered_json j{{"pre", text}, {"states", pre.count()}};
    out << j.dump() << '\n';
  } else {
    out << text << '\n';
  }
  return kExitOk;
}

int report_check(std::ostream& out, Format fmt, const CheckResult& res, std::size_t nodes) {
  if (fmt == Format::json) {
    nlohmann::ordered_json j{{"accepted", res.accepted}, {"nodes", nodes}};
    if (!res.accepted) {
      j["path"] = res.path;
      j["message"] = res.message;
    }
    out << j.dump() << '\n';
  } else if (res.accepted) {
    out << "accepted (" << nodes << " nodes)\n";
  } else {
    out << res.describe() << '\n';
  }
  return res.accepted ? kExitOk : kExitFalse;
}

int cmd_check_proof(const Options& o, std::ostream& out) {
  const auto fmt = parse_format(o.format);
  const auto program = parse_program(read_file(o.program));
  const auto text = read_file(o.derivation);
  CheckResult res;
  std::size_t nodes = 0;
  if (o.sep) {
    const auto d = sep::decode_sep_derivation(text, program.vars);
    nodes = d.size();
    res = same(d.cmd, program.body) ? sep::check_sep_derivation(d, sep_config(program))
                                    : CheckResult{false, "root", "command differs from the program body"};
  } else {
    if (program.heap_mode) throw ConfigError("heap programs need --sep");
    const auto domain = make_domain(program.vars, parse_modulus(o.domain));
    const auto d = decode_derivation(text, domain);
    nodes = d.size();
    res = same(d.cmd, program.body) ? check_derivation(d)
                                    : CheckResult{false, "root", "command differs from the program body"};
  }
  return report_check(out, fmt, res, nodes);
}

int cmd_fuzz(const Options& o, std::ostream& out) {
  const auto fmt = parse_format(o.format);
  taxonomy::SuiteConfig cfg;
  cfg.gen.seed = o.seed;
  cfg.gen.modulus = parse_modulus(o.domain);
  cfg.instances = o.instances;
  cfg.properties = o.properties;
  const auto reports = taxonomy::run_taxonomy_suite(cfg);
  std::size_t failed = 0;
  for (const auto& r : reports) failed += r.ok() ? 0 : 1;
  if (fmt == Format::json) {
    out << taxonomy::format_report_json(reports, o.timing);
  } else {
    out << taxonomy::format_report_text(reports, o.timing);
    if (failed == 0)
      out << "all " << reports.size() << " properties hold\n";
    else
      out << failed << " of " << reports.size() << " properties failed\n";
  }
  return failed == 0 ? kExitOk : kExitFalse;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks triples of the four program logics and proofs of sufficient incorrectness"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Check a triple for validity");
  check->add_option("--logic", o.logic, "hl, il, nc or sil")->required();
  check->add_option("--pre", o.pre, "Precondition")->required();
  check->add_option("--post", o.post, "Postcondition")->required();
  check->add_option("program", o.program, "Program file")->required();
  check->add_option("--domain", o.domain, "Modulus B of the value domain (plain programs)");
  check->add_option("--format", o.format, "text or json");

  auto* infer = app.add_subcommand("infer", "Print the weakest precondition for a postcondition");
  infer->add_option("--post", o.post, "Postcondition")->required();
  infer->add_option("program", o.program, "Program file")->required();
  infer->add_option("--domain", o.domain, "Modulus B of the value domain");
  infer->add_option("--emit-derivation", o.emit, "Write the synthesized derivation to this file");
  infer->add_option("--format", o.format, "text or json");

  auto* proof = app.add_subcommand("check-proof", "Check a derivation file against a program");
  proof->add_option("derivation", o.derivation, "Derivation file")->required();
  proof->add_option("--program", o.program, "Program file")->required();
  proof->add_flag("--sep", o.sep, "Heap proof system");
  proof->add_option("--domain", o.domain, "Modulus B of the value domain (plain proofs)");
  proof->add_option("--format", o.format, "text or json");

  auto* fuzz = app.add_subcommand("fuzz", "Run the property campaigns");
  fuzz->add_option("--seed", o.seed, "Corpus seed");
  fuzz->add_option("--instances", o.instances, "Instances per property");
  fuzz->add_option("--property", o.properties, "Property id, or all")->allow_extra_args(false);
  fuzz->add_option("--domain", o.domain, "Modulus B of the value domain");
  fuzz->add_option("--format", o.format, "text or json");
  fuzz->add_flag("--timing", o.timing, "Include elapsed times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*infer) return cmd_infer(o, out);
    if (*proof) return cmd_check_proof(o, out);
    if (*fuzz) {
      for (const auto& id : o.properties) {
        if (id == "all") continue;
        const auto& ids = taxonomy::property_ids();
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw ConfigError("unknown property '" + id + "'");
      }
      return cmd_fuzz(o, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace sil
