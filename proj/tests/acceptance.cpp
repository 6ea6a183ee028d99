// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracle.hpp"
#include "sil/cli.hpp"
#include "sil/derivation.hpp"
#include "sil/sep/derivation.hpp"
#include "sil/sep/properties.hpp"
#include "sil/sep/satisfaction.hpp"
#include "sil/taxonomy.hpp"
#include "sil/triples.hpp"

using namespace sil;

namespace {

// Collects failed checks for one criterion.
struct Checks {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

bool oracle_sil(const StateSet& p, const Command& r, const StateSet& q) {
  const auto sp = oracle::space_of(p.domain());
  return oracle::subset(oracle::from_set(p, sp), oracle::pre_rec(r, oracle::from_set(q, sp), sp));
}

struct ExampleTriple {
  Logic logic;
  const char* pre;
  const char* program;
  const char* post;
  bool valid;
};

const char* kEvenOdd = "x mod 2 = 0 && y mod 2 = 1";
const char* kStrong = "z = 42 && y mod 2 = 1 && x mod 2 = 0";

const std::vector<ExampleTriple> kExamples{
    {Logic::sil, kEvenOdd, "r42.rc", "z = 42", true},    {Logic::il, "z = 11", "r42.rc", kStrong, true},
    {Logic::sil, "z = 11", "r42.rc", kStrong, false},    {Logic::sil, kEvenOdd, "r42nd.rc", "z = 42", true},
    {Logic::hl, kEvenOdd, "r42nd.rc", "z = 42", false},  {Logic::nc, "z != 42", "r42nd.rc", "z != 42", true},
    {Logic::nc, "z > 42", "r42nd.rc", "z != 42", false},
};

std::string describe(const ExampleTriple& t) {
  return std::string(to_string(t.logic)) + " <" + t.pre + "> " + t.program + " <" + t.post + ">";
}

void verdicts(Checks& c) {
  for (const auto& t : kExamples) {
    const auto p = load_program(t.program);
    const auto d = make_domain(p.vars, 64);
    const auto v = check_validity(t.logic, guard_set(t.pre, d), *p.body, guard_set(t.post, d));
    c.expect(v.valid == t.valid, describe(t));
    if (t.logic == Logic::sil && !t.valid)
      c.expect(v.pre_state && d->format(*v.pre_state) == "x=0, y=0, z=11", describe(t) + " witness");
  }
}

void verdicts_reference(Checks& c) {
  for (const auto& t : kExamples) {
    const auto p = load_program(t.program);
    const auto d = make_domain(p.vars, 64);
    const auto sp = oracle::space_of(d);
    const auto pre = oracle::from_set(guard_set(t.pre, d), sp);
    const auto post = oracle::from_set(guard_set(t.post, d), sp);
    c.expect(oracle::valid(t.logic, pre, *p.body, post, sp) == t.valid, describe(t) + " (reference)");
  }
}

void weakest_pre(Checks& c) {
  const char* argv[] = {"silc", "infer", "--post", "x = 0 && y = 0", nullptr};
  const auto rxy_path = data_path("programs/rxy.rc");
  argv[4] = rxy_path.c_str();
  std::ostringstream out, err;
  c.expect(run_cli(5, argv, out, err) == kExitOk && out.str() == "x = 0 || y = 0\n", "infer rxy");

  const auto rxy = load_program("rxy.rc");
  const auto d8 = make_domain(rxy.vars, 8);
  c.expect(weakest_sil_pre(*rxy.body, guard_set("x = 0 && y = 0", d8)) == guard_set("x = 0 || y = 0", d8),
           "weakest pre rxy");

  const auto r42 = load_program("r42.rc");
  const auto d = make_domain(r42.vars, 64);
  const auto sp = oracle::space_of(d);
  const auto q = guard_set("z = 42", d);
  const auto want = oracle::to_set(oracle::pre(*r42.body, oracle::from_set(q, sp), sp), d, sp);
  c.expect(weakest_sil_pre(*r42.body, q) == want, "weakest pre r42 against the reference");
}

void loops(Checks& c) {
  for (auto [prog, file] : {std::pair{"rshortloop0.rc", "rshortloop0_iter0.json"}, std::pair{"rloop0.rc", "rloop0_unroll.json"}}) {
    const auto p = load_program(prog);
    const auto d = make_domain(p.vars, 64);
    const auto tree = decode_derivation(slurp(data_path(std::string("proofs/") + file)), d);
    const auto res = check_derivation(tree);
    c.expect(res.accepted, std::string(file) + ": " + res.describe());
    c.expect(same(tree.cmd, p.body), std::string(file) + " program");
    c.expect(oracle_sil(tree.pre, *tree.cmd, tree.post), std::string(file) + " conclusion");
  }
  const auto loop = load_program("rloop0.rc");
  const auto d = make_domain(loop.vars, 64);
  const auto q = guard_set("x = 20", d);
  c.expect(is_manifest_error(*loop.body, q), "manifest rloop0");
  c.expect(oracle_sil(StateSet::full(d), *loop.body, q), "manifest rloop0 (reference)");
}

void soundness_completeness(Checks& c) {
  taxonomy::GenConfig cfg;
  taxonomy::Rng rng(2024);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto in = taxonomy::gen_instance(cfg, i);
    const auto id = "instance " + std::to_string(i) + " " + to_string(*in.r);
    const bool valid = check_validity(Logic::sil, in.pre, *in.r, in.post).valid;
    c.expect(valid == oracle_sil(in.pre, *in.r, in.post), id + ": validity");
    const auto d = derive_then_weaken(in.r, in.pre, in.post);
    c.expect(d.has_value() == valid, id + ": derivable iff valid");
    if (d) {
      c.expect(check_derivation(*d).accepted, id + ": weakened derivation");
      c.expect(d->pre == in.pre && d->post == in.post, id + ": weakened conclusion");
    }
    const auto syn = synthesize_derivation(in.r, in.post);
    c.expect(check_derivation(syn).accepted, id + ": synthesized");
    c.expect(oracle_sil(syn.pre, *syn.cmd, syn.post), id + ": synthesized conclusion");
    const auto sp = oracle::space_of(in.domain);
    c.expect(syn.pre == oracle::to_set(oracle::pre_rec(*in.r, oracle::from_set(in.post, sp), sp), in.domain, sp),
             id + ": synthesized pre is weakest");
    const auto rnd = taxonomy::random_derivation(in.r, in.post, rng);
    if (check_derivation(rnd).accepted)
      c.expect(oracle_sil(rnd.pre, *rnd.cmd, rnd.post), id + ": random derivation conclusion");
    else
      c.expect(false, id + ": random derivation rejected");
  }
}

void taxonomy_suite(Checks& c) {
  taxonomy::SuiteConfig cfg;
  cfg.properties = {"bijection-hl-nc", "sil-hl",  "galois",  "bwsem-compositional", "adjunction",
                    "additivity",      "conj-il", "conj-sil", "il-sil-incomparable"};
  for (const auto& r : taxonomy::run_taxonomy_suite(cfg)) {
    c.expect(r.ok(), r.id);
    if (r.kind == taxonomy::PropertyKind::universal) c.expect(r.instances >= 500, r.id + " instance count");
  }
  // The search results must be genuine under the reference interpreter.
  for (auto logic : {Logic::il, Logic::sil}) {
    const auto ce = taxonomy::find_conj_counterexample(logic, cfg.gen);
    c.expect(ce.has_value(), std::string("conj ") + to_string(logic));
    if (!ce) continue;
    const auto sp = oracle::space_of(ce->pre1.domain());
    auto ok = [&](const StateSet& p, const StateSet& q) {
      return oracle::valid(logic, oracle::from_set(p, sp), *ce->r, oracle::from_set(q, sp), sp);
    };
    c.expect(ok(ce->pre1, ce->post1) && ok(ce->pre2, ce->post2) &&
                 !ok(ce->pre1 & ce->pre2, ce->post1 & ce->post2),
             std::string("conj ") + to_string(logic) + " (reference)");
  }
  // Backward semantics against the reference on the same corpus.
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto in = taxonomy::gen_instance(cfg.gen, i);
    const auto sp = oracle::space_of(in.domain);
    c.expect(bwsem(*in.r, in.post) == oracle::to_set(oracle::pre(*in.r, oracle::from_set(in.post, sp), sp),
                                                      in.domain, sp),
             "bwsem reference " + std::to_string(i));
  }
}

void separation(Checks& c) {
  const sep::SepConfig cfg;
  for (const auto& ax : sep::axiom_instances()) {
    const auto id = std::string(sep::to_string(ax.rule)) + " " + to_string(*ax.cmd);
    c.expect(sep::check_sep_derivation(ax, cfg).accepted, id + " accepted");
    c.expect(sep::check_sep_validity(*ax.pre, *ax.cmd, *ax.post, cfg).valid, id + " valid");
  }

  const auto client = load_program("rclient.rc");
  const auto ccfg = sep::config_from_bounds(*client.heap_bounds);
  const auto client_proof = sep::decode_sep_derivation(slurp(data_path("proofs/rclient.json")), client.vars);
  const auto res = sep::check_sep_derivation(client_proof, ccfg);
  c.expect(res.accepted, "client derivation: " + res.describe());
  c.expect(same(client_proof.cmd, client.body), "client derivation program");
  c.expect(sep::check_sep_validity(*sep::parse_asl("v |-> z * z |-> - * true"), *client.body,
                                   *sep::parse_asl("x |-/> * true"), ccfg, client.vars)
               .valid,
           "client conclusion");

  const auto frames = sep::frame_set();
  c.expect(frames.size() >= 10, "frame count");
  for (const auto& d : sep::derivation_corpus()) {
    c.expect(sep::check_sep_derivation(d, cfg).accepted, "corpus " + to_string(*d.cmd));
    for (const auto* node : sep::subderivations(d)) {
      const auto f = sep::framed_soundness(*node, frames, cfg);
      c.expect(!f.has_value(), "framed " + to_string(*node->cmd) + (f ? " with " + to_string(*f->frame) : ""));
    }
  }

  const std::vector<std::string> vars{"x", "y", "z"};
  for (const char* p : {"x |-> y * true", "exists v. x |-> v * v |-/>", "x = y && emp", "!(z |-/>)",
                        "x |-> - || y = 1"}) {
    const auto asl = sep::parse_asl(p);
    c.expect(!sep::check_fv_agreement(*asl, vars, cfg), std::string("fv agreement ") + p);
    c.expect(!sep::check_substitution_lemma(asl, make_var("y"), "x", vars, cfg), std::string("subst y/x ") + p);
    c.expect(!sep::check_substitution_lemma(asl, make_bin(ArithOp::add, make_var("z"), make_lit(1)), "x", vars,
                                            cfg),
             std::string("subst z+1/x ") + p);
  }
  for (const char* r : {"free(x)", "x := alloc()", "skip", "x := [y]", "[x] := y", "x := y + 1", "(x = y)?",
                        "x := nondet()", "(x := alloc() [+] free(y)); [z] := x"})
    c.expect(!sep::check_store_agreement(*parse_command(r, vars, true), vars, cfg), std::string("store ") + r);
}

void formats(Checks& c) {
  taxonomy::GenConfig cfg;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto in = taxonomy::gen_instance(cfg, i);
    const auto text = to_string(*in.r);
    c.expect(*parse_command(text, in.domain->vars()) == *in.r, "print/parse " + text);
    const auto tree = synthesize_derivation(in.r, in.post);
    c.expect(decode_derivation(encode_derivation(tree), in.domain) == tree, "encode/decode " + text);
  }
  for (const char* name : {"r42.rc", "r42nd.rc", "rxy.rc", "rshortloop0.rc", "rloop0.rc", "rclient.rc"}) {
    const auto p = load_program(name);
    const auto again = parse_program(to_string(p));
    c.expect(again.vars == p.vars && *again.body == *p.body, std::string("program ") + name);
  }
  for (const auto& d : sep::derivation_corpus())
    c.expect(sep::decode_sep_derivation(sep::encode_sep_derivation(d), {"x", "y", "z"}) == d,
             "sep encode/decode " + to_string(*d.cmd));
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double limit_s;  // 0 means no limit
    std::function<void(Checks&)> run;
    std::function<void(Checks&)> confirm;  // reference cross-checks, not timed
  };
  const std::vector<Criterion> criteria{
      {1, "example verdicts", 5, verdicts, verdicts_reference},
      {2, "weakest preconditions", 0, weakest_pre, nullptr},
      {3, "loop examples", 10, loops, nullptr},
      {4, "soundness and completeness round trip", 60, soundness_completeness, nullptr},
      {5, "taxonomy suite", 90, taxonomy_suite, nullptr},
      {6, "separation suite", 120, separation, nullptr},
      {7, "format stability", 0, formats, nullptr},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checks c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_s > 0 && secs > cr.limit_s)
      c.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(cr.limit_s) + " s");
    if (cr.confirm) {
      try {
        cr.confirm(c);
      } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
      }
    }
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("criterion %d (%s): %s [%.2f s]\n", cr.number, cr.name, ok ? "PASS" : "FAIL", secs);
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("  %s\n", c.failures[i].c_str());
    if (c.failures.size() > 10) std::printf("  ... %zu more\n", c.failures.size() - 10);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
