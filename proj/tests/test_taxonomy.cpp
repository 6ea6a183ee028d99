#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "oracle.hpp"
#include "sil/derivation.hpp"
#include "sil/taxonomy.hpp"
#include "sil/triples.hpp"

using namespace sil;
using namespace sil::taxonomy;

namespace {

bool oracle_valid(Logic l, const StateSet& p, const Command& r, const StateSet& q) {
  const auto sp = oracle::space_of(p.domain());
  return oracle::valid(l, oracle::from_set(p, sp), r, oracle::from_set(q, sp), sp);
}

// Both components valid and the intersection invalid, judged by the reference interpreter.
bool genuine_conj_failure(Logic l, const ConjCounterexample& c) {
  return oracle_valid(l, c.pre1, *c.r, c.post1) && oracle_valid(l, c.pre2, *c.r, c.post2) &&
         !oracle_valid(l, c.pre1 & c.pre2, *c.r, c.post1 & c.post2);
}

StateSet x_is(const DomainPtr& d, Value v) { return guard_set("x = " + std::to_string(v), d); }

}  // namespace

TEST_CASE("generator configuration is validated") {
  GenConfig bad;
  bad.max_depth = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  GenConfig zero;
  zero.w_atomic = zero.w_seq = zero.w_choice = zero.w_star = 0;
  CHECK_THROWS_AS(zero.validate(), ConfigError);
  CHECK_NOTHROW(GenConfig{}.validate());
}

TEST_CASE("depth one yields atomic commands") {
  GenConfig cfg;
  cfg.max_depth = 1;
  for (std::uint64_t s = 0; s < 50; ++s) {
    cfg.seed = s;
    CHECK(std::holds_alternative<Command::Atomic>(gen_command(cfg)->node));
  }
}

TEST_CASE("identical seeds reproduce identical corpora") {
  GenConfig cfg;
  cfg.seed = 17;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto a = gen_instance(cfg, i);
    const auto b = gen_instance(cfg, i);
    CHECK(*a.r == *b.r);
    CHECK(a.pre == b.pre);
    CHECK(a.post == b.post);
  }
  CHECK(*gen_command(cfg) == *gen_command(cfg));
}

TEST_CASE("generated corpus covers empty, full and starred cases") {
  GenConfig cfg;
  int stars = 0, empties = 0, fulls = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const auto in = gen_instance(cfg, i);
    stars += to_string(*in.r).find('*') != std::string::npos;
    empties += in.post.is_empty();
    fulls += in.post.is_full();
    CHECK(in.domain->modulus() == 8);
    CHECK(in.domain->vars().size() <= 3);
  }
  CHECK(stars > 30);
  CHECK(empties > 0);
  CHECK(fulls > 0);
}

TEST_CASE("NC and HL bijection on fixed instances") {
  const auto r42 = load_program("r42.rc");
  const auto d = make_domain(r42.vars, 64);
  const auto q = guard_set("z != 42", d);
  CHECK(check_bijection_hl_nc(*r42.body, wlp(*r42.body, q), q));

  const auto dx = make_domain({"x"}, 16);
  CHECK(check_bijection_hl_nc(*parse_command("x := 1", dx->vars()), guard_set("x >= 0", dx), x_is(dx, 1)));
  CHECK(check_validity(Logic::hl, guard_set("x >= 0", dx), *parse_command("x := 1", dx->vars()), x_is(dx, 1)).valid);
}

TEST_CASE("SIL and HL relation on fixed instances") {
  const auto r42 = load_program("r42.rc");
  const auto r42nd = load_program("r42nd.rc");
  const auto d = make_domain(r42.vars, 64);
  const auto p = guard_set("x mod 2 = 0 && y mod 2 = 1", d);
  const auto q = guard_set("z = 42", d);
  CHECK(check_sil_hl_relation(*r42.body, p, q));
  CHECK(check_sil_hl_relation(*r42nd.body, p, q));
  CHECK(check_validity(Logic::sil, p, *r42nd.body, q).valid);
  CHECK_FALSE(check_validity(Logic::hl, p, *r42nd.body, q).valid);
  CHECK(check_sil_hl_relation(*parse_command("skip", r42.vars), p, q));
}

TEST_CASE("Galois inequalities on fixed instances") {
  const auto d = make_domain({"x"}, 8);
  const auto full = StateSet::full(d);
  const auto assume = parse_command("(x = 0)?", d->vars());
  CHECK(check_galois_inequalities(*assume, full, full));
  CHECK(bwsem(*assume, fwsem(*assume, full)) == x_is(d, 0));
  CHECK(check_galois_inequalities(*parse_command("skip", d->vars()), x_is(d, 3), x_is(d, 4)));
}

TEST_CASE("conjunction counterexamples are found and genuine") {
  GenConfig cfg;
  const auto il = find_conj_counterexample(Logic::il, cfg);
  REQUIRE(il.has_value());
  const auto d = il->pre1.domain();
  CHECK(to_string(*il->r) == "x := 1");
  CHECK(il->pre1 == x_is(d, 0));
  CHECK(il->pre2 == x_is(d, 10));
  CHECK(il->post1 == x_is(d, 1));
  CHECK(il->post2 == x_is(d, 1));
  CHECK(genuine_conj_failure(Logic::il, *il));

  const auto sil = find_conj_counterexample(Logic::sil, cfg);
  REQUIRE(sil.has_value());
  const auto ds = sil->pre1.domain();
  CHECK(to_string(*sil->r) == "x := nondet()");
  CHECK(sil->pre1 == x_is(ds, 1));
  CHECK(sil->pre2 == x_is(ds, 1));
  CHECK(sil->post1 == x_is(ds, 0));
  CHECK(sil->post2 == x_is(ds, 10));
  CHECK(genuine_conj_failure(Logic::sil, *sil));

  CHECK_THROWS_AS(find_conj_counterexample(Logic::hl, cfg), Error);
  CHECK_THROWS_AS(find_conj_counterexample(Logic::nc, cfg), Error);
}

TEST_CASE("IL and SIL are incomparable") {
  GenConfig cfg;
  const auto rep = check_il_sil_incomparable(cfg);
  CHECK(rep.ok());
  CHECK(rep.witness.find("sil valid, il valid, negated il invalid, negated sil invalid") != std::string::npos);
  CHECK(rep.witness.find("not found") == std::string::npos);

  const auto d = make_domain({"x"}, 8);
  const auto r1 = parse_command("x := 1", d->vars());
  const auto p = guard_set("x < 4", d);
  const auto q = x_is(d, 1);
  CHECK(oracle_valid(Logic::sil, p, *r1, q));
  CHECK(oracle_valid(Logic::il, p, *r1, q));
  CHECK_FALSE(oracle_valid(Logic::il, ~p, *r1, ~q));
  CHECK_FALSE(oracle_valid(Logic::sil, ~p, *r1, ~q));
}

TEST_CASE("random derivations are accepted and sound") {
  GenConfig cfg;
  Rng rng(5);
  for (std::uint64_t i = 0; i < 150; ++i) {
    const auto in = gen_instance(cfg, i);
    CAPTURE(to_string(*in.r));
    const auto tree = random_derivation(in.r, in.post, rng);
    const auto res = check_derivation(tree);
    CHECK_MESSAGE(res.accepted, res.describe());
    CHECK(tree.post == in.post);
    CHECK(oracle_valid(Logic::sil, tree.pre, *tree.cmd, tree.post));
  }
}

TEST_CASE("default campaign: universal properties hold, searches succeed") {
  SuiteConfig cfg;
  const auto reports = run_taxonomy_suite(cfg);
  CHECK(reports.size() == property_ids().size());
  for (const auto& r : reports) {
    CAPTURE(r.id);
    CHECK(r.ok());
    if (r.kind == PropertyKind::universal) CHECK(r.instances >= cfg.instances);
  }
}

TEST_CASE("expected property ids are present") {
  const auto& ids = property_ids();
  for (const char* id : {"bijection-hl-nc", "sil-hl", "galois", "weakest-conditions", "conj-il", "conj-sil",
                         "il-sil-incomparable", "hl-unsound-iter0", "hl-unsound-unroll", "rule-table"})
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
  CHECK_THROWS_AS(run_property("no-such-property", SuiteConfig{}), Error);
}

TEST_CASE("HL unsoundness of the extra rules has concrete witnesses") {
  for (const char* id : {"hl-unsound-iter0", "hl-unsound-unroll", "hl-unsound-unroll-split"}) {
    CAPTURE(id);
    const auto r = run_property(id, SuiteConfig{});
    CHECK(r.kind == PropertyKind::search);
    CHECK(r.found);
    CHECK_FALSE(r.witness.empty());
  }
}

TEST_CASE("reports are deterministic and round-trip through JSON") {
  SuiteConfig cfg;
  cfg.gen.seed = 11;
  cfg.instances = 60;
  const auto a = run_taxonomy_suite(cfg);
  const auto b = run_taxonomy_suite(cfg);
  CHECK(format_report_text(a) == format_report_text(b));
  const auto json = format_report_json(a);
  CHECK(json == format_report_json(b));

  std::istringstream lines(json);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    REQUIRE(n < a.size());
    const auto back = parse_report_json(line);
    CHECK(back.id == a[n].id);
    CHECK(back.kind == a[n].kind);
    CHECK(back.instances == a[n].instances);
    CHECK(back.ok() == a[n].ok());
    CHECK(back.witness == a[n].witness);
    CHECK(back.violations.size() == a[n].violations.size());
    ++n;
  }
  CHECK(n == a.size());
}

TEST_CASE("small configuration completes") {
  SuiteConfig cfg;
  cfg.gen.modulus = 2;
  cfg.gen.vars = 2;
  cfg.instances = 200;
  for (const auto& r : run_taxonomy_suite(cfg)) {
    CAPTURE(r.id);
    CHECK(r.ok());
  }
}

TEST_CASE("property selection") {
  SuiteConfig cfg;
  cfg.instances = 20;
  cfg.properties = {"galois", "conj-il"};
  const auto reports = run_taxonomy_suite(cfg);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].id == "galois");
  CHECK(reports[1].id == "conj-il");
  CHECK(format_report_text(reports).find("conj-il: found") != std::string::npos);
}
