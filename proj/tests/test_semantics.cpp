#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"
#include "sil/semantics.hpp"
#include "sil/taxonomy.hpp"

using namespace sil;

namespace {

Value eval_in(const char* expr, const DomainPtr& d, const std::vector<Value>& vals) {
  return eval_aexp(*parse_aexp(expr, d->vars()), Store{d.get(), d->encode(vals)});
}

bool holds_in(const char* b, const DomainPtr& d, const std::vector<Value>& vals) {
  return eval_bexp(*parse_bexp(b, d->vars()), Store{d.get(), d->encode(vals)});
}

}  // namespace

TEST_CASE("store encoding is mixed radix with the first variable most significant") {
  const auto d = make_domain({"x", "y"}, 8);
  CHECK(d->size() == 64);
  CHECK(d->encode({1, 2}) == 10);
  CHECK(d->decode(10) == std::vector<Value>{1, 2});
  CHECK(d->format(10) == "x=1, y=2");
}

TEST_CASE("domain configuration is validated") {
  CHECK_THROWS_AS(make_domain({"x"}, 1), ConfigError);
  CHECK_THROWS_AS(make_domain({"x", "y", "z"}, 64, 1000), ConfigError);
  CHECK_THROWS_AS(make_domain({}, 4), ConfigError);
  CHECK_NOTHROW(make_domain({"x"}, 2));
}

TEST_CASE("expression evaluation wraps modulo B") {
  const auto d8 = make_domain({"x"}, 8);
  CHECK(eval_in("3 + 4", d8, {0}) == 7);
  CHECK(eval_in("x * 2", d8, {5}) == 2);
  CHECK(eval_in("x - 1", d8, {0}) == 7);
  CHECK(eval_in("x mod 0", d8, {5}) == 5);
  const auto d64 = make_domain({"x"}, 64);
  CHECK(eval_in("x mod 2", d64, {42}) == 0);
}

TEST_CASE("guard evaluation") {
  const auto d = make_domain({"x", "y", "z"}, 64);
  CHECK_FALSE(holds_in("false", d, {0, 0, 0}));
  CHECK(holds_in("x mod 2 = 0 && !(y mod 2 = 0)", d, {2, 3, 0}));
  CHECK_FALSE(holds_in("z = 42", d, {0, 0, 11}));
  CHECK(holds_in("x = 1 || y = 1", d, {0, 1, 0}));
}

TEST_CASE("forward semantics on small examples") {
  const auto d = make_domain({"x"}, 8);
  const auto s5 = guard_set("x = 5", d);
  CHECK(fwsem(*parse_command("skip", d->vars()), s5) == s5);
  CHECK(fwsem(*parse_command("(x := 0 [+] x := 1)", d->vars()), s5) == guard_set("x = 0 || x = 1", d));
  CHECK(fwsem(*parse_command("x := nondet()", d->vars()), s5).is_full());
  CHECK(fwsem(*parse_command("(x := x + 2)*", d->vars()), s5) == guard_set("x mod 2 = 1", d));
}

TEST_CASE("backward semantics on small examples") {
  const auto d = make_domain({"x"}, 8);
  const auto one = guard_set("x = 1", d);
  CHECK(bwsem(*parse_command("x := 1", d->vars()), one).is_full());
  CHECK(bwsem(*parse_command("(x > 3)?", d->vars()), one).is_empty());
  CHECK(bwsem(*parse_command("x := nondet()", d->vars()), one).is_full());
  CHECK(bwsem(*parse_command("(x := x + 2)*", d->vars()), one) == guard_set("x mod 2 = 1", d));
  CHECK(bwsem(*parse_command("(x := 1)*", d->vars()), StateSet::empty(d)).is_empty());
}

TEST_CASE("r42 at B=64 against the reference interpreter") {
  const auto p = load_program("r42.rc");
  const auto d = make_domain(p.vars, 64);
  const auto sp = oracle::space_of(d);
  const auto q = guard_set("z = 42", d);

  const auto expected_pre = oracle::pre(*p.body, oracle::from_set(q, sp), sp);
  CHECK(bwsem(*p.body, q) == oracle::to_set(expected_pre, d, sp));
  CHECK(bwsem(*p.body, q) == guard_set("(x mod 2 = 0 && y mod 2 = 1) || z = 42", d));

  const auto reach = fwsem(*p.body, StateSet::full(d)) & q;
  CHECK(reach == q);
  CHECK(semantics_relation(*p.body, d).preimage(q) == bwsem(*p.body, q));
}

TEST_CASE("relations of simple commands") {
  const auto d = make_domain({"x", "y"}, 4);
  const auto id = semantics_relation(*parse_command("skip", d->vars()), d);
  CHECK(id.pair_count() == d->size());
  for (StateIndex s = 0; s < d->size(); ++s) CHECK(id.contains(s, s));
  const auto zero = semantics_relation(*parse_command("x := 0", d->vars()), d);
  CHECK(zero.pair_count() == d->size());
  for (StateIndex s = 0; s < d->size(); ++s) CHECK(zero.contains(s, d->with(s, 0, 0)));
}

TEST_CASE("diverging and unreachable states") {
  const auto d = make_domain({"x"}, 8);
  const auto& v = d->vars();
  CHECK(diverging_states(*parse_command("skip", v), d).is_empty());
  CHECK(diverging_states(*parse_command("(x = 0)?", v), d) == guard_set("!(x = 0)", d));
  CHECK(diverging_states(*parse_program("vars x; while (true) { skip }").body, d).is_full());
  CHECK(unreachable_states(*parse_command("skip", v), d).is_empty());
  CHECK(unreachable_states(*parse_command("x := 1", v), d) == guard_set("!(x = 1)", d));

  const auto p = load_program("r42.rc");
  const auto d64 = make_domain(p.vars, 64);
  CHECK(unreachable_states(*p.body, d64) == guard_set("x mod 2 = 0 && y mod 2 = 1 && z != 42", d64));
}

TEST_CASE("determinism and termination") {
  const auto d = make_domain({"x"}, 8);
  CHECK(is_deterministic(*parse_command("skip", d->vars()), d));
  CHECK(is_terminating(*parse_command("skip", d->vars()), d));
  CHECK_FALSE(is_terminating(*parse_command("(x = 0)?", d->vars()), d));

  const auto r42 = load_program("r42.rc");
  const auto r42nd = load_program("r42nd.rc");
  const auto d64 = make_domain(r42.vars, 64);
  CHECK(is_deterministic(*r42.body, d64));
  CHECK(is_terminating(*r42.body, d64));
  CHECK_FALSE(is_deterministic(*r42nd.body, d64));
}

TEST_CASE("successors of one store match the reference interpreter") {
  taxonomy::GenConfig cfg;
  for (std::uint64_t i = 0; i < 150; ++i) {
    const auto in = taxonomy::gen_instance(cfg, i);
    const auto sp = oracle::space_of(in.domain);
    CAPTURE(to_string(*in.r));
    for (StateIndex s : {StateIndex{0}, in.domain->size() / 2, in.domain->size() - 1}) {
      const auto vals = in.domain->decode(s);
      const oracle::Vals ov(vals.begin(), vals.end());
      const auto expected = oracle::to_set(oracle::run(*in.r, ov, sp), in.domain, sp);
      StateSet got(in.domain);
      for (auto t : successors(*in.r, in.domain, s)) got.insert(t);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("set semantics match the reference interpreter on a generated corpus") {
  taxonomy::GenConfig cfg;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto in = taxonomy::gen_instance(cfg, i);
    const auto sp = oracle::space_of(in.domain);
    CAPTURE(to_string(*in.r));
    const auto p = oracle::from_set(in.pre, sp);
    const auto q = oracle::from_set(in.post, sp);
    CHECK(fwsem(*in.r, in.pre) == oracle::to_set(oracle::post(*in.r, p, sp), in.domain, sp));
    CHECK(bwsem(*in.r, in.post) == oracle::to_set(oracle::pre(*in.r, q, sp), in.domain, sp));
  }
}

TEST_CASE("adjunction by full enumeration on a small space") {
  const auto d = make_domain({"x", "y"}, 3);
  const auto r = parse_command("((x := y + 1 [+] (x > y)?); y := nondet())*; (x != y)?", d->vars());
  for (StateIndex s = 0; s < d->size(); ++s)
    for (StateIndex t = 0; t < d->size(); ++t)
      CHECK(fwsem(*r, StateSet::singleton(d, s)).contains(t) == bwsem(*r, StateSet::singleton(d, t)).contains(s));
}
