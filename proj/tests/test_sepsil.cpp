#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "sil/sep/asl.hpp"
#include "sil/sep/derivation.hpp"
#include "sil/sep/heap.hpp"
#include "sil/sep/properties.hpp"
#include "sil/sep/satisfaction.hpp"

using namespace sil;
using namespace sil::sep;

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

CommandPtr heap_cmd(const char* text, const std::vector<std::string>& vars = kXYZ) {
  return parse_command(text, vars, true);
}

std::set<HeapState> as_set(const SepStates& s) { return {s.states.begin(), s.states.end()}; }

// States of the universe over `vars` selected by a hand-written predicate.
template <class Pred>
std::set<HeapState> select(const SepVars& vars, const SepConfig& cfg, Pred pred) {
  std::set<HeapState> out;
  for_each_state(vars, cfg, [&](const HeapState& s) {
    if (pred(s)) out.insert(s);
  });
  return out;
}

int held_cells(const HeapState& s) {
  return static_cast<int>(std::count_if(s.heap.begin(), s.heap.end(), [](const Cell& c) { return c.state != Cell::absent; }));
}

HeapState state_with(const SepVars& vars, std::initializer_list<HVal> store) {
  HeapState s;
  s.arity = static_cast<std::uint8_t>(vars.size());
  std::size_t i = 0;
  for (const auto& v : store) s.store[i++] = v;
  return s;
}

HeapState error_state() {
  HeapState e;
  e.err = true;
  return e;
}

}  // namespace

TEST_CASE("assertion syntax round-trips") {
  for (const char* text : {"emp", "x |-> 0 * true", "x |-/>", "exists v. x |-> v && v = y", "!(x = y) || emp",
                           "x |-> - * y |-> z"}) {
    CAPTURE(text);
    const auto p = parse_asl(text);
    CHECK(alpha_equivalent(*parse_asl(to_string(*p)), *p));
  }
  CHECK_THROWS_AS(parse_asl("x |->"), Error);
}

TEST_CASE("emp denotes every store with the empty heap") {
  SepConfig cfg;
  const auto got = eval_asl(*make_emp(), cfg, {"x"});
  const auto want = select(got.vars, cfg, [](const HeapState& s) { return held_cells(s) == 0; });
  CHECK(as_set(got) == want);
  CHECK(want.size() == cfg.base_values().size());
}

TEST_CASE("a cell cannot be both allocated and dangling") {
  SepConfig cfg;
  CHECK(eval_asl(*parse_asl("x |-> - * x |-/>"), cfg).states.empty());
}

TEST_CASE("points-to star true selects heaps mapping x to 0") {
  SepConfig cfg;
  const auto got = eval_asl(*parse_asl("x |-> 0 * true"), cfg);
  const auto want = select(got.vars, cfg, [](const HeapState& s) {
    const auto x = s.store[0];
    if (!x.is_loc()) return false;
    const auto& cell = s.heap[static_cast<std::size_t>(x.v)];
    return cell.state == Cell::held && cell.value == HVal::num(0);
  });
  CHECK(as_set(got) == want);
  CHECK_FALSE(want.empty());

  // Without `* true` the heap must be exactly one cell.
  const auto exact = eval_asl(*parse_asl("x |-> 0"), cfg);
  for (const auto& s : exact.states) CHECK(held_cells(s) == 1);
  CHECK(exact.states.size() < got.states.size());
}

TEST_CASE("substitution avoids capture") {
  const auto p = substitute(parse_asl("x = 1"), make_lit(0), "x");
  CHECK(*p == *parse_asl("0 = 1"));
  const auto q = substitute(parse_asl("exists x. x = y"),
                            make_bin(ArithOp::add, make_var("x"), make_lit(1)), "y");
  const auto& ex = std::get<Asl::Exists>(q->node);
  CHECK(ex.var != "x");
  CHECK(alpha_equivalent(*q, *parse_asl("exists w. w = x + 1")));
  CHECK(free_vars(*q) == VarSet{"x"});
}

TEST_CASE("bounded validity examples") {
  SepConfig cfg;
  const auto free_x = heap_cmd("free(x)", {"x"});
  CHECK(check_sep_validity(*parse_asl("x |-> -"), *free_x, *parse_asl("x |-/>"), cfg).valid);
  const auto bad = check_sep_validity(*make_emp(), *free_x, *parse_asl("x |-/>"), cfg);
  CHECK_FALSE(bad.valid);
  REQUIRE(bad.witness.has_value());
  CHECK(held_cells(*bad.witness) == 0);
  CHECK(bad.describe().rfind("invalid", 0) == 0);
}

TEST_CASE("free on an absent location yields only the error state") {
  SepConfig cfg;
  const SepVars vars({"x"});
  const auto s = state_with(vars, {HVal::loc(0)});
  const auto out = heap_successors(*heap_cmd("free(x)", {"x"}), vars, s, cfg);
  REQUIRE(out.size() == 1);
  CHECK(out[0].err);
  CHECK(heap_successors(*heap_cmd("skip", {"x"}), vars, error_state(), cfg) == std::vector{error_state()});
  CHECK(heap_successors(*heap_cmd("x := alloc()", {"x"}), vars, error_state(), cfg) == std::vector{error_state()});
}

TEST_CASE("alloc reaches every available location with every value") {
  SepConfig cfg;
  const SepVars vars({"x"});
  auto s = state_with(vars, {HVal::num(0)});
  s.heap[1] = {Cell::held, HVal::num(1)};
  s.heap[2] = {Cell::freed, HVal{}};
  const auto out = heap_successors(*heap_cmd("x := alloc()", {"x"}), vars, s, cfg);
  std::set<std::pair<int, HVal>> seen;
  for (const auto& t : out) {
    REQUIRE_FALSE(t.err);
    REQUIRE(t.store[0].is_loc());
    const int l = t.store[0].v;
    CHECK(l != 1);
    CHECK(t.heap[static_cast<std::size_t>(l)].state == Cell::held);
    CHECK(t.heap[1] == s.heap[1]);
    seen.insert({l, t.heap[static_cast<std::size_t>(l)].value});
  }
  // Locations 0 (absent), 2 (freed) and the spare one, each with every base value.
  const std::size_t locations = 2 + static_cast<std::size_t>(cfg.spare_locations);
  CHECK(seen.size() >= locations * cfg.base_values().size());
  for (int l : {0, 2})
    for (const auto& v : cfg.base_values()) CHECK(seen.count({l, v}) == 1);
}

TEST_CASE("error satisfies no assertion") {
  SepConfig cfg;
  const SepVars vars({"x"});
  for (const char* text : {"true", "emp", "x |-/>", "!(x |-/>)", "x = x"})
    CHECK_FALSE(satisfies(*parse_asl(text), vars, error_state(), cfg));
}

TEST_CASE("separating conjunction algebra") {
  SepConfig cfg;
  const std::vector<std::string> vars{"x", "y"};
  const auto p = parse_asl("x |-> y");
  const auto q = parse_asl("y |-> - || emp");
  const auto t = parse_asl("x |-/> || y = x");
  CHECK(as_set(eval_asl(*make_star(p, make_emp()), cfg, vars)) == as_set(eval_asl(*p, cfg, vars)));
  CHECK(as_set(eval_asl(*make_star(p, q), cfg, vars)) == as_set(eval_asl(*make_star(q, p), cfg, vars)));
  CHECK(as_set(eval_asl(*make_star(make_star(p, q), t), cfg, vars)) ==
        as_set(eval_asl(*make_star(p, make_star(q, t)), cfg, vars)));
}

TEST_CASE("client program reaches the dangling error at default bounds") {
  const auto program = load_program("rclient.rc");
  auto cfg = config_from_bounds(*program.heap_bounds);
  CHECK(cfg.locations == 3);
  const auto pre = parse_asl("v |-> z * z |-> - * true");
  const auto post = parse_asl("x |-/> * true");
  CHECK(check_sep_validity(*pre, *program.body, *post, cfg, program.vars).valid);

  // With no spare location alloc may be unable to run, so some store has no outcome.
  cfg.spare_locations = 0;
  CHECK_FALSE(check_sep_validity(*pre, *program.body, *post, cfg, program.vars).valid);
}

TEST_CASE("the client derivation is accepted and its conclusion is valid") {
  const auto program = load_program("rclient.rc");
  const auto cfg = config_from_bounds(*program.heap_bounds);
  const auto d = decode_sep_derivation(slurp(data_path("proofs/rclient.json")), program.vars);
  const auto res = check_sep_derivation(d, cfg);
  CHECK_MESSAGE(res.accepted, res.describe());
  CHECK(same(d.cmd, program.body));
  CHECK(check_sep_validity(*d.pre, *d.cmd, *d.post, cfg, program.vars).valid);
  CHECK(decode_sep_derivation(encode_sep_derivation(d), program.vars) == d);
}

TEST_CASE("frame side condition") {
  SepConfig cfg;
  const auto post = parse_asl("x = 1");
  const auto r = heap_cmd("x := 1");
  const SepDerivation axiom{SepRule::assign, assign_axiom_pre(post, "x", make_lit(1)), r, post, {}, nullptr,
                            std::nullopt};
  REQUIRE(check_sep_derivation(axiom, cfg).accepted);

  auto frame_node = [&](const char* t) {
    const auto f = parse_asl(t);
    return SepDerivation{SepRule::frame, make_star(axiom.pre, f), r, make_star(axiom.post, f), {axiom}, f,
                         std::nullopt};
  };
  CHECK(check_sep_derivation(frame_node("y |-> z"), cfg).accepted);
  const auto bad = check_sep_derivation(frame_node("x |-> z"), cfg);
  CHECK_FALSE(bad.accepted);
  CHECK(bad.path == "root");
}

TEST_CASE("assert axiom accepts any postcondition and guard") {
  SepConfig cfg;
  for (const char* q : {"emp", "x |-> y * true", "x |-/>", "exists v. z |-> v", "false"})
    for (const char* b : {"x = y", "!(z = 0)", "x = 0 && y != 1"}) {
      CAPTURE(q);
      CAPTURE(b);
      const auto guard = parse_bexp(b, kXYZ);
      const auto post = parse_asl(q);
      const auto r = make_atomic(atom::Assume{guard});
      const SepDerivation d{SepRule::assert_, make_and(post, from_bexp(*guard)), r, post, {}, nullptr,
                            std::nullopt};
      CHECK(check_sep_derivation(d, cfg).accepted);
    }
}

TEST_CASE("corpus derivations are accepted and sound") {
  SepConfig cfg;
  for (const auto& d : derivation_corpus()) {
    CAPTURE(to_string(*d.cmd));
    const auto res = check_sep_derivation(d, cfg);
    CHECK_MESSAGE(res.accepted, res.describe());
    CHECK(check_sep_validity(*d.pre, *d.cmd, *d.post, cfg).valid);
  }
}

TEST_CASE("framed soundness of every axiom instance") {
  SepConfig cfg;
  const auto frames = frame_set();
  for (const auto& d : axiom_instances()) {
    CAPTURE(to_string(*d.cmd));
    std::size_t checked = 0;
    const auto failure = framed_soundness(d, frames, cfg, &checked);
    CHECK_FALSE(failure.has_value());
    CHECK(checked > 0);
  }
}

TEST_CASE("store agreement outside modified variables") {
  SepConfig cfg;
  for (const char* c : {"free(x)", "x := alloc()", "skip", "x := [y]", "[x] := y", "x := y + 1", "(x = y)?"}) {
    CAPTURE(c);
    CHECK_FALSE(check_store_agreement(*heap_cmd(c), kXYZ, cfg).has_value());
  }
  const SepVars vars(kXYZ);
  for_each_state(vars, cfg, [&](const HeapState& s) {
    for (const auto& t : heap_successors(*heap_cmd("x := alloc()"), vars, s, cfg))
      if (!t.err) {
        CHECK(t.store[1] == s.store[1]);
        CHECK(t.store[2] == s.store[2]);
      }
  });
}

TEST_CASE("satisfaction depends only on free variables") {
  SepConfig cfg;
  for (const char* p : {"x |-> y * true", "exists v. x |-> v * v |-/>", "x = y && emp", "!(z |-/>)"}) {
    CAPTURE(p);
    CHECK_FALSE(check_fv_agreement(*parse_asl(p), kXYZ, cfg).has_value());
  }
}

TEST_CASE("substitution lemma on enumerated states") {
  SepConfig cfg;
  const auto y_plus_1 = make_bin(ArithOp::add, make_var("y"), make_lit(1));
  for (const char* p : {"x |-> z * true", "x = 1 && z |-> x", "exists y. x |-> y", "x |-/> || emp"}) {
    CAPTURE(p);
    CHECK_FALSE(check_substitution_lemma(parse_asl(p), make_var("y"), "x", kXYZ, cfg).has_value());
    CHECK_FALSE(check_substitution_lemma(parse_asl(p), y_plus_1, "x", kXYZ, cfg).has_value());
  }
}
