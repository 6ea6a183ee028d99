#include "sil/sep/properties.hpp"

#include "sil/parser.hpp"

namespace sil::sep {

namespace {

const std::vector<std::string> kVars{"x", "y", "z"};

CommandPtr cmd(const char* text) { return parse_command(text, kVars, true); }
AslPtr asl(const char* text) { return parse_asl(text); }

SepDerivation leaf(SepRule rule, AslPtr pre, CommandPtr c, AslPtr post) {
  return {rule, std::move(pre), std::move(c), std::move(post), {}, nullptr, std::nullopt};
}

SepDerivation unary(SepRule rule, AslPtr pre, AslPtr post, SepDerivation premise) {
  CommandPtr c = premise.cmd;
  return {rule, std::move(pre), std::move(c), std::move(post), {std::move(premise)}, nullptr, std::nullopt};
}

SepDerivation framed(SepDerivation premise, AslPtr t) {
  SepDerivation d = unary(SepRule::frame, make_star(premise.pre, t), make_star(premise.post, t), premise);
  d.frame = std::move(t);
  return d;
}

SepDerivation assign(const char* c, AslPtr post) {
  const auto r = cmd(c);
  const auto& a = std::get<atom::Assign>(std::get<Command::Atomic>(r->node).cmd);
  return leaf(SepRule::assign, assign_axiom_pre(post, a.var, a.value), r, post);
}

SepDerivation load(const char* c, AslPtr post) {
  const auto r = cmd(c);
  const auto& a = std::get<atom::Load>(std::get<Command::Atomic>(r->node).cmd);
  return leaf(SepRule::load, load_axiom_pre(post, a.dst), r, post);
}

SepDerivation assume(const char* c, AslPtr post) {
  const auto r = cmd(c);
  const auto& a = std::get<atom::Assume>(std::get<Command::Atomic>(r->node).cmd);
  return leaf(SepRule::assert_, make_and(post, from_bexp(*a.cond)), r, post);
}

}  // namespace

std::vector<SepDerivation> axiom_instances() {
  return {
      leaf(SepRule::skip, make_emp(), cmd("skip"), make_emp()),
      assign("x := y", asl("x = 1")),
      assign("x := y", asl("x |-> z * true")),
      assign("x := y + 1", asl("x = 1 && z |-> x")),
      assume("(x = y)?", asl("x |-> y")),
      assume("(!(x = 0))?", asl("x |-> - * true")),
      leaf(SepRule::alloc, alloc_axiom_pre("x", "x'"), cmd("x := alloc()"), make_points_to_any(make_var("x"))),
      leaf(SepRule::free_, make_points_to_any(make_var("x")), cmd("free(x)"), make_dangling(make_var("x"))),
      load("x := [y]", asl("y |-> z * (x = z)")),
      load("x := [y]", asl("y |-> 1 * x |-/>")),
      leaf(SepRule::store, make_points_to_any(make_var("x")), cmd("[x] := y"),
           make_points_to(make_var("x"), make_var("y"))),
  };
}

std::vector<SepDerivation> derivation_corpus() {
  std::vector<SepDerivation> out = axiom_instances();
  const auto store = leaf(SepRule::store, asl("x |-> -"), cmd("[x] := y"), asl("x |-> y"));
  const auto free_x = leaf(SepRule::free_, asl("x |-> -"), cmd("free(x)"), asl("x |-/>"));

  // store; load with a cons in between
  {
    auto ld = load("z := [x]", asl("x |-> y * (z = y)"));
    auto second = unary(SepRule::cons, asl("x |-> y"), ld.post, ld);
    SepDerivation d{SepRule::seq, store.pre, cmd("[x] := y; z := [x]"), ld.post, {store, second}, nullptr,
                    std::nullopt};
    out.push_back(d);
  }
  // choice with a dropped branch
  {
    auto drop = leaf(SepRule::empty, make_false(), cmd("skip"), free_x.post);
    SepDerivation d{SepRule::choice, make_or(drop.pre, free_x.pre), cmd("skip [+] free(x)"), free_x.post,
                    {drop, free_x}, nullptr, std::nullopt};
    out.push_back(d);
  }
  // disjunction of two loads
  {
    auto a = load("x := [y]", asl("y |-> 0 * x = 0"));
    auto b = load("x := [y]", asl("y |-> 1 * x = 1"));
    SepDerivation d{SepRule::disj, make_or(a.pre, b.pre), a.cmd, make_or(a.post, b.post), {a, b}, nullptr,
                    std::nullopt};
    out.push_back(d);
  }
  // iteration rules over a store loop
  {
    const auto loop = cmd("([x] := y)*");
    out.push_back(leaf(SepRule::iter0, asl("x |-> 0"), loop, asl("x |-> 0")));
    auto base = leaf(SepRule::iter0, store.pre, loop, store.pre);
    SepDerivation body{SepRule::seq, store.pre, cmd("([x] := y)*; [x] := y"), store.post, {base, store}, nullptr,
                       std::nullopt};
    auto unrolled = unary(SepRule::unroll, store.pre, store.post, body);
    unrolled.cmd = loop;
    out.push_back(unrolled);
    SepDerivation it{SepRule::iter, iter_pre({store.post, store.pre}), loop, store.post, {store}, nullptr,
                     std::nullopt};
    out.push_back(it);
  }
  // frame and exists around alloc
  {
    auto ax = leaf(SepRule::alloc, alloc_axiom_pre("y", "y'"), cmd("y := alloc()"), asl("y |-> -"));
    auto fr = framed(ax, asl("z |-> 0"));
    auto ex = unary(SepRule::exists, make_exists("y'", fr.pre), make_exists("y'", fr.post), fr);
    ex.bound_var = "y'";
    out.push_back(ex);
    out.push_back(unary(SepRule::cons, asl("z |-> 0"), asl("z |-> 0 * true"), ex));
  }
  // framed free
  out.push_back(framed(free_x, asl("y |-> x * true")));
  return out;
}

std::vector<AslPtr> frame_set() {
  return {
      asl("emp"),
      asl("true"),
      asl("z = 0"),
      asl("z |-> 0"),
      asl("z |-/>"),
      asl("z |-> - * true"),
      asl("exists u. z |-> u * u |-> -"),
      asl("!(z = w)"),
      asl("z |-> w || emp"),
      asl("w |-> z * z |-> w"),
      asl("x = z"),
      asl("z = 1 && emp"),
  };
}

std::vector<const SepDerivation*> subderivations(const SepDerivation& d) {
  std::vector<const SepDerivation*> out{&d};
  for (const auto& p : d.premises) {
    auto sub = subderivations(p);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::optional<FramedFailure> framed_soundness(const SepDerivation& d, const std::vector<AslPtr>& frames,
                                              const SepConfig& cfg, std::size_t* checked) {
  const VarSet modified = mod_vars(*d.cmd);
  for (const auto& t : frames) {
    bool disjoint = true;
    for (const auto& v : free_vars(*t)) disjoint = disjoint && !modified.count(v);
    if (!disjoint) continue;
    if (checked) ++*checked;
    auto v = check_sep_validity(*make_star(d.pre, t), *d.cmd, *make_star(d.post, t), cfg);
    if (!v.valid) return FramedFailure{t, std::move(v)};
  }
  return std::nullopt;
}

std::optional<std::string> check_fv_agreement(const Asl& p, const std::vector<std::string>& vars,
                                              const SepConfig& cfg) {
  const SepVars universe = universe_vars(vars, free_vars(p));
  const VarSet fv = free_vars(p);
  const auto values = cfg.base_values();
  std::optional<std::string> failure;
  for_each_state(universe, cfg, [&](const HeapState& s) {
    if (failure) return;
    const bool base = satisfies(p, universe, s, cfg);
    for (std::size_t i = 0; i < universe.size() && !failure; ++i) {
      if (fv.count(universe.names()[i])) continue;
      for (const auto& v : values) {
        HeapState t = s;
        t.store[i] = v;
        if (satisfies(p, universe, t, cfg) != base) {
          failure = "{" + format_state(s, universe) + "} vs {" + format_state(t, universe) + "}";
          break;
        }
      }
    }
  });
  return failure;
}

std::optional<std::string> check_substitution_lemma(const AslPtr& p, const AExpPtr& a, const std::string& x,
                                                    const std::vector<std::string>& vars, const SepConfig& cfg) {
  const AslPtr substituted = substitute(p, a, x);
  VarSet fv = free_vars(*p);
  for (const auto& v : free_vars(*a)) fv.insert(v);
  fv.insert(x);
  const SepVars universe = universe_vars(vars, fv);
  const int xi = universe.require(x);
  std::optional<std::string> failure;
  for_each_state(universe, cfg, [&](const HeapState& s) {
    if (failure) return;
    auto value = eval_heap_aexp(*a, universe, s, cfg);
    if (!value || !satisfies(*substituted, universe, s, cfg)) return;
    HeapState t = s;
    t.store[xi] = *value;
    if (!satisfies(*p, universe, t, cfg)) failure = "{" + format_state(s, universe) + "}";
  });
  return failure;
}

std::optional<std::string> check_store_agreement(const Command& r, const std::vector<std::string>& vars,
                                                 const SepConfig& cfg) {
  const SepVars universe = universe_vars(vars, free_vars(r));
  std::optional<std::string> failure;
  for_each_state(universe, cfg, [&](const HeapState& s) {
    if (!failure && !store_mod_agreement(r, universe, s, cfg)) failure = "{" + format_state(s, universe) + "}";
  });
  return failure;
}

}  // namespace sil::sep
