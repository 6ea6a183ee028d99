#include "sil/taxonomy.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sil/parser.hpp"
#include "sil/semantics.hpp"
#include "sil/state_format.hpp"

namespace sil::taxonomy {

namespace {

const std::vector<std::string> kNames{"x", "y", "z", "w"};

std::size_t pick(Rng& rng, std::initializer_list<unsigned> weights) {
  unsigned total = 0;
  for (auto w : weights) total += w;
  auto roll = rng.below(total);
  std::size_t i = 0;
  for (auto w : weights) {
    if (roll < w) return i;
    roll -= w;
    ++i;
  }
  return weights.size() - 1;
}

Rng aux_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t salt) {
  return Rng((seed + index) * 0x9E3779B97F4A7C15ull + salt);
}

const std::string& pick_var(const std::vector<std::string>& vars, Rng& rng) {
  return vars[rng.below(vars.size())];
}

AExpPtr gen_aexp(const GenConfig& cfg, const std::vector<std::string>& vars, Rng& rng, int depth) {
  switch (depth > 0 ? pick(rng, {2, 3, 2}) : pick(rng, {2, 3})) {
    case 0:
      return make_lit(static_cast<std::int64_t>(rng.below(cfg.modulus)));
    case 1:
      return make_var(pick_var(vars, rng));
    default: {
      static constexpr ArithOp ops[] = {ArithOp::add, ArithOp::sub, ArithOp::mul};
      const ArithOp op = ops[rng.below(3)];
      auto lhs = make_var(pick_var(vars, rng));
      return make_bin(op, lhs, gen_aexp(cfg, vars, rng, depth - 1));
    }
  }
}

BExpPtr gen_cmp(const GenConfig& cfg, const std::vector<std::string>& vars, Rng& rng) {
  static constexpr CmpOp ops[] = {CmpOp::eq, CmpOp::ne, CmpOp::lt, CmpOp::le, CmpOp::gt, CmpOp::ge};
  const CmpOp op = ops[rng.below(6)];
  auto lhs = make_var(pick_var(vars, rng));
  return make_cmp(op, lhs, gen_aexp(cfg, vars, rng, 1));
}

CommandPtr gen_command_at(const GenConfig& cfg, const std::vector<std::string>& vars, Rng& rng, int depth) {
  const std::size_t ctor =
      depth <= 1 ? 0 : pick(rng, {cfg.w_atomic, cfg.w_seq, cfg.w_choice, cfg.w_star});
  switch (ctor) {
    case 1: {
      auto first = gen_command_at(cfg, vars, rng, depth - 1);
      return make_seq(first, gen_command_at(cfg, vars, rng, depth - 1));
    }
    case 2: {
      auto left = gen_command_at(cfg, vars, rng, depth - 1);
      return make_choice(left, gen_command_at(cfg, vars, rng, depth - 1));
    }
    case 3:
      return make_star(gen_command_at(cfg, vars, rng, depth - 1));
    default:
      break;
  }
  switch (pick(rng, {cfg.w_skip, cfg.w_assign, cfg.w_assume, cfg.w_havoc})) {
    case 0:
      return make_atomic(atom::Skip{});
    case 1: {
      const std::string var = pick_var(vars, rng);
      return make_atomic(atom::Assign{var, gen_aexp(cfg, vars, rng, 1)});
    }
    case 2:
      return make_atomic(atom::Assume{gen_bexp(cfg, vars, rng)});
    default:
      return make_atomic(atom::Havoc{pick_var(vars, rng)});
  }
}

StateSet random_subset(const DomainPtr& domain, Rng& rng) {
  return StateSet::filter(domain, [&](StateIndex) { return rng.coin(); });
}

std::string show(const StateSet& s) { return describe_state_set(s); }

// Semantics seen by a property check. The library view uses the compositional
// implementation; the other two recompute everything from single-store runs
// and serve as independent re-checks.
class Sem {
 public:
  virtual ~Sem() = default;
  virtual StateSet fw(const CommandPtr& r, const StateSet& s) = 0;
  virtual StateSet bw(const CommandPtr& r, const StateSet& q) = 0;
  virtual StateSet diverging(const CommandPtr& r) = 0;

  virtual bool valid(Logic logic, const StateSet& p, const CommandPtr& r, const StateSet& q) {
    switch (logic) {
      case Logic::hl: return fw(r, p).subset_of(q);
      case Logic::il: return q.subset_of(fw(r, p));
      case Logic::nc: return bw(r, q).subset_of(p);
      case Logic::sil: return p.subset_of(bw(r, q));
    }
    return false;
  }
  StateSet unreachable(const CommandPtr& r, const DomainPtr& d) { return ~fw(r, StateSet::full(d)); }
  bool deterministic(const CommandPtr& r, const DomainPtr& d) {
    for (StateIndex s = 0; s < d->size(); ++s)
      if (fw(r, StateSet::singleton(d, s)).count() > 1) return false;
    return true;
  }
  bool terminating(const CommandPtr& r) { return diverging(r).is_empty(); }
};

class LibrarySem final : public Sem {
 public:
  StateSet fw(const CommandPtr& r, const StateSet& s) override { return fwsem(*r, s); }
  StateSet bw(const CommandPtr& r, const StateSet& q) override { return bwsem(*r, q); }
  StateSet diverging(const CommandPtr& r) override { return diverging_states(*r, domain_); }
  bool valid(Logic logic, const StateSet& p, const CommandPtr& r, const StateSet& q) override {
    return check_validity(logic, p, *r, q).valid;
  }
  void bind(DomainPtr d) { domain_ = std::move(d); }

 private:
  DomainPtr domain_;
};

class RelationSem final : public Sem {
 public:
  explicit RelationSem(DomainPtr d) : domain_(std::move(d)) {}
  StateSet fw(const CommandPtr& r, const StateSet& s) override { return rel(r).image(s); }
  StateSet bw(const CommandPtr& r, const StateSet& q) override { return rel(r).preimage(q); }
  StateSet diverging(const CommandPtr& r) override {
    const auto& rr = rel(r);
    return StateSet::filter(domain_, [&](StateIndex s) { return rr.successor_count(s) == 0; });
  }

 private:
  const StateRelation& rel(const CommandPtr& r) {
    auto it = cache_.find(r.get());
    if (it == cache_.end()) {
      keep_.push_back(r);
      it = cache_.emplace(r.get(), semantics_relation(*r, domain_)).first;
    }
    return it->second;
  }
  DomainPtr domain_;
  std::vector<CommandPtr> keep_;
  std::map<const Command*, StateRelation> cache_;
};

class PointwiseSem final : public Sem {
 public:
  explicit PointwiseSem(DomainPtr d) : domain_(std::move(d)) {}
  StateSet fw(const CommandPtr& r, const StateSet& s) override {
    StateSet out(domain_);
    s.for_each([&](StateIndex i) {
      for (auto t : successors(*r, domain_, i)) out.insert(t);
    });
    return out;
  }
  StateSet bw(const CommandPtr& r, const StateSet& q) override {
    return StateSet::filter(domain_, [&](StateIndex i) {
      for (auto t : successors(*r, domain_, i))
        if (q.contains(t)) return true;
      return false;
    });
  }
  StateSet diverging(const CommandPtr& r) override {
    return StateSet::filter(domain_, [&](StateIndex i) { return successors(*r, domain_, i).empty(); });
  }

 private:
  DomainPtr domain_;
};

enum class SemKind { library, relation, pointwise };

std::unique_ptr<Sem> make_sem(SemKind kind, const DomainPtr& d) {
  switch (kind) {
    case SemKind::library: {
      auto s = std::make_unique<LibrarySem>();
      s->bind(d);
      return s;
    }
    case SemKind::relation: return std::make_unique<RelationSem>(d);
    case SemKind::pointwise: return std::make_unique<PointwiseSem>(d);
  }
  return nullptr;
}

struct Failure {
  std::string lhs;
  std::string rhs;
};
using Outcome = std::optional<Failure>;

Failure fail_sets(const std::string& what, const StateSet& a, const StateSet& b) {
  return {what + ": " + show(a), show(b)};
}

// ---- universal properties ----

Outcome prop_adjunction(const Instance& in, Sem& sem, Rng& rng) {
  const auto& d = in.domain;
  const bool forward = sem.fw(in.r, in.pre).intersects(in.post);
  const bool backward = in.pre.intersects(sem.bw(in.r, in.post));
  if (forward != backward)
    return Failure{std::string("fw(P) meets Q: ") + (forward ? "yes" : "no"),
                   std::string("P meets bw(Q): ") + (backward ? "yes" : "no")};
  for (int k = 0; k < 4; ++k) {
    const StateIndex s = rng.below(d->size());
    const auto image = sem.fw(in.r, StateSet::singleton(d, s));
    StateIndex t = rng.below(d->size());
    if (rng.coin() && !image.is_empty()) {
      const auto elems = image.elements();
      t = elems[rng.below(elems.size())];
    }
    const bool a = image.contains(t);
    const bool b = sem.bw(in.r, StateSet::singleton(d, t)).contains(s);
    if (a != b)
      return Failure{"{" + d->format(t) + "} in fw({" + d->format(s) + "}): " + (a ? "yes" : "no"),
                     "{" + d->format(s) + "} in bw({" + d->format(t) + "}): " + (b ? "yes" : "no")};
  }
  return std::nullopt;
}

// Compares the library's compositional semantics with `sem`.
Outcome prop_compositional(const Instance& in, Sem& sem, Rng&) {
  const auto bw_lib = bwsem(*in.r, in.post);
  const auto bw_ref = sem.bw(in.r, in.post);
  if (!(bw_lib == bw_ref)) return fail_sets("bwsem(Q)", bw_lib, bw_ref);
  const auto fw_lib = fwsem(*in.r, in.pre);
  const auto fw_ref = sem.fw(in.r, in.pre);
  if (!(fw_lib == fw_ref)) return fail_sets("fwsem(P)", fw_lib, fw_ref);
  return std::nullopt;
}

Outcome prop_additivity(const Instance& in, Sem& sem, Rng& rng) {
  const auto& r = in.r;
  const auto x = random_subset(in.domain, rng);
  for (const auto& [a, b] : {std::pair{in.pre, in.post}, std::pair{in.pre, x}}) {
    const auto fu = sem.fw(r, a | b);
    const auto fs = sem.fw(r, a) | sem.fw(r, b);
    if (!(fu == fs)) return fail_sets("fw(A u B)", fu, fs);
    const auto bu = sem.bw(r, a | b);
    const auto bs = sem.bw(r, a) | sem.bw(r, b);
    if (!(bu == bs)) return fail_sets("bw(A u B)", bu, bs);
  }
  const auto empty = StateSet::empty(in.domain);
  if (!sem.fw(r, empty).is_empty()) return fail_sets("fw(empty)", sem.fw(r, empty), empty);
  if (!sem.bw(r, empty).is_empty()) return fail_sets("bw(empty)", sem.bw(r, empty), empty);
  return std::nullopt;
}

Outcome prop_monotonicity(const Instance& in, Sem& sem, Rng&) {
  const auto meet = in.pre & in.post;
  const auto f_small = sem.fw(in.r, meet), f_big = sem.fw(in.r, in.pre);
  if (!f_small.subset_of(f_big)) return fail_sets("fw(P n Q) <= fw(P)", f_small, f_big);
  const auto b_small = sem.bw(in.r, meet), b_big = sem.bw(in.r, in.post);
  if (!b_small.subset_of(b_big)) return fail_sets("bw(P n Q) <= bw(Q)", b_small, b_big);
  return std::nullopt;
}

Outcome prop_star_unrolling(const Instance& in, Sem& sem, Rng&) {
  const auto star = make_star(in.r);
  const auto f = sem.fw(star, in.pre);
  const auto f_unrolled = in.pre | sem.fw(star, sem.fw(in.r, in.pre));
  if (!(f == f_unrolled)) return fail_sets("fw(r*, P) = P u fw(r*, fw(r, P))", f, f_unrolled);
  const auto b = sem.bw(star, in.post);
  const auto b_unrolled = in.post | sem.bw(star, sem.bw(in.r, in.post));
  if (!(b == b_unrolled)) return fail_sets("bw(r*, Q) = Q u bw(r*, bw(r, Q))", b, b_unrolled);
  return std::nullopt;
}

Outcome galois_on(const Instance& in, Sem& sem) {
  const auto d = sem.diverging(in.r);
  const auto u = sem.unreachable(in.r, in.domain);
  const auto round1 = sem.bw(in.r, sem.fw(in.r, in.pre));
  if (!(in.pre - d).subset_of(round1)) return fail_sets("P \\ D <= bw(fw(P))", in.pre - d, round1);
  const auto round2 = sem.fw(in.r, sem.bw(in.r, in.post));
  if (!(in.post - u).subset_of(round2)) return fail_sets("Q \\ U <= fw(bw(Q))", in.post - u, round2);
  return std::nullopt;
}

Outcome prop_galois(const Instance& in, Sem& sem, Rng&) { return galois_on(in, sem); }

Outcome bijection_on(const Instance& in, Sem& sem) {
  const bool hl = sem.fw(in.r, in.pre).subset_of(in.post);
  const bool nc = sem.bw(in.r, ~in.post).subset_of(~in.pre);
  if (hl != nc) return Failure{std::string("fw(P) <= Q: ") + (hl ? "true" : "false"),
                               std::string("bw(not Q) <= not P: ") + (nc ? "true" : "false")};
  return std::nullopt;
}

Outcome prop_bijection(const Instance& in, Sem& sem, Rng&) {
  if (auto f = bijection_on(in, sem)) return f;
  // A non-vacuous instance: P = wlp(Q).
  Instance tight = in;
  tight.pre = ~sem.bw(in.r, ~in.post);
  return bijection_on(tight, sem);
}

Outcome sil_hl_on(const Instance& in, Sem& sem, const StateSet& p, const StateSet& q) {
  const bool det = sem.deterministic(in.r, in.domain);
  const bool term = sem.terminating(in.r);
  const bool sil = sem.valid(Logic::sil, p, in.r, q);
  const bool hl = sem.valid(Logic::hl, p, in.r, q);
  if (det && sil && !hl)
    return Failure{"deterministic, SIL valid: P = " + show(p), "HL invalid: Q = " + show(q)};
  if (term && hl && !sil) return Failure{"terminating, HL valid: P = " + show(p), "SIL invalid: Q = " + show(q)};
  return std::nullopt;
}

Outcome prop_sil_hl(const Instance& in, Sem& sem, Rng&) {
  if (auto f = sil_hl_on(in, sem, in.pre, in.post)) return f;
  if (auto f = sil_hl_on(in, sem, in.pre & sem.bw(in.r, in.post), in.post)) return f;
  return sil_hl_on(in, sem, in.pre & ~sem.bw(in.r, ~in.post), in.post);
}

// The library's validity checker against the defining inclusions under `sem`.
Outcome prop_sil_characterization(const Instance& in, Sem& sem, Rng&) {
  const auto& r = in.r;
  const auto fw_p = sem.fw(r, in.pre);
  const auto bw_q = sem.bw(r, in.post);
  const std::pair<Logic, bool> expected[] = {
      {Logic::hl, fw_p.subset_of(in.post)},
      {Logic::il, in.post.subset_of(fw_p)},
      {Logic::nc, bw_q.subset_of(in.pre)},
      {Logic::sil, in.pre.subset_of(bw_q)},
  };
  for (const auto& [logic, want] : expected) {
    const auto v = check_validity(logic, in.pre, *r, in.post);
    if (v.valid != want)
      return Failure{std::string("check_validity ") + to_string(logic) + ": " + v.describe(*in.domain),
                     std::string("definition: ") + (want ? "valid" : "invalid")};
  }
  const bool pointwise = sil_holds_pointwise(in.pre, *r, in.post);
  if (pointwise != expected[3].second)
    return Failure{std::string("sil_holds_pointwise: ") + (pointwise ? "true" : "false"),
                   std::string("P <= bw(Q): ") + (expected[3].second ? "true" : "false")};
  const auto weakest = weakest_sil_pre(*r, in.post);
  if (!(weakest == bw_q)) return fail_sets("weakest_sil_pre(Q)", weakest, bw_q);
  return std::nullopt;
}

// A weakest condition is valid and stops being valid when enlarged by any
// one state; every valid condition is contained in it.
Outcome weakest_probe(const std::string& name, Logic logic, const Instance& in, Sem& sem, Rng& rng,
                      const StateSet& weakest, bool on_pre, const StateSet& other, const StateSet& sample) {
  auto valid_with = [&](const StateSet& cond) {
    return on_pre ? sem.valid(logic, cond, in.r, other) : sem.valid(logic, other, in.r, cond);
  };
  if (!valid_with(weakest)) return Failure{name + " not valid", show(weakest)};
  const auto outside = (~weakest).elements();
  for (int k = 0; k < 3 && !outside.empty(); ++k) {
    StateSet bigger = weakest;
    const StateIndex s = outside[rng.below(outside.size())];
    bigger.insert(s);
    if (valid_with(bigger)) return Failure{name + " enlarged by {" + in.domain->format(s) + "} still valid", show(weakest)};
  }
  if (valid_with(sample) && !sample.subset_of(weakest))
    return Failure{"valid condition " + show(sample), "not contained in " + name + " = " + show(weakest)};
  return std::nullopt;
}

Outcome prop_weakest(const Instance& in, Sem& sem, Rng& rng) {
  if (auto f = weakest_probe("wlp(Q)", Logic::hl, in, sem, rng, wlp(*in.r, in.post), true, in.post, in.pre))
    return f;
  if (auto f = weakest_probe("weakest_nc_post(P)", Logic::nc, in, sem, rng, weakest_nc_post(*in.r, in.pre), false,
                             in.pre, in.post))
    return f;
  return weakest_probe("weakest_sil_pre(Q)", Logic::sil, in, sem, rng, weakest_sil_pre(*in.r, in.post), true,
                       in.post, in.pre);
}

Outcome prop_cons(const Instance& in, Sem& sem, Rng& rng) {
  const auto& r = in.r;
  const auto x = random_subset(in.domain, rng);
  const auto y = random_subset(in.domain, rng);
  struct Case {
    Logic logic;
    StateSet p, q, p2, q2;
  };
  const auto p_sil = in.pre & sem.bw(r, in.post);
  const auto p_hl = in.pre & ~sem.bw(r, ~in.post);
  const auto q_il = in.post & sem.fw(r, in.pre);
  const auto p_nc = in.pre | sem.bw(r, in.post);
  const Case cases[] = {
      {Logic::sil, p_sil, in.post, p_sil & x, in.post | y},
      {Logic::hl, p_hl, in.post, p_hl & x, in.post | y},
      {Logic::il, in.pre, q_il, in.pre | x, q_il & y},
      {Logic::nc, p_nc, in.post, p_nc | x, in.post & y},
  };
  for (const auto& c : cases) {
    if (!sem.valid(c.logic, c.p, r, c.q))
      return Failure{std::string(to_string(c.logic)) + " base triple invalid", show(c.p) + " / " + show(c.q)};
    if (!sem.valid(c.logic, c.p2, r, c.q2))
      return Failure{std::string(to_string(c.logic)) + " cons conclusion invalid: pre " + show(c.p2),
                     "post " + show(c.q2)};
  }
  return std::nullopt;
}

// Valid triples built by shrinking one side: backward logics shrink pre,
// forward ones shrink post.
std::pair<StateSet, StateSet> tighten(Logic logic, Sem& sem, const CommandPtr& r, const StateSet& p,
                                      const StateSet& q) {
  switch (logic) {
    case Logic::sil: return {p & sem.bw(r, q), q};
    case Logic::hl: return {p & ~sem.bw(r, ~q), q};
    default: return {p, q & sem.fw(r, p)};
  }
}

Outcome prop_rule_table(const Instance& in, Sem& sem, Rng& rng) {
  const auto& r = in.r;
  const auto& d = in.domain;
  const auto star = make_star(r);
  const auto other = make_star(r);
  const auto seq = make_seq(r, other);
  const auto choice = make_choice(r, other);
  const auto unrolled = make_seq(star, r);
  const auto x = random_subset(d, rng);
  const auto y = random_subset(d, rng);
  const auto& P = in.pre;
  const auto& Q = in.post;

  for (Logic L : {Logic::sil, Logic::hl, Logic::il}) {
    const bool backward = L != Logic::il;
    const std::string tag = to_string(L);
    auto expect = [&](const std::string& rule, const StateSet& p, const CommandPtr& c, const StateSet& q) -> Outcome {
      if (sem.valid(L, p, c, q)) return std::nullopt;
      return Failure{tag + " " + rule + ": premises valid", "conclusion invalid: pre " + show(p) + ", post " + show(q)};
    };
    Outcome f;
    // atom
    if (std::holds_alternative<Command::Atomic>(r->node)) {
      f = L == Logic::sil ? expect("atom", sem.bw(r, Q), r, Q) : expect("atom", P, r, sem.fw(r, P));
      if (f) return f;
    }
    // cons
    {
      auto [p0, q0] = tighten(L, sem, r, P, Q);
      f = L == Logic::il ? expect("cons", p0 | x, r, q0 & y) : expect("cons", p0 & x, r, q0 | y);
      if (f) return f;
    }
    // seq
    if (backward) {
      auto [mid, q] = tighten(L, sem, other, x, Q);
      auto [p, m] = tighten(L, sem, r, P, mid);
      f = expect("seq", p, seq, q);
    } else {
      auto [p, mid] = tighten(L, sem, r, P, x);
      auto [m, q] = tighten(L, sem, other, mid, Q);
      f = expect("seq", p, seq, q);
    }
    if (f) return f;
    // choice
    if (L == Logic::sil) {
      f = expect("choice", (P & sem.bw(r, Q)) | (x & sem.bw(other, Q)), choice, Q);
    } else if (L == Logic::hl) {
      f = expect("choice", P & ~sem.bw(r, ~Q) & ~sem.bw(other, ~Q), choice, Q);
    } else {
      f = expect("choice", P, choice, (Q & sem.fw(r, P)) | (y & sem.fw(other, P)));
    }
    if (f) return f;
    // empty
    f = L == Logic::il ? expect("empty", P, r, StateSet::empty(d)) : expect("empty", StateSet::empty(d), r, Q);
    if (f) return f;
    // disj
    {
      auto [p1, q1] = tighten(L, sem, r, P, Q);
      auto [p2, q2] = tighten(L, sem, r, x, y);
      f = expect("disj", p1 | p2, r, q1 | q2);
      if (f) return f;
    }
    // iter
    if (L == Logic::sil) {
      StateSet q = Q, all = Q;
      for (int n = 0; n < 3; ++n) {
        q = sem.bw(r, q) & (n == 0 ? x : y);
        all |= q;
      }
      f = expect("iter", all, star, Q);
    } else if (L == Logic::hl) {
      StateSet inv = P;
      for (;;) {
        const auto next = inv & ~sem.bw(r, ~inv);
        if (next == inv) break;
        inv = next;
      }
      f = expect("iter", inv, star, inv);
    } else {
      StateSet p = P, all = P;
      for (int n = 0; n < 3; ++n) {
        p = sem.fw(r, p) & (n == 0 ? x : y);
        all |= p;
      }
      f = expect("iter", P, star, all);
    }
    if (f) return f;
    if (L == Logic::hl) continue;
    // iter0, unroll, unroll_split
    f = expect("iter0", backward ? Q : P, star, backward ? Q : P);
    if (f) return f;
    {
      auto [p, q] = tighten(L, sem, unrolled, P, Q);
      f = expect("unroll", p, star, q);
      if (f) return f;
      f = expect("unroll_split", p | x, star, q | x);
      if (f) return f;
    }
  }
  return std::nullopt;
}

Outcome conj_on(Logic logic, const Instance& in, Sem& sem, Rng& rng) {
  const auto& r = in.r;
  const auto x = random_subset(in.domain, rng);
  const auto y = random_subset(in.domain, rng);
  StateSet p1 = in.pre, p2 = x;
  const StateSet &q1 = in.post, &q2 = y;
  if (logic == Logic::hl) {
    p1 &= ~sem.bw(r, ~q1);
    p2 &= ~sem.bw(r, ~q2);
  } else {
    p1 |= sem.bw(r, q1);
    p2 |= sem.bw(r, q2);
  }
  if (!sem.valid(logic, p1 & p2, r, q1 & q2))
    return Failure{std::string(to_string(logic)) + " components valid: " + show(p1) + " / " + show(p2),
                   "intersection invalid: post " + show(q1 & q2)};
  return std::nullopt;
}

Outcome prop_conj_hl(const Instance& in, Sem& sem, Rng& rng) { return conj_on(Logic::hl, in, sem, rng); }
Outcome prop_conj_nc(const Instance& in, Sem& sem, Rng& rng) { return conj_on(Logic::nc, in, sem, rng); }

Outcome completeness_on(const Instance& in, Sem& sem, const StateSet& p) {
  const auto d = derive_then_weaken(in.r, p, in.post);
  const bool valid = sem.valid(Logic::sil, p, in.r, in.post);
  if (d.has_value() != valid)
    return Failure{std::string("derive_then_weaken: ") + (d ? "derived" : "none") + " for pre " + show(p),
                   std::string("SIL ") + (valid ? "valid" : "invalid")};
  if (!d) return std::nullopt;
  const auto res = check_derivation(*d);
  if (!res.accepted) return Failure{"derived tree rejected", res.describe()};
  if (!(d->pre == p) || !(d->post == in.post) || !same(d->cmd, in.r))
    return Failure{"derived conclusion", "differs from the requested triple"};
  return std::nullopt;
}

Outcome prop_completeness(const Instance& in, Sem& sem, Rng&) {
  if (auto f = completeness_on(in, sem, in.pre)) return f;
  return completeness_on(in, sem, in.pre & sem.bw(in.r, in.post));
}

void collect_nodes(const Derivation& d, std::vector<const Derivation*>& out) {
  out.push_back(&d);
  for (const auto& p : d.premises) collect_nodes(p, out);
}

Outcome sound_tree(const std::string& what, const Derivation& d, Sem& sem) {
  const auto res = check_derivation(d);
  if (!res.accepted) return Failure{what + " rejected", res.describe()};
  std::vector<const Derivation*> nodes;
  collect_nodes(d, nodes);
  for (const auto* n : nodes)
    if (!sem.valid(Logic::sil, n->pre, n->cmd, n->post))
      return Failure{what + ": accepted " + std::string(to_string(n->rule)) + " node for " + to_string(*n->cmd),
                     "invalid conclusion: pre " + show(n->pre) + ", post " + show(n->post)};
  return std::nullopt;
}

Outcome prop_soundness(const Instance& in, Sem& sem, Rng& rng) {
  const auto synth = synthesize_derivation(in.r, in.post);
  if (auto f = sound_tree("synthesized derivation", synth, sem)) return f;
  const auto expected = sem.bw(in.r, in.post);
  if (!(synth.pre == expected)) return fail_sets("synthesized pre", synth.pre, expected);
  const auto random = random_derivation(in.r, in.post, rng);
  if (!(random.post == in.post)) return fail_sets("random derivation post", random.post, in.post);
  return sound_tree("random derivation", random, sem);
}

Outcome prop_format(const Instance& in, Sem&, Rng& rng) {
  const auto& vars = in.domain->vars();
  const auto text = to_string(*in.r);
  const auto reparsed = parse_command(text, vars, false);
  if (!same(reparsed, in.r)) return Failure{"printed " + text, "reparsed " + to_string(*reparsed)};
  for (const auto& s : {in.pre, in.post}) {
    const auto guard = to_string(*state_set_to_bexp(s));
    const auto back = predicate_set(*parse_bexp(guard, vars), in.domain);
    if (!(back == s)) return fail_sets("set via guard '" + guard + "'", s, back);
  }
  for (const auto& d : {synthesize_derivation(in.r, in.post), random_derivation(in.r, in.post, rng)}) {
    const auto json = encode_derivation(d);
    const auto decoded = decode_derivation(json, in.domain);
    if (!(decoded == d)) return Failure{"derivation encode/decode differs", json};
  }
  return std::nullopt;
}

using PropFn = Outcome (*)(const Instance&, Sem&, Rng&);

struct UniversalProperty {
  const char* id;
  PropFn fn;
  SemKind primary;
  SemKind confirm;
};

const UniversalProperty kUniversal[] = {
    {"adjunction", prop_adjunction, SemKind::library, SemKind::relation},
    {"bwsem-compositional", prop_compositional, SemKind::relation, SemKind::pointwise},
    {"additivity", prop_additivity, SemKind::library, SemKind::relation},
    {"monotonicity", prop_monotonicity, SemKind::library, SemKind::relation},
    {"star-unrolling", prop_star_unrolling, SemKind::library, SemKind::relation},
    {"galois", prop_galois, SemKind::library, SemKind::relation},
    {"bijection-hl-nc", prop_bijection, SemKind::library, SemKind::relation},
    {"sil-hl", prop_sil_hl, SemKind::library, SemKind::relation},
    {"sil-characterization", prop_sil_characterization, SemKind::library, SemKind::relation},
    {"weakest-conditions", prop_weakest, SemKind::library, SemKind::relation},
    {"cons-directions", prop_cons, SemKind::library, SemKind::relation},
    {"rule-table", prop_rule_table, SemKind::library, SemKind::relation},
    {"conj-hl", prop_conj_hl, SemKind::library, SemKind::relation},
    {"conj-nc", prop_conj_nc, SemKind::library, SemKind::relation},
    {"sil-completeness", prop_completeness, SemKind::library, SemKind::relation},
    {"derivation-soundness", prop_soundness, SemKind::library, SemKind::relation},
    {"format-roundtrip", prop_format, SemKind::library, SemKind::library},
};

std::uint64_t salt_of(std::string_view id) { return std::hash<std::string_view>{}(id) | 1; }

PropertyReport run_universal(const UniversalProperty& prop, const SuiteConfig& cfg) {
  PropertyReport rep;
  rep.id = prop.id;
  rep.kind = PropertyKind::universal;
  const auto salt = salt_of(prop.id);
  for (std::uint64_t i = 0; i < cfg.instances; ++i) {
    const auto in = gen_instance(cfg.gen, i);
    auto sem = make_sem(prop.primary, in.domain);
    Rng rng = aux_rng(cfg.gen.seed, i, salt);
    auto f = prop.fn(in, *sem, rng);
    ++rep.instances;
    if (!f) continue;
    auto again = make_sem(prop.confirm, in.domain);
    Rng rng2 = aux_rng(cfg.gen.seed, i, salt);
    const bool confirmed = prop.fn(in, *again, rng2).has_value();
    rep.violations.push_back({to_string(*in.r), show(in.pre), show(in.post), f->lhs, f->rhs, confirmed});
  }
  return rep;
}

// ---- search properties ----

DomainPtr single_var_domain(Value modulus) { return make_domain({"x"}, modulus); }

StateSet x_equals(const DomainPtr& d, Value v) {
  return StateSet::filter(d, [&](StateIndex s) { return d->value(s, 0) == v; });
}

std::string triple_text(const CommandPtr& r, const StateSet& p, const StateSet& q) {
  return "r = " + to_string(*r) + "; P = " + show(p) + "; Q = " + show(q);
}

PropertyReport hl_unsound(const std::string& id, const GenConfig& cfg, std::uint64_t budget) {
  PropertyReport rep;
  rep.id = id;
  rep.kind = PropertyKind::search;
  const auto d = single_var_domain(std::max<Value>(cfg.modulus, 6));
  auto vars = d->vars();
  const bool iter0 = id == "hl-unsound-iter0";
  const bool split = id == "hl-unsound-unroll-split";

  // The rule's premise is HL-valid by construction; the conclusion is not.
  auto attempt = [&](const CommandPtr& body, const StateSet& p, const StateSet& extra) -> bool {
    const auto star = make_star(body);
    StateSet pre = p, post = p;
    if (!iter0) {
      post = fwsem(*make_seq(star, body), p);
      if (split) {
        pre |= extra;
        post |= extra;
      }
    }
    if (check_validity(Logic::hl, pre, *star, post).valid) return false;
    rep.found = true;
    rep.witness = triple_text(star, pre, post);
    if (!iter0) rep.witness += "; premise post " + show(fwsem(*make_seq(star, body), p));
    return true;
  };

  ++rep.instances;
  const auto planted = parse_command(iter0 ? "x := x + 1" : "x := 1", vars);
  if (attempt(planted, x_equals(d, 0), x_equals(d, 5))) return rep;
  for (std::uint64_t i = 0; i < budget; ++i) {
    ++rep.instances;
    const auto in = gen_instance(cfg, i);
    if (attempt(in.r, in.pre, in.post)) return rep;
  }
  rep.witness = "no counterexample within budget";
  return rep;
}

std::string conj_text(const ConjCounterexample& c) {
  return "r = " + to_string(*c.r) + "; P1 = " + show(c.pre1) + "; P2 = " + show(c.pre2) + "; Q1 = " + show(c.post1) +
         "; Q2 = " + show(c.post2);
}

bool is_conj_counterexample(Logic logic, const ConjCounterexample& c) {
  return check_validity(logic, c.pre1, *c.r, c.post1).valid && check_validity(logic, c.pre2, *c.r, c.post2).valid &&
         !check_validity(logic, c.pre1 & c.pre2, *c.r, c.post1 & c.post2).valid;
}

PropertyReport conj_search(Logic logic, const GenConfig& cfg, std::uint64_t budget) {
  PropertyReport rep;
  rep.id = std::string("conj-") + to_string(logic);
  rep.kind = PropertyKind::search;
  auto found = find_conj_counterexample(logic, cfg, budget);
  rep.instances = budget + 1;
  if (found) {
    rep.found = true;
    rep.witness = conj_text(*found);
  } else {
    rep.witness = "no counterexample within budget";
  }
  return rep;
}

struct SearchProperty {
  const char* id;
  std::function<PropertyReport(const GenConfig&, std::uint64_t)> fn;
};

const std::vector<SearchProperty>& search_properties() {
  static const std::vector<SearchProperty> props{
      {"hl-unsound-iter0", [](const GenConfig& c, std::uint64_t b) { return hl_unsound("hl-unsound-iter0", c, b); }},
      {"hl-unsound-unroll", [](const GenConfig& c, std::uint64_t b) { return hl_unsound("hl-unsound-unroll", c, b); }},
      {"hl-unsound-unroll-split",
       [](const GenConfig& c, std::uint64_t b) { return hl_unsound("hl-unsound-unroll-split", c, b); }},
      {"conj-il", [](const GenConfig& c, std::uint64_t b) { return conj_search(Logic::il, c, b); }},
      {"conj-sil", [](const GenConfig& c, std::uint64_t b) { return conj_search(Logic::sil, c, b); }},
      {"il-sil-incomparable", [](const GenConfig& c, std::uint64_t b) { return check_il_sil_incomparable(c, b); }},
  };
  return props;
}

// ---- random derivations ----

Derivation node(Rule rule, StateSet pre, CommandPtr cmd, StateSet post, std::vector<Derivation> premises = {}) {
  return {rule, std::move(pre), std::move(cmd), std::move(post), std::move(premises)};
}

Derivation random_tree(const CommandPtr& r, const StateSet& post, Rng& rng, int budget) {
  const auto& d = post.domain();
  if (budget <= 0) return synthesize_derivation(r, post);
  switch (pick(rng, {1, 2, 2, 8})) {
    case 0:
      return node(Rule::empty, StateSet::empty(d), r, post);
    case 1: {
      const auto sub = random_tree(r, post & random_subset(d, rng), rng, budget - 1);
      auto pre = sub.pre & random_subset(d, rng);
      return node(Rule::cons, std::move(pre), r, post, {sub});
    }
    case 2: {
      const auto mask = random_subset(d, rng);
      auto left = random_tree(r, post & mask, rng, budget - 1);
      auto right = random_tree(r, post - mask, rng, budget - 1);
      auto pre = left.pre | right.pre;
      return node(Rule::disj, std::move(pre), r, post, {std::move(left), std::move(right)});
    }
    default:
      break;
  }
  return std::visit(
      [&](const auto& n) -> Derivation {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Command::Atomic>) {
          return node(Rule::atom, bwsem(*r, post), r, post);
        } else if constexpr (std::is_same_v<N, Command::Seq>) {
          auto second = random_tree(n.second, post, rng, budget - 1);
          auto first = random_tree(n.first, second.pre, rng, budget - 1);
          auto pre = first.pre;
          return node(Rule::seq, std::move(pre), r, post, {std::move(first), std::move(second)});
        } else if constexpr (std::is_same_v<N, Command::Choice>) {
          auto left = random_tree(n.left, post, rng, budget - 1);
          auto right = random_tree(n.right, post, rng, budget - 1);
          auto pre = left.pre | right.pre;
          return node(Rule::choice, std::move(pre), r, post, {std::move(left), std::move(right)});
        } else {
          const auto unrolled = make_seq(r, n.body);
          switch (rng.below(4)) {
            case 0:
              return node(Rule::iter0, post, r, post);
            case 1: {
              std::vector<Derivation> family;
              StateSet q = post, all = post;
              const auto count = 1 + rng.below(3);
              for (std::uint64_t k = 0; k < count; ++k) {
                family.push_back(random_tree(n.body, q, rng, budget - 1));
                q = family.back().pre;
                all |= q;
              }
              return node(Rule::iter, std::move(all), r, post, std::move(family));
            }
            case 2: {
              auto sub = random_tree(unrolled, post, rng, budget - 1);
              auto pre = sub.pre;
              return node(Rule::unroll, std::move(pre), r, post, {std::move(sub)});
            }
            default: {
              const auto q1 = post & random_subset(d, rng);
              const auto q2 = (post - q1) | (post & random_subset(d, rng));
              auto sub = random_tree(unrolled, q1, rng, budget - 1);
              auto pre = sub.pre | q2;
              return node(Rule::unroll_split, std::move(pre), r, post, {std::move(sub)});
            }
          }
        }
      },
      r->node);
}

}  // namespace

void GenConfig::validate() const {
  if (max_depth < 1) throw ConfigError("max depth must be at least 1");
  if (vars < 1 || vars > static_cast<int>(kNames.size()))
    throw ConfigError("variable count must be between 1 and " + std::to_string(kNames.size()));
  if (modulus < 2) throw ConfigError("modulus must be at least 2");
  if (w_atomic == 0) throw ConfigError("atomic weight must be positive");
  if (w_skip + w_assign + w_assume + w_havoc == 0) throw ConfigError("atomic command weights are all zero");
}

CommandPtr gen_command(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const std::vector<std::string> vars(kNames.begin(), kNames.begin() + cfg.vars);
  return gen_command(cfg, vars, rng);
}

CommandPtr gen_command(const GenConfig& cfg, const std::vector<std::string>& vars, Rng& rng) {
  return gen_command_at(cfg, vars, rng, cfg.max_depth);
}

BExpPtr gen_bexp(const GenConfig& cfg, const std::vector<std::string>& vars, Rng& rng) {
  switch (pick(rng, {5, 1, 2, 2})) {
    case 1:
      return make_not(gen_cmp(cfg, vars, rng));
    case 2: {
      auto lhs = gen_cmp(cfg, vars, rng);
      return make_and(lhs, gen_cmp(cfg, vars, rng));
    }
    case 3: {
      auto lhs = gen_cmp(cfg, vars, rng);
      return make_or(lhs, gen_cmp(cfg, vars, rng));
    }
    default:
      return gen_cmp(cfg, vars, rng);
  }
}

StateSet gen_state_set(const GenConfig& cfg, const DomainPtr& domain, Rng& rng) {
  if (rng.coin()) return predicate_set(*gen_bexp(cfg, domain->vars(), rng), domain);
  switch (rng.below(6)) {
    case 0: return StateSet::empty(domain);
    case 1: return StateSet::full(domain);
    case 2: return StateSet::singleton(domain, rng.below(domain->size()));
    default: return random_subset(domain, rng);
  }
}

Instance gen_instance(const GenConfig& cfg, std::uint64_t index) {
  cfg.validate();
  Rng rng(cfg.seed + index);
  const auto n = 1 + rng.below(static_cast<std::uint64_t>(cfg.vars));
  std::vector<std::string> vars(kNames.begin(), kNames.begin() + static_cast<std::ptrdiff_t>(n));
  auto domain = make_domain(vars, cfg.modulus);
  auto r = gen_command(cfg, vars, rng);
  auto pre = gen_state_set(cfg, domain, rng);
  auto post = gen_state_set(cfg, domain, rng);
  return {std::move(domain), std::move(r), std::move(pre), std::move(post)};
}

bool check_bijection_hl_nc(const Command& r, const StateSet& pre, const StateSet& post) {
  LibrarySem sem;
  sem.bind(pre.domain());
  const Instance in{pre.domain(), std::make_shared<Command>(r), pre, post};
  return !bijection_on(in, sem).has_value();
}

bool check_sil_hl_relation(const Command& r, const StateSet& pre, const StateSet& post) {
  LibrarySem sem;
  sem.bind(pre.domain());
  const Instance in{pre.domain(), std::make_shared<Command>(r), pre, post};
  return !sil_hl_on(in, sem, pre, post).has_value();
}

bool check_galois_inequalities(const Command& r, const StateSet& pre, const StateSet& post) {
  LibrarySem sem;
  sem.bind(pre.domain());
  const Instance in{pre.domain(), std::make_shared<Command>(r), pre, post};
  return !galois_on(in, sem).has_value();
}

std::optional<ConjCounterexample> find_conj_counterexample(Logic logic, const GenConfig& cfg, std::uint64_t budget) {
  if (logic != Logic::il && logic != Logic::sil)
    throw Error(std::string("conjunction is sound for ") + to_string(logic) + "; only il and sil can fail");
  const auto d = single_var_domain(std::max<Value>(cfg.modulus, 11));
  const auto& vars = d->vars();
  ConjCounterexample planted =
      logic == Logic::il
          ? ConjCounterexample{parse_command("x := 1", vars), x_equals(d, 0), x_equals(d, 10), x_equals(d, 1),
                               x_equals(d, 1)}
          : ConjCounterexample{parse_command("x := nondet()", vars), x_equals(d, 1), x_equals(d, 1), x_equals(d, 0),
                               x_equals(d, 10)};
  if (is_conj_counterexample(logic, planted)) return planted;
  for (std::uint64_t i = 0; i < budget; ++i) {
    const auto in = gen_instance(cfg, i);
    Rng rng = aux_rng(cfg.seed, i, salt_of("conj-search"));
    const auto x = random_subset(in.domain, rng);
    ConjCounterexample c{in.r, in.pre, in.post, in.post, x};
    if (logic == Logic::il) {
      c.post1 = x & fwsem(*in.r, in.pre);
      c.post2 = x & fwsem(*in.r, in.post);
    } else {
      c.pre1 = in.pre & bwsem(*in.r, in.post);
      c.pre2 = in.pre & bwsem(*in.r, x);
    }
    if (is_conj_counterexample(logic, c)) return c;
  }
  return std::nullopt;
}

PropertyReport check_il_sil_incomparable(const GenConfig& cfg, std::uint64_t budget) {
  PropertyReport rep;
  rep.id = "il-sil-incomparable";
  rep.kind = PropertyKind::search;
  const auto d = single_var_domain(cfg.modulus);
  const auto r1 = parse_command("x := 1", d->vars());
  const auto p = StateSet::filter(d, [&](StateIndex s) { return d->value(s, 0) < cfg.modulus / 2; });
  const auto q = x_equals(d, 1);
  const bool sil = check_validity(Logic::sil, p, *r1, q).valid;
  const bool il = check_validity(Logic::il, p, *r1, q).valid;
  const bool il_neg = check_validity(Logic::il, ~p, *r1, ~q).valid;
  const bool sil_neg = check_validity(Logic::sil, ~p, *r1, ~q).valid;
  const bool planted_ok = sil && il && !il_neg && !sil_neg;
  std::ostringstream w;
  w << "planted " << triple_text(r1, p, q) << ": sil " << (sil ? "valid" : "invalid") << ", il "
    << (il ? "valid" : "invalid") << ", negated il " << (il_neg ? "valid" : "invalid") << ", negated sil "
    << (sil_neg ? "valid" : "invalid");

  std::optional<std::string> sil_only, il_only;
  ++rep.instances;
  for (std::uint64_t i = 0; i < budget && (!sil_only || !il_only); ++i) {
    ++rep.instances;
    const auto in = gen_instance(cfg, i);
    if (!sil_only) {
      const auto pre = in.pre & bwsem(*in.r, in.post);
      if (!check_validity(Logic::il, pre, *in.r, in.post).valid) sil_only = triple_text(in.r, pre, in.post);
    }
    if (!il_only) {
      const auto post = in.post & fwsem(*in.r, in.pre);
      if (!check_validity(Logic::sil, in.pre, *in.r, post).valid) il_only = triple_text(in.r, in.pre, post);
    }
  }
  w << " | sil valid, il invalid: " << sil_only.value_or("not found")
    << " | il valid, sil invalid: " << il_only.value_or("not found");
  rep.found = planted_ok && sil_only && il_only;
  rep.witness = w.str();
  return rep;
}

Derivation random_derivation(const CommandPtr& r, const StateSet& post, Rng& rng, int budget) {
  return random_tree(r, post, rng, budget);
}

const std::vector<std::string>& property_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& p : kUniversal) out.emplace_back(p.id);
    for (const auto& p : search_properties()) out.emplace_back(p.id);
    return out;
  }();
  return ids;
}

PropertyReport run_property(std::string_view id, const SuiteConfig& cfg) {
  cfg.gen.validate();
  const auto start = std::chrono::steady_clock::now();
  std::optional<PropertyReport> rep;
  for (const auto& p : kUniversal)
    if (id == p.id) rep = run_universal(p, cfg);
  for (const auto& p : search_properties())
    if (id == p.id) rep = p.fn(cfg.gen, cfg.instances);
  if (!rep) throw ConfigError("unknown property '" + std::string(id) + "'");
  rep->elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return *rep;
}

std::vector<PropertyReport> run_taxonomy_suite(const SuiteConfig& cfg) {
  std::vector<std::string> ids = cfg.properties;
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = property_ids();
  std::vector<PropertyReport> out;
  for (const auto& id : ids) out.push_back(run_property(id, cfg));
  return out;
}

std::string format_report_text(const std::vector<PropertyReport>& reports, bool timing) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << r.id << ": ";
    if (r.kind == PropertyKind::universal) {
      if (r.violations.empty())
        out << "ok";
      else
        out << r.violations.size() << " violation" << (r.violations.size() == 1 ? "" : "s");
      out << " (" << r.instances << " instances)";
    } else {
      out << (r.found ? "found" : "not found") << " (" << r.instances << " tried)";
    }
    if (timing) out << " [" << static_cast<long long>(r.elapsed_ms) << " ms]";
    out << '\n';
    if (r.kind == PropertyKind::search) out << "  " << r.witness << '\n';
    for (const auto& v : r.violations) {
      out << "  r = " << v.r << "; P = " << v.pre << "; Q = " << v.post << (v.confirmed ? "" : " [unconfirmed]")
          << '\n';
      out << "    " << v.lhs << '\n' << "    " << v.rhs << '\n';
    }
  }
  return out.str();
}

std::string format_report_json(const std::vector<PropertyReport>& reports, bool timing) {
  std::string out;
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["kind"] = r.kind == PropertyKind::universal ? "universal" : "search";
    j["instances"] = r.instances;
    j["ok"] = r.ok();
    if (r.kind == PropertyKind::search) {
      j["found"] = r.found;
      j["witness"] = r.witness;
    }
    auto vs = nlohmann::ordered_json::array();
    for (const auto& v : r.violations)
      vs.push_back({{"r", v.r}, {"pre", v.pre}, {"post", v.post}, {"lhs", v.lhs}, {"rhs", v.rhs},
                    {"confirmed", v.confirmed}});
    j["violations"] = vs;
    if (timing) j["elapsed_ms"] = r.elapsed_ms;
    out += j.dump() + "\n";
  }
  return out;
}

PropertyReport parse_report_json(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    PropertyReport r;
    r.id = j.at("id").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind != "universal" && kind != "search") throw Error("unknown report kind '" + kind + "'");
    r.kind = kind == "universal" ? PropertyKind::universal : PropertyKind::search;
    r.instances = j.at("instances").get<std::uint64_t>();
    r.found = j.value("found", false);
    r.witness = j.value("witness", std::string{});
    r.elapsed_ms = j.value("elapsed_ms", 0.0);
    for (const auto& v : j.at("violations"))
      r.violations.push_back({v.at("r").get<std::string>(), v.at("pre").get<std::string>(),
                              v.at("post").get<std::string>(), v.at("lhs").get<std::string>(),
                              v.at("rhs").get<std::string>(), v.at("confirmed").get<bool>()});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

}  // namespace sil::taxonomy
