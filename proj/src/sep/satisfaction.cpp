#include "sil/sep/satisfaction.hpp"

#include <algorithm>

namespace sil::sep {

namespace {

struct Env {
  std::vector<const std::string*> names;
  std::vector<HVal> values;

  [[nodiscard]] const HVal& lookup(const std::string& name) const {
    for (std::size_t i = names.size(); i-- > 0;)
      if (*names[i] == name) return values[i];
    throw ScopeError("unbound variable '" + name + "' in assertion");
  }
};

class Satisfaction {
 public:
  explicit Satisfaction(const SepConfig& cfg) : cfg_(cfg), base_(cfg.base_values()) {}

  bool holds(const Asl& p, Env& env, const Heap& h) const {
    if (std::holds_alternative<Asl::False>(p.node)) return false;
    if (const auto* n = std::get_if<Asl::Not>(&p.node)) return !holds(*n->arg, env, h);
    if (const auto* n = std::get_if<Asl::And>(&p.node)) return holds(*n->lhs, env, h) && holds(*n->rhs, env, h);
    if (const auto* n = std::get_if<Asl::Exists>(&p.node)) return exists(*n, env, h);
    if (const auto* n = std::get_if<Asl::Cmp>(&p.node)) {
      return heap_compare(n->op, eval(*n->lhs, env), eval(*n->rhs, env));
    }
    if (std::holds_alternative<Asl::Emp>(p.node)) return is_empty(h);
    if (const auto* n = std::get_if<Asl::PointsTo>(&p.node)) {
      auto addr = eval(*n->addr, env);
      auto value = eval(*n->value, env);
      if (!addr || !addr->is_loc() || !value) return false;
      return single_cell(h, addr->v) && h[addr->v].state == Cell::held && h[addr->v].value == *value;
    }
    if (const auto* n = std::get_if<Asl::Dangling>(&p.node)) {
      auto addr = eval(*n->addr, env);
      if (!addr || !addr->is_loc()) return false;
      return single_cell(h, addr->v) && h[addr->v].state == Cell::freed;
    }
    return star(std::get<Asl::Star>(p.node), env, h);
  }

 private:
  static bool is_empty(const Heap& h) {
    return std::all_of(h.begin(), h.end(), [](const Cell& c) { return c.state == Cell::absent; });
  }

  static bool single_cell(const Heap& h, int l) {
    for (int k = 0; k < kMaxLocations; ++k)
      if ((k == l) != (h[k].state != Cell::absent)) return false;
    return true;
  }

  std::optional<HVal> eval(const AExp& e, const Env& env) const {
    if (const auto* l = std::get_if<AExp::Lit>(&e.node)) return HVal::num(cfg_.wrap(l->value));
    if (const auto* v = std::get_if<AExp::Var>(&e.node)) return env.lookup(v->name);
    const auto& b = std::get<AExp::Bin>(e.node);
    auto x = eval(*b.lhs, env);
    auto y = eval(*b.rhs, env);
    if (!x || !y || x->is_loc() || y->is_loc()) return std::nullopt;
    const std::int64_t a = x->v, c = y->v;
    switch (b.op) {
      case ArithOp::add: return HVal::num(cfg_.wrap(a + c));
      case ArithOp::sub: return HVal::num(cfg_.wrap(a - c));
      case ArithOp::mul: return HVal::num(cfg_.wrap(a * c));
      case ArithOp::mod: return HVal::num(c == 0 ? a : cfg_.wrap(a % c));
    }
    return std::nullopt;
  }

  bool exists(const Asl::Exists& e, Env& env, const Heap& h) const {
    std::vector<bool> mentioned(kMaxLocations, false);
    for (const auto& v : env.values)
      if (v.is_loc()) mentioned[v.v] = true;
    for (int l = 0; l < kMaxLocations; ++l) {
      if (h[l].state == Cell::absent) continue;
      mentioned[l] = true;
      if (h[l].state == Cell::held && h[l].value.is_loc()) mentioned[h[l].value.v] = true;
    }
    std::vector<HVal> candidates = base_;
    bool fresh_added = false;
    for (int l = cfg_.locations; l < kMaxLocations; ++l) {
      if (mentioned[l]) {
        candidates.push_back(HVal::loc(l));
      } else if (!fresh_added) {
        candidates.push_back(HVal::loc(l));
        fresh_added = true;
      }
    }
    env.names.push_back(&e.var);
    env.values.push_back(HVal{});
    bool found = false;
    for (const auto& v : candidates) {
      env.values.back() = v;
      if (holds(*e.body, env, h)) {
        found = true;
        break;
      }
    }
    env.names.pop_back();
    env.values.pop_back();
    return found;
  }

  // Address of a formula that owns exactly one cell, if it is of that shape.
  const AExp* single_cell_address(const Asl& p) const {
    if (const auto* n = std::get_if<Asl::PointsTo>(&p.node)) return n->addr.get();
    if (const auto* n = std::get_if<Asl::Dangling>(&p.node)) return n->addr.get();
    if (const auto* n = std::get_if<Asl::Exists>(&p.node)) {
      const auto* pt = std::get_if<Asl::PointsTo>(&n->body->node);
      if (pt && !free_vars(*pt->addr).count(n->var)) return pt->addr.get();
    }
    return nullptr;
  }

  bool star(const Asl::Star& s, Env& env, const Heap& h) const {
    for (int side = 0; side < 2; ++side) {
      const Asl& cell_part = side == 0 ? *s.lhs : *s.rhs;
      const Asl& rest = side == 0 ? *s.rhs : *s.lhs;
      if (const AExp* addr_exp = single_cell_address(cell_part)) {
        auto addr = eval(*addr_exp, env);
        if (!addr || !addr->is_loc() || h[addr->v].state == Cell::absent) return false;
        Heap one{}, others = h;
        one[addr->v] = h[addr->v];
        others[addr->v] = Cell{};
        return holds(cell_part, env, one) && holds(rest, env, others);
      }
    }
    unsigned dom = 0;
    for (int l = 0; l < kMaxLocations; ++l)
      if (h[l].state != Cell::absent) dom |= 1u << l;
    for (unsigned sub = dom;; sub = (sub - 1) & dom) {
      Heap left{}, right{};
      for (int l = 0; l < kMaxLocations; ++l) {
        if (!(dom >> l & 1u)) continue;
        ((sub >> l & 1u) ? left : right)[l] = h[l];
      }
      if (holds(*s.lhs, env, left) && holds(*s.rhs, env, right)) return true;
      if (sub == 0) break;
    }
    return false;
  }

  const SepConfig& cfg_;
  std::vector<HVal> base_;
};

Env base_env(const SepVars& vars, const HeapState& s) {
  Env env;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    env.names.push_back(&vars.names()[i]);
    env.values.push_back(s.store[i]);
  }
  return env;
}

}  // namespace

bool satisfies(const Asl& p, const SepVars& vars, const HeapState& s, const SepConfig& cfg) {
  if (s.err) return false;
  Env env = base_env(vars, s);
  return Satisfaction(cfg).holds(p, env, s.heap);
}

SepStates eval_asl(const Asl& p, const SepConfig& cfg, const std::vector<std::string>& program_vars) {
  SepStates out{universe_vars(program_vars, free_vars(p)), {}};
  Satisfaction sat(cfg);
  for_each_state(out.vars, cfg, [&](const HeapState& s) {
    Env env = base_env(out.vars, s);
    if (sat.holds(p, env, s.heap)) out.states.push_back(s);
  });
  return out;
}

std::string SepVerdict::describe() const {
  if (valid) return "valid (" + std::to_string(states_checked) + " states)";
  return "invalid: {" + format_state(*witness, vars) + "}";
}

SepVerdict check_entailment(const Asl& lhs, const Asl& rhs, const SepConfig& cfg) {
  VarSet fv = free_vars(lhs);
  auto more = free_vars(rhs);
  fv.insert(more.begin(), more.end());
  SepVerdict v;
  v.vars = universe_vars({}, fv);
  Satisfaction sat(cfg);
  for_each_state(v.vars, cfg, [&](const HeapState& s) {
    if (!v.valid) return;
    ++v.states_checked;
    Env env = base_env(v.vars, s);
    if (sat.holds(lhs, env, s.heap) && !sat.holds(rhs, env, s.heap)) {
      v.valid = false;
      v.witness = s;
    }
  });
  return v;
}

SepVerdict check_sep_validity(const Asl& p, const Command& r, const Asl& q, const SepConfig& cfg,
                              const std::vector<std::string>& program_vars) {
  VarSet fv = free_vars(p);
  for (const auto& names : {free_vars(q), free_vars(r)}) fv.insert(names.begin(), names.end());
  SepVerdict v;
  v.vars = universe_vars(program_vars, fv);
  Satisfaction sat(cfg);
  for_each_state(v.vars, cfg, [&](const HeapState& s) {
    if (!v.valid) return;
    Env env = base_env(v.vars, s);
    if (!sat.holds(p, env, s.heap)) return;
    ++v.states_checked;
    for (const auto& t : heap_successors(r, v.vars, s, cfg)) {
      if (t.err) continue;
      Env out = base_env(v.vars, t);
      if (sat.holds(q, out, t.heap)) return;
    }
    v.valid = false;
    v.witness = s;
  });
  return v;
}

}  // namespace sil::sep
