#include "sil/sep/heap.hpp"

#include <algorithm>
#include <set>

namespace sil::sep {

std::int64_t SepConfig::wrap(std::int64_t n) const {
  const std::int64_t size = int_hi - int_lo + 1;
  return int_lo + (((n - int_lo) % size) + size) % size;
}

std::vector<HVal> SepConfig::base_values() const {
  std::vector<HVal> out;
  for (auto n = int_lo; n <= int_hi; ++n) out.push_back(HVal::num(n));
  for (int l = 0; l < locations; ++l) out.push_back(HVal::loc(l));
  return out;
}

void SepConfig::validate() const {
  if (locations < 0 || spare_locations < 0 || locations + spare_locations > kMaxLocations) {
    throw Error("heap configuration needs locations + spare locations <= " + std::to_string(kMaxLocations));
  }
  if (int_hi < int_lo || int_hi - int_lo > 63) throw Error("heap integer range must hold 1..64 values");
}

SepConfig config_from_bounds(const HeapBounds& bounds) {
  SepConfig cfg;
  cfg.locations = bounds.locations;
  cfg.int_lo = bounds.int_lo;
  cfg.int_hi = bounds.int_hi;
  cfg.validate();
  return cfg;
}

SepVars::SepVars(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > static_cast<std::size_t>(kMaxVars)) {
    throw Error("heap states support at most " + std::to_string(kMaxVars) + " variables");
  }
}

int SepVars::index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

int SepVars::require(const std::string& name) const {
  const int i = index(name);
  if (i < 0) throw ScopeError("variable '" + name + "' is not in the heap universe");
  return i;
}

SepVars universe_vars(const std::vector<std::string>& base, const VarSet& extra) {
  std::vector<std::string> names = base;
  for (const auto& v : extra)
    if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);
  return SepVars(std::move(names));
}

std::string format_value(const HVal& v) {
  return v.is_loc() ? "@" + std::to_string(v.v) : std::to_string(v.v);
}

std::string format_state(const HeapState& s, const SepVars& vars) {
  if (s.err) return "err";
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ", ";
    out += vars.names()[i] + "=" + format_value(s.store[i]);
  }
  out += " | ";
  bool first = true;
  for (int l = 0; l < kMaxLocations; ++l) {
    const Cell& c = s.heap[l];
    if (c.state == Cell::absent) continue;
    if (!first) out += ", ";
    first = false;
    out += "@" + std::to_string(l) + (c.state == Cell::freed ? " -/>" : " -> " + format_value(c.value));
  }
  if (first) out += "emp";
  return out;
}

std::vector<int> locations_in(const HeapState& s) {
  std::vector<bool> seen(kMaxLocations, false);
  for (std::size_t i = 0; i < s.arity; ++i)
    if (s.store[i].is_loc()) seen[s.store[i].v] = true;
  for (int l = 0; l < kMaxLocations; ++l) {
    if (s.heap[l].state == Cell::absent) continue;
    seen[l] = true;
    if (s.heap[l].state == Cell::held && s.heap[l].value.is_loc()) seen[s.heap[l].value.v] = true;
  }
  std::vector<int> out;
  for (int l = 0; l < kMaxLocations; ++l)
    if (seen[l]) out.push_back(l);
  return out;
}

std::optional<HVal> eval_heap_aexp(const AExp& e, const SepVars& vars, const HeapState& s, const SepConfig& cfg) {
  if (const auto* l = std::get_if<AExp::Lit>(&e.node)) return HVal::num(cfg.wrap(l->value));
  if (const auto* v = std::get_if<AExp::Var>(&e.node)) return s.store[vars.require(v->name)];
  const auto& b = std::get<AExp::Bin>(e.node);
  auto x = eval_heap_aexp(*b.lhs, vars, s, cfg);
  auto y = eval_heap_aexp(*b.rhs, vars, s, cfg);
  if (!x || !y || x->is_loc() || y->is_loc()) return std::nullopt;
  const std::int64_t a = x->v, c = y->v;
  switch (b.op) {
    case ArithOp::add: return HVal::num(cfg.wrap(a + c));
    case ArithOp::sub: return HVal::num(cfg.wrap(a - c));
    case ArithOp::mul: return HVal::num(cfg.wrap(a * c));
    case ArithOp::mod: return HVal::num(c == 0 ? a : cfg.wrap(a % c));
  }
  return std::nullopt;
}

bool heap_compare(CmpOp op, const std::optional<HVal>& lhs, const std::optional<HVal>& rhs) {
  if (!lhs || !rhs) return false;
  if (lhs->kind != rhs->kind) return op == CmpOp::ne;
  if (lhs->is_loc()) {
    if (op == CmpOp::eq) return lhs->v == rhs->v;
    if (op == CmpOp::ne) return lhs->v != rhs->v;
    return false;
  }
  const auto a = lhs->v, b = rhs->v;
  switch (op) {
    case CmpOp::eq: return a == b;
    case CmpOp::ne: return a != b;
    case CmpOp::lt: return a < b;
    case CmpOp::le: return a <= b;
    case CmpOp::gt: return a > b;
    case CmpOp::ge: return a >= b;
  }
  return false;
}

bool eval_heap_guard(const BExp& b, const SepVars& vars, const HeapState& s, const SepConfig& cfg) {
  if (std::holds_alternative<BExp::False>(b.node)) return false;
  if (const auto* n = std::get_if<BExp::Not>(&b.node)) return !eval_heap_guard(*n->arg, vars, s, cfg);
  if (const auto* a = std::get_if<BExp::And>(&b.node)) {
    return eval_heap_guard(*a->lhs, vars, s, cfg) && eval_heap_guard(*a->rhs, vars, s, cfg);
  }
  const auto& c = std::get<BExp::Cmp>(b.node);
  return heap_compare(c.op, eval_heap_aexp(*c.lhs, vars, s, cfg), eval_heap_aexp(*c.rhs, vars, s, cfg));
}

namespace {

HeapState error_state(const HeapState& s) {
  HeapState e;
  e.err = true;
  e.arity = s.arity;
  return e;
}

// Values a nondeterministic choice may produce in state `s`.
std::vector<HVal> choice_values(const HeapState& s, const SepConfig& cfg) {
  std::vector<HVal> out = cfg.base_values();
  for (int l : locations_in(s))
    if (l >= cfg.locations) out.push_back(HVal::loc(l));
  return out;
}

const Cell* held_cell(const HeapState& s, const HVal& addr) {
  if (!addr.is_loc() || s.heap[addr.v].state != Cell::held) return nullptr;
  return &s.heap[addr.v];
}

void atomic_successors(const AtomicCmd& c, const SepVars& vars, const HeapState& s, const SepConfig& cfg,
                       std::set<HeapState>& out) {
  if (std::holds_alternative<atom::Skip>(c)) {
    out.insert(s);
  } else if (const auto* a = std::get_if<atom::Assign>(&c)) {
    auto v = eval_heap_aexp(*a->value, vars, s, cfg);
    if (!v) {
      out.insert(error_state(s));
      return;
    }
    HeapState t = s;
    t.store[vars.require(a->var)] = *v;
    out.insert(t);
  } else if (const auto* a = std::get_if<atom::Assume>(&c)) {
    if (eval_heap_guard(*a->cond, vars, s, cfg)) out.insert(s);
  } else if (const auto* a = std::get_if<atom::Havoc>(&c)) {
    const int x = vars.require(a->var);
    for (const auto& v : choice_values(s, cfg)) {
      HeapState t = s;
      t.store[x] = v;
      out.insert(t);
    }
  } else if (const auto* a = std::get_if<atom::Alloc>(&c)) {
    const int x = vars.require(a->var);
    auto values = choice_values(s, cfg);
    for (int l = 0; l < cfg.locations + cfg.spare_locations; ++l) {
      if (s.heap[l].state == Cell::held) continue;
      auto contents = values;
      if (l >= cfg.locations && std::find(contents.begin(), contents.end(), HVal::loc(l)) == contents.end()) {
        contents.push_back(HVal::loc(l));
      }
      for (const auto& v : contents) {
        HeapState t = s;
        t.store[x] = HVal::loc(l);
        t.heap[l] = Cell{Cell::held, v};
        out.insert(t);
      }
    }
  } else if (const auto* a = std::get_if<atom::Free>(&c)) {
    const HVal addr = s.store[vars.require(a->var)];
    if (!held_cell(s, addr)) {
      out.insert(error_state(s));
      return;
    }
    HeapState t = s;
    t.heap[addr.v] = Cell{Cell::freed, HVal{}};
    out.insert(t);
  } else if (const auto* a = std::get_if<atom::Load>(&c)) {
    const Cell* cell = held_cell(s, s.store[vars.require(a->addr)]);
    if (!cell) {
      out.insert(error_state(s));
      return;
    }
    HeapState t = s;
    t.store[vars.require(a->dst)] = cell->value;
    out.insert(t);
  } else {
    const auto& st = std::get<atom::Store>(c);
    const HVal addr = s.store[vars.require(st.addr)];
    if (!held_cell(s, addr)) {
      out.insert(error_state(s));
      return;
    }
    HeapState t = s;
    t.heap[addr.v].value = s.store[vars.require(st.src)];
    out.insert(t);
  }
}

void successors_into(const Command& r, const SepVars& vars, const HeapState& s, const SepConfig& cfg,
                     std::set<HeapState>& out) {
  if (s.err) {
    out.insert(s);
    return;
  }
  if (const auto* a = std::get_if<Command::Atomic>(&r.node)) {
    atomic_successors(a->cmd, vars, s, cfg, out);
  } else if (const auto* q = std::get_if<Command::Seq>(&r.node)) {
    std::set<HeapState> mid;
    successors_into(*q->first, vars, s, cfg, mid);
    for (const auto& t : mid) successors_into(*q->second, vars, t, cfg, out);
  } else if (const auto* c = std::get_if<Command::Choice>(&r.node)) {
    successors_into(*c->left, vars, s, cfg, out);
    successors_into(*c->right, vars, s, cfg, out);
  } else {
    const auto& body = *std::get<Command::Star>(r.node).body;
    std::set<HeapState> seen{s};
    std::vector<HeapState> work{s};
    while (!work.empty()) {
      HeapState t = work.back();
      work.pop_back();
      std::set<HeapState> next;
      successors_into(body, vars, t, cfg, next);
      for (const auto& u : next)
        if (seen.insert(u).second) work.push_back(u);
    }
    out.insert(seen.begin(), seen.end());
  }
}

}  // namespace

std::vector<HeapState> heap_successors(const Command& r, const SepVars& vars, const HeapState& s,
                                       const SepConfig& cfg) {
  for (const auto& v : free_vars(r)) (void)vars.require(v);
  std::set<HeapState> out;
  successors_into(r, vars, s, cfg, out);
  return {out.begin(), out.end()};
}

bool store_mod_agreement(const Command& r, const SepVars& vars, const HeapState& s, const SepConfig& cfg) {
  const VarSet mod = mod_vars(r);
  for (const auto& t : heap_successors(r, vars, s, cfg)) {
    if (t.err) continue;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (!mod.count(vars.names()[i]) && !(t.store[i] == s.store[i])) return false;
    }
  }
  return true;
}

std::uint64_t universe_size(const SepVars& vars, const SepConfig& cfg) {
  const std::uint64_t values = cfg.base_values().size();
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) n *= values;
  for (int l = 0; l < cfg.locations; ++l) n *= values + 2;
  return n;
}

void for_each_state(const SepVars& vars, const SepConfig& cfg, const std::function<void(const HeapState&)>& f) {
  cfg.validate();
  const auto size = universe_size(vars, cfg);
  if (size > cfg.state_budget) {
    throw Error("heap universe of " + std::to_string(size) + " states exceeds budget of " +
                std::to_string(cfg.state_budget));
  }
  const auto values = cfg.base_values();
  const std::size_t nv = vars.size();
  const std::size_t nl = static_cast<std::size_t>(cfg.locations);
  std::vector<std::size_t> digit(nv + nl, 0);
  HeapState s;
  s.arity = static_cast<std::uint8_t>(nv);
  auto apply = [&](std::size_t k) {
    if (k < nv) {
      s.store[k] = values[digit[k]];
    } else {
      const std::size_t d = digit[k];
      Cell& c = s.heap[k - nv];
      if (d == 0) c = Cell{};
      else if (d == 1) c = Cell{Cell::freed, HVal{}};
      else c = Cell{Cell::held, values[d - 2]};
    }
  };
  for (std::size_t k = 0; k < digit.size(); ++k) apply(k);
  while (true) {
    f(s);
    std::size_t k = digit.size();
    while (k > 0) {
      --k;
      const std::size_t radix = k < nv ? values.size() : values.size() + 2;
      if (++digit[k] < radix) {
        apply(k);
        break;
      }
      digit[k] = 0;
      apply(k);
      if (k == 0) return;
    }
    if (digit.empty()) return;
  }
}

}  // namespace sil::sep
