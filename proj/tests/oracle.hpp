#pragma once

// Explicit-state reference interpreter for plain commands. Stores are value
// vectors, sets are std::set, loops are explored with a worklist. Shares only
// the AST types with the library.

#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "sil/domain.hpp"
#include "sil/syntax.hpp"
#include "sil/triples.hpp"

namespace oracle {

using Vals = std::vector<std::int64_t>;
using States = std::set<Vals>;

struct Space {
  std::vector<std::string> vars;
  std::int64_t modulus;

  int slot(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return static_cast<int>(i);
    throw sil::Error("oracle: unknown variable " + name);
  }
  std::int64_t norm(std::int64_t v) const { return ((v % modulus) + modulus) % modulus; }

  States all() const {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) total *= static_cast<std::uint64_t>(modulus);
    States out;
    for (std::uint64_t n = 0; n < total; ++n) {
      Vals v(vars.size());
      std::uint64_t rest = n;
      for (std::size_t i = vars.size(); i-- > 0;) {
        v[i] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(modulus));
        rest /= static_cast<std::uint64_t>(modulus);
      }
      out.insert(out.end(), v);
    }
    return out;
  }

  std::uint64_t index(const Vals& v) const {
    std::uint64_t idx = 0;
    for (auto x : v) idx = idx * static_cast<std::uint64_t>(modulus) + static_cast<std::uint64_t>(x);
    return idx;
  }
};

inline std::int64_t eval(const sil::AExp& e, const Vals& s, const Space& sp) {
  using sil::AExp;
  if (auto* l = std::get_if<AExp::Lit>(&e.node)) return sp.norm(l->value);
  if (auto* v = std::get_if<AExp::Var>(&e.node)) return s[sp.slot(v->name)];
  const auto& b = std::get<AExp::Bin>(e.node);
  const auto x = eval(*b.lhs, s, sp), y = eval(*b.rhs, s, sp);
  switch (b.op) {
    case sil::ArithOp::add: return sp.norm(x + y);
    case sil::ArithOp::sub: return sp.norm(x - y);
    case sil::ArithOp::mul: return sp.norm(x * y);
    case sil::ArithOp::mod: return y == 0 ? x : x % y;
  }
  return 0;
}

inline bool holds(const sil::BExp& b, const Vals& s, const Space& sp) {
  using sil::BExp;
  if (std::holds_alternative<BExp::False>(b.node)) return false;
  if (auto* n = std::get_if<BExp::Not>(&b.node)) return !holds(*n->arg, s, sp);
  if (auto* a = std::get_if<BExp::And>(&b.node)) return holds(*a->lhs, s, sp) && holds(*a->rhs, s, sp);
  const auto& c = std::get<BExp::Cmp>(b.node);
  const auto x = eval(*c.lhs, s, sp), y = eval(*c.rhs, s, sp);
  switch (c.op) {
    case sil::CmpOp::eq: return x == y;
    case sil::CmpOp::ne: return x != y;
    case sil::CmpOp::lt: return x < y;
    case sil::CmpOp::le: return x <= y;
    case sil::CmpOp::gt: return x > y;
    case sil::CmpOp::ge: return x >= y;
  }
  return false;
}

inline States run(const sil::Command& r, const Vals& s, const Space& sp) {
  using sil::Command;
  States out;
  if (auto* a = std::get_if<Command::Atomic>(&r.node)) {
    if (std::holds_alternative<sil::atom::Skip>(a->cmd)) {
      out.insert(s);
    } else if (auto* as = std::get_if<sil::atom::Assign>(&a->cmd)) {
      Vals t = s;
      t[sp.slot(as->var)] = eval(*as->value, s, sp);
      out.insert(t);
    } else if (auto* g = std::get_if<sil::atom::Assume>(&a->cmd)) {
      if (holds(*g->cond, s, sp)) out.insert(s);
    } else if (auto* h = std::get_if<sil::atom::Havoc>(&a->cmd)) {
      for (std::int64_t v = 0; v < sp.modulus; ++v) {
        Vals t = s;
        t[sp.slot(h->var)] = v;
        out.insert(t);
      }
    } else {
      throw sil::Error("oracle: heap command");
    }
  } else if (auto* q = std::get_if<Command::Seq>(&r.node)) {
    for (const auto& m : run(*q->first, s, sp)) {
      auto more = run(*q->second, m, sp);
      out.insert(more.begin(), more.end());
    }
  } else if (auto* c = std::get_if<Command::Choice>(&r.node)) {
    out = run(*c->left, s, sp);
    auto more = run(*c->right, s, sp);
    out.insert(more.begin(), more.end());
  } else {
    const auto& body = *std::get<Command::Star>(r.node).body;
    std::deque<Vals> work{s};
    out.insert(s);
    while (!work.empty()) {
      const Vals cur = work.front();
      work.pop_front();
      for (const auto& t : run(body, cur, sp))
        if (out.insert(t).second) work.push_back(t);
    }
  }
  return out;
}

inline States post(const sil::Command& r, const States& p, const Space& sp) {
  States out;
  for (const auto& s : p) {
    auto o = run(r, s, sp);
    out.insert(o.begin(), o.end());
  }
  return out;
}

inline States pre(const sil::Command& r, const States& q, const Space& sp) {
  States out;
  for (const auto& s : sp.all())
    for (const auto& t : run(r, s, sp))
      if (q.count(t)) {
        out.insert(s);
        break;
      }
  return out;
}

// Same set as pre(), computed by structural recursion; the star case is the
// least fixpoint of X = q u pre(body, X). Used where pre() is too slow.
inline States pre_rec(const sil::Command& r, const States& q, const Space& sp) {
  using sil::Command;
  if (std::holds_alternative<Command::Atomic>(r.node)) return pre(r, q, sp);
  if (auto* s = std::get_if<Command::Seq>(&r.node)) return pre_rec(*s->first, pre_rec(*s->second, q, sp), sp);
  if (auto* c = std::get_if<Command::Choice>(&r.node)) {
    States out = pre_rec(*c->left, q, sp);
    auto more = pre_rec(*c->right, q, sp);
    out.insert(more.begin(), more.end());
    return out;
  }
  const auto& body = *std::get<Command::Star>(r.node).body;
  States acc = q;
  while (true) {
    States next = q;
    auto step = pre_rec(body, acc, sp);
    next.insert(step.begin(), step.end());
    if (next == acc) return acc;
    acc = std::move(next);
  }
}

inline bool subset(const States& a, const States& b) {
  for (const auto& x : a)
    if (!b.count(x)) return false;
  return true;
}

inline bool valid(sil::Logic logic, const States& p, const sil::Command& r, const States& q, const Space& sp) {
  switch (logic) {
    case sil::Logic::hl: return subset(post(r, p, sp), q);
    case sil::Logic::il: return subset(q, post(r, p, sp));
    case sil::Logic::nc: return subset(pre(r, q, sp), p);
    case sil::Logic::sil: {
      for (const auto& s : p) {
        bool hit = false;
        for (const auto& t : run(r, s, sp)) hit = hit || q.count(t) > 0;
        if (!hit) return false;
      }
      return true;
    }
  }
  return false;
}

inline States where(const sil::BExp& b, const Space& sp) {
  States out;
  for (const auto& s : sp.all())
    if (holds(b, s, sp)) out.insert(s);
  return out;
}

// Conversions to and from the library's bitsets, by recomputing the index.
inline States from_set(const sil::StateSet& s, const Space& sp) {
  States out;
  for (const auto& v : sp.all())
    if (s.contains(sp.index(v))) out.insert(v);
  return out;
}

inline sil::StateSet to_set(const States& s, const sil::DomainPtr& d, const Space& sp) {
  sil::StateSet out(d);
  for (const auto& v : s) out.insert(sp.index(v));
  return out;
}

inline Space space_of(const sil::DomainPtr& d) {
  return {d->vars(), static_cast<std::int64_t>(d->modulus())};
}

}  // namespace oracle
