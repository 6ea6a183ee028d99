#include "sil/semantics.hpp"

#include <algorithm>
#include <iterator>

namespace sil {

namespace {

Value wrap(std::int64_t v, Value modulus) {
  const auto m = static_cast<std::int64_t>(modulus);
  return static_cast<Value>(((v % m) + m) % m);
}

void require_plain(const AtomicCmd& c) {
  if (is_heap_atomic(c)) throw Error("heap command '" + to_string(c) + "' needs the heap semantics");
}

}  // namespace

Value eval_aexp(const AExp& e, const Store& store) {
  const Value m = store.domain->modulus();
  if (const auto* l = std::get_if<AExp::Lit>(&e.node)) return wrap(l->value, m);
  if (const auto* v = std::get_if<AExp::Var>(&e.node)) return store[v->name];
  const auto& b = std::get<AExp::Bin>(e.node);
  const std::int64_t x = eval_aexp(*b.lhs, store);
  const std::int64_t y = eval_aexp(*b.rhs, store);
  switch (b.op) {
    case ArithOp::add: return wrap(x + y, m);
    case ArithOp::sub: return wrap(x - y, m);
    case ArithOp::mul: return wrap(x * y, m);
    case ArithOp::mod: return y == 0 ? static_cast<Value>(x) : static_cast<Value>(x % y);
  }
  return 0;
}

bool eval_bexp(const BExp& b, const Store& store) {
  if (std::holds_alternative<BExp::False>(b.node)) return false;
  if (const auto* n = std::get_if<BExp::Not>(&b.node)) return !eval_bexp(*n->arg, store);
  if (const auto* a = std::get_if<BExp::And>(&b.node)) {
    return eval_bexp(*a->lhs, store) && eval_bexp(*a->rhs, store);
  }
  const auto& c = std::get<BExp::Cmp>(b.node);
  const Value x = eval_aexp(*c.lhs, store);
  const Value y = eval_aexp(*c.rhs, store);
  switch (c.op) {
    case CmpOp::eq: return x == y;
    case CmpOp::ne: return x != y;
    case CmpOp::lt: return x < y;
    case CmpOp::le: return x <= y;
    case CmpOp::gt: return x > y;
    case CmpOp::ge: return x >= y;
  }
  return false;
}

StateSet predicate_set(const BExp& b, const DomainPtr& domain) {
  domain->check_scope(free_vars(b), "assertion");
  const DomainConfig* d = domain.get();
  return StateSet::filter(domain, [&](StateIndex s) { return eval_bexp(b, Store{d, s}); });
}

namespace {

// Every store agreeing with some member of `in` outside `var`.
StateSet cylinder(const StateSet& in, int var) {
  const DomainConfig& d = *in.domain();
  StateSet out(in.domain());
  in.for_each([&](StateIndex s) {
    const StateIndex base = d.with(s, var, 0);
    if (out.contains(base)) return;
    for (Value v = 0; v < d.modulus(); ++v) out.insert(base + v * d.weight(var));
  });
  return out;
}

StateSet fw_atomic(const AtomicCmd& c, const StateSet& pre) {
  require_plain(c);
  const DomainConfig& d = *pre.domain();
  if (std::holds_alternative<atom::Skip>(c)) return pre;
  if (const auto* a = std::get_if<atom::Assign>(&c)) {
    const int x = d.require_var(a->var);
    StateSet out(pre.domain());
    pre.for_each([&](StateIndex s) { out.insert(d.with(s, x, eval_aexp(*a->value, Store{&d, s}))); });
    return out;
  }
  if (const auto* a = std::get_if<atom::Assume>(&c)) {
    StateSet out(pre.domain());
    pre.for_each([&](StateIndex s) {
      if (eval_bexp(*a->cond, Store{&d, s})) out.insert(s);
    });
    return out;
  }
  const auto& h = std::get<atom::Havoc>(c);
  return cylinder(pre, d.require_var(h.var));
}

StateSet bw_atomic(const AtomicCmd& c, const StateSet& post) {
  require_plain(c);
  const DomainConfig& d = *post.domain();
  if (std::holds_alternative<atom::Skip>(c)) return post;
  if (const auto* a = std::get_if<atom::Assign>(&c)) {
    const int x = d.require_var(a->var);
    return StateSet::filter(post.domain(), [&](StateIndex s) {
      return post.contains(d.with(s, x, eval_aexp(*a->value, Store{&d, s})));
    });
  }
  if (const auto* a = std::get_if<atom::Assume>(&c)) {
    StateSet out(post.domain());
    post.for_each([&](StateIndex s) {
      if (eval_bexp(*a->cond, Store{&d, s})) out.insert(s);
    });
    return out;
  }
  const auto& h = std::get<atom::Havoc>(c);
  return cylinder(post, d.require_var(h.var));
}

template <class Step>
StateSet kleene(const StateSet& seed, Step&& step) {
  StateSet acc = seed;
  StateSet frontier = seed;
  while (!frontier.is_empty()) {
    StateSet fresh = step(frontier) - acc;
    acc |= fresh;
    frontier = std::move(fresh);
  }
  return acc;
}

StateSet fw(const Command& r, const StateSet& pre) {
  if (const auto* a = std::get_if<Command::Atomic>(&r.node)) return fw_atomic(a->cmd, pre);
  if (const auto* s = std::get_if<Command::Seq>(&r.node)) return fw(*s->second, fw(*s->first, pre));
  if (const auto* c = std::get_if<Command::Choice>(&r.node)) return fw(*c->left, pre) | fw(*c->right, pre);
  const auto& body = *std::get<Command::Star>(r.node).body;
  return kleene(pre, [&](const StateSet& x) { return fw(body, x); });
}

StateSet bw(const Command& r, const StateSet& post) {
  if (const auto* a = std::get_if<Command::Atomic>(&r.node)) return bw_atomic(a->cmd, post);
  if (const auto* s = std::get_if<Command::Seq>(&r.node)) return bw(*s->first, bw(*s->second, post));
  if (const auto* c = std::get_if<Command::Choice>(&r.node)) return bw(*c->left, post) | bw(*c->right, post);
  const auto& body = *std::get<Command::Star>(r.node).body;
  return kleene(post, [&](const StateSet& x) { return bw(body, x); });
}

// ---- sparse forward semantics over sorted index vectors ----

using Sparse = std::vector<StateIndex>;

void normalize(Sparse& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Sparse sparse_atomic(const AtomicCmd& c, const DomainConfig& d, const Sparse& in) {
  require_plain(c);
  Sparse out;
  if (std::holds_alternative<atom::Skip>(c)) return in;
  if (const auto* a = std::get_if<atom::Assign>(&c)) {
    const int x = d.require_var(a->var);
    for (auto s : in) out.push_back(d.with(s, x, eval_aexp(*a->value, Store{&d, s})));
  } else if (const auto* a = std::get_if<atom::Assume>(&c)) {
    for (auto s : in)
      if (eval_bexp(*a->cond, Store{&d, s})) out.push_back(s);
  } else {
    const int x = d.require_var(std::get<atom::Havoc>(c).var);
    for (auto s : in)
      for (Value v = 0; v < d.modulus(); ++v) out.push_back(d.with(s, x, v));
  }
  normalize(out);
  return out;
}

Sparse sparse_fw(const Command& r, const DomainConfig& d, const Sparse& in) {
  if (in.empty()) return in;
  if (const auto* a = std::get_if<Command::Atomic>(&r.node)) return sparse_atomic(a->cmd, d, in);
  if (const auto* s = std::get_if<Command::Seq>(&r.node)) return sparse_fw(*s->second, d, sparse_fw(*s->first, d, in));
  if (const auto* c = std::get_if<Command::Choice>(&r.node)) {
    Sparse l = sparse_fw(*c->left, d, in);
    Sparse rr = sparse_fw(*c->right, d, in);
    Sparse out;
    std::set_union(l.begin(), l.end(), rr.begin(), rr.end(), std::back_inserter(out));
    return out;
  }
  const auto& body = *std::get<Command::Star>(r.node).body;
  Sparse acc = in;
  Sparse frontier = in;
  while (!frontier.empty()) {
    Sparse step = sparse_fw(body, d, frontier);
    Sparse fresh;
    std::set_difference(step.begin(), step.end(), acc.begin(), acc.end(), std::back_inserter(fresh));
    Sparse merged;
    std::set_union(acc.begin(), acc.end(), fresh.begin(), fresh.end(), std::back_inserter(merged));
    acc = std::move(merged);
    frontier = std::move(fresh);
  }
  return acc;
}

void check_command(const Command& r, const DomainConfig& d) { d.check_scope(free_vars(r), "command"); }

}  // namespace

StateSet fwsem(const Command& r, const StateSet& pre) {
  check_command(r, *pre.domain());
  return fw(r, pre);
}

StateSet bwsem(const Command& r, const StateSet& post) {
  check_command(r, *post.domain());
  return bw(r, post);
}

std::vector<StateIndex> successors(const Command& r, const DomainPtr& domain, StateIndex s) {
  check_command(r, *domain);
  return sparse_fw(r, *domain, Sparse{s});
}

StateRelation semantics_relation(const Command& r, const DomainPtr& domain) {
  check_command(r, *domain);
  std::vector<std::uint64_t> offsets{0};
  std::vector<StateIndex> targets;
  offsets.reserve(domain->size() + 1);
  for (StateIndex s = 0; s < domain->size(); ++s) {
    Sparse succ = sparse_fw(r, *domain, Sparse{s});
    targets.insert(targets.end(), succ.begin(), succ.end());
    offsets.push_back(targets.size());
  }
  return StateRelation(domain, std::move(offsets), std::move(targets));
}

StateSet diverging_states(const Command& r, const DomainPtr& domain) {
  check_command(r, *domain);
  return StateSet::filter(domain, [&](StateIndex s) { return sparse_fw(r, *domain, Sparse{s}).empty(); });
}

StateSet unreachable_states(const Command& r, const DomainPtr& domain) {
  return ~fwsem(r, StateSet::full(domain));
}

bool is_deterministic(const Command& r, const DomainPtr& domain) {
  check_command(r, *domain);
  for (StateIndex s = 0; s < domain->size(); ++s)
    if (sparse_fw(r, *domain, Sparse{s}).size() > 1) return false;
  return true;
}

bool is_terminating(const Command& r, const DomainPtr& domain) {
  return diverging_states(r, domain).is_empty();
}

}  // namespace sil
