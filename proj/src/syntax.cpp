#include "sil/syntax.hpp"

#include <sstream>

namespace sil {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

AExpPtr make_lit(std::int64_t value) { return std::make_shared<AExp>(AExp{AExp::Lit{value}}); }
AExpPtr make_var(std::string name) {
  return std::make_shared<AExp>(AExp{AExp::Var{std::move(name)}});
}
AExpPtr make_bin(ArithOp op, AExpPtr lhs, AExpPtr rhs) {
  return std::make_shared<AExp>(AExp{AExp::Bin{op, std::move(lhs), std::move(rhs)}});
}

BExpPtr make_false() { return std::make_shared<BExp>(BExp{BExp::False{}}); }
BExpPtr make_true() { return make_not(make_false()); }
BExpPtr make_not(BExpPtr arg) { return std::make_shared<BExp>(BExp{BExp::Not{std::move(arg)}}); }
BExpPtr make_and(BExpPtr lhs, BExpPtr rhs) {
  return std::make_shared<BExp>(BExp{BExp::And{std::move(lhs), std::move(rhs)}});
}
BExpPtr make_or(BExpPtr lhs, BExpPtr rhs) {
  return make_not(make_and(make_not(std::move(lhs)), make_not(std::move(rhs))));
}
BExpPtr make_cmp(CmpOp op, AExpPtr lhs, AExpPtr rhs) {
  return std::make_shared<BExp>(BExp{BExp::Cmp{op, std::move(lhs), std::move(rhs)}});
}

bool is_heap_atomic(const AtomicCmd& cmd) {
  return std::holds_alternative<atom::Alloc>(cmd) || std::holds_alternative<atom::Free>(cmd) ||
         std::holds_alternative<atom::Load>(cmd) || std::holds_alternative<atom::Store>(cmd);
}

CommandPtr make_atomic(AtomicCmd cmd) {
  return std::make_shared<Command>(Command{Command::Atomic{std::move(cmd)}});
}
CommandPtr make_seq(CommandPtr first, CommandPtr second) {
  return std::make_shared<Command>(Command{Command::Seq{std::move(first), std::move(second)}});
}
CommandPtr make_choice(CommandPtr left, CommandPtr right) {
  return std::make_shared<Command>(Command{Command::Choice{std::move(left), std::move(right)}});
}
CommandPtr make_star(CommandPtr body) {
  return std::make_shared<Command>(Command{Command::Star{std::move(body)}});
}

// ---- equality ----

bool operator==(const AExp& a, const AExp& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const AExp::Lit& x) { return x.value == std::get<AExp::Lit>(b.node).value; },
          [&](const AExp::Var& x) { return x.name == std::get<AExp::Var>(b.node).name; },
          [&](const AExp::Bin& x) {
            const auto& y = std::get<AExp::Bin>(b.node);
            return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
          },
      },
      a.node);
}

bool operator==(const BExp& a, const BExp& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(overloaded{
                        [&](const BExp::False&) { return true; },
                        [&](const BExp::Not& x) { return *x.arg == *std::get<BExp::Not>(b.node).arg; },
                        [&](const BExp::And& x) {
                          const auto& y = std::get<BExp::And>(b.node);
                          return *x.lhs == *y.lhs && *x.rhs == *y.rhs;
                        },
                        [&](const BExp::Cmp& x) {
                          const auto& y = std::get<BExp::Cmp>(b.node);
                          return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
                        },
                    },
                    a.node);
}

bool operator==(const AtomicCmd& a, const AtomicCmd& b) {
  if (a.index() != b.index()) return false;
  return std::visit(overloaded{
                        [&](const atom::Skip&) { return true; },
                        [&](const atom::Assign& x) {
                          const auto& y = std::get<atom::Assign>(b);
                          return x.var == y.var && *x.value == *y.value;
                        },
                        [&](const atom::Assume& x) { return *x.cond == *std::get<atom::Assume>(b).cond; },
                        [&](const atom::Havoc& x) { return x.var == std::get<atom::Havoc>(b).var; },
                        [&](const atom::Alloc& x) { return x.var == std::get<atom::Alloc>(b).var; },
                        [&](const atom::Free& x) { return x.var == std::get<atom::Free>(b).var; },
                        [&](const atom::Load& x) {
                          const auto& y = std::get<atom::Load>(b);
                          return x.dst == y.dst && x.addr == y.addr;
                        },
                        [&](const atom::Store& x) {
                          const auto& y = std::get<atom::Store>(b);
                          return x.addr == y.addr && x.src == y.src;
                        },
                    },
                    a);
}

bool operator==(const Command& a, const Command& b) {
  if (&a == &b) return true;
  if (a.node.index() != b.node.index()) return false;
  return std::visit(overloaded{
                        [&](const Command::Atomic& x) { return x.cmd == std::get<Command::Atomic>(b.node).cmd; },
                        [&](const Command::Seq& x) {
                          const auto& y = std::get<Command::Seq>(b.node);
                          return *x.first == *y.first && *x.second == *y.second;
                        },
                        [&](const Command::Choice& x) {
                          const auto& y = std::get<Command::Choice>(b.node);
                          return *x.left == *y.left && *x.right == *y.right;
                        },
                        [&](const Command::Star& x) { return *x.body == *std::get<Command::Star>(b.node).body; },
                    },
                    a.node);
}

bool same(const CommandPtr& a, const CommandPtr& b) {
  if (!a || !b) return a == b;
  return *a == *b;
}

// ---- variables ----

namespace {

void collect(const AExp& e, VarSet& out) {
  std::visit(overloaded{
                 [&](const AExp::Lit&) {},
                 [&](const AExp::Var& v) { out.insert(v.name); },
                 [&](const AExp::Bin& b) {
                   collect(*b.lhs, out);
                   collect(*b.rhs, out);
                 },
             },
             e.node);
}

void collect(const BExp& e, VarSet& out) {
  std::visit(overloaded{
                 [&](const BExp::False&) {},
                 [&](const BExp::Not& n) { collect(*n.arg, out); },
                 [&](const BExp::And& a) {
                   collect(*a.lhs, out);
                   collect(*a.rhs, out);
                 },
                 [&](const BExp::Cmp& c) {
                   collect(*c.lhs, out);
                   collect(*c.rhs, out);
                 },
             },
             e.node);
}

void collect(const AtomicCmd& c, VarSet& out) {
  std::visit(overloaded{
                 [&](const atom::Skip&) {},
                 [&](const atom::Assign& a) {
                   out.insert(a.var);
                   collect(*a.value, out);
                 },
                 [&](const atom::Assume& a) { collect(*a.cond, out); },
                 [&](const atom::Havoc& a) { out.insert(a.var); },
                 [&](const atom::Alloc& a) { out.insert(a.var); },
                 [&](const atom::Free& a) { out.insert(a.var); },
                 [&](const atom::Load& a) {
                   out.insert(a.dst);
                   out.insert(a.addr);
                 },
                 [&](const atom::Store& a) {
                   out.insert(a.addr);
                   out.insert(a.src);
                 },
             },
             c);
}

template <class F>
void for_each_atomic(const Command& r, F&& f) {
  std::visit(overloaded{
                 [&](const Command::Atomic& a) { f(a.cmd); },
                 [&](const Command::Seq& s) {
                   for_each_atomic(*s.first, f);
                   for_each_atomic(*s.second, f);
                 },
                 [&](const Command::Choice& c) {
                   for_each_atomic(*c.left, f);
                   for_each_atomic(*c.right, f);
                 },
                 [&](const Command::Star& s) { for_each_atomic(*s.body, f); },
             },
             r.node);
}

}  // namespace

VarSet free_vars(const AExp& e) {
  VarSet out;
  collect(e, out);
  return out;
}
VarSet free_vars(const BExp& b) {
  VarSet out;
  collect(b, out);
  return out;
}
VarSet free_vars(const AtomicCmd& c) {
  VarSet out;
  collect(c, out);
  return out;
}
VarSet free_vars(const Command& r) {
  VarSet out;
  for_each_atomic(r, [&](const AtomicCmd& c) { collect(c, out); });
  return out;
}

VarSet mod_vars(const AtomicCmd& c) {
  return std::visit(overloaded{
                        [](const atom::Assign& a) { return VarSet{a.var}; },
                        [](const atom::Havoc& a) { return VarSet{a.var}; },
                        [](const atom::Alloc& a) { return VarSet{a.var}; },
                        [](const atom::Load& a) { return VarSet{a.dst}; },
                        [](const auto&) { return VarSet{}; },
                    },
                    c);
}

VarSet mod_vars(const Command& r) {
  VarSet out;
  for_each_atomic(r, [&](const AtomicCmd& c) {
    auto m = mod_vars(c);
    out.insert(m.begin(), m.end());
  });
  return out;
}

bool contains_heap_atomic(const Command& r) {
  bool found = false;
  for_each_atomic(r, [&](const AtomicCmd& c) { found = found || is_heap_atomic(c); });
  return found;
}

// ---- printing ----

const char* to_string(ArithOp op) {
  switch (op) {
    case ArithOp::add: return "+";
    case ArithOp::sub: return "-";
    case ArithOp::mul: return "*";
    case ArithOp::mod: return "mod";
  }
  return "?";
}

const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::eq: return "=";
    case CmpOp::ne: return "!=";
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
  }
  return "?";
}

namespace {

int precedence(const AExp& e) {
  if (const auto* b = std::get_if<AExp::Bin>(&e.node)) {
    return (b->op == ArithOp::add || b->op == ArithOp::sub) ? 1 : 2;
  }
  return 3;
}

std::string print_aexp(const AExp& e, bool guard_mul) {
  if (const auto* l = std::get_if<AExp::Lit>(&e.node)) return std::to_string(l->value);
  if (const auto* v = std::get_if<AExp::Var>(&e.node)) return v->name;
  const auto& b = std::get<AExp::Bin>(e.node);
  if (guard_mul && b.op == ArithOp::mul) return "(" + print_aexp(e, false) + ")";
  const int p = precedence(e);
  auto child = [&](const AExp& c, bool right) {
    const int cp = precedence(c);
    if (cp < p || (right && cp == p)) return "(" + print_aexp(c, false) + ")";
    return print_aexp(c, guard_mul);
  };
  return child(*b.lhs, false) + " " + to_string(b.op) + " " + child(*b.rhs, true);
}

// Recognizes the `||` sugar: !(!a && !b).
bool as_or(const BExp& b, const BExp*& lhs, const BExp*& rhs) {
  const auto* n = std::get_if<BExp::Not>(&b.node);
  if (!n) return false;
  const auto* a = std::get_if<BExp::And>(&n->arg->node);
  if (!a) return false;
  const auto* l = std::get_if<BExp::Not>(&a->lhs->node);
  const auto* r = std::get_if<BExp::Not>(&a->rhs->node);
  if (!l || !r) return false;
  lhs = l->arg.get();
  rhs = r->arg.get();
  return true;
}

bool is_true(const BExp& b) {
  const auto* n = std::get_if<BExp::Not>(&b.node);
  return n && std::holds_alternative<BExp::False>(n->arg->node);
}

int level(const BExp& b) {
  const BExp *l, *r;
  if (is_true(b)) return 4;
  if (as_or(b, l, r)) return 1;
  if (std::holds_alternative<BExp::And>(b.node)) return 2;
  if (std::holds_alternative<BExp::Not>(b.node)) return 3;
  return 4;
}

std::string print_bexp(const BExp& b, bool guard_mul);

std::string wrap_bexp(const BExp& b, int min_level, bool guard_mul) {
  if (level(b) < min_level) return "(" + print_bexp(b, guard_mul) + ")";
  return print_bexp(b, guard_mul);
}

std::string print_bexp(const BExp& b, bool guard_mul) {
  const BExp *l, *r;
  if (is_true(b)) return "true";
  if (as_or(b, l, r)) return wrap_bexp(*l, 1, guard_mul) + " || " + wrap_bexp(*r, 2, guard_mul);
  return std::visit(overloaded{
                        [](const BExp::False&) -> std::string { return "false"; },
                        [&](const BExp::Not& n) -> std::string {
                          if (std::holds_alternative<BExp::Cmp>(n.arg->node)) {
                            return "!(" + print_bexp(*n.arg, guard_mul) + ")";
                          }
                          return "!" + wrap_bexp(*n.arg, 3, guard_mul);
                        },
                        [&](const BExp::And& a) -> std::string {
                          return wrap_bexp(*a.lhs, 2, guard_mul) + " && " + wrap_bexp(*a.rhs, 3, guard_mul);
                        },
                        [&](const BExp::Cmp& c) -> std::string {
                          return print_aexp(*c.lhs, guard_mul) + " " + to_string(c.op) + " " +
                                 print_aexp(*c.rhs, guard_mul);
                        },
                    },
                    b.node);
}

}  // namespace

std::string to_string(const AExp& e, bool guard_mul) { return print_aexp(e, guard_mul); }
std::string to_string(const BExp& b, bool guard_mul) { return print_bexp(b, guard_mul); }

std::string to_string(const AtomicCmd& c) {
  return std::visit(overloaded{
                        [](const atom::Skip&) -> std::string { return "skip"; },
                        [](const atom::Assign& a) -> std::string { return a.var + " := " + to_string(*a.value); },
                        [](const atom::Assume& a) -> std::string { return "(" + to_string(*a.cond) + ")?"; },
                        [](const atom::Havoc& a) -> std::string { return a.var + " := nondet()"; },
                        [](const atom::Alloc& a) -> std::string { return a.var + " := alloc()"; },
                        [](const atom::Free& a) -> std::string { return "free(" + a.var + ")"; },
                        [](const atom::Load& a) -> std::string { return a.dst + " := [" + a.addr + "]"; },
                        [](const atom::Store& a) -> std::string { return "[" + a.addr + "] := " + a.src; },
                    },
                    c);
}

std::string to_string(const Command& r) {
  return std::visit(overloaded{
                        [](const Command::Atomic& a) { return to_string(a.cmd); },
                        [](const Command::Seq& s) {
                          std::string first = to_string(*s.first);
                          if (std::holds_alternative<Command::Seq>(s.first->node)) first = "(" + first + ")";
                          return first + "; " + to_string(*s.second);
                        },
                        [](const Command::Choice& c) {
                          auto side = [](const Command& r) {
                            if (std::holds_alternative<Command::Seq>(r.node)) return "(" + to_string(r) + ")";
                            return to_string(r);
                          };
                          return "(" + side(*c.left) + " [+] " + side(*c.right) + ")";
                        },
                        [](const Command::Star& s) { return "(" + to_string(*s.body) + ")*"; },
                    },
                    r.node);
}

std::string to_string(const Program& p) {
  std::ostringstream out;
  out << "vars ";
  for (std::size_t i = 0; i < p.vars.size(); ++i) out << (i ? ", " : "") << p.vars[i];
  out << ";\n";
  if (p.heap_bounds) {
    out << "heap locs " << p.heap_bounds->locations << " ints " << p.heap_bounds->int_lo << ".."
        << p.heap_bounds->int_hi << ";\n";
  }
  out << to_string(*p.body) << "\n";
  return out.str();
}

}  // namespace sil
