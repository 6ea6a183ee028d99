#include "sil/sep/asl.hpp"

#include "../lexer.hpp"

namespace sil::sep {

namespace {

AslPtr node(Asl::False v) { return std::make_shared<Asl>(Asl{v}); }
template <class T>
AslPtr node(T v) {
  return std::make_shared<Asl>(Asl{std::move(v)});
}

}  // namespace

AslPtr make_false() { return node(Asl::False{}); }
AslPtr make_true() { return make_not(make_false()); }
AslPtr make_not(AslPtr p) { return node(Asl::Not{std::move(p)}); }
AslPtr make_and(AslPtr p, AslPtr q) { return node(Asl::And{std::move(p), std::move(q)}); }
AslPtr make_or(AslPtr p, AslPtr q) { return make_not(make_and(make_not(std::move(p)), make_not(std::move(q)))); }
AslPtr make_exists(std::string var, AslPtr body) { return node(Asl::Exists{std::move(var), std::move(body)}); }
AslPtr make_cmp(CmpOp op, AExpPtr lhs, AExpPtr rhs) { return node(Asl::Cmp{op, std::move(lhs), std::move(rhs)}); }
AslPtr make_emp() { return node(Asl::Emp{}); }
AslPtr make_points_to(AExpPtr addr, AExpPtr value) { return node(Asl::PointsTo{std::move(addr), std::move(value)}); }
AslPtr make_dangling(AExpPtr addr) { return node(Asl::Dangling{std::move(addr)}); }
AslPtr make_star(AslPtr p, AslPtr q) { return node(Asl::Star{std::move(p), std::move(q)}); }

std::string points_to_any_binder(const AExp& addr) {
  const VarSet used = free_vars(addr);
  std::string name = "_v";
  for (int k = 1; used.count(name); ++k) name = "_v" + std::to_string(k);
  return name;
}

AslPtr make_points_to_any(AExpPtr addr) {
  std::string v = points_to_any_binder(*addr);
  AExpPtr value = make_var(v);
  return make_exists(std::move(v), make_points_to(std::move(addr), std::move(value)));
}

AslPtr from_bexp(const BExp& b) {
  if (std::holds_alternative<BExp::False>(b.node)) return make_false();
  if (const auto* n = std::get_if<BExp::Not>(&b.node)) return make_not(from_bexp(*n->arg));
  if (const auto* a = std::get_if<BExp::And>(&b.node)) return make_and(from_bexp(*a->lhs), from_bexp(*a->rhs));
  const auto& c = std::get<BExp::Cmp>(b.node);
  return sep::make_cmp(c.op, c.lhs, c.rhs);
}

// ---- equality ----

namespace {

using Binders = std::vector<const std::string*>;

// Depth of the innermost binder of `name`, or -1 when free.
int bound_depth(const Binders& env, const std::string& name) {
  for (std::size_t i = env.size(); i-- > 0;)
    if (*env[i] == name) return static_cast<int>(i);
  return -1;
}

bool alpha_aexp(const AExp& a, const AExp& b, const Binders& ea, const Binders& eb) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* x = std::get_if<AExp::Lit>(&a.node)) return x->value == std::get<AExp::Lit>(b.node).value;
  if (const auto* x = std::get_if<AExp::Var>(&a.node)) {
    const auto& y = std::get<AExp::Var>(b.node);
    const int da = bound_depth(ea, x->name), db = bound_depth(eb, y.name);
    if (da < 0 && db < 0) return x->name == y.name;
    return da == db;
  }
  const auto& x = std::get<AExp::Bin>(a.node);
  const auto& y = std::get<AExp::Bin>(b.node);
  return x.op == y.op && alpha_aexp(*x.lhs, *y.lhs, ea, eb) && alpha_aexp(*x.rhs, *y.rhs, ea, eb);
}

bool alpha(const Asl& a, const Asl& b, Binders& ea, Binders& eb) {
  if (a.node.index() != b.node.index()) return false;
  if (std::holds_alternative<Asl::False>(a.node) || std::holds_alternative<Asl::Emp>(a.node)) return true;
  if (const auto* x = std::get_if<Asl::Not>(&a.node)) return alpha(*x->arg, *std::get<Asl::Not>(b.node).arg, ea, eb);
  if (const auto* x = std::get_if<Asl::And>(&a.node)) {
    const auto& y = std::get<Asl::And>(b.node);
    return alpha(*x->lhs, *y.lhs, ea, eb) && alpha(*x->rhs, *y.rhs, ea, eb);
  }
  if (const auto* x = std::get_if<Asl::Star>(&a.node)) {
    const auto& y = std::get<Asl::Star>(b.node);
    return alpha(*x->lhs, *y.lhs, ea, eb) && alpha(*x->rhs, *y.rhs, ea, eb);
  }
  if (const auto* x = std::get_if<Asl::Exists>(&a.node)) {
    const auto& y = std::get<Asl::Exists>(b.node);
    ea.push_back(&x->var);
    eb.push_back(&y.var);
    const bool ok = alpha(*x->body, *y.body, ea, eb);
    ea.pop_back();
    eb.pop_back();
    return ok;
  }
  if (const auto* x = std::get_if<Asl::Cmp>(&a.node)) {
    const auto& y = std::get<Asl::Cmp>(b.node);
    return x->op == y.op && alpha_aexp(*x->lhs, *y.lhs, ea, eb) && alpha_aexp(*x->rhs, *y.rhs, ea, eb);
  }
  if (const auto* x = std::get_if<Asl::PointsTo>(&a.node)) {
    const auto& y = std::get<Asl::PointsTo>(b.node);
    return alpha_aexp(*x->addr, *y.addr, ea, eb) && alpha_aexp(*x->value, *y.value, ea, eb);
  }
  const auto& x = std::get<Asl::Dangling>(a.node);
  return alpha_aexp(*x.addr, *std::get<Asl::Dangling>(b.node).addr, ea, eb);
}

bool structural(const Asl& a, const Asl& b) {
  if (a.node.index() != b.node.index()) return false;
  if (std::holds_alternative<Asl::False>(a.node) || std::holds_alternative<Asl::Emp>(a.node)) return true;
  if (const auto* x = std::get_if<Asl::Not>(&a.node)) return structural(*x->arg, *std::get<Asl::Not>(b.node).arg);
  if (const auto* x = std::get_if<Asl::And>(&a.node)) {
    const auto& y = std::get<Asl::And>(b.node);
    return structural(*x->lhs, *y.lhs) && structural(*x->rhs, *y.rhs);
  }
  if (const auto* x = std::get_if<Asl::Star>(&a.node)) {
    const auto& y = std::get<Asl::Star>(b.node);
    return structural(*x->lhs, *y.lhs) && structural(*x->rhs, *y.rhs);
  }
  if (const auto* x = std::get_if<Asl::Exists>(&a.node)) {
    const auto& y = std::get<Asl::Exists>(b.node);
    return x->var == y.var && structural(*x->body, *y.body);
  }
  if (const auto* x = std::get_if<Asl::Cmp>(&a.node)) {
    const auto& y = std::get<Asl::Cmp>(b.node);
    return x->op == y.op && *x->lhs == *y.lhs && *x->rhs == *y.rhs;
  }
  if (const auto* x = std::get_if<Asl::PointsTo>(&a.node)) {
    const auto& y = std::get<Asl::PointsTo>(b.node);
    return *x->addr == *y.addr && *x->value == *y.value;
  }
  return *std::get<Asl::Dangling>(a.node).addr == *std::get<Asl::Dangling>(b.node).addr;
}

}  // namespace

bool operator==(const Asl& a, const Asl& b) { return structural(a, b); }

bool alpha_equivalent(const Asl& a, const Asl& b) {
  Binders ea, eb;
  return alpha(a, b, ea, eb);
}

// ---- free variables and substitution ----

namespace {

void collect(const Asl& p, VarSet& out) {
  auto add = [&](const AExp& e) {
    auto v = free_vars(e);
    out.insert(v.begin(), v.end());
  };
  if (const auto* x = std::get_if<Asl::Not>(&p.node)) {
    collect(*x->arg, out);
  } else if (const auto* x = std::get_if<Asl::And>(&p.node)) {
    collect(*x->lhs, out);
    collect(*x->rhs, out);
  } else if (const auto* x = std::get_if<Asl::Star>(&p.node)) {
    collect(*x->lhs, out);
    collect(*x->rhs, out);
  } else if (const auto* x = std::get_if<Asl::Exists>(&p.node)) {
    VarSet inner;
    collect(*x->body, inner);
    inner.erase(x->var);
    out.insert(inner.begin(), inner.end());
  } else if (const auto* x = std::get_if<Asl::Cmp>(&p.node)) {
    add(*x->lhs);
    add(*x->rhs);
  } else if (const auto* x = std::get_if<Asl::PointsTo>(&p.node)) {
    add(*x->addr);
    add(*x->value);
  } else if (const auto* x = std::get_if<Asl::Dangling>(&p.node)) {
    add(*x->addr);
  }
}

void all_names(const Asl& p, VarSet& out) {
  collect(p, out);
  if (const auto* x = std::get_if<Asl::Not>(&p.node)) all_names(*x->arg, out);
  if (const auto* x = std::get_if<Asl::And>(&p.node)) {
    all_names(*x->lhs, out);
    all_names(*x->rhs, out);
  }
  if (const auto* x = std::get_if<Asl::Star>(&p.node)) {
    all_names(*x->lhs, out);
    all_names(*x->rhs, out);
  }
  if (const auto* x = std::get_if<Asl::Exists>(&p.node)) {
    out.insert(x->var);
    all_names(*x->body, out);
  }
}

}  // namespace

VarSet free_vars(const Asl& p) {
  VarSet out;
  collect(p, out);
  return out;
}

AExpPtr substitute(const AExpPtr& e, const AExpPtr& a, const std::string& x) {
  if (const auto* v = std::get_if<AExp::Var>(&e->node)) return v->name == x ? a : e;
  if (const auto* b = std::get_if<AExp::Bin>(&e->node)) {
    return make_bin(b->op, substitute(b->lhs, a, x), substitute(b->rhs, a, x));
  }
  return e;
}

AslPtr substitute(const AslPtr& p, const AExpPtr& a, const std::string& x) {
  if (!free_vars(*p).count(x)) return p;
  if (const auto* n = std::get_if<Asl::Not>(&p->node)) return make_not(substitute(n->arg, a, x));
  if (const auto* n = std::get_if<Asl::And>(&p->node)) {
    return make_and(substitute(n->lhs, a, x), substitute(n->rhs, a, x));
  }
  if (const auto* n = std::get_if<Asl::Star>(&p->node)) {
    return make_star(substitute(n->lhs, a, x), substitute(n->rhs, a, x));
  }
  if (const auto* n = std::get_if<Asl::Exists>(&p->node)) {
    const VarSet in_a = free_vars(*a);
    if (!in_a.count(n->var)) return make_exists(n->var, substitute(n->body, a, x));
    VarSet taken = in_a;
    all_names(*n->body, taken);
    taken.insert(x);
    std::string fresh = n->var + "'";
    while (taken.count(fresh)) fresh += "'";
    AslPtr renamed = substitute(n->body, make_var(fresh), n->var);
    return make_exists(fresh, substitute(renamed, a, x));
  }
  if (const auto* n = std::get_if<Asl::Cmp>(&p->node)) {
    return sep::make_cmp(n->op, substitute(n->lhs, a, x), substitute(n->rhs, a, x));
  }
  if (const auto* n = std::get_if<Asl::PointsTo>(&p->node)) {
    return make_points_to(substitute(n->addr, a, x), substitute(n->value, a, x));
  }
  const auto& d = std::get<Asl::Dangling>(p->node);
  return make_dangling(substitute(d.addr, a, x));
}

// ---- printing ----

namespace {

bool is_true(const Asl& p) {
  const auto* n = std::get_if<Asl::Not>(&p.node);
  return n && std::holds_alternative<Asl::False>(n->arg->node);
}

bool as_or(const Asl& p, const Asl*& l, const Asl*& r) {
  const auto* n = std::get_if<Asl::Not>(&p.node);
  if (!n) return false;
  const auto* a = std::get_if<Asl::And>(&n->arg->node);
  if (!a) return false;
  const auto* nl = std::get_if<Asl::Not>(&a->lhs->node);
  const auto* nr = std::get_if<Asl::Not>(&a->rhs->node);
  if (!nl || !nr) return false;
  l = nl->arg.get();
  r = nr->arg.get();
  return true;
}

const AExp* as_points_to_any(const Asl& p) {
  const auto* e = std::get_if<Asl::Exists>(&p.node);
  if (!e) return nullptr;
  const auto* pt = std::get_if<Asl::PointsTo>(&e->body->node);
  if (!pt) return nullptr;
  const auto* v = std::get_if<AExp::Var>(&pt->value->node);
  if (!v || v->name != e->var || e->var != points_to_any_binder(*pt->addr)) return nullptr;
  return pt->addr.get();
}

int level(const Asl& p) {
  const Asl *l, *r;
  if (is_true(p) || as_points_to_any(p)) return 5;
  if (as_or(p, l, r)) return 1;
  if (std::holds_alternative<Asl::Exists>(p.node)) return 0;
  if (std::holds_alternative<Asl::And>(p.node)) return 2;
  if (std::holds_alternative<Asl::Star>(p.node)) return 3;
  if (std::holds_alternative<Asl::Not>(p.node)) return 4;
  return 5;
}

std::string print(const Asl& p);

std::string wrap(const Asl& p, int min_level) {
  if (level(p) < min_level) return "(" + print(p) + ")";
  return print(p);
}

std::string print(const Asl& p) {
  const Asl *l, *r;
  if (is_true(p)) return "true";
  if (const AExp* addr = as_points_to_any(p)) return to_string(*addr, true) + " |-> -";
  if (as_or(p, l, r)) return wrap(*l, 1) + " || " + wrap(*r, 2);
  if (std::holds_alternative<Asl::False>(p.node)) return "false";
  if (std::holds_alternative<Asl::Emp>(p.node)) return "emp";
  if (const auto* n = std::get_if<Asl::Not>(&p.node)) {
    const bool atomic = level(*n->arg) == 5 && !is_true(*n->arg) &&
                        !std::holds_alternative<Asl::False>(n->arg->node) &&
                        !std::holds_alternative<Asl::Emp>(n->arg->node);
    return atomic ? "!(" + print(*n->arg) + ")" : "!" + wrap(*n->arg, 4);
  }
  if (const auto* n = std::get_if<Asl::And>(&p.node)) return wrap(*n->lhs, 2) + " && " + wrap(*n->rhs, 3);
  if (const auto* n = std::get_if<Asl::Star>(&p.node)) return wrap(*n->lhs, 3) + " * " + wrap(*n->rhs, 4);
  if (const auto* n = std::get_if<Asl::Exists>(&p.node)) return "exists " + n->var + ". " + print(*n->body);
  if (const auto* n = std::get_if<Asl::Cmp>(&p.node)) {
    return to_string(*n->lhs, true) + " " + to_string(n->op) + " " + to_string(*n->rhs, true);
  }
  if (const auto* n = std::get_if<Asl::PointsTo>(&p.node)) {
    return to_string(*n->addr, true) + " |-> " + to_string(*n->value, true);
  }
  return to_string(*std::get<Asl::Dangling>(p.node).addr, true) + " |-/>";
}

// ---- parsing ----

class AslParser : public detail::ExprParser {
 public:
  using ExprParser::ExprParser;

  AslPtr disjunction() {
    AslPtr lhs = conjunction();
    while (accept("||")) lhs = make_or(lhs, conjunction());
    return lhs;
  }

 private:
  AslPtr conjunction() {
    AslPtr lhs = separating();
    while (accept("&&")) lhs = make_and(lhs, separating());
    return lhs;
  }

  AslPtr separating() {
    AslPtr lhs = unary();
    while (accept("*")) lhs = make_star(lhs, unary());
    return lhs;
  }

  AslPtr unary() {
    if (accept("!")) return make_not(unary());
    if (accept_keyword("exists")) {
      std::string var = identifier();
      expect(".");
      return make_exists(std::move(var), disjunction());
    }
    return atom();
  }

  AslPtr atom() {
    if (accept_keyword("false")) return make_false();
    if (accept_keyword("true")) return make_true();
    if (accept_keyword("emp")) return make_emp();
    if (at_symbol("(")) {
      auto grouped = attempt([&] {
        expect("(");
        AslPtr inner = disjunction();
        expect(")");
        return inner;
      });
      if (grouped) return *grouped;
    }
    AExpPtr lhs = aexp(true);
    if (accept("|->")) {
      if (accept("-")) return make_points_to_any(lhs);
      return make_points_to(lhs, aexp(true));
    }
    if (accept("|-/>")) return make_dangling(lhs);
    auto op = cmp_op();
    if (!op) fail_deepest("expected '|->', '|-/>' or a comparison");
    return sep::make_cmp(*op, lhs, aexp(true));
  }
};

}  // namespace

std::string to_string(const Asl& p) { return print(p); }

AslPtr parse_asl(std::string_view text) {
  AslParser parser(text);
  AslPtr p = parser.disjunction();
  parser.expect_end();
  return p;
}

}  // namespace sil::sep
