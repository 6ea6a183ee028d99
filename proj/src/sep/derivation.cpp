#include "sil/sep/derivation.hpp"

#include <json.hpp>

#include "sil/parser.hpp"
#include "sil/sep/satisfaction.hpp"

namespace sil::sep {

namespace {

struct RuleName {
  SepRule rule;
  const char* name;
};

constexpr RuleName kRuleNames[] = {
    {SepRule::skip, "skip"},     {SepRule::assign, "assign"}, {SepRule::assert_, "assert"},
    {SepRule::alloc, "alloc"},   {SepRule::free_, "free"},    {SepRule::load, "load"},
    {SepRule::store, "store"},   {SepRule::exists, "exists"}, {SepRule::frame, "frame"},
    {SepRule::cons, "cons"},     {SepRule::seq, "seq"},       {SepRule::choice, "choice"},
    {SepRule::iter, "iter"},     {SepRule::empty, "empty"},   {SepRule::disj, "disj"},
    {SepRule::iter0, "iter0"},   {SepRule::unroll, "unroll"},
};

}  // namespace

const char* to_string(SepRule rule) {
  for (const auto& r : kRuleNames)
    if (r.rule == rule) return r.name;
  return "?";
}

SepRule parse_sep_rule(std::string_view name) {
  for (const auto& r : kRuleNames)
    if (name == r.name) return r.rule;
  throw Error("unknown separation rule '" + std::string(name) + "'");
}

std::size_t SepDerivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

namespace {

bool same_asl(const AslPtr& a, const AslPtr& b) {
  if (!a || !b) return a == b;
  return *a == *b;
}

}  // namespace

bool operator==(const SepDerivation& a, const SepDerivation& b) {
  return a.rule == b.rule && same_asl(a.pre, b.pre) && same(a.cmd, b.cmd) && same_asl(a.post, b.post) &&
         a.premises == b.premises && same_asl(a.frame, b.frame) && a.bound_var == b.bound_var;
}

AslPtr assign_axiom_pre(const AslPtr& post, const std::string& var, const AExpPtr& value) {
  AslPtr pre = substitute(post, value, var);
  if (std::holds_alternative<AExp::Bin>(value->node)) pre = make_and(pre, sep::make_cmp(CmpOp::eq, value, value));
  return pre;
}

AslPtr alloc_axiom_pre(const std::string& var, const std::string& fresh) {
  return make_and(sep::make_cmp(CmpOp::eq, make_var(var), make_var(fresh)), make_emp());
}

AslPtr load_axiom_pre(const AslPtr& post, const std::string& dst) {
  const auto* star = std::get_if<Asl::Star>(&post->node);
  const auto* cell = star ? std::get_if<Asl::PointsTo>(&star->lhs->node) : nullptr;
  if (!cell) throw Error("load post must have the shape y |-> a * q");
  return make_star(star->lhs, substitute(star->rhs, cell->value, dst));
}

AslPtr iter_pre(const std::vector<AslPtr>& family) {
  if (family.empty()) throw Error("iter needs at least one formula");
  AslPtr pre = family.front();
  for (std::size_t i = 1; i < family.size(); ++i) pre = make_or(pre, family[i]);
  return pre;
}

namespace {

class Rejection {
 public:
  explicit Rejection(std::string message) : message(std::move(message)) {}
  std::string message;
};

void require(bool cond, const std::string& message) {
  if (!cond) throw Rejection(message);
}

void require_formula(const AslPtr& actual, const AslPtr& expected, const std::string& what) {
  require(actual != nullptr, what + ": missing formula");
  require(alpha_equivalent(*actual, *expected),
          what + ": expected '" + to_string(*expected) + "', got '" + to_string(*actual) + "'");
}

void require_premises(const SepDerivation& d, std::size_t n) {
  require(d.premises.size() == n, std::string(to_string(d.rule)) + " expects " + std::to_string(n) +
                                      " premise(s), got " + std::to_string(d.premises.size()));
}

void require_cmd(const CommandPtr& actual, const CommandPtr& expected, const std::string& what) {
  require(actual != nullptr && same(actual, expected),
          what + ": expected command '" + to_string(*expected) + "', got '" +
              (actual ? to_string(*actual) : std::string("<none>")) + "'");
}

template <class A>
const A& require_atom(const SepDerivation& d) {
  const auto* a = std::get_if<Command::Atomic>(&d.cmd->node);
  const A* c = a ? std::get_if<A>(&a->cmd) : nullptr;
  require(c != nullptr, std::string(to_string(d.rule)) + " does not apply to '" + to_string(*d.cmd) + "'");
  return *c;
}

const Command::Star& require_star(const SepDerivation& d) {
  const auto* s = std::get_if<Command::Star>(&d.cmd->node);
  require(s != nullptr, std::string(to_string(d.rule)) + " needs a starred command");
  return *s;
}

void require_entails(const AslPtr& lhs, const AslPtr& rhs, const SepConfig& cfg, const std::string& what) {
  auto v = check_entailment(*lhs, *rhs, cfg);
  if (!v.valid) throw Rejection(what + " fails at {" + format_state(*v.witness, v.vars) + "}");
}

void check_local(const SepDerivation& d, const SepConfig& cfg) {
  require(d.cmd != nullptr && d.pre != nullptr && d.post != nullptr, "node lacks pre, cmd or post");
  require(d.frame == nullptr || d.rule == SepRule::frame, "only frame nodes carry a frame formula");
  require(!d.bound_var || d.rule == SepRule::exists, "only exists nodes carry a bound variable");
  switch (d.rule) {
    case SepRule::skip:
      require_premises(d, 0);
      require_atom<atom::Skip>(d);
      require_formula(d.pre, make_emp(), "skip pre");
      require_formula(d.post, make_emp(), "skip post");
      break;
    case SepRule::assign: {
      require_premises(d, 0);
      const auto& a = require_atom<atom::Assign>(d);
      require_formula(d.pre, assign_axiom_pre(d.post, a.var, a.value), "assign pre");
      break;
    }
    case SepRule::assert_: {
      require_premises(d, 0);
      const auto& a = require_atom<atom::Assume>(d);
      require_formula(d.pre, make_and(d.post, from_bexp(*a.cond)), "assert pre");
      break;
    }
    case SepRule::alloc: {
      require_premises(d, 0);
      const auto& a = require_atom<atom::Alloc>(d);
      const auto* conj = std::get_if<Asl::And>(&d.pre->node);
      const auto* eq = conj ? std::get_if<Asl::Cmp>(&conj->lhs->node) : nullptr;
      const auto* fresh = eq ? std::get_if<AExp::Var>(&eq->rhs->node) : nullptr;
      require(fresh != nullptr, "alloc pre must have the shape x = x' && emp");
      require(fresh->name != a.var, "alloc: the fresh variable must differ from " + a.var);
      require(!free_vars(*d.post).count(fresh->name), "alloc: fresh variable occurs in post");
      require_formula(d.pre, alloc_axiom_pre(a.var, fresh->name), "alloc pre");
      require_formula(d.post, make_points_to_any(make_var(a.var)), "alloc post");
      break;
    }
    case SepRule::free_: {
      require_premises(d, 0);
      const auto& a = require_atom<atom::Free>(d);
      require_formula(d.pre, make_points_to_any(make_var(a.var)), "free pre");
      require_formula(d.post, make_dangling(make_var(a.var)), "free post");
      break;
    }
    case SepRule::load: {
      require_premises(d, 0);
      const auto& a = require_atom<atom::Load>(d);
      const auto* star = std::get_if<Asl::Star>(&d.post->node);
      const auto* cell = star ? std::get_if<Asl::PointsTo>(&star->lhs->node) : nullptr;
      require(cell != nullptr, "load post must have the shape y |-> a * q");
      require(*cell->addr == *make_var(a.addr), "load post must start with " + a.addr + " |-> a");
      require(a.dst != a.addr, "load: destination and address must differ");
      require(!free_vars(*cell->value).count(a.dst), "load: " + a.dst + " occurs in the loaded value");
      require_formula(d.pre, load_axiom_pre(d.post, a.dst), "load pre");
      break;
    }
    case SepRule::store: {
      require_premises(d, 0);
      const auto& a = require_atom<atom::Store>(d);
      require_formula(d.pre, make_points_to_any(make_var(a.addr)), "store pre");
      require_formula(d.post, make_points_to(make_var(a.addr), make_var(a.src)), "store post");
      break;
    }
    case SepRule::exists: {
      require_premises(d, 1);
      require(d.bound_var.has_value(), "exists node lacks bound_var");
      const auto& x = *d.bound_var;
      const auto& p = d.premises[0];
      require_cmd(p.cmd, d.cmd, "exists premise");
      require(!free_vars(*d.cmd).count(x), "exists: " + x + " occurs in the command");
      require_formula(d.pre, make_exists(x, p.pre), "exists pre");
      require_formula(d.post, make_exists(x, p.post), "exists post");
      break;
    }
    case SepRule::frame: {
      require_premises(d, 1);
      require(d.frame != nullptr, "frame node lacks frame formula");
      const auto& p = d.premises[0];
      require_cmd(p.cmd, d.cmd, "frame premise");
      const VarSet modified = mod_vars(*d.cmd);
      for (const auto& v : free_vars(*d.frame))
        require(!modified.count(v), "frame: " + v + " is modified by the command");
      require_formula(d.pre, make_star(p.pre, d.frame), "frame pre");
      require_formula(d.post, make_star(p.post, d.frame), "frame post");
      break;
    }
    case SepRule::cons: {
      require_premises(d, 1);
      const auto& p = d.premises[0];
      require_cmd(p.cmd, d.cmd, "cons premise");
      require_entails(d.pre, p.pre, cfg, "cons: pre => premise pre");
      require_entails(p.post, d.post, cfg, "cons: premise post => post");
      break;
    }
    case SepRule::seq: {
      require_premises(d, 2);
      const auto* s = std::get_if<Command::Seq>(&d.cmd->node);
      require(s != nullptr, "seq needs a sequential command");
      const auto& p1 = d.premises[0];
      const auto& p2 = d.premises[1];
      require_cmd(p1.cmd, s->first, "seq premise 0");
      require_cmd(p2.cmd, s->second, "seq premise 1");
      require_formula(p1.pre, d.pre, "seq premise 0 pre");
      require_formula(p2.pre, p1.post, "seq premise 1 pre");
      require_formula(p2.post, d.post, "seq premise 1 post");
      break;
    }
    case SepRule::choice: {
      require_premises(d, 2);
      const auto* c = std::get_if<Command::Choice>(&d.cmd->node);
      require(c != nullptr, "choice needs a choice command");
      const auto& p1 = d.premises[0];
      const auto& p2 = d.premises[1];
      require_cmd(p1.cmd, c->left, "choice premise 0");
      require_cmd(p2.cmd, c->right, "choice premise 1");
      require_formula(p1.post, d.post, "choice premise 0 post");
      require_formula(p2.post, d.post, "choice premise 1 post");
      require_formula(d.pre, make_or(p1.pre, p2.pre), "choice pre");
      break;
    }
    case SepRule::iter: {
      const auto& star = require_star(d);
      std::vector<AslPtr> family{d.post};
      for (std::size_t n = 0; n < d.premises.size(); ++n) {
        const auto& p = d.premises[n];
        const std::string tag = "iter premise " + std::to_string(n);
        require_cmd(p.cmd, star.body, tag);
        require_formula(p.post, family.back(), tag + " post");
        family.push_back(p.pre);
      }
      require_formula(d.pre, iter_pre(family), "iter pre");
      break;
    }
    case SepRule::empty:
      require_premises(d, 0);
      require_formula(d.pre, make_false(), "empty pre");
      break;
    case SepRule::disj: {
      require_premises(d, 2);
      const auto& p1 = d.premises[0];
      const auto& p2 = d.premises[1];
      require_cmd(p1.cmd, d.cmd, "disj premise 0");
      require_cmd(p2.cmd, d.cmd, "disj premise 1");
      require_formula(d.pre, make_or(p1.pre, p2.pre), "disj pre");
      require_formula(d.post, make_or(p1.post, p2.post), "disj post");
      break;
    }
    case SepRule::iter0:
      require_premises(d, 0);
      require_star(d);
      require_formula(d.pre, d.post, "iter0 pre");
      break;
    case SepRule::unroll: {
      require_premises(d, 1);
      const auto& star = require_star(d);
      const auto& p = d.premises[0];
      require_cmd(p.cmd, make_seq(d.cmd, star.body), "unroll premise");
      require_formula(p.pre, d.pre, "unroll premise pre");
      require_formula(p.post, d.post, "unroll premise post");
      break;
    }
  }
}

CheckResult check_at(const SepDerivation& d, const SepConfig& cfg, const std::string& path) {
  try {
    check_local(d, cfg);
  } catch (const Rejection& r) {
    return {false, path, std::string(to_string(d.rule)) + ": " + r.message};
  } catch (const Error& e) {
    return {false, path, std::string(to_string(d.rule)) + ": " + e.what()};
  }
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    auto sub = check_at(d.premises[i], cfg, path + "/" + std::to_string(i));
    if (!sub.accepted) return sub;
  }
  return {};
}

}  // namespace

CheckResult check_sep_derivation(const SepDerivation& d, const SepConfig& cfg) { return check_at(d, cfg, "root"); }

namespace {

nlohmann::ordered_json to_json(const SepDerivation& d) {
  nlohmann::ordered_json j;
  j["rule"] = to_string(d.rule);
  j["pre"] = to_string(*d.pre);
  j["cmd"] = to_string(*d.cmd);
  j["post"] = to_string(*d.post);
  if (d.frame) j["frame"] = to_string(*d.frame);
  if (d.bound_var) j["bound_var"] = *d.bound_var;
  j["premises"] = nlohmann::ordered_json::array();
  for (const auto& p : d.premises) j["premises"].push_back(to_json(p));
  return j;
}

SepDerivation from_json(const nlohmann::json& j, const std::vector<std::string>& vars) {
  if (!j.is_object()) throw Error("derivation node must be an object");
  auto field = [&](const char* name) -> std::string {
    if (!j.contains(name) || !j[name].is_string()) {
      throw Error(std::string("derivation node lacks string field '") + name + "'");
    }
    return j[name].get<std::string>();
  };
  SepDerivation d{parse_sep_rule(field("rule")), parse_asl(field("pre")), parse_command(field("cmd"), vars, true),
                  parse_asl(field("post")), {}, nullptr, std::nullopt};
  if (j.contains("frame")) d.frame = parse_asl(field("frame"));
  if (j.contains("bound_var")) d.bound_var = field("bound_var");
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) throw Error("premises must be an array");
    for (const auto& p : j["premises"]) d.premises.push_back(from_json(p, vars));
  }
  return d;
}

}  // namespace

std::string encode_sep_derivation(const SepDerivation& d, int indent) { return to_json(d).dump(indent); }

SepDerivation decode_sep_derivation(std::string_view json, const std::vector<std::string>& program_vars) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed derivation JSON: ") + e.what());
  }
  return from_json(j, program_vars);
}

}  // namespace sil::sep
