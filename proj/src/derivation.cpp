#include "sil/derivation.hpp"

#include <json.hpp>

#include "sil/parser.hpp"
#include "sil/semantics.hpp"
#include "sil/state_format.hpp"

namespace sil {

namespace {

struct RuleName {
  Rule rule;
  const char* name;
};

constexpr RuleName kRuleNames[] = {
    {Rule::atom, "atom"},   {Rule::cons, "cons"},   {Rule::seq, "seq"},       {Rule::choice, "choice"},
    {Rule::iter, "iter"},   {Rule::empty, "empty"}, {Rule::disj, "disj"},     {Rule::iter0, "iter0"},
    {Rule::unroll, "unroll"}, {Rule::unroll_split, "unroll_split"},
};

}  // namespace

const char* to_string(Rule rule) {
  for (const auto& r : kRuleNames)
    if (r.rule == rule) return r.name;
  return "?";
}

Rule parse_rule(std::string_view name) {
  for (const auto& r : kRuleNames)
    if (name == r.name) return r.rule;
  throw Error("unknown rule '" + std::string(name) + "'");
}

bool Derivation::operator==(const Derivation& other) const {
  return rule == other.rule && pre == other.pre && same(cmd, other.cmd) && post == other.post &&
         premises == other.premises;
}

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

std::string CheckResult::describe() const {
  if (accepted) return "accepted";
  return "rejected at " + path + ": " + message;
}

namespace {

class Rejection {
 public:
  explicit Rejection(std::string message) : message(std::move(message)) {}
  std::string message;
};

std::string difference(const StateSet& a, const StateSet& b) {
  const StateSet diff = (a - b) | (b - a);
  return "differs on " + describe_state_set(diff, {.max_minterms = 256, .max_cubes = 4, .samples = 3});
}

void require(bool cond, const std::string& message) {
  if (!cond) throw Rejection(message);
}

void require_equal(const StateSet& a, const StateSet& b, const std::string& what) {
  if (!(a == b)) throw Rejection(what + " (" + difference(a, b) + ")");
}

void require_subset(const StateSet& a, const StateSet& b, const std::string& what) {
  if (!a.subset_of(b)) {
    throw Rejection(what + " (extra: " +
                    describe_state_set(a - b, {.max_minterms = 256, .max_cubes = 4, .samples = 3}) + ")");
  }
}

void require_premises(const Derivation& d, std::size_t n) {
  require(d.premises.size() == n, std::string(to_string(d.rule)) + " expects " + std::to_string(n) +
                                      " premise(s), got " + std::to_string(d.premises.size()));
}

void require_cmd(const CommandPtr& actual, const CommandPtr& expected, const std::string& what) {
  require(same(actual, expected), what + ": expected command '" + to_string(*expected) + "', got '" +
                                      to_string(*actual) + "'");
}

const Command::Star& require_star(const Derivation& d) {
  const auto* s = std::get_if<Command::Star>(&d.cmd->node);
  require(s != nullptr, std::string(to_string(d.rule)) + " needs a starred command");
  return *s;
}

void check_local(const Derivation& d) {
  require(d.cmd != nullptr, "missing command");
  switch (d.rule) {
    case Rule::atom: {
      require_premises(d, 0);
      require(std::holds_alternative<Command::Atomic>(d.cmd->node), "atom needs an atomic command");
      require_equal(d.pre, bwsem(*d.cmd, d.post), "atom: pre must equal the backward image of post");
      break;
    }
    case Rule::cons: {
      require_premises(d, 1);
      const auto& p = d.premises[0];
      require_cmd(p.cmd, d.cmd, "cons");
      require_subset(d.pre, p.pre, "cons: pre must be contained in the premise pre");
      require_subset(p.post, d.post, "cons: premise post must be contained in post");
      break;
    }
    case Rule::seq: {
      require_premises(d, 2);
      const auto* s = std::get_if<Command::Seq>(&d.cmd->node);
      require(s != nullptr, "seq needs a sequential command");
      const auto& p1 = d.premises[0];
      const auto& p2 = d.premises[1];
      require_cmd(p1.cmd, s->first, "seq premise 0");
      require_cmd(p2.cmd, s->second, "seq premise 1");
      require_equal(d.pre, p1.pre, "seq: pre must equal the first premise pre");
      require_equal(p1.post, p2.pre, "seq: intermediate assertions must agree");
      require_equal(d.post, p2.post, "seq: post must equal the second premise post");
      break;
    }
    case Rule::choice: {
      require_premises(d, 2);
      const auto* c = std::get_if<Command::Choice>(&d.cmd->node);
      require(c != nullptr, "choice needs a choice command");
      const auto& p1 = d.premises[0];
      const auto& p2 = d.premises[1];
      require_cmd(p1.cmd, c->left, "choice premise 0");
      require_cmd(p2.cmd, c->right, "choice premise 1");
      require_equal(p1.post, d.post, "choice: premise 0 post must equal post");
      require_equal(p2.post, d.post, "choice: premise 1 post must equal post");
      require_equal(d.pre, p1.pre | p2.pre, "choice: pre must be the union of premise pres");
      break;
    }
    case Rule::iter: {
      const auto& star = require_star(d);
      StateSet q = d.post;
      StateSet all = d.post;
      for (std::size_t n = 0; n < d.premises.size(); ++n) {
        const auto& p = d.premises[n];
        const std::string tag = "iter premise " + std::to_string(n);
        require_cmd(p.cmd, star.body, tag);
        require_equal(p.post, q, tag + ": post must equal the pre of the previous premise");
        q = p.pre;
        all |= q;
      }
      require_equal(d.pre, all, "iter: pre must be the union of the family");
      break;
    }
    case Rule::empty: {
      require_premises(d, 0);
      require(d.pre.is_empty(), "empty: pre must be empty");
      break;
    }
    case Rule::disj: {
      require_premises(d, 2);
      const auto& p1 = d.premises[0];
      const auto& p2 = d.premises[1];
      require_cmd(p1.cmd, d.cmd, "disj premise 0");
      require_cmd(p2.cmd, d.cmd, "disj premise 1");
      require_equal(d.pre, p1.pre | p2.pre, "disj: pre must be the union of premise pres");
      require_equal(d.post, p1.post | p2.post, "disj: post must be the union of premise posts");
      break;
    }
    case Rule::iter0: {
      require_premises(d, 0);
      require_star(d);
      require_equal(d.pre, d.post, "iter0: pre must equal post");
      break;
    }
    case Rule::unroll: {
      require_premises(d, 1);
      const auto& star = require_star(d);
      const auto& p = d.premises[0];
      require_cmd(p.cmd, make_seq(d.cmd, star.body), "unroll premise");
      require_equal(d.pre, p.pre, "unroll: pre must equal the premise pre");
      require_equal(d.post, p.post, "unroll: post must equal the premise post");
      break;
    }
    case Rule::unroll_split: {
      require_premises(d, 1);
      const auto& star = require_star(d);
      const auto& p = d.premises[0];
      require_cmd(p.cmd, make_seq(d.cmd, star.body), "unroll_split premise");
      // Q2 exists iff P <= pre, Q1 <= post, pre \ P <= post and post \ Q1 <= pre.
      require_subset(p.pre, d.pre, "unroll_split: premise pre must be contained in pre");
      require_subset(p.post, d.post, "unroll_split: premise post must be contained in post");
      require_subset(d.pre - p.pre, d.post, "unroll_split: added pre states must also be added to post");
      require_subset(d.post - p.post, d.pre, "unroll_split: added post states must also be added to pre");
      break;
    }
  }
}

CheckResult check_at(const Derivation& d, const std::string& path) {
  try {
    check_local(d);
  } catch (const Rejection& r) {
    return {false, path, std::string(to_string(d.rule)) + ": " + r.message};
  } catch (const Error& e) {
    return {false, path, std::string(to_string(d.rule)) + ": " + e.what()};
  }
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    auto sub = check_at(d.premises[i], path + "/" + std::to_string(i));
    if (!sub.accepted) return sub;
  }
  return {};
}

}  // namespace

CheckResult check_derivation(const Derivation& d) { return check_at(d, "root"); }

Derivation synthesize_derivation(const CommandPtr& r, const StateSet& post) {
  if (std::holds_alternative<Command::Atomic>(r->node)) {
    return {Rule::atom, bwsem(*r, post), r, post, {}};
  }
  if (const auto* s = std::get_if<Command::Seq>(&r->node)) {
    Derivation second = synthesize_derivation(s->second, post);
    Derivation first = synthesize_derivation(s->first, second.pre);
    StateSet pre = first.pre;
    return {Rule::seq, std::move(pre), r, post, {std::move(first), std::move(second)}};
  }
  if (const auto* c = std::get_if<Command::Choice>(&r->node)) {
    Derivation left = synthesize_derivation(c->left, post);
    Derivation right = synthesize_derivation(c->right, post);
    StateSet pre = left.pre | right.pre;
    return {Rule::choice, std::move(pre), r, post, {std::move(left), std::move(right)}};
  }
  const auto& body = std::get<Command::Star>(r->node).body;
  std::vector<Derivation> family;
  StateSet all = post;
  StateSet q = post;
  while (true) {
    Derivation step = synthesize_derivation(body, q);
    if (step.pre.subset_of(all)) break;
    all |= step.pre;
    q = step.pre;
    family.push_back(std::move(step));
  }
  return {Rule::iter, std::move(all), r, post, std::move(family)};
}

std::optional<Derivation> derive_then_weaken(const CommandPtr& r, const StateSet& pre, const StateSet& post) {
  if (pre.is_empty()) return Derivation{Rule::empty, pre, r, post, {}};
  Derivation exact = synthesize_derivation(r, post);
  if (!pre.subset_of(exact.pre)) return std::nullopt;
  return Derivation{Rule::cons, pre, r, post, {std::move(exact)}};
}

namespace {

nlohmann::ordered_json to_json(const Derivation& d) {
  nlohmann::ordered_json j;
  j["rule"] = to_string(d.rule);
  j["pre"] = to_string(*state_set_to_bexp(d.pre));
  j["cmd"] = to_string(*d.cmd);
  j["post"] = to_string(*state_set_to_bexp(d.post));
  j["premises"] = nlohmann::ordered_json::array();
  for (const auto& p : d.premises) j["premises"].push_back(to_json(p));
  return j;
}

Derivation from_json(const nlohmann::json& j, const DomainPtr& domain) {
  if (!j.is_object()) throw Error("derivation node must be an object");
  auto field = [&](const char* name) -> std::string {
    if (!j.contains(name) || !j[name].is_string()) throw Error(std::string("derivation node lacks string field '") + name + "'");
    return j[name].get<std::string>();
  };
  const auto& vars = domain->vars();
  Derivation d{parse_rule(field("rule")), predicate_set(*parse_bexp(field("pre"), vars), domain),
               parse_command(field("cmd"), vars, false), predicate_set(*parse_bexp(field("post"), vars), domain),
               {}};
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) throw Error("premises must be an array");
    for (const auto& p : j["premises"]) d.premises.push_back(from_json(p, domain));
  }
  return d;
}

}  // namespace

std::string encode_derivation(const Derivation& d, int indent) { return to_json(d).dump(indent); }

Derivation decode_derivation(std::string_view json, const DomainPtr& domain) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed derivation JSON: ") + e.what());
  }
  return from_json(j, domain);
}

}  // namespace sil
