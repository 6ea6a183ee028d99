#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sil/domain.hpp"
#include "sil/syntax.hpp"

namespace sil {

enum class Rule { atom, cons, seq, choice, iter, empty, disj, iter0, unroll, unroll_split };

const char* to_string(Rule rule);
Rule parse_rule(std::string_view name);

// A proof tree for a backward under-approximation triple <pre> cmd <post>.
//
// iter is the truncated form: premises D0..D(N-1), where Dn concludes
// <Q(n+1)> r <Q(n)>; the conclusion is <Q0 u ... u QN> r* <Q0>. Indices past
// N stand for empty sets.
//
// unroll_split has one premise <P> r*; r <Q1> and concludes
// <P u Q2> r* <Q1 u Q2> for some Q2, which the checker reconstructs.
struct Derivation {
  Rule rule;
  StateSet pre;
  CommandPtr cmd;
  StateSet post;
  std::vector<Derivation> premises;

  bool operator==(const Derivation& other) const;
  [[nodiscard]] std::size_t size() const;
};

struct CheckResult {
  bool accepted = true;
  std::string path;  // e.g. "root/1/0"
  std::string message;

  [[nodiscard]] std::string describe() const;
};

CheckResult check_derivation(const Derivation& d);

// The derivation built by the completeness argument: its conclusion is
// <bwsem(r, post)> r <post>.
Derivation synthesize_derivation(const CommandPtr& r, const StateSet& post);

// A derivation of <pre> r <post> when valid: empty if pre is empty, otherwise
// cons over the synthesized derivation.
std::optional<Derivation> derive_then_weaken(const CommandPtr& r, const StateSet& pre, const StateSet& post);

// JSON with fields rule, pre, cmd, post, premises; assertions are guards.
std::string encode_derivation(const Derivation& d, int indent = 2);
Derivation decode_derivation(std::string_view json, const DomainPtr& domain);

}  // namespace sil
