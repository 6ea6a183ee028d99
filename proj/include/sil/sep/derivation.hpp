#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sil/derivation.hpp"
#include "sil/sep/asl.hpp"
#include "sil/sep/heap.hpp"
#include "sil/syntax.hpp"

namespace sil::sep {

enum class SepRule {
  skip, assign, assert_, alloc, free_, load, store,
  exists, frame, cons, seq, choice, iter, empty, disj, iter0, unroll,
};

const char* to_string(SepRule rule);
SepRule parse_sep_rule(std::string_view name);

// Proof tree for <pre> cmd <post> in the heap logic. `frame` is set on frame
// nodes and `bound_var` on exists nodes.
//
// iter: premises D0..D(N-1) with Dn concluding <q(n+1)> r <q(n)>; the
// conclusion is <q0 || q1 || ... || qN> r* <q0>, disjunction left-nested.
struct SepDerivation {
  SepRule rule;
  AslPtr pre;
  CommandPtr cmd;
  AslPtr post;
  std::vector<SepDerivation> premises;
  AslPtr frame;
  std::optional<std::string> bound_var;

  [[nodiscard]] std::size_t size() const;
};

bool operator==(const SepDerivation& a, const SepDerivation& b);

// Axiom shapes compare formulas up to renaming of bound variables; cons
// entailments are checked by enumeration under `cfg`.
CheckResult check_sep_derivation(const SepDerivation& d, const SepConfig& cfg);

// Rule-specific premise formulas, for building trees.
AslPtr assign_axiom_pre(const AslPtr& post, const std::string& var, const AExpPtr& value);
AslPtr alloc_axiom_pre(const std::string& var, const std::string& fresh);
AslPtr load_axiom_pre(const AslPtr& post, const std::string& dst);
AslPtr iter_pre(const std::vector<AslPtr>& family);

std::string encode_sep_derivation(const SepDerivation& d, int indent = 2);
SepDerivation decode_sep_derivation(std::string_view json, const std::vector<std::string>& program_vars);

}  // namespace sil::sep
