#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sil/sep/asl.hpp"
#include "sil/sep/heap.hpp"

namespace sil::sep {

// (s, h) |= p. Comparisons ignore the heap; `x |-> a` and `x |-/>` describe
// exactly one cell. Existentials range over the integers,
// the enumerated locations, the locations the state mentions and one
// location it does not.
bool satisfies(const Asl& p, const SepVars& vars, const HeapState& s, const SepConfig& cfg);

struct SepStates {
  SepVars vars;
  std::vector<HeapState> states;
};

// All enumerated states over program_vars + fv(p) satisfying p.
SepStates eval_asl(const Asl& p, const SepConfig& cfg, const std::vector<std::string>& program_vars = {});

struct SepVerdict {
  bool valid = true;
  SepVars vars;
  std::optional<HeapState> witness;
  std::uint64_t states_checked = 0;

  [[nodiscard]] std::string describe() const;
};

// Every state satisfying `lhs` satisfies `rhs`, over fv(lhs) + fv(rhs).
SepVerdict check_entailment(const Asl& lhs, const Asl& rhs, const SepConfig& cfg);

// <p> r <q>: every state satisfying p has a non-error outcome satisfying q.
SepVerdict check_sep_validity(const Asl& p, const Command& r, const Asl& q, const SepConfig& cfg,
                              const std::vector<std::string>& program_vars = {});

}  // namespace sil::sep
