#pragma once

#include <cstddef>
#include <string>

#include "sil/domain.hpp"
#include "sil/syntax.hpp"

namespace sil {

// An exact guard for the set: parse + predicate_set gives the set back.
BExpPtr state_set_to_bexp(const StateSet& s);

struct DescribeOptions {
  std::size_t max_minterms = 4096;
  std::size_t max_cubes = 12;
  std::size_t samples = 3;
};

// Human-oriented rendering: a disjunction of minimized cubes when small,
// otherwise a state count with a few sample stores.
std::string describe_state_set(const StateSet& s, const DescribeOptions& opts = {});

}  // namespace sil
