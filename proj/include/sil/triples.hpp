#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sil/domain.hpp"
#include "sil/syntax.hpp"

namespace sil {

// hl: forward over-approximation, il: forward under-approximation,
// nc: backward over-approximation, sil: backward under-approximation.
enum class Logic { hl, il, nc, sil };

const char* to_string(Logic logic);
Logic parse_logic(std::string_view name);

struct Triple {
  Logic logic;
  StateSet pre;
  CommandPtr cmd;
  StateSet post;
};

// On failure, the witness is the least offending store in index order:
//   sil: pre_state in P that cannot reach Q
//   hl:  pre_state in P with an outcome post_state outside Q
//   il:  post_state in Q not reachable from P
//   nc:  pre_state outside P that can reach Q
struct Verdict {
  bool valid = true;
  std::optional<StateIndex> pre_state;
  std::optional<StateIndex> post_state;

  [[nodiscard]] std::string describe(const DomainConfig& domain) const;
};

Verdict check_validity(const Triple& t);
Verdict check_validity(Logic logic, const StateSet& pre, const Command& r, const StateSet& post);

// Every state in P has at least one execution ending in Q, checked per state.
bool sil_holds_pointwise(const StateSet& pre, const Command& r, const StateSet& post);

StateSet weakest_sil_pre(const Command& r, const StateSet& post);
StateSet wlp(const Command& r, const StateSet& post);
StateSet weakest_nc_post(const Command& r, const StateSet& pre);

// Every initial state can reach `error`.
Verdict manifest_error_check(const Command& r, const StateSet& error);
bool is_manifest_error(const Command& r, const StateSet& error);

}  // namespace sil
