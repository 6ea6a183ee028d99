#pragma once

#include <vector>

#include "sil/domain.hpp"
#include "sil/syntax.hpp"

namespace sil {

Value eval_aexp(const AExp& e, const Store& store);
bool eval_bexp(const BExp& b, const Store& store);

// States satisfying a guard.
StateSet predicate_set(const BExp& b, const DomainPtr& domain);

// Forward collecting semantics, lifted to sets.
StateSet fwsem(const Command& r, const StateSet& pre);

// Backward semantics, computed compositionally on the command structure.
StateSet bwsem(const Command& r, const StateSet& post);

// Successors of a single store, computed without bitsets (sorted, unique).
std::vector<StateIndex> successors(const Command& r, const DomainPtr& domain, StateIndex s);

// Input/output relation of `r`, one forward run per store.
StateRelation semantics_relation(const Command& r, const DomainPtr& domain);

// Stores with no outcome.
StateSet diverging_states(const Command& r, const DomainPtr& domain);
// Stores that no execution reaches.
StateSet unreachable_states(const Command& r, const DomainPtr& domain);

bool is_deterministic(const Command& r, const DomainPtr& domain);
bool is_terminating(const Command& r, const DomainPtr& domain);

}  // namespace sil
