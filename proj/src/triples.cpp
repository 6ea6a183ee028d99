#include "sil/triples.hpp"

#include <algorithm>
#include <stdexcept>

#include "sil/semantics.hpp"

namespace sil {

const char* to_string(Logic logic) {
  switch (logic) {
    case Logic::hl: return "hl";
    case Logic::il: return "il";
    case Logic::nc: return "nc";
    case Logic::sil: return "sil";
  }
  return "?";
}

Logic parse_logic(std::string_view name) {
  if (name == "hl") return Logic::hl;
  if (name == "il") return Logic::il;
  if (name == "nc") return Logic::nc;
  if (name == "sil") return Logic::sil;
  throw Error("unknown logic '" + std::string(name) + "' (expected hl, il, nc or sil)");
}

std::string Verdict::describe(const DomainConfig& d) const {
  if (valid) return "valid";
  std::string out = "invalid";
  if (pre_state && post_state) {
    out += ": {" + d.format(*pre_state) + "} -> {" + d.format(*post_state) + "}";
  } else if (pre_state) {
    out += ": {" + d.format(*pre_state) + "}";
  } else if (post_state) {
    out += ": {" + d.format(*post_state) + "}";
  }
  return out;
}

bool sil_holds_pointwise(const StateSet& pre, const Command& r, const StateSet& post) {
  bool ok = true;
  const auto& domain = pre.domain();
  pre.for_each([&](StateIndex s) {
    if (!ok) return;
    auto succ = successors(r, domain, s);
    ok = std::any_of(succ.begin(), succ.end(), [&](StateIndex t) { return post.contains(t); });
  });
  return ok;
}

Verdict check_validity(Logic logic, const StateSet& pre, const Command& r, const StateSet& post) {
  Verdict v;
  switch (logic) {
    case Logic::sil: {
      const StateSet missing = pre - bwsem(r, post);
      v.valid = missing.is_empty();
      if (!v.valid) v.pre_state = missing.first();
      break;
    }
    case Logic::hl: {
      const StateSet escaped = fwsem(r, pre) - post;
      v.valid = escaped.is_empty();
      if (!v.valid) {
        v.pre_state = (pre & bwsem(r, escaped)).first();
        v.post_state = (fwsem(r, StateSet::singleton(pre.domain(), *v.pre_state)) & escaped).first();
      }
      break;
    }
    case Logic::il: {
      const StateSet unreached = post - fwsem(r, pre);
      v.valid = unreached.is_empty();
      if (!v.valid) v.post_state = unreached.first();
      break;
    }
    case Logic::nc: {
      const StateSet extra = bwsem(r, post) - pre;
      v.valid = extra.is_empty();
      if (!v.valid) v.pre_state = extra.first();
      break;
    }
  }
  return v;
}

Verdict check_validity(const Triple& t) { return check_validity(t.logic, t.pre, *t.cmd, t.post); }

StateSet weakest_sil_pre(const Command& r, const StateSet& post) { return bwsem(r, post); }

StateSet wlp(const Command& r, const StateSet& post) { return ~bwsem(r, ~post); }

StateSet weakest_nc_post(const Command& r, const StateSet& pre) { return ~fwsem(r, ~pre); }

Verdict manifest_error_check(const Command& r, const StateSet& error) {
  return check_validity(Logic::sil, StateSet::full(error.domain()), r, error);
}

bool is_manifest_error(const Command& r, const StateSet& error) { return manifest_error_check(r, error).valid; }

}  // namespace sil
