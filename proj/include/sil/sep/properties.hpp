#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sil/sep/derivation.hpp"
#include "sil/sep/satisfaction.hpp"

namespace sil::sep {

// One instance of every axiom, over variables x, y, z.
std::vector<SepDerivation> axiom_instances();

// Small accepted derivations exercising every structural rule.
std::vector<SepDerivation> derivation_corpus();

// Frames over z, w and the free variables of the corpus.
std::vector<AslPtr> frame_set();

// Every node of a derivation tree, root first.
std::vector<const SepDerivation*> subderivations(const SepDerivation& d);

struct FramedFailure {
  AslPtr frame;
  SepVerdict verdict;
};

// For each frame t with fv(t) disjoint from mod(cmd): <pre * t> cmd <post * t>
// is valid. Returns the first failure.
std::optional<FramedFailure> framed_soundness(const SepDerivation& d, const std::vector<AslPtr>& frames,
                                              const SepConfig& cfg, std::size_t* checked = nullptr);

// Stores that agree on fv(p) agree on p: every state of the universe is
// compared with its variants on one variable outside fv(p).
std::optional<std::string> check_fv_agreement(const Asl& p, const std::vector<std::string>& vars,
                                              const SepConfig& cfg);

// (s, h) |= p[a/x] implies (s[x := a(s)], h) |= p, over states where a is
// defined.
std::optional<std::string> check_substitution_lemma(const AslPtr& p, const AExpPtr& a, const std::string& x,
                                                    const std::vector<std::string>& vars, const SepConfig& cfg);

// Non-error outcomes change only mod(r), from every state of the universe.
std::optional<std::string> check_store_agreement(const Command& r, const std::vector<std::string>& vars,
                                                 const SepConfig& cfg);

}  // namespace sil::sep
