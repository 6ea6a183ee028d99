#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sil/derivation.hpp"
#include "sil/domain.hpp"
#include "sil/syntax.hpp"
#include "sil/triples.hpp"

namespace sil::taxonomy {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 gen_;
};

struct GenConfig {
  int max_depth = 4;
  int vars = 3;
  Value modulus = 8;
  // Constructor weights: atomic, sequence, choice, star.
  unsigned w_atomic = 3, w_seq = 3, w_choice = 2, w_star = 1;
  // Atomic weights: skip, assign, assume, havoc.
  unsigned w_skip = 1, w_assign = 4, w_assume = 3, w_havoc = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

CommandPtr gen_command(const GenConfig& cfg);
CommandPtr gen_command(const GenConfig& cfg, const std::vector<std::string>& vars, Rng& rng);
BExpPtr gen_bexp(const GenConfig& cfg, const std::vector<std::string>& vars, Rng& rng);
// Half predicates, half explicit sets (empty, full, singleton, random subset).
StateSet gen_state_set(const GenConfig& cfg, const DomainPtr& domain, Rng& rng);

struct Instance {
  DomainPtr domain;
  CommandPtr r;
  StateSet pre;
  StateSet post;
};

// Instance i is drawn from a generator seeded with cfg.seed + i.
Instance gen_instance(const GenConfig& cfg, std::uint64_t index);

// fwsem(P) <= Q iff bwsem(not Q) <= not P.
bool check_bijection_hl_nc(const Command& r, const StateSet& pre, const StateSet& post);
// deterministic => (SIL => HL); terminating => (HL => SIL).
bool check_sil_hl_relation(const Command& r, const StateSet& pre, const StateSet& post);
// bwsem(fwsem P) >= P \ D and fwsem(bwsem Q) >= Q \ U.
bool check_galois_inequalities(const Command& r, const StateSet& pre, const StateSet& post);

struct ConjCounterexample {
  CommandPtr r;
  StateSet pre1, pre2, post1, post2;
};

// Both component triples valid, the componentwise intersection invalid.
// Only il and sil are accepted; known instances are tried first.
std::optional<ConjCounterexample> find_conj_counterexample(Logic logic, const GenConfig& cfg,
                                                           std::uint64_t budget = 500);

// A random derivation accepted by check_derivation whose conclusion has the
// given post.
Derivation random_derivation(const CommandPtr& r, const StateSet& post, Rng& rng, int budget = 6);

enum class PropertyKind { universal, search };

struct Violation {
  std::string r;
  std::string pre;
  std::string post;
  std::string lhs;  // the two sides of the failed check
  std::string rhs;
  bool confirmed = true;  // still fails under the relation-based semantics
};

struct PropertyReport {
  std::string id;
  PropertyKind kind = PropertyKind::universal;
  std::uint64_t instances = 0;
  std::vector<Violation> violations;
  bool found = false;         // search properties
  std::string witness;        // search properties
  double elapsed_ms = 0;

  [[nodiscard]] bool ok() const { return kind == PropertyKind::universal ? violations.empty() : found; }
};

PropertyReport check_il_sil_incomparable(const GenConfig& cfg, std::uint64_t budget = 500);

struct SuiteConfig {
  GenConfig gen;
  std::uint64_t instances = 500;
  std::vector<std::string> properties;  // empty means all
};

const std::vector<std::string>& property_ids();
PropertyReport run_property(std::string_view id, const SuiteConfig& cfg);
std::vector<PropertyReport> run_taxonomy_suite(const SuiteConfig& cfg);

std::string format_report_text(const std::vector<PropertyReport>& reports, bool timing = false);
// One JSON object per line.
std::string format_report_json(const std::vector<PropertyReport>& reports, bool timing = false);
PropertyReport parse_report_json(std::string_view line);

}  // namespace sil::taxonomy
