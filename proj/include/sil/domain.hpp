#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sil/syntax.hpp"

namespace sil {

using Value = std::uint32_t;
using StateIndex = std::uint64_t;

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultStateBudget = std::uint64_t{1} << 24;

// Variables range over {0, ..., modulus-1} with wraparound arithmetic.
// A store is encoded in mixed radix, first variable most significant, so the
// numeric order of indices is the lexicographic order of value tuples.
class DomainConfig {
 public:
  DomainConfig(std::vector<std::string> vars, Value modulus,
               std::uint64_t state_budget = kDefaultStateBudget);

  [[nodiscard]] const std::vector<std::string>& vars() const { return vars_; }
  [[nodiscard]] Value modulus() const { return modulus_; }
  [[nodiscard]] std::uint64_t size() const { return size_; }
  [[nodiscard]] int var_index(std::string_view name) const;
  [[nodiscard]] int require_var(std::string_view name) const;

  [[nodiscard]] Value value(StateIndex s, int var) const {
    return static_cast<Value>((s / weights_[var]) % modulus_);
  }
  [[nodiscard]] StateIndex with(StateIndex s, int var, Value v) const {
    return s - static_cast<StateIndex>(value(s, var)) * weights_[var] + static_cast<StateIndex>(v) * weights_[var];
  }
  [[nodiscard]] StateIndex weight(int var) const { return weights_[var]; }

  [[nodiscard]] std::vector<Value> decode(StateIndex s) const;
  [[nodiscard]] StateIndex encode(const std::vector<Value>& values) const;
  // "x=0, y=1"
  [[nodiscard]] std::string format(StateIndex s) const;

  bool operator==(const DomainConfig& other) const {
    return vars_ == other.vars_ && modulus_ == other.modulus_;
  }

  // Throws ScopeError unless every variable is declared here.
  void check_scope(const VarSet& used, std::string_view what) const;

 private:
  std::vector<std::string> vars_;
  Value modulus_;
  std::uint64_t size_;
  std::vector<StateIndex> weights_;
};

using DomainPtr = std::shared_ptr<const DomainConfig>;

DomainPtr make_domain(std::vector<std::string> vars, Value modulus,
                      std::uint64_t state_budget = kDefaultStateBudget);

// Read-only view of one store.
struct Store {
  const DomainConfig* domain;
  StateIndex index;
  [[nodiscard]] Value operator[](std::string_view var) const {
    return domain->value(index, domain->require_var(var));
  }
};

// A subset of the state space, as a bitset over store indices.
class StateSet {
 public:
  explicit StateSet(DomainPtr domain);

  static StateSet empty(const DomainPtr& domain) { return StateSet(domain); }
  static StateSet full(const DomainPtr& domain);
  static StateSet singleton(const DomainPtr& domain, StateIndex s);
  template <class Pred>
  static StateSet filter(const DomainPtr& domain, Pred&& pred) {
    StateSet out(domain);
    for (StateIndex s = 0; s < domain->size(); ++s)
      if (pred(s)) out.insert(s);
    return out;
  }

  [[nodiscard]] const DomainPtr& domain() const { return domain_; }
  [[nodiscard]] bool contains(StateIndex s) const { return (words_[s >> 6] >> (s & 63)) & 1u; }
  void insert(StateIndex s) { words_[s >> 6] |= std::uint64_t{1} << (s & 63); }
  void erase(StateIndex s) { words_[s >> 6] &= ~(std::uint64_t{1} << (s & 63)); }

  [[nodiscard]] std::uint64_t count() const;
  [[nodiscard]] bool is_empty() const;
  [[nodiscard]] bool is_full() const { return count() == domain_->size(); }
  [[nodiscard]] std::optional<StateIndex> first() const;
  [[nodiscard]] std::optional<StateIndex> next(StateIndex after) const;
  [[nodiscard]] bool subset_of(const StateSet& other) const;
  [[nodiscard]] bool intersects(const StateSet& other) const;
  [[nodiscard]] std::vector<StateIndex> elements() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        f(static_cast<StateIndex>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  StateSet& operator|=(const StateSet& other);
  StateSet& operator&=(const StateSet& other);
  StateSet& operator-=(const StateSet& other);
  [[nodiscard]] StateSet complement() const;

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }
  friend StateSet operator~(const StateSet& a) { return a.complement(); }
  bool operator==(const StateSet& other) const;

 private:
  void check_compatible(const StateSet& other) const;
  void trim();

  DomainPtr domain_;
  std::vector<std::uint64_t> words_;
};

// A binary relation on states in compressed-row form.
class StateRelation {
 public:
  StateRelation(DomainPtr domain, std::vector<std::uint64_t> offsets, std::vector<StateIndex> targets);

  [[nodiscard]] const DomainPtr& domain() const { return domain_; }
  [[nodiscard]] std::size_t successor_count(StateIndex s) const { return offsets_[s + 1] - offsets_[s]; }
  template <class F>
  void for_each_successor(StateIndex s, F&& f) const {
    for (auto k = offsets_[s]; k < offsets_[s + 1]; ++k) f(targets_[k]);
  }
  [[nodiscard]] bool contains(StateIndex from, StateIndex to) const;
  [[nodiscard]] std::uint64_t pair_count() const { return targets_.size(); }
  [[nodiscard]] StateSet image(const StateSet& s) const;
  [[nodiscard]] StateSet preimage(const StateSet& q) const;

 private:
  DomainPtr domain_;
  std::vector<std::uint64_t> offsets_;
  std::vector<StateIndex> targets_;
};

}  // namespace sil
