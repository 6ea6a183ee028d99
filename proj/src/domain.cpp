#include "sil/domain.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace sil {

DomainConfig::DomainConfig(std::vector<std::string> vars, Value modulus, std::uint64_t state_budget)
    : vars_(std::move(vars)), modulus_(modulus) {
  if (modulus_ < 2) throw ConfigError("modulus must be at least 2");
  if (vars_.empty()) throw ConfigError("domain needs at least one variable");
  std::set<std::string> seen(vars_.begin(), vars_.end());
  if (seen.size() != vars_.size()) throw ConfigError("duplicate variable in domain");
  size_ = 1;
  weights_.assign(vars_.size(), 1);
  for (std::size_t i = vars_.size(); i-- > 0;) {
    weights_[i] = size_;
    if (size_ > state_budget / modulus_) {
      throw ConfigError("state space " + std::to_string(modulus_) + "^" + std::to_string(vars_.size()) +
                        " exceeds budget of " + std::to_string(state_budget) + " states");
    }
    size_ *= modulus_;
  }
  if (size_ > state_budget) throw ConfigError("state space exceeds budget");
}

DomainPtr make_domain(std::vector<std::string> vars, Value modulus, std::uint64_t state_budget) {
  return std::make_shared<const DomainConfig>(std::move(vars), modulus, state_budget);
}

int DomainConfig::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

int DomainConfig::require_var(std::string_view name) const {
  const int i = var_index(name);
  if (i < 0) throw ScopeError("variable '" + std::string(name) + "' is not in the domain");
  return i;
}

std::vector<Value> DomainConfig::decode(StateIndex s) const {
  std::vector<Value> out(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) out[i] = value(s, static_cast<int>(i));
  return out;
}

StateIndex DomainConfig::encode(const std::vector<Value>& values) const {
  if (values.size() != vars_.size()) throw ConfigError("store arity mismatch");
  StateIndex s = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (values[i] >= modulus_) throw ConfigError("value out of range");
    s += values[i] * weights_[i];
  }
  return s;
}

std::string DomainConfig::format(StateIndex s) const {
  std::string out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) out += ", ";
    out += vars_[i] + "=" + std::to_string(value(s, static_cast<int>(i)));
  }
  return out.empty() ? "{}" : out;
}

void DomainConfig::check_scope(const VarSet& used, std::string_view what) const {
  for (const auto& v : used) {
    if (var_index(v) < 0) {
      throw ScopeError(std::string(what) + " uses variable '" + v + "' which is not declared");
    }
  }
}

// ---- StateSet ----

StateSet::StateSet(DomainPtr domain) : domain_(std::move(domain)) {
  if (!domain_) throw ConfigError("state set without a domain");
  words_.assign((domain_->size() + 63) / 64, 0);
}

StateSet StateSet::full(const DomainPtr& domain) {
  StateSet out(domain);
  std::fill(out.words_.begin(), out.words_.end(), ~std::uint64_t{0});
  out.trim();
  return out;
}

StateSet StateSet::singleton(const DomainPtr& domain, StateIndex s) {
  StateSet out(domain);
  out.insert(s);
  return out;
}

void StateSet::trim() {
  const auto rem = domain_->size() % 64;
  if (rem && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

std::uint64_t StateSet::count() const {
  std::uint64_t n = 0;
  for (auto w : words_) n += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return n;
}

bool StateSet::is_empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

std::optional<StateIndex> StateSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return w * 64 + __builtin_ctzll(words_[w]);
  return std::nullopt;
}

std::optional<StateIndex> StateSet::next(StateIndex after) const {
  StateIndex s = after + 1;
  if (s >= domain_->size()) return std::nullopt;
  std::size_t w = s >> 6;
  std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (s & 63));
  while (true) {
    if (bits) return w * 64 + __builtin_ctzll(bits);
    if (++w >= words_.size()) return std::nullopt;
    bits = words_[w];
  }
}

bool StateSet::subset_of(const StateSet& other) const {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool StateSet::intersects(const StateSet& other) const {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

std::vector<StateIndex> StateSet::elements() const {
  std::vector<StateIndex> out;
  for_each([&](StateIndex s) { out.push_back(s); });
  return out;
}

StateSet& StateSet::operator|=(const StateSet& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

StateSet& StateSet::operator&=(const StateSet& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

StateSet& StateSet::operator-=(const StateSet& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

StateSet StateSet::complement() const {
  StateSet out(domain_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  out.trim();
  return out;
}

bool StateSet::operator==(const StateSet& other) const {
  return *domain_ == *other.domain_ && words_ == other.words_;
}

void StateSet::check_compatible(const StateSet& other) const {
  if (domain_ != other.domain_ && !(*domain_ == *other.domain_)) {
    throw ConfigError("state sets over different domains");
  }
}

// ---- StateRelation ----

StateRelation::StateRelation(DomainPtr domain, std::vector<std::uint64_t> offsets,
                             std::vector<StateIndex> targets)
    : domain_(std::move(domain)), offsets_(std::move(offsets)), targets_(std::move(targets)) {
  if (offsets_.size() != domain_->size() + 1) throw ConfigError("malformed relation");
}

bool StateRelation::contains(StateIndex from, StateIndex to) const {
  auto b = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[from]);
  auto e = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[from + 1]);
  return std::binary_search(b, e, to);
}

StateSet StateRelation::image(const StateSet& s) const {
  StateSet out(domain_);
  s.for_each([&](StateIndex from) { for_each_successor(from, [&](StateIndex to) { out.insert(to); }); });
  return out;
}

StateSet StateRelation::preimage(const StateSet& q) const {
  StateSet out(domain_);
  for (StateIndex from = 0; from < domain_->size(); ++from) {
    for (auto k = offsets_[from]; k < offsets_[from + 1]; ++k) {
      if (q.contains(targets_[k])) {
        out.insert(from);
        break;
      }
    }
  }
  return out;
}

}  // namespace sil
