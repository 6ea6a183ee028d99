#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sil/syntax.hpp"

namespace sil::sep {

inline constexpr int kMaxLocations = 8;
inline constexpr int kMaxVars = 8;

// A value is a bounded integer or a location id.
struct HVal {
  enum Kind : std::uint8_t { integer = 0, location = 1 };
  Kind kind = integer;
  std::int32_t v = 0;

  static HVal num(std::int64_t n) { return {integer, static_cast<std::int32_t>(n)}; }
  static HVal loc(int id) { return {location, id}; }
  [[nodiscard]] bool is_loc() const { return kind == location; }
  auto operator<=>(const HVal&) const = default;
};

struct Cell {
  enum State : std::uint8_t { absent = 0, freed = 1, held = 2 };
  State state = absent;
  HVal value;
  auto operator<=>(const Cell&) const = default;
};

using Heap = std::array<Cell, kMaxLocations>;

// Store entries follow the variable list of the universe the state lives in.
struct HeapState {
  bool err = false;
  std::uint8_t arity = 0;
  std::array<HVal, kMaxVars> store{};
  Heap heap{};
  auto operator<=>(const HeapState&) const = default;
};

struct SepConfig {
  int locations = 3;          // locations enumerated in initial states
  std::int64_t int_lo = 0;    // integers range over int_lo..int_hi, wrapping
  std::int64_t int_hi = 1;
  int spare_locations = 1;    // extra locations only alloc can hand out
  std::uint64_t state_budget = std::uint64_t{1} << 22;

  [[nodiscard]] std::int64_t wrap(std::int64_t n) const;
  // Integers plus the enumerated locations.
  [[nodiscard]] std::vector<HVal> base_values() const;
  void validate() const;
};

SepConfig config_from_bounds(const HeapBounds& bounds);

// Variables of a heap universe, in store order.
class SepVars {
 public:
  SepVars() = default;
  explicit SepVars(std::vector<std::string> names);
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] int index(const std::string& name) const;
  [[nodiscard]] int require(const std::string& name) const;
  [[nodiscard]] std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
};

// Program variables first, then the remaining ones in name order.
SepVars universe_vars(const std::vector<std::string>& base, const VarSet& extra);

std::string format_value(const HVal& v);
std::string format_state(const HeapState& s, const SepVars& vars);

// Every location id mentioned by the state (allocated, freed or stored).
std::vector<int> locations_in(const HeapState& s);

std::optional<HVal> eval_heap_aexp(const AExp& e, const SepVars& vars, const HeapState& s, const SepConfig& cfg);

// Comparisons involving an undefined operand are false. Integers compare
// numerically; locations only support = and != (ids); mixed kinds are unequal.
bool heap_compare(CmpOp op, const std::optional<HVal>& lhs, const std::optional<HVal>& rhs);

bool eval_heap_guard(const BExp& b, const SepVars& vars, const HeapState& s, const SepConfig& cfg);

// Outcomes of one execution step from a single state, sorted and unique.
// Errors are the absorbing `err` state.
std::vector<HeapState> heap_successors(const Command& r, const SepVars& vars, const HeapState& s,
                                       const SepConfig& cfg);

// Non-error outcomes keep every variable outside mod(r) unchanged.
bool store_mod_agreement(const Command& r, const SepVars& vars, const HeapState& s, const SepConfig& cfg);

std::uint64_t universe_size(const SepVars& vars, const SepConfig& cfg);

// Calls `f` on every state over the enumerated locations and base values.
void for_each_state(const SepVars& vars, const SepConfig& cfg, const std::function<void(const HeapState&)>& f);

}  // namespace sil::sep
