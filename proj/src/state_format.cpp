#include "sil/state_format.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sil {

namespace {

BExpPtr conj(BExpPtr a, BExpPtr b) {
  if (!a) return b;
  if (!b) return a;
  return make_and(std::move(a), std::move(b));
}

BExpPtr disj(BExpPtr a, BExpPtr b) {
  if (!a) return b;
  return make_or(std::move(a), std::move(b));
}

// Condition "var takes one of `values`" as a disjunction of ranges.
BExpPtr value_condition(const std::string& var, const std::vector<Value>& values, Value modulus) {
  BExpPtr out;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j + 1 < values.size() && values[j + 1] == values[j] + 1) ++j;
    const Value lo = values[i], hi = values[j];
    BExpPtr range;
    if (lo == hi) {
      range = make_cmp(CmpOp::eq, make_var(var), make_lit(lo));
    } else if (lo == 0) {
      range = make_cmp(CmpOp::le, make_var(var), make_lit(hi));
    } else if (hi == modulus - 1) {
      range = make_cmp(CmpOp::ge, make_var(var), make_lit(lo));
    } else {
      range = make_and(make_cmp(CmpOp::ge, make_var(var), make_lit(lo)),
                       make_cmp(CmpOp::le, make_var(var), make_lit(hi)));
    }
    out = disj(out, range);
    i = j + 1;
  }
  return out;
}

BExpPtr encode_chunk(const std::vector<bool>& bits, const DomainConfig& d, std::size_t var) {
  const bool any = std::find(bits.begin(), bits.end(), true) != bits.end();
  if (!any) return make_false();
  if (std::find(bits.begin(), bits.end(), false) == bits.end()) return make_true();
  const std::size_t chunk = bits.size() / d.modulus();
  std::map<std::vector<bool>, std::vector<Value>> groups;
  std::vector<const std::vector<bool>*> order;
  for (Value v = 0; v < d.modulus(); ++v) {
    std::vector<bool> sub(bits.begin() + static_cast<std::ptrdiff_t>(v * chunk),
                          bits.begin() + static_cast<std::ptrdiff_t>((v + 1) * chunk));
    auto [it, inserted] = groups.try_emplace(std::move(sub));
    it->second.push_back(v);
    if (inserted) order.push_back(&it->first);
  }
  BExpPtr out;
  for (const auto* key : order) {
    if (std::find(key->begin(), key->end(), true) == key->end()) continue;
    const auto& values = groups.at(*key);
    BExpPtr cond = values.size() == d.modulus() ? nullptr : value_condition(d.vars()[var], values, d.modulus());
    BExpPtr rest = encode_chunk(*key, d, var + 1);
    if (std::holds_alternative<BExp::Not>(rest->node) &&
        std::holds_alternative<BExp::False>(std::get<BExp::Not>(rest->node).arg->node)) {
      rest = nullptr;
    }
    BExpPtr term = conj(cond, rest);
    out = disj(out, term ? term : make_true());
  }
  return out;
}

using Cube = std::vector<int>;  // -1 = any value

bool cube_less(const Cube& a, const Cube& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long x = a[i] < 0 ? 1L << 40 : a[i];
    const long y = b[i] < 0 ? 1L << 40 : b[i];
    if (x != y) return x < y;
  }
  return false;
}

bool covers(const Cube& big, const Cube& small) {
  for (std::size_t i = 0; i < big.size(); ++i)
    if (big[i] >= 0 && big[i] != small[i]) return false;
  return true;
}

std::vector<Cube> minimize(const std::vector<Cube>& minterms, Value modulus, std::size_t nvars) {
  std::set<Cube> all(minterms.begin(), minterms.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < nvars; ++i) {
      std::map<Cube, std::set<int>> groups;
      for (const auto& c : all) {
        if (c[i] < 0) continue;
        Cube key = c;
        key[i] = -2;
        groups[key].insert(c[i]);
      }
      for (auto& [key, values] : groups) {
        if (values.size() != modulus) continue;
        Cube merged = key;
        merged[i] = -1;
        if (all.insert(merged).second) grew = true;
      }
    }
  }
  std::vector<Cube> primes;
  for (const auto& c : all) {
    bool dominated = false;
    for (const auto& o : all) {
      if (o != c && covers(o, c)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) primes.push_back(c);
  }
  std::vector<bool> chosen(primes.size(), false);
  std::vector<bool> done(minterms.size(), false);
  for (std::size_t m = 0; m < minterms.size(); ++m) {
    std::size_t hits = 0, last = 0;
    for (std::size_t p = 0; p < primes.size(); ++p)
      if (covers(primes[p], minterms[m])) ++hits, last = p;
    if (hits == 1) chosen[last] = true;
  }
  auto refresh = [&] {
    for (std::size_t m = 0; m < minterms.size(); ++m)
      for (std::size_t p = 0; p < primes.size() && !done[m]; ++p)
        if (chosen[p] && covers(primes[p], minterms[m])) done[m] = true;
  };
  refresh();
  while (std::find(done.begin(), done.end(), false) != done.end()) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t p = 0; p < primes.size(); ++p) {
      if (chosen[p]) continue;
      std::size_t gain = 0;
      for (std::size_t m = 0; m < minterms.size(); ++m)
        if (!done[m] && covers(primes[p], minterms[m])) ++gain;
      if (gain > best_gain) best = p, best_gain = gain;
    }
    chosen[best] = true;
    refresh();
  }
  std::vector<Cube> out;
  for (std::size_t p = 0; p < primes.size(); ++p)
    if (chosen[p]) out.push_back(primes[p]);
  std::sort(out.begin(), out.end(), cube_less);
  return out;
}

}  // namespace

BExpPtr state_set_to_bexp(const StateSet& s) {
  const DomainConfig& d = *s.domain();
  std::vector<bool> bits(d.size(), false);
  s.for_each([&](StateIndex i) { bits[i] = true; });
  return encode_chunk(bits, d, 0);
}

std::string describe_state_set(const StateSet& s, const DescribeOptions& opts) {
  const DomainConfig& d = *s.domain();
  const auto n = s.count();
  if (n == 0) return "false";
  if (n == d.size()) return "true";
  if (n <= opts.max_minterms) {
    std::vector<Cube> minterms;
    s.for_each([&](StateIndex i) {
      auto values = d.decode(i);
      minterms.emplace_back(values.begin(), values.end());
    });
    auto cubes = minimize(minterms, d.modulus(), d.vars().size());
    if (cubes.size() <= opts.max_cubes) {
      std::string out;
      for (const auto& c : cubes) {
        if (!out.empty()) out += " || ";
        std::string term;
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (c[i] < 0) continue;
          if (!term.empty()) term += " && ";
          term += d.vars()[i] + " = " + std::to_string(c[i]);
        }
        out += term.empty() ? "true" : term;
      }
      return out;
    }
  }
  std::string out = std::to_string(n) + " of " + std::to_string(d.size()) + " states, e.g.";
  std::size_t shown = 0;
  for (auto i = s.first(); i && shown < opts.samples; i = s.next(*i), ++shown) {
    out += (shown ? "; {" : " {") + d.format(*i) + "}";
  }
  return out;
}

}  // namespace sil
