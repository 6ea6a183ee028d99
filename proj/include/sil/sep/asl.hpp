#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "sil/syntax.hpp"

namespace sil::sep {

struct Asl;
using AslPtr = std::shared_ptr<const Asl>;

// Separation-logic assertions. `true`, `||` and `x |-> -` are sugar over the
// core forms below (see make_true, make_or, make_points_to_any).
struct Asl {
  struct False {};
  struct Not {
    AslPtr arg;
  };
  struct And {
    AslPtr lhs;
    AslPtr rhs;
  };
  struct Exists {
    std::string var;
    AslPtr body;
  };
  struct Cmp {
    CmpOp op;
    AExpPtr lhs;
    AExpPtr rhs;
  };
  struct Emp {};
  struct PointsTo {
    AExpPtr addr;
    AExpPtr value;
  };
  struct Dangling {
    AExpPtr addr;
  };
  struct Star {
    AslPtr lhs;
    AslPtr rhs;
  };
  std::variant<False, Not, And, Exists, Cmp, Emp, PointsTo, Dangling, Star> node;
};

AslPtr make_false();
AslPtr make_true();
AslPtr make_not(AslPtr p);
AslPtr make_and(AslPtr p, AslPtr q);
AslPtr make_or(AslPtr p, AslPtr q);
AslPtr make_exists(std::string var, AslPtr body);
AslPtr make_cmp(CmpOp op, AExpPtr lhs, AExpPtr rhs);
AslPtr make_emp();
AslPtr make_points_to(AExpPtr addr, AExpPtr value);
AslPtr make_points_to_any(AExpPtr addr);
AslPtr make_dangling(AExpPtr addr);
AslPtr make_star(AslPtr p, AslPtr q);

// Embeds a program guard as a pure assertion.
AslPtr from_bexp(const BExp& b);

// Name bound by the `x |-> -` sugar for the given address.
std::string points_to_any_binder(const AExp& addr);

bool operator==(const Asl& a, const Asl& b);
bool alpha_equivalent(const Asl& a, const Asl& b);

VarSet free_vars(const Asl& p);

// Capture-avoiding p[a/x].
AslPtr substitute(const AslPtr& p, const AExpPtr& a, const std::string& x);
AExpPtr substitute(const AExpPtr& e, const AExpPtr& a, const std::string& x);

std::string to_string(const Asl& p);

AslPtr parse_asl(std::string_view text);

}  // namespace sil::sep
