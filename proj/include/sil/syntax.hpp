#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sil {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Variable not declared in the program or domain it is used with.
class ScopeError : public Error {
 public:
  using Error::Error;
};

enum class ArithOp { add, sub, mul, mod };
enum class CmpOp { eq, ne, lt, le, gt, ge };

struct AExp;
using AExpPtr = std::shared_ptr<const AExp>;

struct AExp {
  struct Lit {
    std::int64_t value;
  };
  struct Var {
    std::string name;
  };
  struct Bin {
    ArithOp op;
    AExpPtr lhs;
    AExpPtr rhs;
  };
  std::variant<Lit, Var, Bin> node;
};

AExpPtr make_lit(std::int64_t value);
AExpPtr make_var(std::string name);
AExpPtr make_bin(ArithOp op, AExpPtr lhs, AExpPtr rhs);

struct BExp;
using BExpPtr = std::shared_ptr<const BExp>;

// Core boolean expressions; true, || and odd/even are parsed into these.
struct BExp {
  struct False {};
  struct Not {
    BExpPtr arg;
  };
  struct And {
    BExpPtr lhs;
    BExpPtr rhs;
  };
  struct Cmp {
    CmpOp op;
    AExpPtr lhs;
    AExpPtr rhs;
  };
  std::variant<False, Not, And, Cmp> node;
};

BExpPtr make_false();
BExpPtr make_true();
BExpPtr make_not(BExpPtr arg);
BExpPtr make_and(BExpPtr lhs, BExpPtr rhs);
BExpPtr make_or(BExpPtr lhs, BExpPtr rhs);
BExpPtr make_cmp(CmpOp op, AExpPtr lhs, AExpPtr rhs);

namespace atom {
struct Skip {};
struct Assign {
  std::string var;
  AExpPtr value;
};
struct Assume {
  BExpPtr cond;
};
struct Havoc {
  std::string var;
};
struct Alloc {
  std::string var;
};
struct Free {
  std::string var;
};
struct Load {
  std::string dst;
  std::string addr;
};
struct Store {
  std::string addr;
  std::string src;
};
}  // namespace atom

using AtomicCmd = std::variant<atom::Skip, atom::Assign, atom::Assume, atom::Havoc, atom::Alloc,
                               atom::Free, atom::Load, atom::Store>;

bool is_heap_atomic(const AtomicCmd& cmd);

struct Command;
using CommandPtr = std::shared_ptr<const Command>;

struct Command {
  struct Atomic {
    AtomicCmd cmd;
  };
  struct Seq {
    CommandPtr first;
    CommandPtr second;
  };
  struct Choice {
    CommandPtr left;
    CommandPtr right;
  };
  struct Star {
    CommandPtr body;
  };
  std::variant<Atomic, Seq, Choice, Star> node;
};

CommandPtr make_atomic(AtomicCmd cmd);
CommandPtr make_seq(CommandPtr first, CommandPtr second);
CommandPtr make_choice(CommandPtr left, CommandPtr right);
CommandPtr make_star(CommandPtr body);

struct HeapBounds {
  int locations = 3;
  std::int64_t int_lo = 0;
  std::int64_t int_hi = 1;
};

struct Program {
  std::vector<std::string> vars;
  CommandPtr body;
  bool heap_mode = false;                 // body contains a heap atomic
  std::optional<HeapBounds> heap_bounds;  // from the optional `heap` header
};

// Deep structural equality.
bool operator==(const AExp& a, const AExp& b);
bool operator==(const BExp& a, const BExp& b);
bool operator==(const AtomicCmd& a, const AtomicCmd& b);
bool operator==(const Command& a, const Command& b);
bool same(const CommandPtr& a, const CommandPtr& b);

using VarSet = std::set<std::string>;

VarSet free_vars(const AExp& e);
VarSet free_vars(const BExp& b);
VarSet free_vars(const AtomicCmd& c);
VarSet free_vars(const Command& r);
VarSet mod_vars(const AtomicCmd& c);
VarSet mod_vars(const Command& r);
bool contains_heap_atomic(const Command& r);

// `guard_mul` wraps top-level multiplications in parentheses so the text can
// be embedded in assertions where `*` is the separating conjunction.
std::string to_string(const AExp& e, bool guard_mul = false);
std::string to_string(const BExp& b, bool guard_mul = false);
std::string to_string(const AtomicCmd& c);
std::string to_string(const Command& r);
std::string to_string(const Program& p);
const char* to_string(ArithOp op);
const char* to_string(CmpOp op);

}  // namespace sil
