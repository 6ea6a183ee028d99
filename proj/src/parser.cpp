#include "sil/parser.hpp"

#include <set>

#include "lexer.hpp"

namespace sil {

namespace {

using detail::ExprParser;
using detail::TokKind;

class CommandParser : public ExprParser {
 public:
  CommandParser(std::string_view text, bool allow_heap) : ExprParser(text), allow_heap_(allow_heap) {}

  Program program() {
    Program prog;
    expect_keyword("vars");
    std::set<std::string> seen;
    do {
      std::string name = identifier();
      if (!seen.insert(name).second) fail("duplicate variable '" + name + "'");
      prog.vars.push_back(std::move(name));
    } while (accept(","));
    expect(";");
    if (accept_keyword("heap")) {
      HeapBounds bounds;
      expect_keyword("locs");
      bounds.locations = static_cast<int>(number());
      expect_keyword("ints");
      bounds.int_lo = number();
      expect("..");
      bounds.int_hi = number();
      expect(";");
      if (bounds.locations < 1 || bounds.int_hi < bounds.int_lo) fail("invalid heap bounds");
      prog.heap_bounds = bounds;
    }
    allow_heap_ = prog.heap_bounds.has_value();
    restrict_scope(prog.vars);
    prog.body = command();
    expect_end();
    prog.heap_mode = contains_heap_atomic(*prog.body);
    return prog;
  }

  // `[+]` binds looser than `;`.
  CommandPtr command() {
    CommandPtr r = sequence();
    while (accept("[+]")) r = make_choice(r, sequence());
    return r;
  }

  CommandPtr sequence() {
    CommandPtr first = unit();
    if (accept(";") && starts_unit()) return make_seq(first, sequence());
    return first;
  }

 private:
  bool starts_unit() const {
    const auto& t = peek();
    if (t.kind == TokKind::end) return false;
    return !(at_symbol("}") || at_symbol(")") || at_symbol("[+]"));
  }

  void require_heap(const char* what) {
    if (!allow_heap_) fail(std::string(what) + " needs a heap program (add a `heap` header)");
  }

  std::string declared(std::string name) {
    check_scope(name);
    return name;
  }

  CommandPtr block() {
    expect("{");
    if (accept("}")) return make_atomic(atom::Skip{});
    CommandPtr body = command();
    expect("}");
    return body;
  }

  bool nondet_guard() {
    if (at_keyword("nondet") && at_symbol("(", 1) && at_symbol(")", 2) && at_symbol(")", 3)) {
      pos_ += 3;
      return true;
    }
    return false;
  }

  CommandPtr if_command() {
    expect("(");
    const bool nondet = nondet_guard();
    BExpPtr cond;
    if (!nondet) cond = bexp();
    expect(")");
    CommandPtr then_branch = block();
    CommandPtr else_branch = make_atomic(atom::Skip{});
    if (accept_keyword("else")) else_branch = block();
    if (nondet) return make_choice(then_branch, else_branch);
    return make_choice(make_seq(make_atomic(atom::Assume{cond}), then_branch),
                       make_seq(make_atomic(atom::Assume{make_not(cond)}), else_branch));
  }

  CommandPtr while_command() {
    expect("(");
    const bool nondet = nondet_guard();
    BExpPtr cond;
    if (!nondet) cond = bexp();
    expect(")");
    CommandPtr body = block();
    if (nondet) return make_star(body);
    return make_seq(make_star(make_seq(make_atomic(atom::Assume{cond}), body)),
                    make_atomic(atom::Assume{make_not(cond)}));
  }

  CommandPtr group() {
    expect("(");
    CommandPtr inner = command();
    expect(")");
    while (accept("*")) inner = make_star(inner);
    return inner;
  }

  CommandPtr assignment() {
    std::string target = declared(identifier());
    expect(":=");
    if (at_keyword("nondet")) {
      ++pos_;
      expect("(");
      expect(")");
      return make_atomic(atom::Havoc{target});
    }
    if (at_keyword("alloc")) {
      require_heap("alloc");
      ++pos_;
      expect("(");
      expect(")");
      return make_atomic(atom::Alloc{target});
    }
    if (at_symbol("[")) {
      require_heap("load");
      ++pos_;
      std::string addr = declared(identifier());
      expect("]");
      return make_atomic(atom::Load{target, addr});
    }
    return make_atomic(atom::Assign{target, aexp()});
  }

  CommandPtr unit() {
    if (accept_keyword("skip")) return make_atomic(atom::Skip{});
    if (accept_keyword("if")) return if_command();
    if (accept_keyword("while")) return while_command();
    if (at_keyword("free")) {
      require_heap("free");
      ++pos_;
      expect("(");
      std::string var = declared(identifier());
      expect(")");
      return make_atomic(atom::Free{var});
    }
    if (at_symbol("[")) {
      require_heap("store");
      ++pos_;
      std::string addr = declared(identifier());
      expect("]");
      expect(":=");
      std::string src = declared(identifier());
      return make_atomic(atom::Store{addr, src});
    }
    if (peek().kind == TokKind::ident && at_symbol(":=", 1)) return assignment();
    if (at_symbol("(")) {
      if (auto g = attempt([&] { return group(); })) return *g;
    }
    auto guard = attempt([&] {
      BExpPtr cond = bexp();
      expect("?");
      return cond;
    });
    if (!guard) fail_deepest("expected a command");
    return make_atomic(atom::Assume{*guard});
  }

  bool allow_heap_;
};

}  // namespace

Program parse_program(std::string_view text) {
  CommandParser p(text, false);
  return p.program();
}

CommandPtr parse_command(std::string_view text, const std::vector<std::string>& vars, bool allow_heap) {
  CommandParser p(text, allow_heap);
  p.restrict_scope(vars);
  CommandPtr r = p.command();
  p.expect_end();
  return r;
}

BExpPtr parse_bexp(std::string_view text, const std::vector<std::string>& vars) {
  ExprParser p(text);
  p.restrict_scope(vars);
  BExpPtr b = p.bexp();
  p.expect_end();
  return b;
}

AExpPtr parse_aexp(std::string_view text, const std::vector<std::string>& vars) {
  ExprParser p(text);
  p.restrict_scope(vars);
  AExpPtr a = p.aexp();
  p.expect_end();
  return a;
}

}  // namespace sil
