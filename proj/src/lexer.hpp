#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sil/parser.hpp"
#include "sil/syntax.hpp"

namespace sil::detail {

enum class TokKind { ident, number, symbol, end };

struct Token {
  TokKind kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view text);

// Recursive-descent base shared by the program and assertion parsers.
// Arithmetic and boolean expressions live here; `asl_mode` reserves a bare
// `*` for the separating conjunction.
class ExprParser {
 public:
  explicit ExprParser(std::string_view text);

  void restrict_scope(const std::vector<std::string>& vars);

  AExpPtr aexp(bool asl_mode = false);
  BExpPtr bexp();

  [[nodiscard]] const Token& peek(std::size_t ahead = 0) const;
  bool at_symbol(std::string_view sym, std::size_t ahead = 0) const;
  bool at_keyword(std::string_view kw, std::size_t ahead = 0) const;
  bool accept(std::string_view sym);
  bool accept_keyword(std::string_view kw);
  void expect(std::string_view sym);
  void expect_keyword(std::string_view kw);
  std::string identifier();
  std::int64_t number();
  void expect_end();
  std::optional<CmpOp> cmp_op();

  [[noreturn]] void fail(const std::string& message) const;

  template <class F>
  auto attempt(F&& f) -> std::optional<decltype(f())> {
    const std::size_t saved = pos_;
    try {
      return f();
    } catch (const ParseError& e) {
      note_failure(e);
      pos_ = saved;
      return std::nullopt;
    }
  }

  // Rethrows the deepest failure seen while backtracking if it got further
  // than `current`.
  [[noreturn]] void fail_deepest(const std::string& message) const;

 protected:
  void check_scope(const std::string& name) const;
  void note_failure(const ParseError& e);

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::optional<std::set<std::string>> scope_;
  std::optional<ParseError> deepest_;

 private:
  AExpPtr sum(bool asl_mode);
  AExpPtr term(bool asl_mode);
  AExpPtr factor(bool asl_mode);
  BExpPtr disjunction();
  BExpPtr conjunction();
  BExpPtr unary();
  BExpPtr primary();
};

bool is_reserved(std::string_view word);

}  // namespace sil::detail
