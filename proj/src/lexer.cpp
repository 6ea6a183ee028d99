#include "lexer.hpp"

#include <array>
#include <cctype>
#include <limits>

namespace sil {

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

}  // namespace sil

namespace sil::detail {

namespace {

constexpr std::array<std::string_view, 27> kSymbols = {
    "|-/>", "|->", "[+]", ":=", "..", "&&", "||", "!=", "<=", ">=", "(", ")", "{", "}",
    "[",    "]",   ";",   ",",  "?",  "*",  "+",  "-",  "=",  "<",  ">",  "!", ".",
};

constexpr std::array<std::string_view, 16> kReserved = {
    "skip", "if",  "else", "while", "nondet", "alloc", "free",   "true",
    "false", "mod", "odd",  "even",  "emp",    "exists", "vars", "heap",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

bool is_reserved(std::string_view word) {
  for (auto r : kReserved)
    if (r == word) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const int tl = line, tc = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({TokKind::ident, std::string(text.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({TokKind::number, std::string(text.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (auto sym : kSymbols) {
      if (text.substr(i, sym.size()) == sym) {
        out.push_back({TokKind::symbol, std::string(sym), tl, tc});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
  }
  out.push_back({TokKind::end, "", line, col});
  return out;
}

ExprParser::ExprParser(std::string_view text) : tokens_(tokenize(text)) {}

void ExprParser::restrict_scope(const std::vector<std::string>& vars) {
  scope_ = std::set<std::string>(vars.begin(), vars.end());
}

const Token& ExprParser::peek(std::size_t ahead) const {
  const std::size_t k = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[k];
}

bool ExprParser::at_symbol(std::string_view sym, std::size_t ahead) const {
  const auto& t = peek(ahead);
  return t.kind == TokKind::symbol && t.text == sym;
}

bool ExprParser::at_keyword(std::string_view kw, std::size_t ahead) const {
  const auto& t = peek(ahead);
  return t.kind == TokKind::ident && t.text == kw;
}

bool ExprParser::accept(std::string_view sym) {
  if (!at_symbol(sym)) return false;
  ++pos_;
  return true;
}

bool ExprParser::accept_keyword(std::string_view kw) {
  if (!at_keyword(kw)) return false;
  ++pos_;
  return true;
}

void ExprParser::expect(std::string_view sym) {
  if (!accept(sym)) fail("expected '" + std::string(sym) + "'");
}

void ExprParser::expect_keyword(std::string_view kw) {
  if (!accept_keyword(kw)) fail("expected '" + std::string(kw) + "'");
}

std::string ExprParser::identifier() {
  const auto& t = peek();
  if (t.kind != TokKind::ident || is_reserved(t.text)) fail("expected identifier");
  ++pos_;
  return t.text;
}

std::int64_t ExprParser::number() {
  const auto& t = peek();
  if (t.kind != TokKind::number) fail("expected number");
  if (t.text.size() > 17) fail("numeric literal too large");
  ++pos_;
  return std::stoll(t.text);
}

void ExprParser::expect_end() {
  if (peek().kind != TokKind::end) fail_deepest("unexpected trailing input");
}

void ExprParser::fail(const std::string& message) const {
  const auto& t = peek();
  std::string found = t.kind == TokKind::end ? "end of input" : "'" + t.text + "'";
  throw ParseError(message + ", found " + found, t.line, t.column);
}

void ExprParser::note_failure(const ParseError& e) {
  if (!deepest_ || e.line() > deepest_->line() ||
      (e.line() == deepest_->line() && e.column() > deepest_->column())) {
    deepest_ = e;
  }
}

void ExprParser::fail_deepest(const std::string& message) const {
  const auto& t = peek();
  if (deepest_ && (deepest_->line() > t.line ||
                   (deepest_->line() == t.line && deepest_->column() > t.column))) {
    throw *deepest_;
  }
  fail(message);
}

void ExprParser::check_scope(const std::string& name) const {
  if (scope_ && !scope_->count(name)) {
    const auto& t = tokens_[pos_ == 0 ? 0 : pos_ - 1];
    throw ScopeError(std::to_string(t.line) + ":" + std::to_string(t.column) +
                     ": undeclared variable '" + name + "'");
  }
}

std::optional<CmpOp> ExprParser::cmp_op() {
  static const std::array<std::pair<std::string_view, CmpOp>, 6> ops = {{
      {"=", CmpOp::eq},
      {"!=", CmpOp::ne},
      {"<", CmpOp::lt},
      {"<=", CmpOp::le},
      {">", CmpOp::gt},
      {">=", CmpOp::ge},
  }};
  for (const auto& [sym, op] : ops)
    if (accept(sym)) return op;
  return std::nullopt;
}

AExpPtr ExprParser::aexp(bool asl_mode) { return sum(asl_mode); }

AExpPtr ExprParser::sum(bool asl_mode) {
  AExpPtr lhs = term(asl_mode);
  while (true) {
    if (accept("+")) {
      lhs = make_bin(ArithOp::add, lhs, term(asl_mode));
    } else if (accept("-")) {
      lhs = make_bin(ArithOp::sub, lhs, term(asl_mode));
    } else {
      return lhs;
    }
  }
}

AExpPtr ExprParser::term(bool asl_mode) {
  AExpPtr lhs = factor(asl_mode);
  while (true) {
    if (!asl_mode && accept("*")) {
      lhs = make_bin(ArithOp::mul, lhs, factor(asl_mode));
    } else if (accept_keyword("mod")) {
      lhs = make_bin(ArithOp::mod, lhs, factor(asl_mode));
    } else {
      return lhs;
    }
  }
}

AExpPtr ExprParser::factor(bool /*asl_mode*/) {
  const auto& t = peek();
  if (t.kind == TokKind::number) return make_lit(number());
  if (accept("(")) {
    AExpPtr inner = sum(false);
    expect(")");
    return inner;
  }
  std::string name = identifier();
  check_scope(name);
  return make_var(std::move(name));
}

BExpPtr ExprParser::bexp() { return disjunction(); }

BExpPtr ExprParser::disjunction() {
  BExpPtr lhs = conjunction();
  while (accept("||")) lhs = make_or(lhs, conjunction());
  return lhs;
}

BExpPtr ExprParser::conjunction() {
  BExpPtr lhs = unary();
  while (accept("&&")) lhs = make_and(lhs, unary());
  return lhs;
}

BExpPtr ExprParser::unary() {
  if (accept("!")) return make_not(unary());
  return primary();
}

BExpPtr ExprParser::primary() {
  if (accept_keyword("true")) return make_true();
  if (accept_keyword("false")) return make_false();
  if (at_keyword("odd") || at_keyword("even")) {
    const bool odd = peek().text == "odd";
    ++pos_;
    expect("(");
    AExpPtr arg = aexp();
    expect(")");
    return make_cmp(CmpOp::eq, make_bin(ArithOp::mod, arg, make_lit(2)), make_lit(odd ? 1 : 0));
  }
  if (at_symbol("(")) {
    auto grouped = attempt([&] {
      expect("(");
      BExpPtr inner = bexp();
      expect(")");
      return inner;
    });
    if (grouped) return *grouped;
  }
  AExpPtr lhs = aexp();
  auto op = cmp_op();
  if (!op) fail_deepest("expected comparison operator");
  return make_cmp(*op, lhs, aexp());
}

}  // namespace sil::detail
