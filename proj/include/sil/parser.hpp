#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sil/syntax.hpp"

namespace sil {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column);
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }
  [[nodiscard]] const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int line_;
  int column_;
};

// Parses a complete program: `vars ...;` header, optional `heap` header, body.
Program parse_program(std::string_view text);

// Parses a command body; every variable must be in `vars`.
CommandPtr parse_command(std::string_view text, const std::vector<std::string>& vars,
                         bool allow_heap = true);

// Parses a boolean assertion over `vars`.
BExpPtr parse_bexp(std::string_view text, const std::vector<std::string>& vars);

AExpPtr parse_aexp(std::string_view text, const std::vector<std::string>& vars);

}  // namespace sil
