#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "sil/parser.hpp"
#include "sil/semantics.hpp"

inline std::string data_path(const std::string& rel) { return std::string(SIL_DATA_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline sil::Program load_program(const std::string& name) {
  return sil::parse_program(slurp(data_path("programs/" + name)));
}

inline sil::StateSet guard_set(const std::string& text, const sil::DomainPtr& d) {
  return sil::predicate_set(*sil::parse_bexp(text, d->vars()), d);
}
