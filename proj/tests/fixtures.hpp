#pragma once

#include <initializer_list>
#include <string>

#include "dialectic/kb.hpp"
#include "dialectic/parse.hpp"

namespace fixtures {

inline dialectic::Formula F(std::string_view text) { return dialectic::parse_formula(text); }

inline dialectic::LabelSet L(std::initializer_list<const char*> labels) {
  dialectic::LabelSet s;
  for (const char* l : labels) s.insert(l);
  return s;
}

inline dialectic::LabelledDatabase load(const std::string& name) {
  return dialectic::load_kb(std::string(DATA_DIR) + "/" + name);
}

}  // namespace fixtures
