#pragma once

#include <string_view>

#include "dialectic/formula.hpp"

namespace dialectic {

// Location of the first character of a text fragment, used to report
// errors relative to an enclosing document.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

// Grammar, loosest binding first:
//
//   formula := disj ( "->" formula )?
//   disj    := conj ( "|" conj )*
//   conj    := unary ( "&" unary )*
//   unary   := "~" unary | primary
//   primary := "true" | "false" | atom | "(" formula ")"
//   atom    := [a-z][A-Za-z0-9_]* ( "(" term ( "," term )* ")" )?
//   term    := [A-Za-z0-9_]+
//
// An applied atom such as mother(Karen) is a single atom named
// "mother(Karen)". Throws ParseError.
Formula parse_formula(std::string_view text, SourcePos origin = {});

}  // namespace dialectic
