#include "dialectic/parse.hpp"

#include <cctype>

#include "dialectic/errors.hpp"

namespace dialectic {

namespace {

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class FormulaParser {
 public:
  FormulaParser(std::string_view text, SourcePos origin) : text_(text), line_(origin.line), col_(origin.column) {}

  Formula parse() {
    Formula f = implication();
    skip_space();
    if (!at_end()) fail("unexpected '" + std::string(1, peek()) + "'");
    return f;
  }

 private:
  Formula implication() {
    Formula lhs = disjunction();
    if (accept("->")) return Formula::implication(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = Formula::disjunction(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = Formula::conjunction(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept("~")) return Formula::negation(unary());
    return primary();
  }

  Formula primary() {
    skip_space();
    if (at_end()) fail("unexpected end of formula");
    const char c = peek();
    if (c == '(') {
      advance();
      Formula f = implication();
      expect(")");
      return f;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");

    const std::size_t line = line_;
    const std::size_t col = col_;
    std::string name = identifier();
    if (name == "true") return Formula::top();
    if (name == "false") return Formula::bottom();
    if (!std::islower(static_cast<unsigned char>(name.front()))) {
      throw ParseError("atom '" + name + "' must start with a lowercase letter", line, col);
    }
    skip_space();
    if (!at_end() && peek() == '(') {
      advance();
      name += '(';
      for (bool first = true;; first = false) {
        if (!first) name += ',';
        skip_space();
        if (at_end() || !is_ident_char(peek())) fail("expected argument term");
        name += identifier();
        skip_space();
        if (accept(",")) continue;
        expect(")");
        break;
      }
      name += ')';
    }
    return Formula::atom(std::move(name));
  }

  std::string identifier() {
    std::string out;
    while (!at_end() && is_ident_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  bool accept(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    for (std::size_t i = 0; i < tok.size(); ++i) advance();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) {
      if (at_end()) fail("expected '" + std::string(tok) + "' before end of formula");
      fail("expected '" + std::string(tok) + "'");
    }
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, col_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_;
};

}  // namespace

Formula parse_formula(std::string_view text, SourcePos origin) { return FormulaParser(text, origin).parse(); }

}  // namespace dialectic
