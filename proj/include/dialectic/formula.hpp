#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <set>
#include <string>

namespace dialectic {

enum class Connective : std::uint8_t { Atom, Top, Bottom, Not, And, Or, Implies };

// Immutable propositional formula. Copies share structure; equality is
// structural.
class Formula {
 public:
  // Defaults to Top.
  Formula();

  static Formula atom(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);

  Connective kind() const { return node_->kind; }
  bool is(Connective c) const { return node_->kind == c; }

  // Atom only.
  const std::string& name() const { return node_->name; }
  // Not: the operand. Binary connectives: the left operand.
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  friend bool operator==(const Formula& a, const Formula& b);

  template <typename Valuation>
  bool evaluate(const Valuation& value_of) const;

 private:
  struct Node {
    Connective kind;
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Connective k, std::string name, const Formula* l, const Formula* r);

  std::shared_ptr<const Node> node_;
};

// Structural negation; never simplifies.
Formula negate(const Formula& f);

// Canonical text in the input grammar with minimal parentheses;
// parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

void collect_atoms(const Formula& f, std::set<std::string>& out);
std::set<std::string> atoms_of(const Formula& f);

// Number of nodes.
std::size_t formula_size(const Formula& f);

template <typename Valuation>
bool Formula::evaluate(const Valuation& value_of) const {
  switch (kind()) {
    case Connective::Atom:
      return value_of(name());
    case Connective::Top:
      return true;
    case Connective::Bottom:
      return false;
    case Connective::Not:
      return !lhs().evaluate(value_of);
    case Connective::And:
      return lhs().evaluate(value_of) && rhs().evaluate(value_of);
    case Connective::Or:
      return lhs().evaluate(value_of) || rhs().evaluate(value_of);
    case Connective::Implies:
      return !lhs().evaluate(value_of) || rhs().evaluate(value_of);
  }
  return false;
}

}  // namespace dialectic
