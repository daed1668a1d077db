#include "dialectic/formula.hpp"

#include <sstream>

namespace dialectic {

namespace {

int precedence(Connective c) {
  switch (c) {
    case Connective::Implies:
      return 1;
    case Connective::Or:
      return 2;
    case Connective::And:
      return 3;
    case Connective::Not:
      return 4;
    default:
      return 5;
  }
}

void write(std::ostream& os, const Formula& f, int min_prec) {
  const int p = precedence(f.kind());
  const bool parens = p < min_prec;
  if (parens) os << '(';
  switch (f.kind()) {
    case Connective::Atom:
      os << f.name();
      break;
    case Connective::Top:
      os << "true";
      break;
    case Connective::Bottom:
      os << "false";
      break;
    case Connective::Not:
      os << '~';
      write(os, f.lhs(), 4);
      break;
    case Connective::And:
      write(os, f.lhs(), 3);
      os << " & ";
      write(os, f.rhs(), 4);
      break;
    case Connective::Or:
      write(os, f.lhs(), 2);
      os << " | ";
      write(os, f.rhs(), 3);
      break;
    case Connective::Implies:
      // right-associative
      write(os, f.lhs(), 2);
      os << " -> ";
      write(os, f.rhs(), 1);
      break;
  }
  if (parens) os << ')';
}

}  // namespace

Formula::Formula() : node_(top().node_) {}

Formula Formula::make(Connective k, std::string name, const Formula* l, const Formula* r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  if (l) n->lhs = l->node_;
  if (r) n->rhs = r->node_;
  return Formula(std::move(n));
}

Formula Formula::atom(std::string name) { return make(Connective::Atom, std::move(name), nullptr, nullptr); }

Formula Formula::top() {
  static const Formula t = make(Connective::Top, {}, nullptr, nullptr);
  return t;
}

Formula Formula::bottom() {
  static const Formula b = make(Connective::Bottom, {}, nullptr, nullptr);
  return b;
}

Formula Formula::negation(Formula operand) { return make(Connective::Not, {}, &operand, nullptr); }
Formula Formula::conjunction(Formula lhs, Formula rhs) { return make(Connective::And, {}, &lhs, &rhs); }
Formula Formula::disjunction(Formula lhs, Formula rhs) { return make(Connective::Or, {}, &lhs, &rhs); }
Formula Formula::implication(Formula lhs, Formula rhs) { return make(Connective::Implies, {}, &lhs, &rhs); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Connective::Atom:
      return a.name() == b.name();
    case Connective::Top:
    case Connective::Bottom:
      return true;
    case Connective::Not:
      return a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Formula negate(const Formula& f) { return Formula::negation(f); }

std::string to_string(const Formula& f) {
  std::ostringstream os;
  write(os, f, 0);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  write(os, f, 0);
  return os;
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Connective::Atom:
      out.insert(f.name());
      return;
    case Connective::Top:
    case Connective::Bottom:
      return;
    case Connective::Not:
      collect_atoms(f.lhs(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
  }
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::size_t formula_size(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Top:
    case Connective::Bottom:
      return 1;
    case Connective::Not:
      return 1 + formula_size(f.lhs());
    default:
      return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
  }
}

}  // namespace dialectic
