#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dialectic/errors.hpp"
#include "dialectic/formula.hpp"
#include "dialectic/sat.hpp"

namespace dialectic {

struct Literal {
  std::string atom;
  bool positive = true;

  auto operator<=>(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

struct ClauseSet {
  std::vector<Clause> clauses;

  bool operator==(const ClauseSet&) const = default;
};

struct CnfOptions {
  // A disjunction is expanded by distribution while the expansion stays at
  // or below this many clauses; larger ones get auxiliary definitions.
  std::size_t distribute_limit = 64;
  // Auxiliary atoms are named <prefix><n>. The prefix must start with '$' so
  // it can never collide with an atom accepted by the parser.
  std::string aux_prefix = "$t";
};

bool is_aux_atom(std::string_view atom);

// Equisatisfiable clause set. Literals within a clause are sorted and
// deduplicated; tautological clauses are dropped. Deterministic for a fixed
// input order.
ClauseSet to_clauses(std::span<const Formula> formulas, const CnfOptions& options = {});
ClauseSet to_clauses(const Formula& formula, const CnfOptions& options = {});

// Maps atom names to solver variables, creating them on first use.
class VarTable {
 public:
  sat::Var get(sat::Solver& solver, const std::string& atom);
  std::optional<sat::Var> find(const std::string& atom) const;

 private:
  std::map<std::string, sat::Var> ids_;
};

// Adds every clause to the solver. With a guard literal g, each clause C is
// added as (~g | C), so the set is only active when g is assumed.
void add_clauses(sat::Solver& solver, VarTable& vars, const ClauseSet& cs, std::optional<sat::Lit> guard = {});

bool satisfiable(std::span<const Formula> formulas, const Limits& limits = {});
bool satisfiable(std::initializer_list<Formula> formulas, const Limits& limits = {});

// formulas |= f, decided as unsatisfiability of formulas + {~f}.
bool entails(std::span<const Formula> formulas, const Formula& f, const Limits& limits = {});
bool entails(std::initializer_list<Formula> formulas, const Formula& f, const Limits& limits = {});

bool is_tautology(const Formula& f, const Limits& limits = {});

}  // namespace dialectic
