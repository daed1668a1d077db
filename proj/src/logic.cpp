#include "dialectic/logic.hpp"

#include <algorithm>
#include <limits>

namespace dialectic {

namespace {

// Negation normal form over literals with constants folded away.
struct Nnf {
  enum class Kind { Lit, True, False, And, Or };
  Kind kind = Kind::True;
  Literal lit;
  std::vector<Nnf> kids;
};

Nnf constant(bool value) { return Nnf{value ? Nnf::Kind::True : Nnf::Kind::False, {}, {}}; }

Nnf combine(Nnf::Kind kind, Nnf a, Nnf b) {
  // kind is And or Or; the absorbing constant of And is False, of Or is True.
  const auto absorbing = kind == Nnf::Kind::And ? Nnf::Kind::False : Nnf::Kind::True;
  const auto neutral = kind == Nnf::Kind::And ? Nnf::Kind::True : Nnf::Kind::False;
  if (a.kind == absorbing || b.kind == absorbing) return Nnf{absorbing, {}, {}};
  if (a.kind == neutral) return b;
  if (b.kind == neutral) return a;
  Nnf out{kind, {}, {}};
  for (Nnf* part : {&a, &b}) {
    if (part->kind == kind) {
      for (auto& k : part->kids) out.kids.push_back(std::move(k));
    } else {
      out.kids.push_back(std::move(*part));
    }
  }
  return out;
}

Nnf to_nnf(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Connective::Atom:
      return Nnf{Nnf::Kind::Lit, Literal{f.name(), positive}, {}};
    case Connective::Top:
      return constant(positive);
    case Connective::Bottom:
      return constant(!positive);
    case Connective::Not:
      return to_nnf(f.lhs(), !positive);
    case Connective::And:
      return combine(positive ? Nnf::Kind::And : Nnf::Kind::Or, to_nnf(f.lhs(), positive),
                     to_nnf(f.rhs(), positive));
    case Connective::Or:
      return combine(positive ? Nnf::Kind::Or : Nnf::Kind::And, to_nnf(f.lhs(), positive),
                     to_nnf(f.rhs(), positive));
    case Connective::Implies:
      return combine(positive ? Nnf::Kind::Or : Nnf::Kind::And, to_nnf(f.lhs(), !positive),
                     to_nnf(f.rhs(), positive));
  }
  return constant(true);
}

class ClauseBuilder {
 public:
  explicit ClauseBuilder(const CnfOptions& options) : options_(options) {}

  // Clauses equisatisfiable with n; definitions of auxiliaries go to defs_.
  std::vector<Clause> build(const Nnf& n) {
    switch (n.kind) {
      case Nnf::Kind::True:
        return {};
      case Nnf::Kind::False:
        return {Clause{}};
      case Nnf::Kind::Lit:
        return {Clause{n.lit}};
      case Nnf::Kind::And: {
        std::vector<Clause> out;
        for (const auto& k : n.kids) {
          auto part = build(k);
          out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        }
        return out;
      }
      case Nnf::Kind::Or:
        return build_or(n);
    }
    return {};
  }

  std::vector<Clause> take_definitions() { return std::move(defs_); }

 private:
  std::vector<Clause> build_or(const Nnf& n) {
    std::vector<std::vector<Clause>> parts;
    std::size_t product = 1;
    for (const auto& k : n.kids) {
      parts.push_back(build(k));
      const std::size_t sz = parts.back().size();
      if (sz == 0) return {};  // a satisfied disjunct; not produced after folding
      product = product > std::numeric_limits<std::size_t>::max() / sz ? std::numeric_limits<std::size_t>::max()
                                                                         : product * sz;
    }

    if (product > options_.distribute_limit) {
      // Replace each multi-clause disjunct D by a fresh atom t with t -> D.
      // The atom occurs only positively, so this preserves satisfiability.
      for (auto& part : parts) {
        if (part.size() <= 1) continue;
        Literal aux{options_.aux_prefix + std::to_string(next_aux_++), true};
        for (auto& c : part) {
          c.push_back(Literal{aux.atom, false});
          defs_.push_back(std::move(c));
        }
        part = {Clause{aux}};
      }
    }

    std::vector<Clause> acc{Clause{}};
    for (const auto& part : parts) {
      std::vector<Clause> next;
      next.reserve(acc.size() * part.size());
      for (const auto& a : acc) {
        for (const auto& b : part) {
          Clause c = a;
          c.insert(c.end(), b.begin(), b.end());
          next.push_back(std::move(c));
        }
      }
      acc = std::move(next);
    }
    return acc;
  }

  const CnfOptions& options_;
  std::vector<Clause> defs_;
  std::size_t next_aux_ = 0;
};

// Sorts and deduplicates literals; returns false for a tautological clause.
bool normalize(Clause& c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (c[i].atom == c[i + 1].atom) return false;
  }
  return true;
}

}  // namespace

bool is_aux_atom(std::string_view atom) { return !atom.empty() && atom.front() == '$'; }

ClauseSet to_clauses(std::span<const Formula> formulas, const CnfOptions& options) {
  ClauseBuilder builder(options);
  std::vector<Clause> raw;
  for (const auto& f : formulas) {
    auto part = builder.build(to_nnf(f, true));
    raw.insert(raw.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  auto defs = builder.take_definitions();
  raw.insert(raw.end(), std::make_move_iterator(defs.begin()), std::make_move_iterator(defs.end()));

  ClauseSet out;
  std::set<Clause> emitted;
  for (auto& c : raw) {
    if (!normalize(c)) continue;
    if (emitted.insert(c).second) out.clauses.push_back(std::move(c));
  }
  return out;
}

ClauseSet to_clauses(const Formula& formula, const CnfOptions& options) {
  return to_clauses(std::span<const Formula>(&formula, 1), options);
}

sat::Var VarTable::get(sat::Solver& solver, const std::string& atom) {
  auto it = ids_.find(atom);
  if (it != ids_.end()) return it->second;
  const sat::Var v = solver.new_var();
  ids_.emplace(atom, v);
  return v;
}

std::optional<sat::Var> VarTable::find(const std::string& atom) const {
  auto it = ids_.find(atom);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void add_clauses(sat::Solver& solver, VarTable& vars, const ClauseSet& cs, std::optional<sat::Lit> guard) {
  std::vector<sat::Lit> lits;
  for (const auto& c : cs.clauses) {
    lits.clear();
    if (guard) lits.push_back(~*guard);
    for (const auto& l : c) lits.push_back(sat::Lit(vars.get(solver, l.atom), !l.positive));
    solver.add_clause(lits);
  }
}

bool satisfiable(std::span<const Formula> formulas, const Limits& limits) {
  sat::Solver solver;
  solver.set_conflict_limit(limits.max_conflicts);
  VarTable vars;
  add_clauses(solver, vars, to_clauses(formulas));
  switch (solver.solve()) {
    case sat::Result::Sat:
      return true;
    case sat::Result::Unsat:
      return false;
    case sat::Result::Unknown:
      break;
  }
  throw BudgetExceeded("satisfiability check exceeded " + std::to_string(limits.max_conflicts) + " conflicts");
}

bool satisfiable(std::initializer_list<Formula> formulas, const Limits& limits) {
  return satisfiable(std::span<const Formula>(formulas.begin(), formulas.size()), limits);
}

bool entails(std::span<const Formula> formulas, const Formula& f, const Limits& limits) {
  std::vector<Formula> all(formulas.begin(), formulas.end());
  all.push_back(negate(f));
  return !satisfiable(all, limits);
}

bool entails(std::initializer_list<Formula> formulas, const Formula& f, const Limits& limits) {
  return entails(std::span<const Formula>(formulas.begin(), formulas.size()), f, limits);
}

bool is_tautology(const Formula& f, const Limits& limits) { return entails(std::span<const Formula>{}, f, limits); }

}  // namespace dialectic
