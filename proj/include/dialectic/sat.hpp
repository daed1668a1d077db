#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dialectic::sat {

using Var = std::uint32_t;

/// A literal packs a variable index and a sign bit: 2*var + (negated ? 1 : 0).
class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool negated) : code_(2 * v + (negated ? 1u : 0u)) {}

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool negated() const { return (code_ & 1u) != 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Lit operator~() const {
    Lit l;
    l.code_ = code_ ^ 1u;
    return l;
  }
  constexpr bool operator==(const Lit&) const = default;

 private:
  std::uint32_t code_ = 0;
};

constexpr Lit pos(Var v) { return Lit(v, false); }
constexpr Lit neg(Var v) { return Lit(v, true); }

enum class Result { Sat, Unsat, Unknown };

// Conflict-driven clause learning solver with incremental assumptions.
//
// Clauses may be added between calls to solve(); learnt clauses are kept, as
// they are consequences of the clause database alone. A conflict budget
// bounds the work of a single call; exhausting it yields Result::Unknown.
class Solver {
 public:
  Var new_var();
  std::size_t num_vars() const { return assigns_.size(); }

  // Returns false once the clause database is known to be unsatisfiable.
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  Result solve(std::span<const Lit> assumptions = {});

  // Valid after solve() returned Sat.
  bool model_value(Var v) const { return model_[v]; }
  bool model_value(Lit l) const { return model_[l.var()] != l.negated(); }

  // Polarity tried first when branching on an unassigned variable.
  void set_default_polarity(bool value) { default_polarity_ = value; }
  void set_conflict_limit(std::uint64_t limit) { conflict_limit_ = limit; }

  std::uint64_t conflicts() const { return total_conflicts_; }
  std::uint64_t decisions() const { return total_decisions_; }

 private:
  enum : std::int8_t { kFalse = 0, kTrue = 1, kUndef = 2 };
  static constexpr std::uint32_t kNoReason = UINT32_MAX;

  std::int8_t value(Lit l) const {
    std::int8_t v = assigns_[l.var()];
    if (v == kUndef) return kUndef;
    return static_cast<std::int8_t>(v ^ (l.negated() ? 1 : 0));
  }
  std::uint32_t level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }

  void enqueue(Lit l, std::uint32_t reason);
  std::uint32_t propagate();  // conflicting clause index or kNoReason
  void analyze(std::uint32_t confl, std::vector<Lit>& learnt, std::uint32_t& back_level);
  void backtrack(std::uint32_t to_level);
  std::uint32_t attach(std::vector<Lit> lits);
  void bump(Var v);
  bool pick_branch(Lit& out);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<std::uint32_t>> watches_;  // indexed by literal code
  std::vector<std::int8_t> assigns_;
  std::vector<std::uint32_t> levels_;
  std::vector<std::uint32_t> reasons_;
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<std::uint32_t> trail_lim_;
  std::vector<bool> model_;
  std::size_t qhead_ = 0;
  double bump_amount_ = 1.0;
  bool ok_ = true;
  bool default_polarity_ = false;
  std::uint64_t conflict_limit_ = UINT64_MAX;
  std::uint64_t total_conflicts_ = 0;
  std::uint64_t total_decisions_ = 0;
};

}  // namespace dialectic::sat
