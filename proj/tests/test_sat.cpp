#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "dialectic/sat.hpp"

using namespace dialectic::sat;

namespace {

using Cnf = std::vector<std::vector<Lit>>;

bool brute_force(const Cnf& cnf, std::size_t vars, const std::vector<Lit>& assumptions = {}) {
  for (std::uint32_t m = 0; m < (1u << vars); ++m) {
    auto holds = [&](Lit l) { return (((m >> l.var()) & 1) != 0) != l.negated(); };
    bool ok = std::all_of(assumptions.begin(), assumptions.end(), holds);
    for (const auto& c : cnf) {
      if (!ok) break;
      ok = std::any_of(c.begin(), c.end(), holds);
    }
    if (ok) return true;
  }
  return false;
}

Cnf random_cnf(std::mt19937& rng, std::size_t vars, std::size_t clauses, std::size_t width) {
  Cnf cnf;
  for (std::size_t i = 0; i < clauses; ++i) {
    std::vector<Lit> c;
    const std::size_t w = 1 + rng() % width;
    for (std::size_t j = 0; j < w; ++j) c.push_back(Lit(rng() % vars, rng() % 2 == 1));
    cnf.push_back(c);
  }
  return cnf;
}

}  // namespace

TEST(Sat, EmptyIsSat) {
  Solver s;
  EXPECT_EQ(s.solve(), Result::Sat);
}

TEST(Sat, UnitConflict) {
  Solver s;
  Var a = s.new_var();
  EXPECT_TRUE(s.add_clause({pos(a)}));
  EXPECT_FALSE(s.add_clause({neg(a)}));
  EXPECT_EQ(s.solve(), Result::Unsat);
}

TEST(Sat, EmptyClauseIsUnsat) {
  Solver s;
  s.new_var();
  EXPECT_FALSE(s.add_clause(std::span<const Lit>{}));
  EXPECT_EQ(s.solve(), Result::Unsat);
}

TEST(Sat, TautologicalClauseIgnored) {
  Solver s;
  Var a = s.new_var();
  EXPECT_TRUE(s.add_clause({pos(a), neg(a)}));
  EXPECT_EQ(s.solve(), Result::Sat);
}

TEST(Sat, ModelSatisfiesClauses) {
  Solver s;
  Var a = s.new_var(), b = s.new_var(), c = s.new_var();
  s.add_clause({neg(a), pos(b)});
  s.add_clause({neg(b), pos(c)});
  s.add_clause({pos(a)});
  ASSERT_EQ(s.solve(), Result::Sat);
  EXPECT_TRUE(s.model_value(a));
  EXPECT_TRUE(s.model_value(b));
  EXPECT_TRUE(s.model_value(pos(c)));
  EXPECT_FALSE(s.model_value(neg(c)));
}

TEST(Sat, AssumptionsAreTemporary) {
  Solver s;
  Var a = s.new_var(), b = s.new_var();
  s.add_clause({neg(a), neg(b)});
  const Lit both[] = {pos(a), pos(b)};
  EXPECT_EQ(s.solve(both), Result::Unsat);
  const Lit one[] = {pos(a)};
  ASSERT_EQ(s.solve(one), Result::Sat);
  EXPECT_FALSE(s.model_value(b));
  EXPECT_EQ(s.solve(), Result::Sat);
}

TEST(Sat, ContradictoryAssumptions) {
  Solver s;
  Var a = s.new_var();
  const Lit as[] = {pos(a), neg(a)};
  EXPECT_EQ(s.solve(as), Result::Unsat);
  EXPECT_EQ(s.solve(), Result::Sat);
}

TEST(Sat, PigeonholeNeedsConflicts) {
  // 5 pigeons, 4 holes.
  Solver s;
  const int p = 5, h = 4;
  std::vector<std::vector<Var>> x(p, std::vector<Var>(h));
  for (auto& row : x)
    for (auto& v : row) v = s.new_var();
  for (int i = 0; i < p; ++i) {
    std::vector<Lit> c;
    for (int j = 0; j < h; ++j) c.push_back(pos(x[i][j]));
    s.add_clause(c);
  }
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < p; ++i)
      for (int k = i + 1; k < p; ++k) s.add_clause({neg(x[i][j]), neg(x[k][j])});
  Solver limited = s;
  limited.set_conflict_limit(3);
  EXPECT_EQ(limited.solve(), Result::Unknown);
  EXPECT_EQ(s.solve(), Result::Unsat);
  EXPECT_GT(s.conflicts(), 3u);
}

TEST(SatProperty, AgreesWithBruteForce) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t vars = 1 + rng() % 10;
    const auto cnf = random_cnf(rng, vars, rng() % 45, 3);
    Solver s;
    for (std::size_t v = 0; v < vars; ++v) s.new_var();
    for (const auto& c : cnf) s.add_clause(c);
    const bool expected = brute_force(cnf, vars);
    const Result got = s.solve();
    ASSERT_EQ(got == Result::Sat, expected) << "trial " << trial;
    if (got == Result::Sat) {
      for (const auto& c : cnf) {
        ASSERT_TRUE(std::any_of(c.begin(), c.end(), [&](Lit l) { return s.model_value(l); })) << "trial " << trial;
      }
    }
  }
}

TEST(SatProperty, IncrementalAssumptionsAgreeWithBruteForce) {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t vars = 2 + rng() % 8;
    const auto cnf = random_cnf(rng, vars, rng() % 25, 3);
    Solver s;
    for (std::size_t v = 0; v < vars; ++v) s.new_var();
    for (const auto& c : cnf) s.add_clause(c);
    for (int q = 0; q < 8; ++q) {
      std::vector<Lit> as;
      for (std::size_t k = 0; k < 1 + rng() % 3; ++k) as.push_back(Lit(rng() % vars, rng() % 2 == 1));
      ASSERT_EQ(s.solve(as) == Result::Sat, brute_force(cnf, vars, as)) << "trial " << trial << " query " << q;
    }
  }
}
