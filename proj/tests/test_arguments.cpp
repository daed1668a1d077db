#include <gtest/gtest.h>

#include "dialectic/arguments.hpp"
#include "dialectic/harness.hpp"
#include "dialectic/logic.hpp"
#include "fixtures.hpp"

using namespace dialectic;
using fixtures::F;
using fixtures::L;

namespace {

bool is_subset(const LabelSet& a, const LabelSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST(Supports, KarenNotStone) {
  const auto db = fixtures::load("karen.kb");
  EXPECT_EQ(supports(db, F("~stone(Karen)")), std::vector{L({"f1", "r2@Karen"})});
}

TEST(Supports, KarenStoneUsesModusMontanus) {
  const auto db = fixtures::load("karen.kb");
  const auto s = supports(db, F("stone(Karen)"));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(s[0].contains("r4"));
  // r3 is not needed: stone -> ~flies already follows from ~flies.
  EXPECT_EQ(s[0], L({"f1", "r1@Karen", "r4"}));
}

TEST(Supports, WagnerR) {
  // Besides the consistent support {f1, r1, r2}, both minimal inconsistent
  // subsets support r by explosion.
  const auto db = fixtures::load("wagner.kb");
  Reasoner r(db);
  const auto& s = r.supports(F("r"));
  EXPECT_EQ(s, (std::vector{L({"f1", "f4"}), L({"f1", "f2", "r1"}), L({"f1", "r1", "r2"})}));
  std::vector<LabelSet> consistent;
  for (const auto& x : s)
    if (r.consistent(x)) consistent.push_back(x);
  EXPECT_EQ(consistent, std::vector{L({"f1", "r1", "r2"})});
}

TEST(Supports, WagnerBottom) {
  const auto db = fixtures::load("wagner.kb");
  EXPECT_EQ(supports(db, Formula::bottom()), (std::vector{L({"f1", "f4"}), L({"f1", "f2", "r1"})}));
}

TEST(Supports, Tautology) {
  const auto db = fixtures::load("wagner.kb");
  EXPECT_EQ(supports(db, F("q | ~q")), std::vector{LabelSet{}});
  EXPECT_EQ(supports(LabelledDatabase{}, F("true")), std::vector{LabelSet{}});
}

TEST(Supports, EmptyDatabase) {
  EXPECT_TRUE(supports(LabelledDatabase{}, F("p")).empty());
}

TEST(Supports, BudgetExceeded) {
  const auto db = fixtures::load("wagner.kb");
  Limits tight;
  tight.max_subsets = 3;
  EXPECT_THROW(supports(db, F("r"), tight), BudgetExceeded);
  Limits calls;
  calls.max_sat_calls = 1;
  EXPECT_THROW(supports(db, F("r"), calls), BudgetExceeded);
}

TEST(Supports, StrategiesAgreeOnWagner) {
  const auto db = fixtures::load("wagner.kb");
  Reasoner breadth(db, {}, SupportSearch::Breadth);
  Reasoner dualize(db, {}, SupportSearch::Dualize);
  for (const char* q : {"r", "false", "p", "~p", "s", "~s", "p -> r", "q | ~q", "~(p -> q)"}) {
    EXPECT_EQ(breadth.supports(F(q)), dualize.supports(F(q))) << q;
  }
}

TEST(Arguments, NonTrivial) {
  const auto db = fixtures::load("wagner.kb");
  EXPECT_TRUE(is_nontrivial(db, Argument{F("s"), L({"f3"})}));
  EXPECT_FALSE(is_nontrivial(db, Argument{F("~s"), L({"f1", "f4"})}));
  EXPECT_TRUE(is_nontrivial(db, Argument{F("p | ~p"), {}}));
  EXPECT_THROW(is_nontrivial(db, Argument{F("p"), L({"zz"})}), UnknownLabel);
}

TEST(Arguments, Tautological) {
  EXPECT_TRUE(is_tautological(Argument{F("q | ~q"), {}}));
  EXPECT_FALSE(is_tautological(Argument{F("p"), L({"f1"})}));
  EXPECT_TRUE(is_tautological(Argument{Formula::top(), {}}));
}

TEST(Arguments, ExistsNonTrivialFor) {
  const auto db = fixtures::load("wagner.kb");
  EXPECT_TRUE(exists_nontrivial_for(db, F("~p")));
  EXPECT_FALSE(exists_nontrivial_for(db, F("~s")));
  EXPECT_TRUE(exists_nontrivial_for(db, F("~(p -> q)")));
}

TEST(Arguments, ArgumentsList) {
  const auto db = fixtures::load("wagner.kb");
  Reasoner r(db);
  const auto args = r.arguments(F("s"));
  ASSERT_EQ(args.size(), 3u);
  EXPECT_EQ(args[0], (Argument{F("s"), L({"f3"})}));
}

TEST(Defeat, Rebuts) {
  const auto db = fixtures::load("wagner.kb");
  Reasoner r(db);
  EXPECT_TRUE(r.rebuts(Argument{F("~p"), L({"f4"})}, Argument{F("p"), L({"f1"})}));
  EXPECT_TRUE(r.rebuts(Argument{F("p & r"), L({"f1", "r1", "r2"})}, Argument{F("~p"), L({"f4"})}));
  EXPECT_FALSE(r.rebuts(Argument{F("s"), L({"f3"})}, Argument{F("p"), L({"f1"})}));
}

TEST(Defeat, Undercuts) {
  const auto db = fixtures::load("wagner.kb");
  Reasoner r(db);
  EXPECT_TRUE(r.undercuts(Argument{F("~p"), L({"f4"})}, Argument{F("r"), L({"f1", "r1", "r2"})}));
  EXPECT_TRUE(r.undercuts(Argument{F("~(p -> q)"), L({"f1", "f2"})}, Argument{F("p -> r"), L({"r1", "r2"})}));
  EXPECT_FALSE(r.undercuts(Argument{F("~p"), L({"f4"})}, Argument{F("q | ~q"), {}}));
}

TEST(Defeat, Priority) {
  const auto db = fixtures::load("doctor.kb");
  Reasoner r(db);
  const Argument not_du{F("~du"), L({"f1", "r1", "r2"})};
  const Argument du{F("du"), L({"f2", "r3"})};
  EXPECT_TRUE(r.has_priority(not_du, du));
  EXPECT_FALSE(r.has_priority(du, not_du));
  EXPECT_TRUE(r.has_priority(Argument{F("gu"), L({"f1", "r2"})}, Argument{F("~gu"), L({"f2", "r1", "r3"})}));

  const auto flat = fixtures::load("wagner.kb");
  Reasoner rf(flat);
  EXPECT_FALSE(rf.has_priority(Argument{F("p"), L({"f1"})}, Argument{F("~p"), L({"f4"})}));
  EXPECT_FALSE(rf.has_priority(Argument{F("~p"), L({"f4"})}, Argument{F("p"), L({"f1"})}));
}

TEST(ArgumentsProperty, SupportsAreMinimalAntichains) {
  for (std::size_t i = 0; i < 150; ++i) {
    const auto db = harness::random_db(harness::case_params(21, i, 0.0));
    Reasoner r(db);
    for (const auto& q : harness::sample_queries(db)) {
      const auto& ss = r.supports(q);
      for (std::size_t a = 0; a < ss.size(); ++a) {
        ASSERT_TRUE(entails(db.facts(ss[a]), q));
        for (const auto& l : ss[a]) {
          LabelSet smaller = ss[a];
          smaller.erase(l);
          ASSERT_FALSE(entails(db.facts(smaller), q));
        }
        for (std::size_t b = 0; b < ss.size(); ++b) {
          if (a != b) ASSERT_FALSE(is_subset(ss[a], ss[b]));
        }
      }
      const bool taut = is_tautology(q);
      ASSERT_EQ(!ss.empty() && ss[0].empty(), taut);
      if (taut) ASSERT_EQ(ss.size(), 1u);
    }
  }
}

TEST(ArgumentsProperty, DualizationAboveBreadthLimitMatchesOracle) {
  harness::GenParams p;
  p.atom_count = 6;
  p.label_count = 16;
  p.max_formula_depth = 2;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    p.seed = seed;
    const auto db = harness::random_db(p);
    const harness::TruthTableOracle oracle(db);
    Reasoner r(db);  // Auto picks dualization at 16 labels
    for (const auto& q : {db.formula(0), negate(db.formula(1)), Formula::bottom()}) {
      ASSERT_EQ(r.supports(q), oracle.supports(q)) << "seed " << seed << " " << q;
    }
  }
}

TEST(ArgumentsProperty, ExistsNonTrivialMatchesOracle) {
  for (std::size_t i = 0; i < 150; ++i) {
    const auto db = harness::random_db(harness::case_params(33, i, 0.0));
    const harness::TruthTableOracle oracle(db);
    Reasoner r(db);
    for (const auto& q : harness::sample_queries(db)) {
      ASSERT_EQ(r.exists_nontrivial_for(q), oracle.exists_consistent_entailing(q)) << i << " " << q;
    }
  }
}

TEST(ArgumentsProperty, ConsistentDatabaseHasOnlyNonTrivialArguments) {
  for (std::size_t i = 0; i < 100; ++i) {
    const auto db = harness::random_consistent_db(harness::case_params(44, i, 0.0));
    Reasoner r(db);
    for (const auto& q : harness::sample_queries(db)) {
      for (const auto& s : r.supports(q)) ASSERT_TRUE(r.consistent(s));
    }
  }
}

TEST(ArgumentsProperty, RebutIsSymmetric) {
  harness::Rng rng(5);
  const LabelledDatabase db;
  Reasoner r(db);
  for (int i = 0; i < 500; ++i) {
    const Argument a{harness::random_formula(rng, 3, 3, 0.3), {}};
    const Argument b{harness::random_formula(rng, 3, 3, 0.3), {}};
    ASSERT_EQ(r.rebuts(a, b), r.rebuts(b, a)) << a.conclusion << " / " << b.conclusion;
  }
}

TEST(ArgumentsProperty, PriorityIsIrreflexive) {
  for (std::size_t i = 0; i < 150; ++i) {
    const auto db = harness::random_db(harness::case_params(55, i, 0.7));
    Reasoner r(db);
    for (const auto& q : harness::sample_queries(db)) {
      for (const auto& s : r.supports(q)) {
        if (s.empty()) continue;
        ASSERT_FALSE(r.has_priority(Argument{q, s}, Argument{q, s}));
      }
    }
  }
}
