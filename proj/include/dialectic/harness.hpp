#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dialectic/acceptability.hpp"
#include "dialectic/kb.hpp"

namespace dialectic::harness {

// Deterministic across platforms: bounded draws use plain modular
// reduction instead of the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct GenParams {
  std::size_t atom_count = 3;
  std::size_t label_count = 4;
  std::size_t max_formula_depth = 2;
  double implication_bias = 0.3;  // chance that an inner node is an implication
  double focus_fraction = 0.0;    // chance that a label joins the focus set
  std::uint64_t seed = 1;
};

// Atoms are named p0, p1, ...; labels l0, l1, .... With focus_fraction > 0 a
// random strict order is declared over the chosen focus labels.
LabelledDatabase random_db(const GenParams& params);
Formula random_formula(Rng& rng, std::size_t atom_count, std::size_t depth, double implication_bias);

// Each entry, its negation, the pairwise conjunctions of entries, and false.
std::vector<Formula> sample_queries(const LabelledDatabase& db);

// Reference semantics by exhaustive enumeration: every label subset, each
// checked against a full truth table. Shares nothing with the solver path.
// Throws Error past kMaxLabels labels or kMaxAtoms atoms.
class TruthTableOracle {
 public:
  static constexpr std::size_t kMaxLabels = 16;
  static constexpr std::size_t kMaxAtoms = 16;

  explicit TruthTableOracle(const LabelledDatabase& db);

  std::vector<LabelSet> supports(const Formula& f) const;
  bool consistent(const LabelSet& labels) const;
  bool exists_consistent_entailing(const Formula& f) const;
  Level level(const Argument& arg, Mode mode) const;
  std::optional<Level> best_level(const Formula& f, Mode mode) const;

 private:
  struct Scan {
    std::vector<char> entails;
    std::vector<char> consistent;
  };
  const Scan& scan(const Formula& f) const;
  std::uint32_t mask_of(const LabelSet& labels) const;
  bool dominates(std::size_t l, std::size_t m) const;

  const LabelledDatabase* db_;
  mutable std::map<std::string, Scan> cache_;
};

std::vector<LabelSet> oracle_supports(const LabelledDatabase& db, const Formula& f);

struct PartitionReport {
  bool applicable = false;
  std::string reason;  // why not applicable
  std::size_t arguments_checked = 0;
  std::vector<std::string> violations;
};

// Checks the lower bounds implied by a three-way split K, K1, K2 of the
// labels where K+K1 and K+K2 are consistent but K1+K2 is not: arguments
// supported inside K should be confirmed, inside K+K1 or K+K2 at least
// plausible, and inside K1+K2 at least supported. Uses sample_queries(db)
// when `queries` is empty.
PartitionReport check_partition_property(const LabelSet& k, const LabelSet& k1, const LabelSet& k2,
                                         const LabelledDatabase& db, std::span<const Formula> queries = {},
                                         Mode mode = Mode::Flat);

struct PartitionedDb {
  LabelledDatabase db;
  LabelSet k;
  LabelSet k1;
  LabelSet k2;
};

// Random database meeting the partition preconditions. With
// separate_vocabulary, K draws its atoms from a pool disjoint from the one
// used by K1 and K2.
PartitionedDb random_partitioned_db(std::uint64_t seed, bool separate_vocabulary);

// Random globally consistent database: every entry holds in one hidden
// assignment.
LabelledDatabase random_consistent_db(const GenParams& params);

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;  // first few, for the report
  std::size_t failure_count = 0;
  double seconds = 0.0;

  bool passed() const { return failure_count == 0; }
};

// Supports from the solver path (both strategies) against oracle_supports.
SuiteResult run_oracle_equivalence(std::size_t cases, std::uint64_t seed);
// Class nesting, and engine levels against oracle levels in both modes.
SuiteResult run_chain(std::size_t cases, std::uint64_t seed);
// The partition lower bounds on generated partitioned databases.
SuiteResult run_partition(std::size_t cases, std::uint64_t seed, bool separate_vocabulary);
// Prioritized with an empty focus set equals flat.
SuiteResult run_empty_focus(std::size_t cases, std::uint64_t seed);
// Consistent databases: arguments confirmed, tautologies certain.
SuiteResult run_consistent(std::size_t cases, std::uint64_t seed);

nlohmann::json to_json(const SuiteResult& r);
std::string to_text(const SuiteResult& r);

// Case parameters used by the suites for case i.
GenParams case_params(std::uint64_t seed, std::size_t index, double focus_fraction);

}  // namespace dialectic::harness
