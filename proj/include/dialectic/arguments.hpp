#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dialectic/errors.hpp"
#include "dialectic/formula.hpp"
#include "dialectic/kb.hpp"
#include "dialectic/sat.hpp"

namespace dialectic {

// A conclusion with a minimal set of labels whose facts entail it.
struct Argument {
  Formula conclusion;
  LabelSet support;

  bool operator==(const Argument&) const = default;
};

inline bool is_tautological(const Argument& a) { return a.support.empty(); }

enum class SupportSearch {
  Auto,     // breadth-first up to kBreadthLabelLimit labels, dualization above
  Breadth,  // subsets by increasing size, pruned by found supports and models
  Dualize,  // MARCO-style alternation of grow (satisfiable) and shrink (support)
};

struct SearchStats {
  std::uint64_t subsets = 0;
  std::uint64_t sat_calls = 0;
};

// Argument construction over one database. Supports are cached per
// conclusion, so an instance is cheap to query repeatedly but must not be
// shared between threads. The database must outlive the reasoner.
class Reasoner {
 public:
  static constexpr std::size_t kBreadthLabelLimit = 14;

  explicit Reasoner(const LabelledDatabase& db, Limits limits = {}, SupportSearch search = SupportSearch::Auto);
  ~Reasoner();
  Reasoner(const Reasoner&) = delete;
  Reasoner& operator=(const Reasoner&) = delete;

  const LabelledDatabase& database() const { return *db_; }
  const InducedOrder& order() const { return order_; }
  const Limits& limits() const { return limits_; }

  // Every minimal label set whose facts entail f, ordered by size and then
  // lexicographically. Includes minimal inconsistent sets that entail f only
  // by explosion. {{}} exactly when f is a tautology. Throws BudgetExceeded.
  const std::vector<LabelSet>& supports(const Formula& f);
  std::vector<Argument> arguments(const Formula& f);

  bool consistent(const LabelSet& labels);
  bool is_nontrivial(const Argument& a) { return consistent(a.support); }

  // Some consistent subset of the database entails f. Any such subset
  // contains a minimal support, which is then consistent too.
  bool exists_nontrivial_for(const Formula& f);

  // a1's conclusion entails the negation of a2's conclusion.
  bool rebuts(const Argument& a1, const Argument& a2) const;
  // a1's conclusion entails the negation of some fact supporting a2.
  bool undercuts(const Argument& a1, const Argument& a2) const;
  // Some label of a1 dominates every label of a2 in the induced order.
  bool has_priority(const Argument& a1, const Argument& a2) const;

  SearchStats stats() const { return stats_; }

 private:
  using Ids = std::vector<std::uint32_t>;
  class Query;

  std::vector<Ids> enumerate_breadth(Query& q);
  std::vector<Ids> enumerate_dualize(Query& q);
  LabelSet to_labels(const Ids& ids) const;
  Ids to_ids(const LabelSet& labels) const;

  const LabelledDatabase* db_;
  InducedOrder order_;
  Limits limits_;
  SupportSearch search_;
  SearchStats stats_;

  struct Encoded;
  std::unique_ptr<Encoded> enc_;
  std::map<std::string, std::vector<LabelSet>> support_cache_;
  std::map<Ids, bool> consistency_cache_;
};

// One-shot conveniences over a temporary Reasoner.
std::vector<LabelSet> supports(const LabelledDatabase& db, const Formula& f, const Limits& limits = {});
bool is_nontrivial(const LabelledDatabase& db, const Argument& a, const Limits& limits = {});
bool exists_nontrivial_for(const LabelledDatabase& db, const Formula& f, const Limits& limits = {});

}  // namespace dialectic
