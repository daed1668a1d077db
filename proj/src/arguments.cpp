#include "dialectic/arguments.hpp"

#include <algorithm>
#include <bit>

#include "dialectic/logic.hpp"

namespace dialectic {

struct Reasoner::Encoded {
  std::vector<ClauseSet> entry_clauses;

  // Entries guarded by selector variables, for consistency checks.
  sat::Solver solver;
  VarTable vars;
  std::vector<sat::Lit> selectors;
};

namespace {

// Loads every entry under its own selector; returns the selectors.
std::vector<sat::Lit> load_entries(sat::Solver& solver, VarTable& vars, const std::vector<ClauseSet>& entries) {
  std::vector<sat::Lit> sel;
  sel.reserve(entries.size());
  for (const auto& cs : entries) {
    const sat::Lit s = sat::pos(solver.new_var());
    add_clauses(solver, vars, cs, s);
    sel.push_back(s);
  }
  return sel;
}

}  // namespace

// Support enumeration state for a single conclusion: a solver holding every
// entry under a selector plus the negated conclusion as a hard constraint.
class Reasoner::Query {
 public:
  Query(Reasoner& owner, const Formula& conclusion) : owner_(owner), conclusion_(conclusion) {
    solver_.set_conflict_limit(owner.limits_.max_conflicts);
    selectors_ = load_entries(solver_, vars_, owner.enc_->entry_clauses);
    CnfOptions opts;
    opts.aux_prefix = "$q";
    add_clauses(solver_, vars_, to_clauses(negate(conclusion), opts));
  }

  std::size_t size() const { return selectors_.size(); }

  void count_subset() {
    if (subsets_ >= owner_.limits_.max_subsets) {
      throw BudgetExceeded("support search for '" + to_string(conclusion_) + "' examined more than " +
                           std::to_string(owner_.limits_.max_subsets) + " label sets");
    }
    ++subsets_;
    ++owner_.stats_.subsets;
  }

  // True when the facts selected by `members` entail the conclusion. On a
  // countermodel, last_satisfied() lists every entry true in it.
  bool entails(const std::vector<char>& members) {
    if (sat_calls_ >= owner_.limits_.max_sat_calls) {
      throw BudgetExceeded("support search for '" + to_string(conclusion_) + "' made more than " +
                           std::to_string(owner_.limits_.max_sat_calls) + " solver calls");
    }
    ++sat_calls_;
    ++owner_.stats_.sat_calls;
    assumptions_.clear();
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (members[i]) assumptions_.push_back(selectors_[i]);
    }
    switch (solver_.solve(assumptions_)) {
      case sat::Result::Unsat:
        return true;
      case sat::Result::Sat:
        record_model();
        return false;
      case sat::Result::Unknown:
        break;
    }
    throw BudgetExceeded("solver call for '" + to_string(conclusion_) + "' exceeded " +
                         std::to_string(owner_.limits_.max_conflicts) + " conflicts");
  }

  const std::vector<char>& last_satisfied() const { return satisfied_; }

 private:
  void record_model() {
    const auto& db = owner_.database();
    satisfied_.assign(db.size(), 0);
    auto value = [&](const std::string& atom) {
      auto v = vars_.find(atom);
      return v && solver_.model_value(*v);
    };
    for (std::size_t i = 0; i < db.size(); ++i) satisfied_[i] = db.formula(i).evaluate(value) ? 1 : 0;
  }

  Reasoner& owner_;
  Formula conclusion_;
  sat::Solver solver_;
  VarTable vars_;
  std::vector<sat::Lit> selectors_;
  std::vector<sat::Lit> assumptions_;
  std::vector<char> satisfied_;
  std::uint64_t subsets_ = 0;
  std::uint64_t sat_calls_ = 0;
};

Reasoner::Reasoner(const LabelledDatabase& db, Limits limits, SupportSearch search)
    : db_(&db), order_(db), limits_(limits), search_(search), enc_(std::make_unique<Encoded>()) {
  for (std::size_t i = 0; i < db.size(); ++i) {
    CnfOptions opts;
    opts.aux_prefix = "$e" + std::to_string(i) + "_";
    enc_->entry_clauses.push_back(to_clauses(db.formula(i), opts));
  }
  enc_->solver.set_conflict_limit(limits.max_conflicts);
  enc_->selectors = load_entries(enc_->solver, enc_->vars, enc_->entry_clauses);
}

Reasoner::~Reasoner() = default;

LabelSet Reasoner::to_labels(const Ids& ids) const {
  LabelSet out;
  for (auto i : ids) out.insert(db_->label(i));
  return out;
}

Reasoner::Ids Reasoner::to_ids(const LabelSet& labels) const {
  Ids out;
  for (const auto& l : labels) {
    auto idx = db_->index_of(l);
    if (!idx) throw UnknownLabel(l);
    out.push_back(static_cast<std::uint32_t>(*idx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<LabelSet>& Reasoner::supports(const Formula& f) {
  const std::string key = to_string(f);
  if (auto it = support_cache_.find(key); it != support_cache_.end()) return it->second;

  Query q(*this, f);
  const bool breadth = search_ == SupportSearch::Breadth ||
                       (search_ == SupportSearch::Auto && db_->size() <= kBreadthLabelLimit);
  const auto found = breadth ? enumerate_breadth(q) : enumerate_dualize(q);

  std::vector<LabelSet> out;
  out.reserve(found.size());
  for (const auto& ids : found) out.push_back(to_labels(ids));
  std::sort(out.begin(), out.end(), [](const LabelSet& a, const LabelSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return support_cache_.emplace(key, std::move(out)).first->second;
}

std::vector<Reasoner::Ids> Reasoner::enumerate_breadth(Query& q) {
  const std::size_t n = q.size();
  if (n > 63) throw Error("breadth-first support search is limited to 63 labels");
  using Mask = std::uint64_t;
  const Mask full = n == 0 ? 0 : (~Mask{0} >> (64 - n));

  std::vector<Mask> found;
  std::vector<Mask> countermodels;  // entries satisfied together with the negated conclusion
  std::vector<char> members(n);

  for (std::size_t k = 0; k <= n; ++k) {
    bool open = false;
    // Gosper's hack walks all k-subsets of n bits in increasing order.
    Mask m = k == 0 ? 0 : (~Mask{0} >> (64 - k));
    for (;;) {
      const bool covered = std::any_of(found.begin(), found.end(), [m](Mask s) { return (m & s) == s; });
      if (!covered) {
        open = true;
        const bool refuted = std::any_of(countermodels.begin(), countermodels.end(),
                                         [m](Mask g) { return (m & ~g) == 0; });
        if (!refuted) {
          q.count_subset();
          for (std::size_t i = 0; i < n; ++i) members[i] = (m >> i) & 1;
          if (q.entails(members)) {
            found.push_back(m);
          } else {
            Mask g = 0;
            const auto& sat = q.last_satisfied();
            for (std::size_t i = 0; i < n; ++i) {
              if (sat[i]) g |= Mask{1} << i;
            }
            countermodels.push_back(g);
            if (g == full) return {};  // nothing entails the conclusion
          }
        }
      }
      if (k == 0 || m == (full & ~(full >> k))) break;
      const Mask c = m & (~m + 1);
      const Mask r = m + c;
      m = (((r ^ m) >> 2) / c) | r;
    }
    if (!open) break;  // every k-subset already contains a support
  }

  std::vector<Ids> out;
  for (Mask s : found) {
    Ids ids;
    for (std::size_t i = 0; i < n; ++i) {
      if ((s >> i) & 1) ids.push_back(static_cast<std::uint32_t>(i));
    }
    out.push_back(std::move(ids));
  }
  return out;
}

std::vector<Reasoner::Ids> Reasoner::enumerate_dualize(Query& q) {
  const std::size_t n = q.size();
  // The map solver tracks which label sets remain unexplored: a clause per
  // support blocks its supersets, a clause per countermodel its subsets.
  sat::Solver map;
  map.set_default_polarity(true);
  map.set_conflict_limit(limits_.max_conflicts);
  for (std::size_t i = 0; i < n; ++i) map.new_var();

  std::vector<Ids> out;
  std::vector<char> seed(n);
  std::vector<sat::Lit> block;
  for (;;) {
    const auto r = map.solve();
    if (r == sat::Result::Unsat) break;
    if (r == sat::Result::Unknown) throw BudgetExceeded("exploration map exceeded its conflict budget");
    q.count_subset();
    for (std::size_t i = 0; i < n; ++i) seed[i] = map.model_value(static_cast<sat::Var>(i)) ? 1 : 0;

    block.clear();
    if (!q.entails(seed)) {
      // Grow to a maximal set still consistent with the negated conclusion.
      std::vector<char> grown = q.last_satisfied();
      for (std::size_t i = 0; i < n; ++i) {
        if (grown[i]) continue;
        std::vector<char> trial = grown;
        trial[i] = 1;
        if (!q.entails(trial)) grown = q.last_satisfied();
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (!grown[i]) block.push_back(sat::pos(static_cast<sat::Var>(i)));
      }
    } else {
      // Shrink to a minimal entailing set by deletion.
      for (std::size_t i = 0; i < n; ++i) {
        if (!seed[i]) continue;
        seed[i] = 0;
        if (!q.entails(seed)) seed[i] = 1;
      }
      Ids ids;
      for (std::size_t i = 0; i < n; ++i) {
        if (seed[i]) {
          ids.push_back(static_cast<std::uint32_t>(i));
          block.push_back(sat::neg(static_cast<sat::Var>(i)));
        }
      }
      out.push_back(std::move(ids));
    }
    if (!map.add_clause(block)) break;
  }
  return out;
}

std::vector<Argument> Reasoner::arguments(const Formula& f) {
  std::vector<Argument> out;
  for (const auto& s : supports(f)) out.push_back(Argument{f, s});
  return out;
}

bool Reasoner::consistent(const LabelSet& labels) {
  const Ids ids = to_ids(labels);
  if (auto it = consistency_cache_.find(ids); it != consistency_cache_.end()) return it->second;
  std::vector<sat::Lit> assumptions;
  for (auto i : ids) assumptions.push_back(enc_->selectors[i]);
  const auto r = enc_->solver.solve(assumptions);
  if (r == sat::Result::Unknown) throw BudgetExceeded("consistency check exceeded its conflict budget");
  const bool ok = r == sat::Result::Sat;
  consistency_cache_.emplace(ids, ok);
  return ok;
}

bool Reasoner::exists_nontrivial_for(const Formula& f) {
  const auto& s = supports(f);
  return std::any_of(s.begin(), s.end(), [this](const LabelSet& l) { return consistent(l); });
}

bool Reasoner::rebuts(const Argument& a1, const Argument& a2) const {
  return entails({a1.conclusion}, negate(a2.conclusion), limits_);
}

bool Reasoner::undercuts(const Argument& a1, const Argument& a2) const {
  return std::any_of(a2.support.begin(), a2.support.end(), [&](const Label& l) {
    return entails({a1.conclusion}, negate(db_->lookup(l)), limits_);
  });
}

bool Reasoner::has_priority(const Argument& a1, const Argument& a2) const {
  const Ids witnesses = to_ids(a1.support);
  const Ids others = to_ids(a2.support);
  return std::any_of(witnesses.begin(), witnesses.end(), [&](std::uint32_t l) {
    return std::all_of(others.begin(), others.end(), [&](std::uint32_t m) { return order_.dominates(l, m); });
  });
}

std::vector<LabelSet> supports(const LabelledDatabase& db, const Formula& f, const Limits& limits) {
  Reasoner r(db, limits);
  return r.supports(f);
}

bool is_nontrivial(const LabelledDatabase& db, const Argument& a, const Limits& limits) {
  Reasoner r(db, limits);
  return r.is_nontrivial(a);
}

bool exists_nontrivial_for(const LabelledDatabase& db, const Formula& f, const Limits& limits) {
  Reasoner r(db, limits);
  return r.exists_nontrivial_for(f);
}

}  // namespace dialectic
