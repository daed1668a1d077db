#include "dialectic/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <sstream>
#include <thread>

#include "dialectic/errors.hpp"
#include "dialectic/qualifiers.hpp"

namespace dialectic::harness {

// --- Generation ---------------------------------------------------------

namespace {

std::string atom_name(std::size_t i) { return "p" + std::to_string(i); }

Formula random_leaf(Rng& rng, std::size_t first_atom, std::size_t atom_count) {
  if (rng.chance(0.03)) return rng.chance(0.5) ? Formula::top() : Formula::bottom();
  return Formula::atom(atom_name(first_atom + rng.below(atom_count)));
}

Formula random_formula_in(Rng& rng, std::size_t first_atom, std::size_t atom_count, std::size_t depth,
                          double implication_bias) {
  if (depth == 0 || rng.chance(0.25)) return random_leaf(rng, first_atom, atom_count);
  auto sub = [&] { return random_formula_in(rng, first_atom, atom_count, depth - 1, implication_bias); };
  if (rng.chance(implication_bias)) {
    Formula lhs = sub();
    return Formula::implication(std::move(lhs), sub());
  }
  switch (rng.below(3)) {
    case 0:
      return Formula::negation(sub());
    case 1: {
      Formula lhs = sub();
      return Formula::conjunction(std::move(lhs), sub());
    }
    default: {
      Formula lhs = sub();
      return Formula::disjunction(std::move(lhs), sub());
    }
  }
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Formula random_formula(Rng& rng, std::size_t atom_count, std::size_t depth, double implication_bias) {
  return random_formula_in(rng, 0, std::max<std::size_t>(atom_count, 1), depth, implication_bias);
}

LabelledDatabase random_db(const GenParams& params) {
  Rng rng(params.seed);
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < params.label_count; ++i) {
    entries.push_back(Entry{"l" + std::to_string(i),
                            random_formula(rng, params.atom_count, params.max_formula_depth, params.implication_bias)});
  }
  std::vector<Label> focus;
  if (params.focus_fraction > 0) {
    for (const auto& e : entries) {
      if (rng.chance(params.focus_fraction)) focus.push_back(e.label);
    }
  }
  for (std::size_t i = focus.size(); i > 1; --i) std::swap(focus[i - 1], focus[rng.below(i)]);
  std::vector<std::pair<Label, Label>> priorities;
  for (std::size_t i = 0; i < focus.size(); ++i) {
    for (std::size_t j = i + 1; j < focus.size(); ++j) {
      if (rng.chance(0.5)) priorities.emplace_back(focus[i], focus[j]);
    }
  }
  return LabelledDatabase(std::move(entries), LabelSet(focus.begin(), focus.end()), priorities);
}

LabelledDatabase random_consistent_db(const GenParams& params) {
  Rng rng(params.seed);
  std::vector<char> hidden(std::max<std::size_t>(params.atom_count, 1));
  for (auto& b : hidden) b = rng.chance(0.5) ? 1 : 0;
  auto value = [&](const std::string& atom) { return hidden[std::stoul(atom.substr(1))] != 0; };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < params.label_count; ++i) {
    Formula f = random_formula(rng, params.atom_count, params.max_formula_depth, params.implication_bias);
    if (!f.evaluate(value)) f = negate(f);
    entries.push_back(Entry{"l" + std::to_string(i), f});
  }
  return LabelledDatabase(std::move(entries));
}

std::vector<Formula> sample_queries(const LabelledDatabase& db) {
  std::vector<Formula> out;
  for (const auto& e : db.entries()) out.push_back(e.formula);
  for (const auto& e : db.entries()) out.push_back(negate(e.formula));
  for (std::size_t i = 0; i < db.size(); ++i) {
    for (std::size_t j = i + 1; j < db.size(); ++j) out.push_back(Formula::conjunction(db.formula(i), db.formula(j)));
  }
  out.push_back(Formula::bottom());
  return out;
}

GenParams case_params(std::uint64_t seed, std::size_t index, double focus_fraction) {
  Rng rng(splitmix(seed ^ splitmix(index)));
  GenParams p;
  p.atom_count = 1 + rng.below(8);
  p.label_count = rng.below(13);
  p.max_formula_depth = 1 + rng.below(3);
  p.implication_bias = 0.3;
  p.focus_fraction = focus_fraction;
  p.seed = rng.next();
  return p;
}

// --- Truth-table oracle -------------------------------------------------

namespace {

using Table = std::vector<std::uint64_t>;

struct Universe {
  std::map<std::string, std::size_t> index;
  std::size_t words = 1;
  std::uint64_t tail_mask = ~std::uint64_t{0};  // valid bits of each word
  std::vector<Table> atoms;

  explicit Universe(const std::set<std::string>& names) {
    if (names.size() > TruthTableOracle::kMaxAtoms) {
      throw Error("truth-table oracle is limited to " + std::to_string(TruthTableOracle::kMaxAtoms) + " atoms");
    }
    const std::size_t rows = std::size_t{1} << names.size();
    words = std::max<std::size_t>(1, rows / 64);
    if (rows < 64) tail_mask = (std::uint64_t{1} << rows) - 1;
    for (const auto& n : names) {
      const std::size_t j = index.size();
      index.emplace(n, j);
      Table t(words, 0);
      for (std::size_t r = 0; r < rows; ++r) {
        if ((r >> j) & 1) t[r / 64] |= std::uint64_t{1} << (r % 64);
      }
      atoms.push_back(std::move(t));
    }
  }

  Table constant(bool v) const { return Table(words, v ? tail_mask : 0); }

  Table eval(const Formula& f) const {
    switch (f.kind()) {
      case Connective::Atom:
        return atoms[index.at(f.name())];
      case Connective::Top:
        return constant(true);
      case Connective::Bottom:
        return constant(false);
      case Connective::Not: {
        Table t = eval(f.lhs());
        for (auto& w : t) w = ~w & tail_mask;
        return t;
      }
      default: {
        Table a = eval(f.lhs());
        const Table b = eval(f.rhs());
        for (std::size_t i = 0; i < words; ++i) {
          if (f.is(Connective::And)) a[i] &= b[i];
          if (f.is(Connective::Or)) a[i] |= b[i];
          if (f.is(Connective::Implies)) a[i] = (~a[i] | b[i]) & tail_mask;
        }
        return a;
      }
    }
  }
};

std::set<std::string> db_atoms(const LabelledDatabase& db) {
  std::set<std::string> out;
  for (const auto& e : db.entries()) collect_atoms(e.formula, out);
  return out;
}

bool any_bit(const Table& t) {
  return std::any_of(t.begin(), t.end(), [](std::uint64_t w) { return w != 0; });
}

}  // namespace

TruthTableOracle::TruthTableOracle(const LabelledDatabase& db) : db_(&db) {
  if (db.size() > kMaxLabels) {
    throw Error("truth-table oracle is limited to " + std::to_string(kMaxLabels) + " labels");
  }
}

const TruthTableOracle::Scan& TruthTableOracle::scan(const Formula& f) const {
  const std::string key = to_string(f);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  auto names = db_atoms(*db_);
  collect_atoms(f, names);
  const Universe u(names);
  const std::size_t n = db_->size();
  std::vector<Table> entry_tables;
  for (const auto& e : db_->entries()) entry_tables.push_back(u.eval(e.formula));
  Table countermodels = u.eval(negate(f));

  Scan s;
  s.entails.assign(std::size_t{1} << n, 0);
  s.consistent.assign(std::size_t{1} << n, 0);

  // Depth-first over include/exclude decisions; models[i] holds the rows
  // satisfying the labels chosen among the first i.
  std::vector<Table> models(n + 1, u.constant(true));
  auto visit = [&](auto&& self, std::size_t i, std::uint32_t mask) -> void {
    if (i == n) {
      const Table& m = models[n];
      bool refuted = false;
      for (std::size_t w = 0; w < u.words && !refuted; ++w) refuted = (m[w] & countermodels[w]) != 0;
      s.entails[mask] = refuted ? 0 : 1;
      s.consistent[mask] = any_bit(m) ? 1 : 0;
      return;
    }
    models[i + 1] = models[i];
    self(self, i + 1, mask);
    for (std::size_t w = 0; w < u.words; ++w) models[i + 1][w] = models[i][w] & entry_tables[i][w];
    self(self, i + 1, mask | (std::uint32_t{1} << i));
  };
  visit(visit, 0, 0);
  return cache_.emplace(key, std::move(s)).first->second;
}

std::uint32_t TruthTableOracle::mask_of(const LabelSet& labels) const {
  std::uint32_t m = 0;
  for (const auto& l : labels) {
    auto idx = db_->index_of(l);
    if (!idx) throw UnknownLabel(l);
    m |= std::uint32_t{1} << *idx;
  }
  return m;
}

std::vector<LabelSet> TruthTableOracle::supports(const Formula& f) const {
  const auto& s = scan(f);
  std::vector<LabelSet> out;
  const std::size_t n = db_->size();
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
    if (!s.entails[m]) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < n && minimal; ++i) {
      if ((m >> i) & 1) minimal = !s.entails[m ^ (std::uint32_t{1} << i)];
    }
    if (!minimal) continue;
    LabelSet ls;
    for (std::size_t i = 0; i < n; ++i) {
      if ((m >> i) & 1) ls.insert(db_->label(i));
    }
    out.push_back(std::move(ls));
  }
  std::sort(out.begin(), out.end(), [](const LabelSet& a, const LabelSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

bool TruthTableOracle::consistent(const LabelSet& labels) const {
  return scan(Formula::bottom()).consistent[mask_of(labels)] != 0;
}

bool TruthTableOracle::exists_consistent_entailing(const Formula& f) const {
  const auto& s = scan(f);
  for (std::size_t m = 0; m < s.entails.size(); ++m) {
    if (s.entails[m] && s.consistent[m]) return true;
  }
  return false;
}

bool TruthTableOracle::dominates(std::size_t l, std::size_t m) const {
  if (!db_->in_focus(l)) return false;
  return !db_->in_focus(m) || db_->declared_above(l, m);
}

Level TruthTableOracle::level(const Argument& arg, Mode mode) const {
  if (!consistent(arg.support)) return Level::A1;

  const Formula contrary = negate(arg.conclusion);
  bool rebutted = false;
  if (mode == Mode::Flat) {
    rebutted = exists_consistent_entailing(contrary);
  } else {
    const std::uint32_t own = mask_of(arg.support);
    for (const auto& b : supports(contrary)) {
      if (!consistent(b)) continue;
      const std::uint32_t other = mask_of(b);
      bool priority = false;
      for (std::size_t l = 0; l < db_->size() && !priority; ++l) {
        if (!((own >> l) & 1)) continue;
        priority = true;
        for (std::size_t m = 0; m < db_->size() && priority; ++m) {
          if ((other >> m) & 1) priority = dominates(l, m);
        }
      }
      if (!priority) {
        rebutted = true;
        break;
      }
    }
  }
  if (rebutted) return Level::A2;

  for (const auto& l : arg.support) {
    if (exists_consistent_entailing(negate(db_->lookup(l)))) return Level::A3;
  }
  return arg.support.empty() ? Level::A5 : Level::A4;
}

std::optional<Level> TruthTableOracle::best_level(const Formula& f, Mode mode) const {
  std::optional<Level> best;
  for (const auto& s : supports(f)) {
    const Level l = level(Argument{f, s}, mode);
    if (!best || l > *best) best = l;
  }
  return best;
}

std::vector<LabelSet> oracle_supports(const LabelledDatabase& db, const Formula& f) {
  return TruthTableOracle(db).supports(f);
}

// --- Partition property -------------------------------------------------

namespace {

bool subset_of(const LabelSet& s, const LabelSet& a, const LabelSet& b = {}) {
  return std::all_of(s.begin(), s.end(), [&](const Label& l) { return a.contains(l) || b.contains(l); });
}

LabelSet unite(const LabelSet& a, const LabelSet& b) {
  LabelSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

std::string render_set(const LabelSet& s) {
  std::string out = "{";
  for (const auto& l : s) out += (out.size() > 1 ? "," : "") + l;
  return out + "}";
}

}  // namespace

PartitionReport check_partition_property(const LabelSet& k, const LabelSet& k1, const LabelSet& k2,
                                         const LabelledDatabase& db, std::span<const Formula> queries, Mode mode) {
  PartitionReport report;
  const auto all = db.labels();
  std::size_t total = 0;
  for (const auto* part : {&k, &k1, &k2}) {
    total += part->size();
    for (const auto& l : *part) {
      if (!all.contains(l)) {
        report.reason = "label '" + l + "' is not in the database";
        return report;
      }
    }
  }
  if (total != all.size() || unite(unite(k, k1), k2).size() != all.size()) {
    report.reason = "K, K1, K2 do not partition the labels";
    return report;
  }

  Reasoner r(db);
  if (!r.consistent(unite(k, k1))) {
    report.reason = "K+K1 is inconsistent";
    return report;
  }
  if (!r.consistent(unite(k, k2))) {
    report.reason = "K+K2 is inconsistent";
    return report;
  }
  if (r.consistent(unite(k1, k2))) {
    report.reason = "K1+K2 is consistent";
    return report;
  }
  report.applicable = true;

  std::vector<Formula> sampled;
  if (queries.empty()) {
    sampled = sample_queries(db);
    queries = sampled;
  }
  for (const auto& f : queries) {
    for (const auto& s : r.supports(f)) {
      Level need;
      const char* region;
      if (subset_of(s, k)) {
        need = Level::A4;
        region = "K";
      } else if (subset_of(s, k, k1) || subset_of(s, k, k2)) {
        need = Level::A2;
        region = "K+K1/K+K2";
      } else {
        need = Level::A1;
        region = "K1+K2";
      }
      ++report.arguments_checked;
      const Level got = level_of(r, Argument{f, s}, mode);
      if (got < need) {
        std::ostringstream msg;
        msg << "(" << f << ", " << render_set(s) << ") inside " << region << " is " << to_string(got)
            << ", expected at least " << to_string(need);
        report.violations.push_back(msg.str());
      }
    }
  }
  return report;
}

PartitionedDb random_partitioned_db(std::uint64_t seed, bool separate_vocabulary) {
  Rng rng(seed);
  const std::size_t shared_atoms = 4;
  for (;;) {
    const std::size_t nk = rng.below(4);
    const std::size_t n1 = 1 + rng.below(3);
    const std::size_t n2 = 1 + rng.below(3);
    // K uses atoms p0..p3; K1 and K2 use the same pool unless separated.
    const std::size_t side_first = separate_vocabulary ? shared_atoms : 0;

    std::vector<Entry> entries;
    PartitionedDb out;
    auto add = [&](const std::string& label, Formula f, LabelSet& part) {
      entries.push_back(Entry{label, std::move(f)});
      part.insert(label);
    };
    for (std::size_t i = 0; i < nk; ++i) {
      add("k" + std::to_string(i), random_formula_in(rng, 0, shared_atoms, 2, 0.3), out.k);
    }
    std::vector<Formula> side1;
    for (std::size_t i = 0; i < n1; ++i) {
      side1.push_back(random_formula_in(rng, side_first, shared_atoms, 2, 0.3));
      add("x" + std::to_string(i), side1.back(), out.k1);
    }
    for (std::size_t i = 0; i < n2; ++i) {
      Formula f = i == 0 && rng.chance(0.5) ? negate(side1[rng.below(side1.size())])
                                             : random_formula_in(rng, side_first, shared_atoms, 2, 0.3);
      add("y" + std::to_string(i), std::move(f), out.k2);
    }
    out.db = LabelledDatabase(std::move(entries));

    const TruthTableOracle oracle(out.db);
    if (oracle.consistent(unite(out.k, out.k1)) && oracle.consistent(unite(out.k, out.k2)) &&
        !oracle.consistent(unite(out.k1, out.k2))) {
      return out;
    }
  }
}

// --- Suites -------------------------------------------------------------

namespace {

constexpr std::size_t kReportedFailures = 10;

struct CaseOutcome {
  std::size_t checks = 0;
  std::vector<std::string> failures;
};

// Runs fn(i) for every case on all hardware threads; outcomes are merged in
// case order so reports do not depend on scheduling.
template <typename Fn>
SuiteResult run_cases(std::string name, std::size_t cases, Fn fn) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CaseOutcome> outcomes(cases);
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), cases));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cases; i = next++) {
        try {
          fn(i, outcomes[i]);
        } catch (const std::exception& e) {
          outcomes[i].failures.push_back("case " + std::to_string(i) + ": " + e.what());
        }
      }
    });
  }
  for (auto& t : pool) t.join();

  SuiteResult r;
  r.name = std::move(name);
  r.cases = cases;
  for (std::size_t i = 0; i < cases; ++i) {
    r.checks += outcomes[i].checks;
    r.failure_count += outcomes[i].failures.size();
    for (auto& f : outcomes[i].failures) {
      if (r.failures.size() < kReportedFailures) r.failures.push_back(std::move(f));
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string render_supports(const std::vector<LabelSet>& ss) {
  std::string out = "[";
  for (std::size_t i = 0; i < ss.size(); ++i) out += (i ? " " : "") + render_set(ss[i]);
  return out + "]";
}

}  // namespace

SuiteResult run_oracle_equivalence(std::size_t cases, std::uint64_t seed) {
  return run_cases("oracle-equivalence", cases, [seed](std::size_t i, CaseOutcome& out) {
    const auto db = random_db(case_params(seed, i, 0.0));
    const TruthTableOracle oracle(db);
    Reasoner breadth(db, {}, SupportSearch::Breadth);
    Reasoner dualize(db, {}, SupportSearch::Dualize);
    const bool both = i % 4 == 0;
    for (const auto& q : sample_queries(db)) {
      const auto expected = oracle.supports(q);
      ++out.checks;
      if (breadth.supports(q) != expected) {
        out.failures.push_back("case " + std::to_string(i) + " query " + to_string(q) + ": breadth " +
                               render_supports(breadth.supports(q)) + " oracle " + render_supports(expected));
      }
      if (both) {
        ++out.checks;
        if (dualize.supports(q) != expected) {
          out.failures.push_back("case " + std::to_string(i) + " query " + to_string(q) + ": dualize " +
                                 render_supports(dualize.supports(q)) + " oracle " + render_supports(expected));
        }
      }
    }
  });
}

SuiteResult run_chain(std::size_t cases, std::uint64_t seed) {
  return run_cases("class-chain", cases, [seed](std::size_t i, CaseOutcome& out) {
    const auto db = random_db(case_params(seed, i, 0.5));
    const TruthTableOracle oracle(db);
    Reasoner r(db);
    for (const auto& q : sample_queries(db)) {
      for (const auto& s : r.supports(q)) {
        const Argument arg{q, s};
        for (auto mode : {Mode::Flat, Mode::Prioritized}) {
          const auto m = assess(r, arg, mode);
          const Level level = level_of(r, arg, mode);
          const Level expected = oracle.level(arg, mode);
          out.checks += 3;
          auto fail = [&](const std::string& what) {
            out.failures.push_back("case " + std::to_string(i) + " (" + to_string(q) + ", " + render_set(s) + ") " +
                                   std::string(to_string(mode)) + ": " + what);
          };
          // Each class must sit inside the one below it.
          if (m.tautological && !(m.nontrivial && m.unrebutted && m.not_undercut)) fail("tautological but not in A4");
          if (level != m.level()) fail("level disagrees with class tests");
          if (level != expected) {
            fail(std::string("level ") + std::string(to_string(level)) + ", oracle " +
                 std::string(to_string(expected)));
          }
        }
      }
    }
  });
}

SuiteResult run_partition(std::size_t cases, std::uint64_t seed, bool separate_vocabulary) {
  const std::string name = separate_vocabulary ? "partition-separate-vocabulary" : "partition";
  return run_cases(name, cases, [seed, separate_vocabulary](std::size_t i, CaseOutcome& out) {
    const auto p = random_partitioned_db(splitmix(seed ^ splitmix(i)), separate_vocabulary);
    const auto report = check_partition_property(p.k, p.k1, p.k2, p.db);
    if (!report.applicable) {
      out.failures.push_back("case " + std::to_string(i) + ": generator broke preconditions: " + report.reason);
      return;
    }
    out.checks += report.arguments_checked;
    for (const auto& v : report.violations) out.failures.push_back("case " + std::to_string(i) + ": " + v);
  });
}

SuiteResult run_empty_focus(std::size_t cases, std::uint64_t seed) {
  return run_cases("empty-focus", cases, [seed](std::size_t i, CaseOutcome& out) {
    const auto db = random_db(case_params(seed, i, 0.0));
    Reasoner r(db);
    for (const auto& q : sample_queries(db)) {
      for (const auto& s : r.supports(q)) {
        const Argument arg{q, s};
        ++out.checks;
        const Level flat = level_of(r, arg, Mode::Flat);
        const Level prio = level_of(r, arg, Mode::Prioritized);
        if (flat != prio) {
          out.failures.push_back("case " + std::to_string(i) + " (" + to_string(q) + ", " + render_set(s) +
                                 "): flat " + std::string(to_string(flat)) + " prioritized " +
                                 std::string(to_string(prio)));
        }
      }
    }
  });
}

SuiteResult run_consistent(std::size_t cases, std::uint64_t seed) {
  return run_cases("consistent-db", cases, [seed](std::size_t i, CaseOutcome& out) {
    const auto db = random_consistent_db(case_params(seed, i, 0.0));
    Reasoner r(db);
    auto fail = [&](const std::string& what) { out.failures.push_back("case " + std::to_string(i) + ": " + what); };
    for (const auto& q : sample_queries(db)) {
      for (const auto& s : r.supports(q)) {
        ++out.checks;
        const Level l = level_of(r, Argument{q, s}, Mode::Flat);
        if (l < Level::A4) fail("(" + to_string(q) + ", " + render_set(s) + ") is " + std::string(to_string(l)));
        if (s.empty() && l != Level::A5) fail("tautological (" + to_string(q) + ") is " + std::string(to_string(l)));
      }
    }
    for (const auto& e : db.entries()) {
      const Formula t = Formula::disjunction(e.formula, negate(e.formula));
      ++out.checks;
      const auto q = basic_qualifier(r, t, Mode::Flat);
      if (q != BasicQualifier::Certain) fail(to_string(t) + " is " + std::string(to_string(q)));
    }
  });
}

nlohmann::json to_json(const SuiteResult& r) {
  return nlohmann::json{{"suite", r.name},
                        {"cases", r.cases},
                        {"checks", r.checks},
                        {"failures", r.failure_count},
                        {"examples", r.failures},
                        {"passed", r.passed()}};
}

std::string to_text(const SuiteResult& r) {
  std::ostringstream os;
  os << (r.passed() ? "PASS" : "FAIL") << "  " << r.name << ": " << r.cases << " cases, " << r.checks << " checks, "
     << r.failure_count << " failures\n";
  for (const auto& f : r.failures) os << "      " << f << "\n";
  return os.str();
}

}  // namespace dialectic::harness
