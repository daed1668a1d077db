#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dialectic/errors.hpp"
#include "dialectic/harness.hpp"
#include "dialectic/kb.hpp"
#include "dialectic/parse.hpp"
#include "dialectic/report.hpp"

using namespace dialectic;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kBudgetExceeded = 2;
constexpr int kPropertyViolation = 3;

struct Options {
  bool json = false;
  bool prioritized = false;
  std::uint64_t max_subsets = Limits{}.max_subsets;
  std::uint64_t max_sat_calls = Limits{}.max_sat_calls;

  std::string kb;
  std::string formula;
  std::string other;
  std::string queries;
  std::string at_least = "supported";
  std::vector<std::string> exclude;
  std::size_t cases = 100;
  std::uint64_t seed = 1;

  Mode mode() const { return prioritized ? Mode::Prioritized : Mode::Flat; }
  Limits limits() const {
    Limits l;
    l.max_subsets = max_subsets;
    l.max_sat_calls = max_sat_calls;
    return l;
  }
};

// A name that is not a label but prefixes schema instances ("r1" for
// "r1@Karen") stands for all of them.
LabelSet resolve_labels(const LabelledDatabase& db, const std::vector<std::string>& names) {
  LabelSet out;
  for (const auto& name : names) {
    if (db.contains(name)) {
      out.insert(name);
      continue;
    }
    bool found = false;
    for (const auto& e : db.entries()) {
      if (e.label.starts_with(name + "@")) {
        out.insert(e.label);
        found = true;
      }
    }
    if (!found) throw UnknownLabel(name);
  }
  return out;
}

std::vector<Formula> load_queries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::vector<Formula> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_formula(line, SourcePos{n, 1}));
  }
  return out;
}

std::string level_text(const std::optional<Level>& l) { return l ? std::string(to_string(*l)) : "none"; }
json level_json(const std::optional<Level>& l) { return l ? json(to_string(*l)) : json(nullptr); }

std::string cmd_classify(const Options& o) {
  const auto db = load_kb(o.kb);
  Reasoner r(db, o.limits());
  const auto report = build_report(r, parse_formula(o.formula), o.mode());
  return o.json ? json(report).dump(2) + "\n" : render_text(report);
}

std::string cmd_arguments(const Options& o) {
  const auto db = load_kb(o.kb);
  Reasoner r(db, o.limits());
  const Formula f = parse_formula(o.formula);
  json items = json::array();
  std::ostringstream text;
  for (const auto& s : r.supports(f)) {
    const Argument arg{f, s};
    const Level level = level_of(r, arg, o.mode());
    const bool nontrivial = r.is_nontrivial(arg);
    items.push_back({{"labels", s}, {"level", to_string(level)}, {"nontrivial", nontrivial}});
    text << "{";
    for (auto it = s.begin(); it != s.end(); ++it) text << (it == s.begin() ? "" : ", ") << *it;
    text << "} " << to_string(level) << (nontrivial ? "" : " trivial") << "\n";
  }
  if (o.json) {
    return json{{"formula", to_string(f)}, {"mode", to_string(o.mode())}, {"arguments", items}}.dump(2) + "\n";
  }
  return text.str();
}

std::string cmd_compare(const Options& o) {
  const auto db = load_kb(o.kb);
  Reasoner r(db, o.limits());
  const Formula f = parse_formula(o.formula);
  const Formula g = parse_formula(o.other);
  const auto lf = best_level(r, f, o.mode());
  const auto lg = best_level(r, g, o.mode());
  const auto result = more_acceptable(r, f, g, o.mode());
  if (o.json) {
    return json{{"mode", to_string(o.mode())},
                {"first", {{"formula", to_string(f)}, {"level", level_json(lf)}}},
                {"second", {{"formula", to_string(g)}, {"level", level_json(lg)}}},
                {"result", to_string(result)}}
               .dump(2) +
           "\n";
  }
  return std::string(to_string(result)) + " (" + to_string(f) + " " + level_text(lf) + ", " + to_string(g) + " " +
         level_text(lg) + ")\n";
}

std::string cmd_flatten(const Options& o) {
  const auto db = load_kb(o.kb);
  Reasoner r(db, o.limits());
  FlattenPolicy policy;
  auto threshold = parse_qualifier(o.at_least);
  if (!threshold || *threshold == BasicQualifier::None) throw Error("unknown qualifier '" + o.at_least + "'");
  policy.threshold = *threshold;
  policy.excluded = resolve_labels(db, o.exclude);
  policy.queries = load_queries(o.queries);
  const auto accepted = flatten(r, policy, o.mode());
  if (o.json) {
    json items = json::array();
    for (const auto& f : accepted) items.push_back(to_string(f));
    return json{{"mode", to_string(o.mode())},
                {"threshold", to_string(policy.threshold)},
                {"excluded", policy.excluded},
                {"accepted", items}}
               .dump(2) +
           "\n";
  }
  std::string out;
  for (const auto& f : accepted) out += to_string(f) + "\n";
  return out;
}

std::string cmd_check(const Options& o, bool& passed) {
  using namespace harness;
  std::vector<SuiteResult> results{
      run_oracle_equivalence(o.cases, o.seed), run_chain(o.cases, o.seed),
      run_partition(o.cases, o.seed, false),   run_partition(o.cases, o.seed, true),
      run_empty_focus(o.cases, o.seed),        run_consistent(o.cases, o.seed),
  };
  passed = std::all_of(results.begin(), results.end(), [](const SuiteResult& s) { return s.passed(); });
  if (o.json) {
    json suites = json::array();
    for (const auto& s : results) suites.push_back(to_json(s));
    return json{{"seed", o.seed}, {"suites", suites}, {"passed", passed}}.dump(2) + "\n";
  }
  std::string out;
  for (const auto& s : results) out += to_text(s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Argument construction and acceptability over labelled knowledge bases"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit JSON");
  app.add_flag("--prioritized", o.prioritized, "Respect focus-set priorities when testing rebutters");
  app.add_option("--max-subsets", o.max_subsets, "Budget on label subsets explored per query")->capture_default_str();
  app.add_option("--max-sat-calls", o.max_sat_calls, "Budget on SAT calls per query")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "Qualifier report for a formula");
  classify->add_option("kb", o.kb, "KB file")->required();
  classify->add_option("formula", o.formula)->required();

  auto* arguments = app.add_subcommand("arguments", "Minimal supports with their levels");
  arguments->add_option("kb", o.kb, "KB file")->required();
  arguments->add_option("formula", o.formula)->required();

  auto* compare = app.add_subcommand("compare", "Which of two formulas is more acceptable");
  compare->add_option("kb", o.kb, "KB file")->required();
  compare->add_option("first", o.formula)->required();
  compare->add_option("second", o.other)->required();

  auto* flat = app.add_subcommand("flatten", "Queries that survive a flattening policy");
  flat->add_option("kb", o.kb, "KB file")->required();
  flat->add_option("queries", o.queries, "File with one formula per line")->required();
  flat->add_option("--at-least", o.at_least, "Minimum qualifier")->capture_default_str();
  flat->add_option("--exclude", o.exclude, "Ignore arguments using this label (repeatable)");

  auto* check = app.add_subcommand("check", "Run the property suites on random databases");
  check->add_option("--cases", o.cases, "Cases per suite")->capture_default_str();
  check->add_option("--seed", o.seed, "Base seed")->capture_default_str();

  for (auto* sub : {classify, arguments, compare, flat, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  // Output is assembled completely before anything is written.
  try {
    std::string out;
    bool passed = true;
    if (classify->parsed()) out = cmd_classify(o);
    if (arguments->parsed()) out = cmd_arguments(o);
    if (compare->parsed()) out = cmd_compare(o);
    if (flat->parsed()) out = cmd_flatten(o);
    if (check->parsed()) out = cmd_check(o, passed);
    std::cout << out << std::flush;
    return passed ? kOk : kPropertyViolation;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
