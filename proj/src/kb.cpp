#include "dialectic/kb.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "dialectic/errors.hpp"
#include "dialectic/parse.hpp"

namespace dialectic {

// --- LabelledDatabase ---------------------------------------------------

LabelledDatabase::LabelledDatabase(std::vector<Entry> entries, const LabelSet& focus,
                                   const std::vector<std::pair<Label, Label>>& priorities)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].label, i).second) throw KbError("duplicate label '" + entries_[i].label + "'");
  }
  const std::size_t n = entries_.size();
  focus_.assign(n, false);
  above_.assign(n * n, false);

  auto require = [&](const Label& l, const char* what) {
    auto idx = index_of(l);
    if (!idx) throw KbError(std::string(what) + " references undeclared label '" + l + "'");
    return *idx;
  };
  for (const auto& l : focus) focus_[require(l, "focus")] = true;
  for (const auto& [hi, lo] : priorities) {
    const auto h = require(hi, "priority");
    const auto w = require(lo, "priority");
    focus_[h] = true;
    focus_[w] = true;
    above_[h * n + w] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!above_[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (above_[k * n + j]) above_[i * n + j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (above_[i * n + i]) throw KbError("priority cycle through '" + entries_[i].label + "'");
  }
}

std::optional<std::size_t> LabelledDatabase::index_of(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Formula& LabelledDatabase::lookup(std::string_view label) const {
  auto idx = index_of(label);
  if (!idx) throw UnknownLabel(std::string(label));
  return entries_[*idx].formula;
}

std::vector<Formula> LabelledDatabase::facts(const LabelSet& labels) const {
  std::vector<Formula> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(lookup(l));
  return out;
}

LabelSet LabelledDatabase::labels() const {
  LabelSet out;
  for (const auto& e : entries_) out.insert(e.label);
  return out;
}

LabelSet LabelledDatabase::focus() const {
  LabelSet out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (focus_[i]) out.insert(label(i));
  }
  return out;
}

LabelSet LabelledDatabase::background() const {
  LabelSet out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!focus_[i]) out.insert(label(i));
  }
  return out;
}

std::vector<std::pair<Label, Label>> LabelledDatabase::declared_priority() const {
  std::vector<std::pair<Label, Label>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (declared_above(i, j)) out.emplace_back(label(i), label(j));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- InducedOrder -------------------------------------------------------

InducedOrder::InducedOrder(const LabelledDatabase& db) : db_(&db), n_(db.size()), rel_(n_ * n_, false) {
  for (std::size_t l = 0; l < n_; ++l) {
    if (!db.in_focus(l)) continue;
    for (std::size_t m = 0; m < n_; ++m) {
      rel_[l * n_ + m] = db.in_focus(m) ? db.declared_above(l, m) : true;
    }
  }
}

bool InducedOrder::dominates(std::string_view l, std::string_view m) const {
  auto li = db_->index_of(l);
  auto mi = db_->index_of(m);
  if (!li) throw UnknownLabel(std::string(l));
  if (!mi) throw UnknownLabel(std::string(m));
  return dominates(*li, *mi);
}

bool InducedOrder::empty() const { return std::none_of(rel_.begin(), rel_.end(), [](bool b) { return b; }); }

std::vector<std::pair<Label, Label>> InducedOrder::pairs() const {
  std::vector<std::pair<Label, Label>> out;
  for (std::size_t l = 0; l < n_; ++l) {
    for (std::size_t m = 0; m < n_; ++m) {
      if (dominates(l, m)) out.emplace_back(db_->label(l), db_->label(m));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- Grounding ----------------------------------------------------------

namespace {

struct AppliedAtom {
  std::string predicate;
  std::vector<std::string> args;
};

// Atom names produced by the parser are either "p" or "p(a,b,...)".
AppliedAtom split_atom(const std::string& name) {
  AppliedAtom out;
  const auto open = name.find('(');
  if (open == std::string::npos) {
    out.predicate = name;
    return out;
  }
  out.predicate = name.substr(0, open);
  std::string inner = name.substr(open + 1, name.size() - open - 2);
  std::size_t start = 0;
  for (;;) {
    const auto comma = inner.find(',', start);
    out.args.push_back(inner.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool is_variable(const std::string& term, const std::set<std::string>& constants) {
  return !term.empty() && std::isupper(static_cast<unsigned char>(term.front())) && !constants.contains(term);
}

void find_variables(const Formula& f, const std::set<std::string>& constants, std::vector<std::string>& out) {
  switch (f.kind()) {
    case Connective::Atom:
      for (const auto& a : split_atom(f.name()).args) {
        if (is_variable(a, constants) && std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
      }
      return;
    case Connective::Top:
    case Connective::Bottom:
      return;
    case Connective::Not:
      find_variables(f.lhs(), constants, out);
      return;
    default:
      find_variables(f.lhs(), constants, out);
      find_variables(f.rhs(), constants, out);
  }
}

Formula substitute(const Formula& f, const std::map<std::string, std::string>& binding) {
  switch (f.kind()) {
    case Connective::Atom: {
      auto atom = split_atom(f.name());
      if (atom.args.empty()) return f;
      std::string name = atom.predicate + "(";
      for (std::size_t i = 0; i < atom.args.size(); ++i) {
        if (i) name += ',';
        auto it = binding.find(atom.args[i]);
        name += it == binding.end() ? atom.args[i] : it->second;
      }
      return Formula::atom(name + ")");
    }
    case Connective::Top:
    case Connective::Bottom:
      return f;
    case Connective::Not:
      return Formula::negation(substitute(f.lhs(), binding));
    case Connective::And:
      return Formula::conjunction(substitute(f.lhs(), binding), substitute(f.rhs(), binding));
    case Connective::Or:
      return Formula::disjunction(substitute(f.lhs(), binding), substitute(f.rhs(), binding));
    case Connective::Implies:
      return Formula::implication(substitute(f.lhs(), binding), substitute(f.rhs(), binding));
  }
  return f;
}

}  // namespace

std::vector<std::string> schema_variables(const Formula& f, const std::set<std::string>& constants) {
  std::vector<std::string> out;
  find_variables(f, constants, out);
  return out;
}

std::vector<Entry> ground(std::span<const Entry> schemas, const std::set<std::string>& constants) {
  const std::vector<std::string> values(constants.begin(), constants.end());
  std::vector<Entry> out;
  std::set<Label> seen;
  auto emit = [&](Entry e) {
    if (!seen.insert(e.label).second) throw KbError("label collision after schema expansion: '" + e.label + "'");
    out.push_back(std::move(e));
  };

  for (const auto& schema : schemas) {
    const auto vars = schema_variables(schema.formula, constants);
    if (vars.empty()) {
      emit(schema);
      continue;
    }
    if (values.empty()) {
      throw KbError("schema '" + schema.label + "' has variable " + vars.front() + " but no constants are declared");
    }
    std::vector<std::size_t> odometer(vars.size(), 0);
    for (;;) {
      std::map<std::string, std::string> binding;
      std::string label = schema.label + "@";
      for (std::size_t i = 0; i < vars.size(); ++i) {
        binding[vars[i]] = values[odometer[i]];
        if (i) label += ',';
        label += values[odometer[i]];
      }
      emit(Entry{label, substitute(schema.formula, binding)});

      std::size_t k = vars.size();
      while (k > 0 && ++odometer[k - 1] == values.size()) {
        odometer[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }
  return out;
}

// --- KB text format -----------------------------------------------------

namespace {

struct Statement {
  std::string text;
  SourcePos pos;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_word(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// identifier ( "@" word ( "," word )* )?
bool is_label(std::string_view s) {
  const auto at = s.find('@');
  const auto head = s.substr(0, at);
  if (!is_word(head) || std::isdigit(static_cast<unsigned char>(head.front()))) return false;
  if (at == std::string_view::npos) return true;
  auto rest = s.substr(at + 1);
  for (;;) {
    const auto comma = rest.find(',');
    if (!is_word(rest.substr(0, comma))) return false;
    if (comma == std::string_view::npos) return true;
    rest = rest.substr(comma + 1);
  }
}

SourcePos advance_pos(SourcePos p, std::string_view text) {
  for (char c : text) {
    if (c == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

std::vector<Statement> split_statements(std::string_view text) {
  std::string clean(text);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (clean[i] != '#') continue;
    while (i < clean.size() && clean[i] != '\n') clean[i++] = ' ';
  }

  std::vector<Statement> out;
  SourcePos pos;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= clean.size(); ++i) {
    if (i < clean.size() && clean[i] != '.') continue;
    std::string_view raw(clean.data() + start, i - start);
    const auto body = trim(raw);
    const SourcePos body_pos = advance_pos(pos, raw.substr(0, raw.find_first_not_of(" \t\r\n")));
    if (!body.empty()) {
      if (i == clean.size()) throw ParseError("statement is not terminated by '.'", body_pos.line, body_pos.column);
      out.push_back({std::string(body), body_pos});
    }
    if (i < clean.size()) pos = advance_pos(pos, std::string_view(clean.data() + start, i - start + 1));
    start = i + 1;
  }
  return out;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  for (;;) {
    const auto comma = s.find(',');
    out.emplace_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return out;
}

}  // namespace

LabelledDatabase parse_kb(std::string_view text) {
  std::set<std::string> constants;
  std::vector<Entry> raw_entries;
  std::map<Label, SourcePos> entry_pos;
  std::vector<Statement> focus_stmts;
  std::vector<Statement> priority_stmts;

  for (const auto& st : split_statements(text)) {
    std::string_view body = st.text;
    std::size_t kw_end = 0;
    while (kw_end < body.size() && std::isalpha(static_cast<unsigned char>(body[kw_end]))) ++kw_end;
    const auto keyword = body.substr(0, kw_end);
    const auto after = trim(body.substr(kw_end));
    const bool directive = (keyword == "const" || keyword == "focus" || keyword == "priority") && !after.empty() &&
                           after.front() != ':' && kw_end < body.size() &&
                           std::isspace(static_cast<unsigned char>(body[kw_end]));

    if (directive && keyword == "const") {
      for (const auto& c : split_list(after)) {
        if (!is_word(c)) throw ParseError("invalid constant '" + c + "'", st.pos.line, st.pos.column);
        constants.insert(c);
      }
    } else if (directive && keyword == "focus") {
      focus_stmts.push_back({std::string(after), st.pos});
    } else if (directive && keyword == "priority") {
      priority_stmts.push_back({std::string(after), st.pos});
    } else {
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError("expected 'label: formula', 'const', 'focus' or 'priority'", st.pos.line, st.pos.column);
      }
      const std::string label(trim(body.substr(0, colon)));
      if (!is_label(label)) throw ParseError("invalid label '" + label + "'", st.pos.line, st.pos.column);
      if (entry_pos.contains(label)) {
        throw KbError(std::to_string(st.pos.line) + ":" + std::to_string(st.pos.column) + ": duplicate label '" +
                      label + "'");
      }
      const SourcePos formula_pos = advance_pos(st.pos, body.substr(0, colon + 1));
      raw_entries.push_back(Entry{label, parse_formula(body.substr(colon + 1), formula_pos)});
      entry_pos.emplace(label, st.pos);
    }
  }

  auto entries = ground(raw_entries, constants);

  // Reference name -> concrete labels: an entry label, or a schema label
  // standing for all of its instances.
  std::map<Label, std::vector<Label>> refs;
  for (const auto& e : entries) {
    refs[e.label].push_back(e.label);
    const auto at = e.label.find('@');
    if (at != std::string::npos && !entry_pos.contains(e.label)) refs[e.label.substr(0, at)].push_back(e.label);
  }
  auto resolve = [&](const std::string& name, const Statement& st) -> const std::vector<Label>& {
    auto it = refs.find(name);
    if (it == refs.end()) {
      throw KbError(std::to_string(st.pos.line) + ":" + std::to_string(st.pos.column) +
                    ": reference to undeclared label '" + name + "'");
    }
    return it->second;
  };

  LabelSet focus;
  for (const auto& st : focus_stmts) {
    const auto pieces = split_list(st.text);
    // Instance labels contain commas, so take the longest run of pieces that
    // names a known label.
    for (std::size_t i = 0; i < pieces.size();) {
      std::size_t taken = 0;
      for (std::size_t j = pieces.size(); j > i && taken == 0; --j) {
        std::string cand = pieces[i];
        for (std::size_t k = i + 1; k < j; ++k) cand += "," + pieces[k];
        if (refs.contains(cand)) {
          for (const auto& l : refs[cand]) focus.insert(l);
          taken = j - i;
        }
      }
      if (taken == 0) resolve(pieces[i], st);
      i += taken;
    }
  }

  std::vector<std::pair<Label, Label>> priorities;
  for (const auto& st : priority_stmts) {
    const auto gt = st.text.find('>');
    if (gt == std::string::npos || st.text.find('>', gt + 1) != std::string::npos) {
      throw ParseError("expected 'priority <label> > <label>'", st.pos.line, st.pos.column);
    }
    const std::string hi(trim(std::string_view(st.text).substr(0, gt)));
    const std::string lo(trim(std::string_view(st.text).substr(gt + 1)));
    for (const auto& h : resolve(hi, st)) {
      for (const auto& l : resolve(lo, st)) priorities.emplace_back(h, l);
    }
  }

  return LabelledDatabase(std::move(entries), focus, priorities);
}

LabelledDatabase load_kb(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_kb(ss.str());
}

std::string render_kb(const LabelledDatabase& db) {
  std::ostringstream os;
  // Uppercase argument terms must be declared or they would re-parse as
  // schema variables.
  std::set<std::string> atoms;
  for (const auto& e : db.entries()) collect_atoms(e.formula, atoms);
  std::set<std::string> constants;
  for (const auto& a : atoms) {
    for (const auto& t : split_atom(a).args) {
      if (is_variable(t, {})) constants.insert(t);
    }
  }
  if (!constants.empty()) {
    os << "const ";
    bool first = true;
    for (const auto& c : constants) {
      os << (first ? "" : ", ") << c;
      first = false;
    }
    os << ".\n";
  }
  for (const auto& e : db.entries()) os << e.label << ": " << to_string(e.formula) << ".\n";
  const auto focus = db.focus();
  if (!focus.empty()) {
    os << "focus ";
    bool first = true;
    for (const auto& l : focus) {
      os << (first ? "" : ", ") << l;
      first = false;
    }
    os << ".\n";
  }
  for (const auto& [hi, lo] : db.declared_priority()) os << "priority " << hi << " > " << lo << ".\n";
  return os.str();
}

}  // namespace dialectic
