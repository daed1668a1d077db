#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dialectic/formula.hpp"

namespace dialectic {

using Label = std::string;
using LabelSet = std::set<Label>;

struct Entry {
  Label label;
  Formula formula;

  bool operator==(const Entry&) const = default;
};

// A labelled database: uniquely named formulas, with an optional focus set
// and a strict partial order of declared priorities over it. Immutable once
// constructed; the database may be inconsistent.
class LabelledDatabase {
 public:
  LabelledDatabase() = default;

  // Validates and closes the priority relation under transitivity. Labels in
  // `focus` and in any priority pair form the focus set. Throws KbError on a
  // duplicate label, a reference to an unknown label, or a priority cycle.
  LabelledDatabase(std::vector<Entry> entries, const LabelSet& focus = {},
                   const std::vector<std::pair<Label, Label>>& priorities = {});

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  const Entry& entry(std::size_t i) const { return entries_[i]; }
  const Label& label(std::size_t i) const { return entries_[i].label; }
  const Formula& formula(std::size_t i) const { return entries_[i].formula; }

  std::optional<std::size_t> index_of(std::string_view label) const;
  bool contains(std::string_view label) const { return index_of(label).has_value(); }

  // Throws UnknownLabel.
  const Formula& lookup(std::string_view label) const;

  std::vector<Formula> facts(const LabelSet& labels) const;
  LabelSet labels() const;

  bool in_focus(std::size_t i) const { return focus_[i]; }
  LabelSet focus() const;
  LabelSet background() const;

  // Declared priority after transitive closure: hi > lo.
  bool declared_above(std::size_t hi, std::size_t lo) const { return above_[hi * size() + lo]; }
  std::vector<std::pair<Label, Label>> declared_priority() const;

 private:
  std::vector<Entry> entries_;
  std::map<Label, std::size_t, std::less<>> index_;
  std::vector<bool> focus_;
  std::vector<bool> above_;  // row-major size() x size()
};

// The lift of declared priorities to every label: a focus label dominates
// the focus labels declared below it and every background label; background
// labels are mutually unrelated.
class InducedOrder {
 public:
  explicit InducedOrder(const LabelledDatabase& db);

  bool dominates(std::size_t l, std::size_t m) const { return rel_[l * n_ + m]; }
  bool dominates(std::string_view l, std::string_view m) const;
  bool empty() const;
  std::vector<std::pair<Label, Label>> pairs() const;

 private:
  const LabelledDatabase* db_;
  std::size_t n_;
  std::vector<bool> rel_;
};

// Herbrand instantiation of rule schemas. Inside an applied atom, an
// argument that starts with an uppercase letter and is not a declared
// constant is a variable. Each schema with variables v1..vk (in order of
// first occurrence) yields one entry per assignment, labelled
// "label@c1,...,ck"; assignments are enumerated in lexicographic order of
// the sorted constants. Throws KbError when a schema has variables but no
// constants are declared, or when expanded labels collide.
std::vector<Entry> ground(std::span<const Entry> schemas, const std::set<std::string>& constants);

// Variables of a schema, in order of first occurrence.
std::vector<std::string> schema_variables(const Formula& f, const std::set<std::string>& constants);

// Parses the line-oriented KB format:
//
//   # comment
//   const c1, c2.
//   focus l1, l2.
//   priority l1 > l2.
//   label: formula.
//
// Statements end with '.'. A focus or priority reference to a schema label
// stands for all of its instances. Throws ParseError or KbError.
LabelledDatabase parse_kb(std::string_view text);
LabelledDatabase load_kb(const std::string& path);

// Canonical writer; parse_kb(render_kb(db)) reproduces db.
std::string render_kb(const LabelledDatabase& db);

}  // namespace dialectic
