#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dialectic/qualifiers.hpp"

namespace dialectic {

// A non-trivial argument against one of the reported supports. For an
// undercutter, `target` names the attacked label. In prioritized mode,
// `witness` is a label of the attacked support that dominates every label of
// the defeater, when one exists.
struct Defeater {
  std::string conclusion;
  LabelSet support;
  std::optional<Label> target;
  std::optional<Label> witness;

  bool operator==(const Defeater&) const = default;
};

struct SupportReport {
  LabelSet labels;
  Level level = Level::A1;
  bool nontrivial = false;
  std::vector<Defeater> rebutters;
  std::vector<Defeater> undercutters;

  bool operator==(const SupportReport&) const = default;
};

struct QualifierReport {
  std::string formula;
  Mode mode = Mode::Flat;
  std::optional<Level> level;
  BasicQualifier basic = BasicQualifier::None;
  HybridQualifierSet hybrids;
  std::vector<SupportReport> supports;

  bool operator==(const QualifierReport&) const = default;
};

QualifierReport build_report(Reasoner& r, const Formula& f, Mode mode);
std::string render_text(const QualifierReport& report);

void to_json(nlohmann::json& j, const Defeater& d);
void from_json(const nlohmann::json& j, Defeater& d);
void to_json(nlohmann::json& j, const SupportReport& s);
void from_json(const nlohmann::json& j, SupportReport& s);
void to_json(nlohmann::json& j, const QualifierReport& q);
void from_json(const nlohmann::json& j, QualifierReport& q);

}  // namespace dialectic
