#include "dialectic/qualifiers.hpp"

#include <algorithm>

namespace dialectic {

std::string_view to_string(BasicQualifier q) {
  switch (q) {
    case BasicQualifier::None:
      return "none";
    case BasicQualifier::Supported:
      return "supported";
    case BasicQualifier::Plausible:
      return "plausible";
    case BasicQualifier::Probable:
      return "probable";
    case BasicQualifier::Confirmed:
      return "confirmed";
    case BasicQualifier::Certain:
      return "certain";
  }
  return "?";
}

std::optional<BasicQualifier> parse_qualifier(std::string_view text) {
  for (auto q : {BasicQualifier::None, BasicQualifier::Supported, BasicQualifier::Plausible, BasicQualifier::Probable,
                 BasicQualifier::Confirmed, BasicQualifier::Certain}) {
    if (to_string(q) == text) return q;
  }
  return std::nullopt;
}

BasicQualifier qualifier_for(std::optional<Level> level) {
  if (!level) return BasicQualifier::None;
  return static_cast<BasicQualifier>(static_cast<std::uint8_t>(*level));
}

BasicQualifier basic_qualifier(Reasoner& r, const Formula& f, Mode mode) {
  return qualifier_for(best_level(r, f, mode));
}

std::vector<std::pair<std::string_view, bool>> HybridQualifierSet::items() const {
  return {{"opposed", opposed},         {"doubted", doubted},       {"dubious", dubious},
          {"rejected", rejected},       {"impossible", impossible}, {"implausible", implausible},
          {"improbable", improbable},   {"unconfirmed", unconfirmed}, {"uncertain", uncertain},
          {"equivocal", equivocal},     {"problematic", problematic}};
}

HybridQualifierSet hybrids_from(BasicQualifier f, BasicQualifier nf) {
  using Q = BasicQualifier;
  HybridQualifierSet h;
  h.opposed = nf == Q::Supported;
  h.doubted = nf == Q::Plausible;
  h.dubious = nf == Q::Probable;
  h.rejected = nf == Q::Confirmed;
  h.impossible = nf == Q::Certain;
  h.implausible = f != Q::Plausible;
  h.improbable = f != Q::Probable;
  h.unconfirmed = f != Q::Confirmed;
  h.uncertain = f != Q::Certain;
  h.equivocal = f == Q::Supported && nf == Q::Supported;
  h.problematic = f == Q::Plausible && nf == Q::Plausible;
  return h;
}

HybridQualifierSet evaluate_hybrids(Reasoner& r, const Formula& f, Mode mode) {
  return hybrids_from(basic_qualifier(r, f, mode), basic_qualifier(r, negate(f), mode));
}

std::vector<Formula> flatten(Reasoner& r, const FlattenPolicy& policy, Mode mode) {
  std::vector<Formula> out;
  for (const auto& f : policy.queries) {
    for (const auto& support : r.supports(f)) {
      const bool uses_excluded = std::any_of(support.begin(), support.end(),
                                             [&](const Label& l) { return policy.excluded.contains(l); });
      if (uses_excluded) continue;
      if (qualifier_for(level_of(r, Argument{f, support}, mode)) >= policy.threshold) {
        out.push_back(f);
        break;
      }
    }
  }
  return out;
}

}  // namespace dialectic
