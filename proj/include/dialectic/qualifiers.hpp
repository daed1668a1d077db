#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dialectic/acceptability.hpp"

namespace dialectic {

// Linguistic names of the acceptability classes; None means no argument.
enum class BasicQualifier : std::uint8_t { None, Supported, Plausible, Probable, Confirmed, Certain };

std::string_view to_string(BasicQualifier q);
std::optional<BasicQualifier> parse_qualifier(std::string_view text);
BasicQualifier qualifier_for(std::optional<Level> level);

// Name of the best argument's class for f.
BasicQualifier basic_qualifier(Reasoner& r, const Formula& f, Mode mode);

// Qualifiers derived from the basic ones of f and ~f. The basic predicates
// are exact: plausible(x) holds when x's best argument is plausible and no
// better.
struct HybridQualifierSet {
  bool opposed = false;      // supported(~f)
  bool doubted = false;      // plausible(~f)
  bool dubious = false;      // probable(~f)
  bool rejected = false;     // confirmed(~f)
  bool impossible = false;   // certain(~f)
  bool implausible = false;  // not plausible(f)
  bool improbable = false;   // not probable(f)
  bool unconfirmed = false;  // not confirmed(f)
  bool uncertain = false;    // not certain(f)
  bool equivocal = false;    // supported(f) and supported(~f)
  bool problematic = false;  // plausible(f) and plausible(~f)

  bool operator==(const HybridQualifierSet&) const = default;

  // (name, value) in declaration order.
  std::vector<std::pair<std::string_view, bool>> items() const;
};

HybridQualifierSet hybrids_from(BasicQualifier of_f, BasicQualifier of_negation);
HybridQualifierSet evaluate_hybrids(Reasoner& r, const Formula& f, Mode mode);

struct FlattenPolicy {
  BasicQualifier threshold = BasicQualifier::Supported;  // minimum level an argument must reach
  LabelSet excluded;                                     // arguments using these labels are ignored
  std::vector<Formula> queries;
};

// The queries with at least one argument that avoids every excluded label
// and reaches the threshold, in query order.
std::vector<Formula> flatten(Reasoner& r, const FlattenPolicy& policy, Mode mode);

}  // namespace dialectic
