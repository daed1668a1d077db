#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "dialectic/arguments.hpp"

namespace dialectic {

// Nested acceptability classes, least to most acceptable:
//   A1 supported  - the argument exists
//   A2 plausible  - its support is consistent
//   A3 probable   - plus no consistent argument for the negated conclusion
//   A4 confirmed  - plus no consistent argument against any supporting fact
//   A5 certain    - plus the support is empty
enum class Level : std::uint8_t { A1 = 1, A2, A3, A4, A5 };

// Prioritized mode weakens the A3 test: a consistent rebutter only counts
// when the argument does not have priority over it.
enum class Mode : std::uint8_t { Flat, Prioritized };

std::string_view to_string(Level level);
std::string_view to_string(Mode mode);
std::optional<Level> parse_level(std::string_view text);

// The individual tests behind each class, evaluated independently.
struct Membership {
  bool nontrivial = false;
  bool unrebutted = false;
  bool not_undercut = false;
  bool tautological = false;

  // Greatest class whose tests, together with all lower ones, pass.
  Level level() const;
};

Membership assess(Reasoner& r, const Argument& arg, Mode mode);
Level level_of(Reasoner& r, const Argument& arg, Mode mode);

// Level of the best argument for f; empty when f has no argument.
std::optional<Level> best_level(Reasoner& r, const Formula& f, Mode mode);

enum class Comparison : std::uint8_t { First, Second, Tie, Incomparable };
std::string_view to_string(Comparison c);

// Compares propositions by their best arguments. A missing argument loses
// to any present one; two missing are incomparable.
Comparison more_acceptable(Reasoner& r, const Formula& f, const Formula& g, Mode mode);

}  // namespace dialectic
