#include "dialectic/acceptability.hpp"

#include <algorithm>

namespace dialectic {

std::string_view to_string(Level level) {
  switch (level) {
    case Level::A1:
      return "A1";
    case Level::A2:
      return "A2";
    case Level::A3:
      return "A3";
    case Level::A4:
      return "A4";
    case Level::A5:
      return "A5";
  }
  return "?";
}

std::string_view to_string(Mode mode) { return mode == Mode::Flat ? "flat" : "prioritized"; }

std::optional<Level> parse_level(std::string_view text) {
  for (auto l : {Level::A1, Level::A2, Level::A3, Level::A4, Level::A5}) {
    if (to_string(l) == text) return l;
  }
  return std::nullopt;
}

std::string_view to_string(Comparison c) {
  switch (c) {
    case Comparison::First:
      return "first";
    case Comparison::Second:
      return "second";
    case Comparison::Tie:
      return "tie";
    case Comparison::Incomparable:
      return "incomparable";
  }
  return "?";
}

Level Membership::level() const {
  if (!nontrivial) return Level::A1;
  if (!unrebutted) return Level::A2;
  if (!not_undercut) return Level::A3;
  if (!tautological) return Level::A4;
  return Level::A5;
}

namespace {

bool unrebutted(Reasoner& r, const Argument& arg, Mode mode) {
  const Formula contrary = negate(arg.conclusion);
  if (mode == Mode::Flat) return !r.exists_nontrivial_for(contrary);
  for (const auto& support : r.supports(contrary)) {
    if (!r.consistent(support)) continue;
    if (!r.has_priority(arg, Argument{contrary, support})) return false;
  }
  return true;
}

bool not_undercut(Reasoner& r, const Argument& arg) {
  const auto& db = r.database();
  return std::none_of(arg.support.begin(), arg.support.end(),
                      [&](const Label& l) { return r.exists_nontrivial_for(negate(db.lookup(l))); });
}

}  // namespace

Membership assess(Reasoner& r, const Argument& arg, Mode mode) {
  Membership m;
  m.nontrivial = r.is_nontrivial(arg);
  m.unrebutted = unrebutted(r, arg, mode);
  m.not_undercut = not_undercut(r, arg);
  m.tautological = is_tautological(arg);
  return m;
}

Level level_of(Reasoner& r, const Argument& arg, Mode mode) {
  if (!r.is_nontrivial(arg)) return Level::A1;
  if (!unrebutted(r, arg, mode)) return Level::A2;
  if (!not_undercut(r, arg)) return Level::A3;
  if (!is_tautological(arg)) return Level::A4;
  return Level::A5;
}

std::optional<Level> best_level(Reasoner& r, const Formula& f, Mode mode) {
  std::optional<Level> best;
  for (const auto& support : r.supports(f)) {
    const Level l = level_of(r, Argument{f, support}, mode);
    if (!best || l > *best) best = l;
    if (*best == Level::A5) break;
  }
  return best;
}

Comparison more_acceptable(Reasoner& r, const Formula& f, const Formula& g, Mode mode) {
  const auto a = best_level(r, f, mode);
  const auto b = best_level(r, g, mode);
  if (!a && !b) return Comparison::Incomparable;
  if (!b || (a && *a > *b)) return Comparison::First;
  if (!a || *b > *a) return Comparison::Second;
  return Comparison::Tie;
}

}  // namespace dialectic
