#include "dialectic/report.hpp"

#include <sstream>

#include "dialectic/errors.hpp"

namespace dialectic {

namespace {

std::optional<Label> find_witness(const Reasoner& r, const LabelSet& own, const LabelSet& other) {
  const auto& order = r.order();
  for (const auto& l : own) {
    bool all = true;
    for (const auto& m : other) {
      if (!order.dominates(l, m)) {
        all = false;
        break;
      }
    }
    if (all) return l;
  }
  return std::nullopt;
}

std::vector<Defeater> defeaters(Reasoner& r, const Formula& against, const LabelSet& own,
                                std::optional<Label> target, Mode mode) {
  std::vector<Defeater> out;
  const std::string text = to_string(against);
  for (const auto& s : r.supports(against)) {
    if (!r.consistent(s)) continue;
    out.push_back(Defeater{text, s, target, mode == Mode::Prioritized ? find_witness(r, own, s) : std::nullopt});
  }
  return out;
}

std::string join(const LabelSet& s) {
  std::string out = "{";
  for (const auto& l : s) out += (out.size() > 1 ? ", " : "") + l;
  return out + "}";
}

Level level_from(const nlohmann::json& j) {
  auto l = parse_level(j.get<std::string>());
  if (!l) throw Error("bad level '" + j.get<std::string>() + "'");
  return *l;
}

}  // namespace

QualifierReport build_report(Reasoner& r, const Formula& f, Mode mode) {
  QualifierReport q;
  q.formula = to_string(f);
  q.mode = mode;
  const auto& db = r.database();
  for (const auto& s : r.supports(f)) {
    SupportReport sr;
    sr.labels = s;
    sr.level = level_of(r, Argument{f, s}, mode);
    sr.nontrivial = r.consistent(s);
    sr.rebutters = defeaters(r, negate(f), s, std::nullopt, mode);
    for (const auto& l : s) {
      auto u = defeaters(r, negate(db.lookup(l)), s, l, mode);
      sr.undercutters.insert(sr.undercutters.end(), u.begin(), u.end());
    }
    if (!q.level || sr.level > *q.level) q.level = sr.level;
    q.supports.push_back(std::move(sr));
  }
  q.basic = qualifier_for(q.level);
  q.hybrids = hybrids_from(q.basic, basic_qualifier(r, negate(f), mode));
  return q;
}

std::string render_text(const QualifierReport& q) {
  std::ostringstream os;
  os << "formula: " << q.formula << "\n";
  os << "mode: " << to_string(q.mode) << "\n";
  os << "level: " << (q.level ? std::string(to_string(*q.level)) : "none") << "\n";
  os << "qualifier: " << to_string(q.basic) << "\n";
  os << "hybrids:";
  bool any = false;
  for (const auto& [name, value] : q.hybrids.items()) {
    if (value) {
      os << " " << name;
      any = true;
    }
  }
  os << (any ? "" : " none") << "\n";
  os << "supports: " << q.supports.size() << "\n";
  for (const auto& s : q.supports) {
    os << "  " << join(s.labels) << " " << to_string(s.level) << (s.nontrivial ? "" : " trivial") << "\n";
    for (const auto& d : s.rebutters) {
      os << "    rebutted by (" << d.conclusion << ", " << join(d.support) << ")";
      if (d.witness) os << " overridden via " << *d.witness;
      os << "\n";
    }
    for (const auto& d : s.undercutters) {
      os << "    undercut at " << *d.target << " by (" << d.conclusion << ", " << join(d.support) << ")\n";
    }
  }
  return os.str();
}

void to_json(nlohmann::json& j, const Defeater& d) {
  j = nlohmann::json{{"conclusion", d.conclusion}, {"support", d.support}};
  if (d.target) j["target"] = *d.target;
  if (d.witness) j["witness"] = *d.witness;
}

void from_json(const nlohmann::json& j, Defeater& d) {
  d.conclusion = j.at("conclusion").get<std::string>();
  d.support = j.at("support").get<LabelSet>();
  d.target = j.contains("target") ? std::optional<Label>(j["target"].get<std::string>()) : std::nullopt;
  d.witness = j.contains("witness") ? std::optional<Label>(j["witness"].get<std::string>()) : std::nullopt;
}

void to_json(nlohmann::json& j, const SupportReport& s) {
  j = nlohmann::json{{"labels", s.labels},
                     {"level", to_string(s.level)},
                     {"nontrivial", s.nontrivial},
                     {"defeated_by", {{"rebutters", s.rebutters}, {"undercutters", s.undercutters}}}};
}

void from_json(const nlohmann::json& j, SupportReport& s) {
  s.labels = j.at("labels").get<LabelSet>();
  s.level = level_from(j.at("level"));
  s.nontrivial = j.at("nontrivial").get<bool>();
  s.rebutters = j.at("defeated_by").at("rebutters").get<std::vector<Defeater>>();
  s.undercutters = j.at("defeated_by").at("undercutters").get<std::vector<Defeater>>();
}

void to_json(nlohmann::json& j, const QualifierReport& q) {
  nlohmann::json hybrids = nlohmann::json::object();
  for (const auto& [name, value] : q.hybrids.items()) hybrids[std::string(name)] = value;
  j = nlohmann::json{{"formula", q.formula},
                     {"mode", to_string(q.mode)},
                     {"level", q.level ? nlohmann::json(to_string(*q.level)) : nlohmann::json(nullptr)},
                     {"basic", to_string(q.basic)},
                     {"hybrids", hybrids},
                     {"supports", q.supports}};
}

void from_json(const nlohmann::json& j, QualifierReport& q) {
  q.formula = j.at("formula").get<std::string>();
  const auto mode = j.at("mode").get<std::string>();
  if (mode != "flat" && mode != "prioritized") throw Error("bad mode '" + mode + "'");
  q.mode = mode == "flat" ? Mode::Flat : Mode::Prioritized;
  q.level = j.at("level").is_null() ? std::nullopt : std::optional<Level>(level_from(j.at("level")));
  auto basic = parse_qualifier(j.at("basic").get<std::string>());
  if (!basic) throw Error("bad qualifier '" + j.at("basic").get<std::string>() + "'");
  q.basic = *basic;
  const auto& h = j.at("hybrids");
  auto& x = q.hybrids;
  for (auto [name, field] : {std::pair{"opposed", &x.opposed}, {"doubted", &x.doubted}, {"dubious", &x.dubious},
                             {"rejected", &x.rejected}, {"impossible", &x.impossible},
                             {"implausible", &x.implausible}, {"improbable", &x.improbable},
                             {"unconfirmed", &x.unconfirmed}, {"uncertain", &x.uncertain},
                             {"equivocal", &x.equivocal}, {"problematic", &x.problematic}}) {
    *field = h.at(name).get<bool>();
  }
  q.supports = j.at("supports").get<std::vector<SupportReport>>();
}

}  // namespace dialectic
