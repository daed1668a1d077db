#include "dialectic/sat.hpp"

#include <algorithm>

namespace dialectic::sat {

Var Solver::new_var() {
  const auto v = static_cast<Var>(assigns_.size());
  assigns_.push_back(kUndef);
  levels_.push_back(0);
  reasons_.push_back(kNoReason);
  activity_.push_back(0.0);
  seen_.push_back(0);
  model_.push_back(false);
  watches_.emplace_back();
  watches_.emplace_back();
  return v;
}

bool Solver::add_clause(std::span<const Lit> lits) {
  if (!ok_) return false;
  backtrack(0);

  std::vector<Lit> c(lits.begin(), lits.end());
  std::sort(c.begin(), c.end(), [](Lit a, Lit b) { return a.code() < b.code(); });
  c.erase(std::unique(c.begin(), c.end()), c.end());

  std::vector<Lit> kept;
  kept.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i + 1 < c.size() && c[i + 1] == ~c[i]) return true;  // tautology
    const auto v = value(c[i]);
    if (v == kTrue) return true;
    if (v == kUndef) kept.push_back(c[i]);
  }

  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  attach(std::move(kept));
  return true;
}

std::uint32_t Solver::attach(std::vector<Lit> lits) {
  const auto idx = static_cast<std::uint32_t>(clauses_.size());
  watches_[lits[0].code()].push_back(idx);
  watches_[lits[1].code()].push_back(idx);
  clauses_.push_back(std::move(lits));
  return idx;
}

void Solver::enqueue(Lit l, std::uint32_t reason) {
  assigns_[l.var()] = l.negated() ? kFalse : kTrue;
  levels_[l.var()] = level();
  reasons_[l.var()] = reason;
  trail_.push_back(l);
}

std::uint32_t Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit false_lit = ~trail_[qhead_++];
    auto& ws = watches_[false_lit.code()];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const std::uint32_t ci = ws[i++];
      auto& c = clauses_[ci];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value(c[0]) == kTrue) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[c[1].code()].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == kFalse) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::bump(Var v) {
  activity_[v] += bump_amount_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    bump_amount_ *= 1e-100;
  }
}

void Solver::analyze(std::uint32_t confl, std::vector<Lit>& learnt, std::uint32_t& back_level) {
  learnt.clear();
  learnt.emplace_back();  // slot for the asserting literal
  int path_count = 0;
  bool have_pivot = false;
  Lit pivot;
  std::size_t index = trail_.size();

  do {
    const auto& c = clauses_[confl];
    for (std::size_t k = have_pivot ? 1 : 0; k < c.size(); ++k) {
      const Lit q = c[k];
      const Var v = q.var();
      if (seen_[v] || levels_[v] == 0) continue;
      seen_[v] = 1;
      bump(v);
      if (levels_[v] == level()) {
        ++path_count;
      } else {
        learnt.push_back(q);
      }
    }
    while (!seen_[trail_[--index].var()]) {
    }
    pivot = trail_[index];
    have_pivot = true;
    confl = reasons_[pivot.var()];
    seen_[pivot.var()] = 0;
    --path_count;
  } while (path_count > 0);
  learnt[0] = ~pivot;

  back_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (levels_[learnt[k].var()] > levels_[learnt[max_i].var()]) max_i = k;
    }
    std::swap(learnt[1], learnt[max_i]);
    back_level = levels_[learnt[1].var()];
  }
  for (const Lit l : learnt) seen_[l.var()] = 0;
}

void Solver::backtrack(std::uint32_t to_level) {
  if (level() <= to_level) return;
  const std::size_t stop = trail_lim_[to_level];
  for (std::size_t i = trail_.size(); i > stop; --i) {
    const Var v = trail_[i - 1].var();
    assigns_[v] = kUndef;
    reasons_[v] = kNoReason;
  }
  trail_.resize(stop);
  trail_lim_.resize(to_level);
  qhead_ = trail_.size();
}

bool Solver::pick_branch(Lit& out) {
  bool found = false;
  Var best = 0;
  for (Var v = 0; v < assigns_.size(); ++v) {
    if (assigns_[v] != kUndef) continue;
    if (!found || activity_[v] > activity_[best]) {
      best = v;
      found = true;
    }
  }
  if (found) out = Lit(best, !default_polarity_);
  return found;
}

Result Solver::solve(std::span<const Lit> assumptions) {
  if (!ok_) return Result::Unsat;
  backtrack(0);

  std::uint64_t call_conflicts = 0;
  std::vector<Lit> learnt;
  for (;;) {
    const std::uint32_t confl = propagate();
    if (confl != kNoReason) {
      ++total_conflicts_;
      ++call_conflicts;
      if (level() == 0) {
        ok_ = false;
        return Result::Unsat;
      }
      std::uint32_t back_level = 0;
      analyze(confl, learnt, back_level);
      backtrack(back_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const auto idx = attach(learnt);
        enqueue(clauses_[idx][0], idx);
      }
      bump_amount_ /= 0.95;
      if (call_conflicts >= conflict_limit_) {
        backtrack(0);
        return Result::Unknown;
      }
      continue;
    }

    bool have_next = false;
    Lit next;
    while (level() < assumptions.size()) {
      const Lit a = assumptions[level()];
      const auto v = value(a);
      if (v == kTrue) {
        trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size()));
      } else if (v == kFalse) {
        backtrack(0);
        return Result::Unsat;
      } else {
        next = a;
        have_next = true;
        break;
      }
    }
    if (!have_next && !pick_branch(next)) {
      for (Var v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == kTrue;
      backtrack(0);
      return Result::Sat;
    }
    ++total_decisions_;
    trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size()));
    enqueue(next, kNoReason);
  }
}

}  // namespace dialectic::sat
