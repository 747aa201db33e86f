#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexflow/gale_hoffman.hpp"
#include "lexflow/model.hpp"
#include "lexflow/ratio_search.hpp"

namespace lexflow {

struct FixedArc {
  std::string arc;
  Rational value;

  friend bool operator==(const FixedArc&, const FixedArc&) = default;
};

/// One step of the reduction: a critical cut of the current reduced problem
/// loaded uniformly at `ratio`, with its reverse arcs pinned to zero.
struct Level {
  Rational ratio;
  Cut cut;
  std::vector<FixedArc> fixed_forward;
  std::vector<std::string> zeroed_reverse;

  friend bool operator==(const Level&, const Level&) = default;
};

struct Certificate {
  std::vector<Level> levels;
  std::vector<std::string> zero_tail;  // arcs left when the residual balance vanished

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct BalancedSolution {
  Flow flow;
  Certificate certificate;
  std::vector<Rational> sorted_ratio_vector;  // descending

  Rational minmax_ratio() const {
    return certificate.levels.empty() ? Rational() : certificate.levels.front().ratio;
  }
};

struct Reduction {
  Problem problem;
  Level level;
};

/// Fixes x_e = r * lambda_e on the forward arcs of `cut` and x_e = 0 on its
/// reverse arcs, removes all of them, and moves the fixed amounts into the
/// balances of the endpoints.
inline Reduction reduce(const Problem& p, const Cut& cut, const Rational& r) {
  if (r.sign() <= 0) detail::fail(ErrorKind::NotCritical, "level ratio must be positive");
  const CutStats stats = cut_stats(p, cut);
  if (stats.capacity.is_zero()) detail::fail(ErrorKind::EmptyCutArcSet, "critical cut has no forward arcs");
  if (stats.deficiency != r * stats.capacity)
    detail::fail(ErrorKind::NotCritical,
                 "cut ratio " + to_string(stats.ratio) + " differs from level ratio " + r.to_string());

  Level level{r, cut, {}, {}};
  std::vector<Node> nodes = p.nodes();
  std::vector<Arc> kept;
  for (const Arc& arc : p.arcs()) {
    if (cut.is_forward(arc)) {
      const Rational value = r * arc.capacity;
      nodes[arc.tail].balance -= value;
      nodes[arc.head].balance += value;
      level.fixed_forward.push_back({arc.id, value});
    } else if (cut.is_reverse(arc)) {
      level.zeroed_reverse.push_back(arc.id);
    } else {
      kept.push_back(arc);
    }
  }
  return {Problem(std::move(nodes), std::move(kept)), std::move(level)};
}

struct SolveOptions {
  RatioMode mode = RatioMode::Dinkelbach;
  CutSide cut_side = CutSide::Source;
};

/// The unique lexmin (balanced) flow, built level by level from critical
/// cuts, together with the certificate that replays it.
inline BalancedSolution balanced_flow(const Problem& p, const SolveOptions& options = {}) {
  detail::require_no_fatal_cut(p);

  BalancedSolution solution;
  solution.flow.values.assign(p.arc_count(), Rational());
  Problem current = p;
  while (!current.balances_vanish()) {
    // Reduced problems stay weakly solvable, so the search skips the fatal-cut pre-check.
    RatioResult ratio = options.mode == RatioMode::Dinkelbach ? detail::dinkelbach(current, options.cut_side)
                                                               : detail::dichotomy(current, options.cut_side);
    detail::ensure(ratio.r0.sign() > 0 && ratio.critical_cut.has_value(), "nonzero residual with zero ratio");
    const auto& levels = solution.certificate.levels;
    if (!levels.empty() && ratio.r0 > levels.back().ratio)
      detail::fail(ErrorKind::MonotonicityViolation,
                   "level ratio " + ratio.r0.to_string() + " exceeds previous " + levels.back().ratio.to_string());

    Reduction step = reduce(current, *ratio.critical_cut, ratio.r0);
    for (const FixedArc& fixed : step.level.fixed_forward) solution.flow.values[*p.arc_index(fixed.arc)] = fixed.value;
    solution.certificate.levels.push_back(std::move(step.level));
    current = std::move(step.problem);
  }
  for (const Arc& arc : current.arcs()) solution.certificate.zero_tail.push_back(arc.id);
  detail::ensure(solution.certificate.levels.size() <= p.arc_count(), "more levels than arcs");
  solution.sorted_ratio_vector = sorted_descending(ratio_vector(p, solution.flow));
  return solution;
}

enum class CheckFailure {
  None,
  Conservation,     // A_G x = d, x >= 0, one value per arc
  Monotonicity,     // level ratios positive and non-increasing
  ArcPartition,     // every arc in exactly one fixed/zeroed/tail list
  CutInvalid,       // level cut is not a proper partition
  CutRatio,         // d_C != r_k * lambda_C in the reduced problem
  ArcSets,          // fixed/zeroed lists differ from the cut's arc sets
  ReverseValue,     // a zeroed reverse arc carries flow
  ForwardValue,     // a fixed arc differs from r_k * lambda_e
  Minimality,       // r_k is not the exact minmax ratio of its stage
  ResidualBalance,  // balances do not vanish after the last level
  ZeroTail,         // tail arcs disagree with the remaining arcs or carry flow
  SortedRatios,     // reported ratio vector disagrees with the flow
};

inline std::string_view to_string(CheckFailure f) {
  switch (f) {
    case CheckFailure::None: return "none";
    case CheckFailure::Conservation: return "conservation";
    case CheckFailure::SortedRatios: return "sorted_ratios";
    case CheckFailure::Monotonicity: return "monotonicity";
    case CheckFailure::ArcPartition: return "arc_partition";
    case CheckFailure::CutInvalid: return "cut_invalid";
    case CheckFailure::CutRatio: return "cut_ratio";
    case CheckFailure::ArcSets: return "arc_sets";
    case CheckFailure::ReverseValue: return "reverse_value";
    case CheckFailure::ForwardValue: return "forward_value";
    case CheckFailure::Minimality: return "minimality";
    case CheckFailure::ResidualBalance: return "residual_balance";
    case CheckFailure::ZeroTail: return "zero_tail";
  }
  return "unknown";
}

struct VerifyResult {
  CheckFailure failure = CheckFailure::None;
  std::string detail;

  bool accepted() const { return failure == CheckFailure::None; }
};

/// Replays a certificate against the problem without searching for cuts:
/// only cut arithmetic and one feasibility test on each side of every r_k.
inline VerifyResult verify_certificate(const Problem& p, const BalancedSolution& sol) {
  auto reject = [](CheckFailure f, std::string detail) { return VerifyResult{f, std::move(detail)}; };
  const Flow& x = sol.flow;
  const Certificate& cert = sol.certificate;

  if (x.values.size() != p.arc_count()) return reject(CheckFailure::Conservation, "flow size mismatch");
  for (std::size_t e = 0; e < p.arc_count(); ++e)
    if (x.values[e].sign() < 0) return reject(CheckFailure::Conservation, "negative flow on " + p.arcs()[e].id);
  const auto residual = node_balance_residual(p, x);
  for (std::size_t v = 0; v < p.node_count(); ++v)
    if (!residual[v].is_zero())
      return reject(CheckFailure::Conservation,
                    "node " + p.nodes()[v].id + " off balance by " + residual[v].to_string());

  for (std::size_t k = 0; k < cert.levels.size(); ++k) {
    if (cert.levels[k].ratio.sign() <= 0) return reject(CheckFailure::Monotonicity, "nonpositive level ratio");
    if (k > 0 && cert.levels[k].ratio > cert.levels[k - 1].ratio)
      return reject(CheckFailure::Monotonicity, "level " + std::to_string(k) + " ratio increases");
  }

  std::vector<int> seen(p.arc_count(), 0);
  auto mark = [&](const std::string& id) {
    auto e = p.arc_index(id);
    if (!e) return false;
    ++seen[*e];
    return true;
  };
  for (const Level& level : cert.levels) {
    for (const FixedArc& f : level.fixed_forward)
      if (!mark(f.arc)) return reject(CheckFailure::ArcPartition, "unknown arc " + f.arc);
    for (const std::string& id : level.zeroed_reverse)
      if (!mark(id)) return reject(CheckFailure::ArcPartition, "unknown arc " + id);
  }
  for (const std::string& id : cert.zero_tail)
    if (!mark(id)) return reject(CheckFailure::ArcPartition, "unknown arc " + id);
  for (std::size_t e = 0; e < p.arc_count(); ++e)
    if (seen[e] != 1)
      return reject(CheckFailure::ArcPartition,
                    "arc " + p.arcs()[e].id + " listed " + std::to_string(seen[e]) + " times");

  Problem current = p;
  for (std::size_t k = 0; k < cert.levels.size(); ++k) {
    const Level& level = cert.levels[k];
    const std::string where = "level " + std::to_string(k) + ": ";
    if (level.cut.node_count() != p.node_count() || !level.cut.is_proper())
      return reject(CheckFailure::CutInvalid, where + "cut is not a proper partition");
    const CutStats stats = cut_stats(current, level.cut);
    if (stats.capacity.is_zero() || stats.deficiency != level.ratio * stats.capacity)
      return reject(CheckFailure::CutRatio, where + "cut ratio " + to_string(stats.ratio) + " != " +
                                                level.ratio.to_string());

    std::vector<std::string> forward, reverse;
    for (const Arc& arc : current.arcs()) {
      if (level.cut.is_forward(arc)) forward.push_back(arc.id);
      if (level.cut.is_reverse(arc)) reverse.push_back(arc.id);
    }
    std::vector<std::string> listed;
    for (const FixedArc& f : level.fixed_forward) listed.push_back(f.arc);
    if (listed != forward || level.zeroed_reverse != reverse)
      return reject(CheckFailure::ArcSets, where + "fixed arcs differ from the cut's arc sets");
    for (const std::string& id : level.zeroed_reverse)
      if (!x.values[*p.arc_index(id)].is_zero())
        return reject(CheckFailure::ReverseValue, where + "reverse arc " + id + " carries flow");
    for (const FixedArc& f : level.fixed_forward) {
      const std::size_t e = *p.arc_index(f.arc);
      const Rational expected = level.ratio * p.arcs()[e].capacity;
      if (f.value != expected || x.values[e] != expected)
        return reject(CheckFailure::ForwardValue, where + "arc " + f.arc + " not at r_k * lambda");
    }

    const Rational delta = separation_delta(current);
    if (!is_feasible(current, level.ratio).feasible())
      return reject(CheckFailure::Minimality, where + "stage infeasible at r_k");
    if (is_feasible(current, level.ratio * (Rational(1) - delta)).feasible())
      return reject(CheckFailure::Minimality, where + "stage feasible below r_k");

    current = reduce(current, level.cut, level.ratio).problem;
  }

  if (!current.balances_vanish())
    return reject(CheckFailure::ResidualBalance, "balances remain after the last level");
  std::vector<std::string> remaining;
  for (const Arc& arc : current.arcs()) remaining.push_back(arc.id);
  if (remaining != cert.zero_tail) return reject(CheckFailure::ZeroTail, "tail arcs differ from remaining arcs");
  for (const std::string& id : cert.zero_tail)
    if (!x.values[*p.arc_index(id)].is_zero()) return reject(CheckFailure::ZeroTail, "tail arc " + id + " carries flow");

  if (sol.sorted_ratio_vector != sorted_descending(ratio_vector(p, x)))
    return reject(CheckFailure::SortedRatios, "sorted ratio vector does not match the flow");
  return {};
}

}  // namespace lexflow
