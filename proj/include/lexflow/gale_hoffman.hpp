#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lexflow/maxflow.hpp"
#include "lexflow/model.hpp"

namespace lexflow {

/// Two-pole network for (G, d, z*lambda): original arcs keep their index,
/// then one arc s*->u per supply node and one w->t* per demand node, all
/// capacities multiplied by a common integerizing `scale`.
struct TwoPole {
  FlowNetwork network;
  std::vector<std::size_t> arc_of;  // original arc index -> network arc index
  Rational total_supply;            // D
  BigInt scale;

  std::size_t super_source() const { return network.source; }
  std::size_t super_sink() const { return network.sink; }
};

inline TwoPole build_two_pole(const Problem& p, const Rational& z) {
  if (z.sign() <= 0) detail::fail(ErrorKind::Internal, "capacity factor must be positive");
  const std::size_t n = p.node_count();
  std::vector<Rational> caps;
  caps.reserve(p.arc_count() + n);
  for (const Arc& arc : p.arcs()) caps.push_back(z * arc.capacity);
  for (const Node& node : p.nodes())
    if (!node.balance.is_zero()) caps.push_back(node.balance.abs());

  TwoPole tp;
  tp.scale = 1;
  for (const Rational& c : caps) tp.scale = lcm(tp.scale, c.denominator());
  tp.total_supply = p.total_supply();
  tp.network.node_count = n + 2;
  tp.network.source = n;
  tp.network.sink = n + 1;
  tp.network.arcs.reserve(caps.size());

  const Rational scale(tp.scale);
  std::size_t next_cap = 0;
  for (std::size_t e = 0; e < p.arc_count(); ++e) {
    const Arc& arc = p.arcs()[e];
    tp.arc_of.push_back(tp.network.arcs.size());
    tp.network.arcs.push_back({arc.tail, arc.head, to_integer(caps[next_cap++] * scale)});
  }
  for (std::size_t v = 0; v < n; ++v) {
    const Rational& d = p.nodes()[v].balance;
    if (d.is_zero()) continue;
    const BigInt cap = to_integer(caps[next_cap++] * scale);
    if (d.sign() > 0) {
      tp.network.arcs.push_back({tp.network.source, v, cap});
    } else {
      tp.network.arcs.push_back({v, tp.network.sink, cap});
    }
  }
  return tp;
}

enum class Verdict { Feasible, Infeasible };

struct FeasibilityReport {
  Verdict verdict = Verdict::Feasible;
  std::optional<Cut> witness;
  std::optional<CutStats> witness_stats;  // at the unscaled capacities lambda

  bool feasible() const { return verdict == Verdict::Feasible; }
};

/// Decides whether (G, d, z*lambda) admits a flow 0 <= x <= z*lambda with
/// A_G x = d. When it does not, the witness is a cut maximizing
/// d_C - z*lambda_C, taken from the reported side of the minimum cut.
inline FeasibilityReport is_feasible(const Problem& p, const Rational& z, CutSide side = CutSide::Source) {
  FeasibilityReport report;
  if (p.balances_vanish()) return report;

  const TwoPole tp = build_two_pole(p, z);
  const MaxFlowResult flow = max_flow(tp.network, side);
  const BigInt target = to_integer(tp.total_supply * Rational(tp.scale));
  if (flow.value == target) return report;
  detail::ensure(flow.value < target, "max flow exceeds total supply");

  std::vector<bool> mask(flow.min_cut_source_side.begin(),
                         flow.min_cut_source_side.begin() + static_cast<std::ptrdiff_t>(p.node_count()));
  Cut witness(std::move(mask));
  // The trivial cuts around s* and t* both have capacity D, so a cut of
  // smaller capacity splits the original nodes properly.
  detail::ensure(witness.is_proper(), "min cut does not induce a proper partition");
  report.verdict = Verdict::Infeasible;
  report.witness_stats = cut_stats(p, witness);
  report.witness = std::move(witness);
  return report;
}

struct FatalCutReport {
  bool fatal = false;
  std::optional<Cut> witness;
};

/// Weak solvability: a fatal cut (d_C > 0, no outgoing arcs) exists iff the
/// problem is infeasible even at z = M = D / min lambda_e.
inline FatalCutReport has_fatal_cut(const Problem& p, CutSide side = CutSide::Source) {
  FatalCutReport report;
  if (p.balances_vanish()) return report;
  if (p.arc_count() == 0) {
    std::vector<bool> supply(p.node_count());
    for (std::size_t v = 0; v < p.node_count(); ++v) supply[v] = p.nodes()[v].balance.sign() > 0;
    report.fatal = true;
    report.witness = Cut(std::move(supply));
    return report;
  }
  Rational min_capacity = p.arcs().front().capacity;
  for (const Arc& arc : p.arcs()) min_capacity = std::min(min_capacity, arc.capacity);
  const Rational big_m = p.total_supply() / min_capacity;

  FeasibilityReport at_m = is_feasible(p, big_m, side);
  if (at_m.feasible()) return report;
  detail::ensure(at_m.witness_stats->capacity.is_zero(), "witness at z = M has positive capacity");
  report.fatal = true;
  report.witness = std::move(at_m.witness);
  return report;
}

}  // namespace lexflow
