#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lexflow/model.hpp"
#include "lexflow/oracle/simplex.hpp"

namespace lexflow::oracle {

/// Arc counts beyond this make the sequential-LP oracle slow.
inline constexpr std::size_t kLexminSoftArcLimit = 15;

namespace detail {

struct FlowLp {
  LinearProgram lp;
  std::size_t t = 0;  // index of the common bound variable; arcs use indices 0..m-1
};

// A_G x = d, x >= 0, pinned arcs at their values, x_e <= t * lambda_e for free arcs.
inline FlowLp flow_lp(const Problem& p, const std::vector<std::optional<Rational>>& fixed) {
  FlowLp out;
  for (std::size_t e = 0; e < p.arc_count(); ++e) out.lp.add_variable();
  out.t = out.lp.add_variable();
  std::vector<std::vector<std::pair<std::size_t, Rational>>> node_terms(p.node_count());
  for (std::size_t e = 0; e < p.arc_count(); ++e) {
    node_terms[p.arcs()[e].tail].push_back({e, Rational(1)});
    node_terms[p.arcs()[e].head].push_back({e, Rational(-1)});
  }
  for (std::size_t v = 0; v < p.node_count(); ++v)
    out.lp.add_constraint(std::move(node_terms[v]), Sense::Equal, p.nodes()[v].balance);
  for (std::size_t e = 0; e < p.arc_count(); ++e) {
    if (fixed[e]) {
      out.lp.add_constraint({{e, Rational(1)}}, Sense::Equal, *fixed[e]);
    } else {
      out.lp.add_constraint({{e, Rational(1)}, {out.t, -p.arcs()[e].capacity}}, Sense::LessEqual, Rational());
    }
  }
  return out;
}

}  // namespace detail

/// Lexmin flow by the sequential-LP scheme: minimize the common bound t on
/// the free arcs, pin every free arc that cannot drop below t* * lambda_e at
/// that level, and repeat until every arc is pinned.
inline Flow oracle_lexmin(const Problem& p) {
  std::vector<std::optional<Rational>> fixed(p.arc_count());
  std::size_t pinned = 0;
  do {
    detail::FlowLp level = detail::flow_lp(p, fixed);
    level.lp.objective[level.t] = 1;
    const LpResult best = lp_solve(level.lp);
    if (best.status != LpStatus::Optimal) {
      ::lexflow::detail::fail(ErrorKind::OracleInfeasible, "no weakly feasible flow exists");
    }
    if (pinned == p.arc_count()) break;
    const Rational t_star = best.point[level.t];

    std::vector<std::size_t> forced;
    for (std::size_t e = 0; e < p.arc_count(); ++e) {
      if (fixed[e]) continue;
      detail::FlowLp probe = detail::flow_lp(p, fixed);
      probe.lp.add_constraint({{probe.t, Rational(1)}}, Sense::Equal, t_star);
      probe.lp.objective[e] = 1;
      const LpResult low = lp_solve(probe.lp);
      ::lexflow::detail::ensure(low.status == LpStatus::Optimal, "probe LP failed");
      if (low.value == t_star * p.arcs()[e].capacity) forced.push_back(e);
    }
    ::lexflow::detail::ensure(!forced.empty(), "no arc is tight at the optimal level");
    for (std::size_t e : forced) fixed[e] = t_star * p.arcs()[e].capacity;
    pinned += forced.size();
  } while (pinned < p.arc_count());
  Flow x;
  x.values.reserve(p.arc_count());
  for (const auto& v : fixed) x.values.push_back(*v);
  return x;
}

}  // namespace lexflow::oracle
