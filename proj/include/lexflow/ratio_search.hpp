#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lexflow/gale_hoffman.hpp"
#include "lexflow/model.hpp"

namespace lexflow {

enum class RatioMode { Dinkelbach, Dichotomy };

struct RatioProbe {
  Rational z;          // capacity factor tested (infeasible)
  Cut witness;         // cut returned by the failed feasibility test
  Rational cut_ratio;  // its ratio d_C / lambda_C, always > z
};

struct RatioResult {
  Rational r0;                        // minmax ratio
  std::optional<Cut> critical_cut;    // absent iff r0 == 0
  std::vector<RatioProbe> iterations;
  bool used_fallback = false;         // Dinkelbach hit its cap and bisection finished the job
};

/// Sum of the capacities after scaling them by the LCM of their
/// denominators. Every cut ratio, expressed in those units, has a
/// denominator bounded by this value.
inline BigInt integer_capacity_total(const Problem& p) {
  BigInt scale = 1;
  for (const Arc& arc : p.arcs()) scale = lcm(scale, arc.capacity.denominator());
  BigInt total = 0;
  for (const Arc& arc : p.arcs()) total += to_integer(arc.capacity * Rational(scale));
  return total;
}

/// Separation margin 1 / (2 * Lambda^2) for Lambda = integer_capacity_total(p).
inline Rational separation_delta(const Problem& p) {
  BigInt total = integer_capacity_total(p);
  if (total == 0) total = 1;
  return Rational(BigInt(1), BigInt(2 * total * total));
}

namespace detail {

inline void require_no_fatal_cut(const Problem& p) {
  if (has_fatal_cut(p).fatal) fail(ErrorKind::FatalCutPresent, "problem has a fatal cut; no weakly feasible flow exists");
}

inline Rational finite_ratio(const CutStats& stats) {
  const Rational* r = std::get_if<Rational>(&stats.ratio);
  ensure(r != nullptr, "witness cut has no finite ratio");
  return *r;
}

/// Simplest fraction (least denominator) in the open interval (lo, hi);
/// `hi` absent means +infinity. Requires 0 <= lo < hi.
inline Rational simplest_in_open(const Rational& lo, const std::optional<Rational>& hi) {
  const Rational whole(lo.floor());
  const Rational next = whole + Rational(1);
  if (!hi || next < *hi) return next;
  // lo and hi both lie in [whole, whole + 1]: continue on the reciprocal of the fractional part.
  const Rational inner_lo = (*hi - whole).inverse();
  const std::optional<Rational> inner_hi =
      lo == whole ? std::nullopt : std::optional<Rational>((lo - whole).inverse());
  return whole + simplest_in_open(inner_lo, inner_hi).inverse();
}

inline RatioResult dichotomy(const Problem& p, CutSide side) {
  RatioResult result;
  if (p.balances_vanish()) return result;

  // Work with q = z * supply_scale / capacity_scale: in those units every cut
  // ratio is (integer deficiency) / (integer capacity <= Lambda).
  BigInt supply_scale = 1;
  for (const Node& n : p.nodes()) supply_scale = lcm(supply_scale, n.balance.denominator());
  BigInt capacity_scale = 1;
  for (const Arc& arc : p.arcs()) capacity_scale = lcm(capacity_scale, arc.capacity.denominator());
  const Rational to_z = Rational(capacity_scale) / Rational(supply_scale);
  const BigInt lambda_total = integer_capacity_total(p);
  const Rational width = Rational(BigInt(1), BigInt(2 * lambda_total * lambda_total));

  Rational min_capacity = p.arcs().front().capacity;
  for (const Arc& arc : p.arcs()) min_capacity = std::min(min_capacity, arc.capacity);
  Rational lo;  // infeasible (r0 > 0 because D > 0)
  Rational hi = p.total_supply() / min_capacity / to_z;  // feasible: no fatal cut
  while (hi - lo >= width) {
    const Rational mid = (lo + hi) / Rational(2);
    FeasibilityReport probe = is_feasible(p, mid * to_z, side);
    if (probe.feasible()) {
      hi = mid;
    } else {
      lo = mid;
      result.iterations.push_back({mid * to_z, *probe.witness, finite_ratio(*probe.witness_stats)});
    }
  }

  // r0 lies in (lo, hi] and is the only fraction there with denominator <= Lambda.
  const Rational q0 = hi.denominator() <= lambda_total ? hi : simplest_in_open(lo, hi);
  result.r0 = q0 * to_z;

  FeasibilityReport below = is_feasible(p, (q0 - width) * to_z, side);
  ensure(!below.feasible(), "problem feasible below the reconstructed ratio");
  ensure(finite_ratio(*below.witness_stats) == result.r0, "extracted cut is not critical");
  ensure(is_feasible(p, result.r0, side).feasible(), "problem infeasible at the reconstructed ratio");
  result.critical_cut = std::move(below.witness);
  return result;
}

/// Discrete Newton iteration on max_C d_C / lambda_C. Assumes no fatal cut.
inline RatioResult dinkelbach(const Problem& p, CutSide side) {
  RatioResult result;
  if (p.balances_vanish()) return result;

  // Start from the cut V' = {v : d_v > 0}; its ratio is a lower bound on r0.
  std::vector<bool> supply(p.node_count());
  for (std::size_t v = 0; v < p.node_count(); ++v) supply[v] = p.nodes()[v].balance.sign() > 0;
  Cut current(std::move(supply));
  Rational z = finite_ratio(cut_stats(p, current));

  const std::size_t cap = std::max<std::size_t>(1, p.arc_count() * p.node_count());
  for (std::size_t step = 0; step < cap; ++step) {
    FeasibilityReport report = is_feasible(p, z, side);
    if (report.feasible()) {
      result.r0 = z;
      result.critical_cut = std::move(current);
      return result;
    }
    const Rational next = finite_ratio(*report.witness_stats);
    ensure(next > z, "witness ratio does not exceed the tested factor");
    result.iterations.push_back({z, *report.witness, next});
    z = next;
    current = std::move(*report.witness);
  }
  RatioResult fallback = dichotomy(p, side);
  fallback.used_fallback = true;
  return fallback;
}

}  // namespace detail

/// Exact minmax ratio r0 = max_C d_C / lambda_C and a cut attaining it.
inline RatioResult minmax_ratio(const Problem& p, CutSide side = CutSide::Source) {
  detail::require_no_fatal_cut(p);
  return detail::dinkelbach(p, side);
}

/// Same contract as minmax_ratio, computed by bisection on z followed by
/// exact reconstruction of r0 and a critical-cut probe just below it.
inline RatioResult minmax_ratio_dichotomy(const Problem& p, CutSide side = CutSide::Source) {
  detail::require_no_fatal_cut(p);
  return detail::dichotomy(p, side);
}

inline RatioResult minmax_ratio(const Problem& p, RatioMode mode, CutSide side = CutSide::Source) {
  return mode == RatioMode::Dinkelbach ? minmax_ratio(p, side) : minmax_ratio_dichotomy(p, side);
}

}  // namespace lexflow
