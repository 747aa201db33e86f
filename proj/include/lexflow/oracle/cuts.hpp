#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lexflow/model.hpp"

namespace lexflow::oracle {

inline constexpr std::size_t kMaxEnumerationNodes = 20;

struct CutEnumeration {
  std::vector<std::pair<Cut, CutStats>> cuts;
  /// max d_C / lambda_C over cuts with lambda_C > 0; 0 when no cut has d_C > 0.
  Rational max_ratio;
  std::vector<std::size_t> critical;   // indices attaining max_ratio with d_C > 0
  std::vector<std::size_t> fatal;      // d_C > 0, lambda_C = 0
  std::vector<std::size_t> deficient;  // d_C > lambda_C

  bool has_fatal() const { return !fatal.empty(); }
};

/// Every ordered proper bipartition (V', V''), in order of the bitmask with
/// node v at bit v.
inline CutEnumeration enumerate_cuts(const Problem& p) {
  const std::size_t n = p.node_count();
  if (n > kMaxEnumerationNodes)
    ::lexflow::detail::fail(ErrorKind::TooLarge, std::to_string(n) + " nodes exceed the enumeration limit");
  CutEnumeration out;
  if (n < 2) return out;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  out.cuts.reserve(full - 1);
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    std::vector<bool> side(n);
    for (std::size_t v = 0; v < n; ++v) side[v] = (mask >> v) & 1U;
    Cut cut(std::move(side));
    CutStats stats = cut_stats(p, cut);
    const std::size_t index = out.cuts.size();
    if (stats.is_fatal()) out.fatal.push_back(index);
    if (stats.is_deficient()) out.deficient.push_back(index);
    if (stats.deficiency.sign() > 0 && stats.capacity.sign() > 0) {
      const Rational r = stats.deficiency / stats.capacity;
      if (out.critical.empty() || r > out.max_ratio) {
        out.max_ratio = r;
        out.critical.assign(1, index);
      } else if (r == out.max_ratio) {
        out.critical.push_back(index);
      }
    }
    out.cuts.emplace_back(std::move(cut), std::move(stats));
  }
  return out;
}

}  // namespace lexflow::oracle
