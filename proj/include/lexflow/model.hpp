#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "lexflow/error.hpp"
#include "lexflow/rational.hpp"

namespace lexflow {

struct Node {
  std::string id;
  Rational balance;  // d_v: > 0 supply, < 0 demand

  friend bool operator==(const Node&, const Node&) = default;
};

struct Arc {
  std::string id;
  std::size_t tail;
  std::size_t head;
  Rational capacity;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// A transshipment instance (G, d, lambda). Immutable once built; the
/// constructor enforces every structural invariant.
class Problem {
 public:
  Problem(std::vector<Node> nodes, std::vector<Arc> arcs) : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
    Rational sum;
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      if (!node_index_.emplace(nodes_[v].id, v).second)
        detail::fail(ErrorKind::DuplicateId, "duplicate node id '" + nodes_[v].id + "'");
      sum += nodes_[v].balance;
    }
    for (std::size_t e = 0; e < arcs_.size(); ++e) {
      const Arc& arc = arcs_[e];
      if (!arc_index_.emplace(arc.id, e).second)
        detail::fail(ErrorKind::DuplicateId, "duplicate arc id '" + arc.id + "'");
      if (arc.tail >= nodes_.size() || arc.head >= nodes_.size())
        detail::fail(ErrorKind::UnknownNode, "arc '" + arc.id + "' references a node out of range");
      if (arc.tail == arc.head) detail::fail(ErrorKind::SelfLoop, "arc '" + arc.id + "' is a self-loop");
      if (arc.capacity.sign() <= 0)
        detail::fail(ErrorKind::NonpositiveCapacity,
                     "arc '" + arc.id + "' has capacity " + arc.capacity.to_string());
    }
    if (!sum.is_zero()) detail::fail(ErrorKind::BalanceSumNonzero, "node balances sum to " + sum.to_string());
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  std::optional<std::size_t> node_index(std::string_view id) const {
    auto it = node_index_.find(std::string(id));
    if (it == node_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> arc_index(std::string_view id) const {
    auto it = arc_index_.find(std::string(id));
    if (it == arc_index_.end()) return std::nullopt;
    return it->second;
  }

  /// D = total positive balance.
  Rational total_supply() const {
    Rational supply;
    for (const Node& n : nodes_)
      if (n.balance.sign() > 0) supply += n.balance;
    return supply;
  }

  bool balances_vanish() const {
    return std::all_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.balance.is_zero(); });
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::unordered_map<std::string, std::size_t> node_index_;
  std::unordered_map<std::string, std::size_t> arc_index_;
};

/// Candidate problem as read from an external description, arcs naming
/// their endpoints by node id.
struct RawNode {
  std::string id;
  Rational balance;
};
struct RawArc {
  std::string id;
  std::string tail;
  std::string head;
  Rational capacity;
};
struct RawProblem {
  std::vector<RawNode> nodes;
  std::vector<RawArc> arcs;
};

inline Problem validate_problem(const RawProblem& raw) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Node> nodes;
  nodes.reserve(raw.nodes.size());
  for (const RawNode& n : raw.nodes) {
    if (!index.emplace(n.id, nodes.size()).second)
      detail::fail(ErrorKind::DuplicateId, "duplicate node id '" + n.id + "'");
    nodes.push_back({n.id, n.balance});
  }
  std::vector<Arc> arcs;
  arcs.reserve(raw.arcs.size());
  for (const RawArc& a : raw.arcs) {
    auto tail = index.find(a.tail);
    auto head = index.find(a.head);
    if (tail == index.end()) detail::fail(ErrorKind::UnknownNode, "arc '" + a.id + "': unknown tail '" + a.tail + "'");
    if (head == index.end()) detail::fail(ErrorKind::UnknownNode, "arc '" + a.id + "': unknown head '" + a.head + "'");
    arcs.push_back({a.id, tail->second, head->second, a.capacity});
  }
  return Problem(std::move(nodes), std::move(arcs));
}

/// Nonnegative arc values indexed like the arcs of the problem they belong to.
struct Flow {
  std::vector<Rational> values;

  friend bool operator==(const Flow&, const Flow&) = default;
};

/// Ordered proper bipartition (V', V''); `in_source[v]` marks V'.
class Cut {
 public:
  Cut() = default;
  explicit Cut(std::vector<bool> in_source) : in_source_(std::move(in_source)) {}

  static Cut from_source_side(std::size_t node_count, const std::vector<std::size_t>& source) {
    std::vector<bool> mask(node_count, false);
    for (std::size_t v : source) {
      if (v >= node_count) detail::fail(ErrorKind::InvalidPartition, "node index out of range");
      mask[v] = true;
    }
    return Cut(std::move(mask));
  }

  static Cut from_ids(const Problem& p, const std::vector<std::string>& source_ids) {
    std::vector<std::size_t> source;
    for (const std::string& id : source_ids) {
      auto v = p.node_index(id);
      if (!v) detail::fail(ErrorKind::InvalidPartition, "unknown node '" + id + "' in cut");
      source.push_back(*v);
    }
    return from_source_side(p.node_count(), source);
  }

  std::size_t node_count() const { return in_source_.size(); }
  bool in_source(std::size_t v) const { return in_source_[v]; }
  const std::vector<bool>& mask() const { return in_source_; }

  bool is_proper() const {
    const auto on = std::count(in_source_.begin(), in_source_.end(), true);
    return on > 0 && static_cast<std::size_t>(on) < in_source_.size();
  }

  std::vector<std::size_t> source_side() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < in_source_.size(); ++v)
      if (in_source_[v]) out.push_back(v);
    return out;
  }

  std::vector<std::string> source_ids(const Problem& p) const {
    std::vector<std::string> out;
    for (std::size_t v : source_side()) out.push_back(p.nodes()[v].id);
    return out;
  }

  /// Arc goes from V' to V''.
  bool is_forward(const Arc& arc) const { return in_source_[arc.tail] && !in_source_[arc.head]; }
  /// Arc goes from V'' to V'.
  bool is_reverse(const Arc& arc) const { return !in_source_[arc.tail] && in_source_[arc.head]; }

  Cut complement() const {
    std::vector<bool> flipped(in_source_.size());
    for (std::size_t v = 0; v < in_source_.size(); ++v) flipped[v] = !in_source_[v];
    return Cut(std::move(flipped));
  }

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  std::vector<bool> in_source_;
};

/// Cut ratio d_C / lambda_C; +infinity for a fatal cut, Undefined when the
/// cut has no arcs and nonpositive deficiency (such cuts never constrain).
struct Infinite {
  friend bool operator==(Infinite, Infinite) = default;
};
struct Undefined {
  friend bool operator==(Undefined, Undefined) = default;
};
using CutRatio = std::variant<Rational, Infinite, Undefined>;

inline std::string to_string(const CutRatio& r) {
  if (auto q = std::get_if<Rational>(&r)) return q->to_string();
  if (std::holds_alternative<Infinite>(r)) return "inf";
  return "undefined";
}

struct CutStats {
  Rational deficiency;  // d_C
  Rational capacity;    // lambda_C
  CutRatio ratio;
  std::optional<Rational> flow;  // x_C, forward arcs only

  bool is_fatal() const { return deficiency.sign() > 0 && capacity.is_zero(); }
  bool is_deficient() const { return deficiency > capacity; }
};

inline void check_flow_keys(const Problem& p, const Flow& x) {
  if (x.values.size() != p.arc_count())
    detail::fail(ErrorKind::KeyMismatch, "flow has " + std::to_string(x.values.size()) + " values for " +
                                             std::to_string(p.arc_count()) + " arcs");
}

/// (A_G x - d)_v for every node; all zero iff x is weakly feasible.
inline std::vector<Rational> node_balance_residual(const Problem& p, const Flow& x) {
  check_flow_keys(p, x);
  std::vector<Rational> residual(p.node_count());
  for (std::size_t e = 0; e < p.arc_count(); ++e) {
    const Arc& arc = p.arcs()[e];
    residual[arc.tail] += x.values[e];
    residual[arc.head] -= x.values[e];
  }
  for (std::size_t v = 0; v < p.node_count(); ++v) residual[v] -= p.nodes()[v].balance;
  return residual;
}

inline bool is_weakly_feasible(const Problem& p, const Flow& x) {
  for (const Rational& value : x.values)
    if (value.sign() < 0) return false;
  const auto residual = node_balance_residual(p, x);
  return std::all_of(residual.begin(), residual.end(), [](const Rational& r) { return r.is_zero(); });
}

inline CutStats cut_stats(const Problem& p, const Cut& c, const Flow* x = nullptr) {
  if (c.node_count() != p.node_count() || !c.is_proper())
    detail::fail(ErrorKind::InvalidPartition, "cut is not a proper partition of the problem's nodes");
  if (x) check_flow_keys(p, *x);
  CutStats stats;
  for (std::size_t v = 0; v < p.node_count(); ++v)
    if (c.in_source(v)) stats.deficiency += p.nodes()[v].balance;
  Rational flow;
  for (std::size_t e = 0; e < p.arc_count(); ++e) {
    const Arc& arc = p.arcs()[e];
    if (!c.is_forward(arc)) continue;
    stats.capacity += arc.capacity;
    if (x) flow += x->values[e];
  }
  if (stats.capacity.sign() > 0) {
    stats.ratio = stats.deficiency / stats.capacity;
  } else if (stats.deficiency.sign() > 0) {
    stats.ratio = Infinite{};
  } else {
    stats.ratio = Undefined{};
  }
  if (x) stats.flow = flow;
  return stats;
}

inline CutStats cut_stats(const Problem& p, const Cut& c, const Flow& x) { return cut_stats(p, c, &x); }

/// r_e = x_e / lambda_e.
inline std::vector<Rational> ratio_vector(const Problem& p, const Flow& x) {
  check_flow_keys(p, x);
  std::vector<Rational> r;
  r.reserve(p.arc_count());
  for (std::size_t e = 0; e < p.arc_count(); ++e) r.push_back(x.values[e] / p.arcs()[e].capacity);
  return r;
}

inline std::vector<Rational> sorted_descending(std::vector<Rational> r) {
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

enum class LexOrder { Less, Greater, Equivalent };

/// Lexmin pre-order on ratio vectors, evaluated through level-set sizes
/// L(z, r) = |{i : r_i >= z}| at every threshold scanned from the top down.
inline LexOrder lexmin_compare(const std::vector<Rational>& r1, const std::vector<Rational>& r2) {
  if (r1.size() != r2.size())
    detail::fail(ErrorKind::LengthMismatch, "ratio vectors of lengths " + std::to_string(r1.size()) + " and " +
                                                std::to_string(r2.size()));
  // L(z, .) only changes at component values, so those are the thresholds to probe.
  std::vector<Rational> thresholds(r1);
  thresholds.insert(thresholds.end(), r2.begin(), r2.end());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  auto level = [](const std::vector<Rational>& r, const Rational& z) {
    return std::count_if(r.begin(), r.end(), [&](const Rational& v) { return v >= z; });
  };
  for (const Rational& z : thresholds) {
    const auto l1 = level(r1, z);
    const auto l2 = level(r2, z);
    if (l1 < l2) return LexOrder::Less;
    if (l1 > l2) return LexOrder::Greater;
  }
  return LexOrder::Equivalent;
}

}  // namespace lexflow
