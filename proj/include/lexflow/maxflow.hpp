#pragma once

#include <cstddef>
#include <deque>
#include <limits>
#include <vector>

#include "lexflow/error.hpp"
#include "lexflow/rational.hpp"

namespace lexflow {

struct NetworkArc {
  std::size_t tail;
  std::size_t head;
  BigInt capacity;
};

/// Integer-capacity s-t network.
struct FlowNetwork {
  std::size_t node_count = 0;
  std::vector<NetworkArc> arcs;
  std::size_t source = 0;
  std::size_t sink = 0;
};

/// Which minimum cut to report when several exist.
enum class CutSide {
  Source,  // nodes reachable from s in the final residual network
  Sink,    // complement of the nodes that can still reach t
};

struct MaxFlowResult {
  BigInt value;
  std::vector<BigInt> arc_flow;
  std::vector<bool> min_cut_source_side;
};

namespace detail {

class Dinic {
 public:
  explicit Dinic(const FlowNetwork& net) : net_(net), adjacency_(net.node_count), level_(net.node_count) {
    residual_.reserve(2 * net.arcs.size());
    head_.reserve(2 * net.arcs.size());
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
      const NetworkArc& a = net.arcs[i];
      residual_.push_back(a.capacity);
      head_.push_back(a.head);
      residual_.push_back(0);
      head_.push_back(a.tail);
      adjacency_[a.tail].push_back(2 * i);
      adjacency_[a.head].push_back(2 * i + 1);
    }
  }

  MaxFlowResult run(CutSide side) {
    MaxFlowResult result;
    result.value = 0;
    while (build_levels()) {
      next_.assign(net_.node_count, 0);
      while (true) {
        BigInt pushed = augment(net_.source, BigInt(-1));
        if (pushed == 0) break;
        result.value += pushed;
      }
    }
    result.arc_flow.reserve(net_.arcs.size());
    for (std::size_t i = 0; i < net_.arcs.size(); ++i) result.arc_flow.push_back(residual_[2 * i + 1]);
    result.min_cut_source_side = side == CutSide::Source ? reachable_from_source() : not_reaching_sink();
    return result;
  }

 private:
  bool build_levels() {
    level_.assign(net_.node_count, kUnreached);
    std::deque<std::size_t> queue{net_.source};
    level_[net_.source] = 0;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t e : adjacency_[v]) {
        const std::size_t w = head_[e];
        if (residual_[e] > 0 && level_[w] == kUnreached) {
          level_[w] = level_[v] + 1;
          queue.push_back(w);
        }
      }
    }
    return level_[net_.sink] != kUnreached;
  }

  // limit < 0 means unbounded (only at the source).
  BigInt augment(std::size_t v, const BigInt& limit) {
    if (v == net_.sink) return limit;
    for (std::size_t& i = next_[v]; i < adjacency_[v].size(); ++i) {
      const std::size_t e = adjacency_[v][i];
      const std::size_t w = head_[e];
      if (residual_[e] <= 0 || level_[w] != level_[v] + 1) continue;
      const BigInt& cap = residual_[e];
      BigInt pushed = augment(w, (limit < 0 || cap < limit) ? cap : limit);
      if (pushed > 0) {
        residual_[e] -= pushed;
        residual_[e ^ 1] += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<bool> reachable_from_source() const {
    std::vector<bool> seen(net_.node_count, false);
    std::deque<std::size_t> queue{net_.source};
    seen[net_.source] = true;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t e : adjacency_[v]) {
        const std::size_t w = head_[e];
        if (residual_[e] > 0 && !seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    return seen;
  }

  std::vector<bool> not_reaching_sink() const {
    std::vector<bool> reaches(net_.node_count, false);
    std::deque<std::size_t> queue{net_.sink};
    reaches[net_.sink] = true;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      // Residual edge (w -> v) is the partner of an edge (v -> w) in v's list.
      for (std::size_t e : adjacency_[v]) {
        const std::size_t w = head_[e];
        if (residual_[e ^ 1] > 0 && !reaches[w]) {
          reaches[w] = true;
          queue.push_back(w);
        }
      }
    }
    std::vector<bool> source_side(net_.node_count);
    for (std::size_t v = 0; v < net_.node_count; ++v) source_side[v] = !reaches[v];
    return source_side;
  }

  static constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

  const FlowNetwork& net_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<BigInt> residual_;
  std::vector<std::size_t> head_;
  std::vector<std::size_t> level_;
  std::vector<std::size_t> next_;
};

}  // namespace detail

/// Maximum s-t flow by blocking flows on layered residual graphs.
/// Deterministic: arcs are scanned in input order.
inline MaxFlowResult max_flow(const FlowNetwork& net, CutSide side = CutSide::Source) {
  if (net.source >= net.node_count || net.sink >= net.node_count || net.source == net.sink)
    detail::fail(ErrorKind::InvalidNetwork, "source and sink must be distinct nodes of the network");
  for (const NetworkArc& a : net.arcs) {
    if (a.tail >= net.node_count || a.head >= net.node_count)
      detail::fail(ErrorKind::InvalidNetwork, "arc endpoint out of range");
    if (a.capacity < 0) detail::fail(ErrorKind::InvalidNetwork, "negative capacity");
  }
  return detail::Dinic(net).run(side);
}

}  // namespace lexflow
