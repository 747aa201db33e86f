#include <gtest/gtest.h>

#include <random>

#include "lexflow/gale_hoffman.hpp"
#include "lexflow/maxflow.hpp"
#include "support/instances.hpp"

using namespace lexflow;

namespace {

FlowNetwork network(std::size_t n, std::size_t s, std::size_t t, std::vector<NetworkArc> arcs) {
  return {n, std::move(arcs), s, t};
}

BigInt cut_capacity(const FlowNetwork& net, const std::vector<bool>& source_side) {
  BigInt total = 0;
  for (const NetworkArc& a : net.arcs)
    if (source_side[a.tail] && !source_side[a.head]) total += a.capacity;
  return total;
}

// Minimum over all 2^(n-2) s-t cuts.
BigInt brute_force_min_cut(const FlowNetwork& net) {
  std::vector<std::size_t> others;
  for (std::size_t v = 0; v < net.node_count; ++v)
    if (v != net.source && v != net.sink) others.push_back(v);
  BigInt best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
    std::vector<bool> side(net.node_count, false);
    side[net.source] = true;
    for (std::size_t i = 0; i < others.size(); ++i) side[others[i]] = (mask >> i) & 1U;
    const BigInt c = cut_capacity(net, side);
    if (best < 0 || c < best) best = c;
  }
  return best;
}

void expect_valid_flow(const FlowNetwork& net, const MaxFlowResult& r) {
  std::vector<BigInt> excess(net.node_count, 0);
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    EXPECT_GE(r.arc_flow[i], 0);
    EXPECT_LE(r.arc_flow[i], net.arcs[i].capacity);
    excess[net.arcs[i].tail] -= r.arc_flow[i];
    excess[net.arcs[i].head] += r.arc_flow[i];
  }
  for (std::size_t v = 0; v < net.node_count; ++v)
    if (v != net.source && v != net.sink) EXPECT_EQ(excess[v], 0);
  EXPECT_EQ(excess[net.sink], r.value);
  EXPECT_TRUE(r.min_cut_source_side[net.source]);
  EXPECT_FALSE(r.min_cut_source_side[net.sink]);
  EXPECT_EQ(cut_capacity(net, r.min_cut_source_side), r.value);
}

}  // namespace

TEST(MaxFlow, SingleArc) {
  const auto net = network(2, 0, 1, {{0, 1, 7}});
  const auto r = max_flow(net);
  EXPECT_EQ(r.value, 7);
  EXPECT_EQ(r.min_cut_source_side, (std::vector<bool>{true, false}));
}

TEST(MaxFlow, Bottleneck) {
  const auto net = network(3, 0, 2, {{0, 1, 3}, {1, 2, 5}});
  const auto r = max_flow(net);
  EXPECT_EQ(r.value, 3);
  EXPECT_EQ(r.min_cut_source_side, (std::vector<bool>{true, false, false}));
}

TEST(MaxFlow, NoPathGivesZero) {
  const auto net = network(3, 0, 2, {{0, 1, 3}, {2, 1, 5}});
  const auto r = max_flow(net);
  EXPECT_EQ(r.value, 0);
  expect_valid_flow(net, r);
}

// Two-pole network of the diamond at z = 1: nodes s,a,b,t then s*, t*.
// Cut {s*, s, b} has capacity 4 + (1 + 2) - 4 = 3, confirmed by enumeration.
TEST(MaxFlow, DiamondTwoPoleAtUnitFactor) {
  const Problem p = fixtures::diamond();
  const TwoPole tp = build_two_pole(p, Rational(1));
  const auto r = max_flow(tp.network);
  EXPECT_EQ(r.value, 3);
  EXPECT_EQ(brute_force_min_cut(tp.network), 3);
  EXPECT_EQ(r.min_cut_source_side, (std::vector<bool>{true, false, true, false, true, false}));
  expect_valid_flow(tp.network, r);
}

TEST(MaxFlow, SinkSideCutIsAlsoMinimal) {
  // Two equal bottlenecks in series: source-side and sink-side cuts differ.
  const auto net = network(3, 0, 2, {{0, 1, 4}, {1, 2, 4}});
  const auto source = max_flow(net, CutSide::Source);
  const auto sink = max_flow(net, CutSide::Sink);
  EXPECT_EQ(source.min_cut_source_side, (std::vector<bool>{true, false, false}));
  EXPECT_EQ(sink.min_cut_source_side, (std::vector<bool>{true, true, false}));
  expect_valid_flow(net, sink);
}

TEST(MaxFlow, RejectsInvalidNetworks) {
  EXPECT_THROW(max_flow(network(2, 0, 0, {})), Error);
  EXPECT_THROW(max_flow(network(2, 0, 1, {{0, 1, -1}})), Error);
  EXPECT_THROW(max_flow(network(2, 0, 1, {{0, 5, 1}})), Error);
}

TEST(MaxFlow, HandlesHugeCapacities) {
  const BigInt big("123456789012345678901234567890");
  const auto net = network(4, 0, 3, {{0, 1, big}, {0, 2, big + 1}, {1, 3, big * 2}, {2, 3, big}});
  const auto r = max_flow(net);
  EXPECT_EQ(r.value, big * 2);
  expect_valid_flow(net, r);
}

TEST(MaxFlow, MatchesBruteForceMinCutOnRandomNetworks) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> nodes(2, 8);
  std::uniform_int_distribution<int> arcs(0, 14), cap(0, 10);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = nodes(rng);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    FlowNetwork net{n, {}, 0, n - 1};
    const int m = arcs(rng);
    for (int i = 0; i < m; ++i) {
      std::size_t a = pick(rng), b = pick(rng);
      while (b == a) b = pick(rng);
      net.arcs.push_back({a, b, cap(rng)});
    }
    const auto r = max_flow(net);
    EXPECT_EQ(r.value, brute_force_min_cut(net));
    expect_valid_flow(net, r);
    const auto sink = max_flow(net, CutSide::Sink);
    EXPECT_EQ(cut_capacity(net, sink.min_cut_source_side), r.value);

    const auto again = max_flow(net);
    EXPECT_EQ(again.arc_flow, r.arc_flow);
    EXPECT_EQ(again.min_cut_source_side, r.min_cut_source_side);
  }
}
