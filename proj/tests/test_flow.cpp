#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "ocs_toe/errors.hpp"
#include "ocs_toe/flow.hpp"

using namespace ocs_toe;

TEST(Circulation, ForcedByLowerBounds) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 1, 1);
  net.add_arc(1, 0, 1, 1);
  const auto r = solve_min_cost_circulation(net);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.flow, (std::vector<Count>{1, 1}));
  EXPECT_EQ(r.total_cost, 0);
}

TEST(Circulation, ConservationImpossible) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 2, 2);
  net.add_arc(1, 0, 0, 1);
  EXPECT_FALSE(solve_min_cost_circulation(net).feasible());
}

TEST(Circulation, EmptyNetwork) {
  const auto r = solve_min_cost_circulation(FlowNetwork(3));
  EXPECT_TRUE(r.feasible());
  EXPECT_EQ(r.total_cost, 0);
}

TEST(Circulation, NegativeCycleIsSaturated) {
  FlowNetwork net(3);
  net.add_arc(0, 1, 0, 3, -2);
  net.add_arc(1, 2, 0, 2, 1);
  net.add_arc(2, 0, 0, 5, 0);
  const auto r = solve_min_cost_circulation(net);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.total_cost, -2);
  EXPECT_EQ(r.flow, (std::vector<Count>{2, 2, 2}));
}

TEST(Circulation, BadBoundsRejected) {
  FlowNetwork net(2);
  EXPECT_THROW(net.add_arc(0, 1, 2, 1), ValidationError);
  EXPECT_THROW(net.add_arc(0, 5, 0, 1), std::out_of_range);
}

TEST(Circulation, MatchesExhaustiveOnSixNodes) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(oracle::uniform_index(rng, 0, 4));
    FlowNetwork net(n);
    const std::size_t m = oracle::uniform_index(rng, 1, 8);
    for (std::size_t a = 0; a < m; ++a) {
      const int t = static_cast<int>(oracle::uniform_index(rng, 0, static_cast<std::size_t>(n - 1)));
      int h = static_cast<int>(oracle::uniform_index(rng, 0, static_cast<std::size_t>(n - 2)));
      if (h >= t) ++h;
      const Count lo = oracle::uniform_index(rng, 0, 2) == 0 ? static_cast<Count>(oracle::uniform_index(rng, 1, 2)) : 0;
      const Count hi = lo + static_cast<Count>(oracle::uniform_index(rng, 0, 3 - static_cast<std::size_t>(lo)));
      const Count cost = static_cast<Count>(oracle::uniform_index(rng, 0, 8)) - 4;
      net.add_arc(t, h, lo, hi, cost);
    }
    const auto expected = oracle::min_circulation_cost(net);
    const auto got = solve_min_cost_circulation(net);
    ASSERT_EQ(got.feasible(), expected.has_value()) << "trial " << trial;
    if (expected) {
      EXPECT_EQ(got.total_cost, *expected) << "trial " << trial;
      EXPECT_TRUE(oracle::conserves(net, got.flow));
    }
  }
}

TEST(PwlArc, ThreeSegments) {
  FlowNetwork net(2);
  const std::vector<PwlSegment> segs{{2, -1}, {3, 0}, {1, 1}};
  const auto arcs = add_pwl_arc(net, 0, 1, segs);
  ASSERT_EQ(arcs.size(), 3u);
  const Count caps[] = {2, 3, 1};
  const Count costs[] = {-1, 0, 1};
  for (std::size_t n = 0; n < 3; ++n) {
    EXPECT_EQ(net.arc(static_cast<std::size_t>(arcs[n])).lower, 0);
    EXPECT_EQ(net.arc(static_cast<std::size_t>(arcs[n])).upper, caps[n]);
    EXPECT_EQ(net.arc(static_cast<std::size_t>(arcs[n])).cost, costs[n]);
  }
}

TEST(PwlArc, SingleFlatSegment) {
  FlowNetwork net(2);
  const std::vector<PwlSegment> segs{{5, 0}};
  const auto arcs = add_pwl_arc(net, 0, 1, segs);
  ASSERT_EQ(arcs.size(), 1u);
  EXPECT_EQ(net.arc(0).upper, 5);
  EXPECT_EQ(net.arc(0).cost, 0);
}

TEST(PwlArc, NonConvexRejected) {
  FlowNetwork net(2);
  const std::vector<PwlSegment> bad{{1, 1}, {1, 0}};
  EXPECT_THROW(add_pwl_arc(net, 0, 1, bad), ValidationError);
  const std::vector<PwlSegment> empty_len{{0, 1}};
  EXPECT_THROW(add_pwl_arc(net, 0, 1, empty_len), ValidationError);
}

// A PWL arc forced to carry t units costs the convex function at t.
TEST(PwlArc, ForcedFlowPricesFunction) {
  const std::vector<PwlSegment> segs{{2, -1}, {3, 0}, {1, 1}};
  const Count f[] = {0, -1, -2, -2, -2, -2, -1};
  for (Count t = 0; t <= 6; ++t) {
    FlowNetwork net(2);
    add_pwl_arc(net, 0, 1, segs);
    net.add_arc(1, 0, t, t);
    const auto r = solve_min_cost_circulation(net);
    ASSERT_TRUE(r.feasible());
    EXPECT_EQ(r.total_cost, f[t]) << t;
  }
}

TEST(SupplyRange, ZeroRangeBlocksSupply) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 0, 4, -1);
  with_node_supply_range(net, 0, 0, 0);
  with_node_supply_range(net, 1, -4, 0);
  const auto r = solve_min_cost_circulation(net);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.flow[0], 0);
}

TEST(SupplyRange, ExactInjection) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 0, 4, 1);
  with_node_supply_range(net, 0, 2, 2);
  with_node_supply_range(net, 1, -4, 0);
  const auto r = solve_min_cost_circulation(net);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.flow[0], 2);
}

// Path 0 -> 1 -> 2 with supply [1, 3] at 0 and unlimited demand at 2: the
// optimum injects as much as profitable within the range, and the set of
// feasible injections is exactly 1..3.
TEST(SupplyRange, PathNetworkRange) {
  for (Count cost : {-1, 0, 1}) {
    FlowNetwork net(3);
    net.add_arc(0, 1, 0, 5, cost);
    net.add_arc(1, 2, 0, 5, 0);
    with_node_supply_range(net, 0, 1, 3);
    with_node_supply_range(net, 2, -5, 0);
    const auto r = solve_min_cost_circulation(net);
    ASSERT_TRUE(r.feasible());
    EXPECT_GE(r.flow[0], 1);
    EXPECT_LE(r.flow[0], 3);
    const auto expected = oracle::min_circulation_cost(net);
    ASSERT_TRUE(expected);
    EXPECT_EQ(r.total_cost, *expected);
    if (cost < 0) EXPECT_EQ(r.flow[0], 3);
    if (cost > 0) EXPECT_EQ(r.flow[0], 1);
  }
}

TEST(SupplyRange, InfeasibleWhenDemandCannotAbsorb) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 0, 1);
  with_node_supply_range(net, 0, 2, 3);
  with_node_supply_range(net, 1, -3, 0);
  EXPECT_FALSE(solve_min_cost_circulation(net).feasible());
}

TEST(Dimacs, HeaderAndArcs) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 1, 3, 2);
  net.add_arc(1, 0, 0, 3, 0);
  std::ostringstream os;
  write_dimacs(os, net);
  const std::string s = os.str();
  EXPECT_NE(s.find("p min 2 2"), std::string::npos);
  EXPECT_NE(s.find("a 1 2 0 2 2"), std::string::npos);
}
