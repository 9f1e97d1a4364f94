#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ocs_toe/baselines.hpp"
#include "ocs_toe/errors.hpp"
#include "ocs_toe/metrics.hpp"
#include "ocs_toe/online.hpp"
#include "ocs_toe/toe.hpp"
#include "ocs_toe/workload.hpp"

using namespace ocs_toe;

namespace {

CountTensor random_tensor(std::mt19937_64& rng, std::size_t p, std::size_t layers, Count max_entry) {
  CountTensor t(p, layers);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k < layers; ++k) t(i, j, k) = static_cast<Count>(oracle::uniform_index(rng, 0, static_cast<std::size_t>(max_entry)));
  return t;
}

// Spreads `a` over layers with per-layer row and column sums <= caps(i, k).
// Returns false if the greedy placement fails.
bool greedy_layout(const IntMatrix& a, const IntMatrix& caps, CountTensor& out) {
  const std::size_t p = a.rows();
  const std::size_t h = caps.cols();
  out = CountTensor(p, h);
  IntMatrix row(p, h), col(p, h);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (Count n = 0; n < a(i, j); ++n) {
        bool placed = false;
        for (std::size_t k = 0; k < h && !placed; ++k) {
          if (row(i, k) < caps(i, k) && col(j, k) < caps(j, k)) {
            ++out(i, j, k);
            ++row(i, k);
            ++col(j, k);
            placed = true;
          }
        }
        if (!placed) return false;
      }
  return true;
}

}  // namespace

TEST(PwlSegments, BothIncumbentsPresent) {
  const auto s = pwl_segments(1, 1, 3);
  EXPECT_EQ(s.segments, (std::vector<PwlSegment>{{1, -1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(s.breakpoints, (std::vector<Count>{1, 2}));
  EXPECT_EQ(s.value_at_zero, 1);
}

// With no incumbent links the bundle cost is identically zero on [0, a].
TEST(PwlSegments, NoIncumbentIsFlat) {
  const auto s = pwl_segments(0, 0, 2);
  EXPECT_EQ(s.segments, (std::vector<PwlSegment>{{2, 0}}));
  for (Count x = 0; x <= 2; ++x) EXPECT_EQ(pwl_value(0, 0, 2, x), 0);
}

TEST(PwlSegments, DecreasingOnly) {
  const auto s = pwl_segments(5, 0, 2);
  EXPECT_EQ(s.segments, (std::vector<PwlSegment>{{2, -1}}));
  EXPECT_EQ(s.value_at_zero, 5);
}

TEST(PwlSegments, EmptyWhenNoDemand) { EXPECT_TRUE(pwl_segments(3, 1, 0).segments.empty()); }

// Segments integrate to f at every integer point, and match its finite
// differences.
TEST(PwlSegments, FiniteDifferences) {
  for (Count a = 0; a <= 6; ++a)
    for (Count u1 = 0; u1 <= 7; ++u1)
      for (Count u2 = 0; u2 <= 7; ++u2) {
        const auto s = pwl_segments(u1, u2, a);
        Count x = 0;
        Count value = s.value_at_zero;
        ASSERT_EQ(value, oracle::bundle_cost(u1, u2, a, 0));
        Count prev_slope = std::numeric_limits<Count>::min();
        for (const auto& seg : s.segments) {
          ASSERT_GT(seg.length, 0);
          ASSERT_GT(seg.slope, prev_slope);
          prev_slope = seg.slope;
          for (Count step = 0; step < seg.length; ++step) {
            ++x;
            value += seg.slope;
            ASSERT_EQ(value, oracle::bundle_cost(u1, u2, a, x)) << u1 << ' ' << u2 << ' ' << a << ' ' << x;
          }
        }
        EXPECT_EQ(x, a);
      }
}

TEST(TwoGroup, IncumbentAlreadyFeasible) {
  const IntMatrix a{{0, 1}, {1, 0}};
  CountTensor u(2, 2);
  u(0, 1, 0) = 1;
  u(1, 0, 1) = 1;
  const auto sol = solve_two_group(a, u, IntMatrix{{1, 1}, {1, 1}});
  EXPECT_EQ(sol.x, u);
  EXPECT_EQ(sol.rewiring, 0);
}

TEST(TwoGroup, FreshLinks) {
  const IntMatrix a{{0, 1}, {1, 0}};
  const auto sol = solve_two_group(a, CountTensor(2, 2), IntMatrix{{1, 1}, {1, 1}});
  EXPECT_EQ(sol.rewiring, 2);
  EXPECT_EQ(sol.x.collapse(), a);
}

TEST(TwoGroup, InfeasibleCaps) {
  EXPECT_THROW(solve_two_group(IntMatrix{{0, 3}, {3, 0}}, CountTensor(2, 2), IntMatrix{{1, 1}, {1, 1}}),
               InfeasibleError);
}

TEST(TwoGroup, MatchesEnumerationOnSmallInstances) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t p = oracle::uniform_index(rng, 1, 3);
    const IntMatrix a = oracle::random_matrix(rng, p, p, 2);
    const CountTensor u = random_tensor(rng, p, 2, 2);
    const IntMatrix caps = oracle::random_matrix(rng, p, 2, 4);
    const auto expected = oracle::two_group_min_rewiring(a, u, caps);
    if (!expected) {
      EXPECT_THROW(solve_two_group(a, u, caps), InfeasibleError);
      continue;
    }
    const auto sol = solve_two_group(a, u, caps);
    ASSERT_EQ(sol.rewiring, *expected) << to_string(a);
    EXPECT_EQ(sol.x.collapse(), a);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Mdmcf, SingleGroupReturnsDemand) {
  const IntMatrix a{{0, 2}, {1, 0}};
  CountTensor u(2, 1);
  const auto x = mdmcf_config({a, u, IntMatrix{{2}, {2}}});
  EXPECT_EQ(x.layer(0), a);
}

TEST(Mdmcf, TwoGroupsMatchDirectSolve) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = oracle::uniform_index(rng, 2, 5);
    const IntMatrix a = oracle::random_matrix(rng, p, p, 2);
    const CountTensor u = random_tensor(rng, p, 2, 1);
    const IntMatrix caps(p, 2, 6);
    const auto direct = solve_two_group(a, u, caps);
    const auto x = mdmcf_config({a, u, caps});
    Count cost = 0;
    for (std::size_t n = 0; n < x.data().size(); ++n) cost += std::abs(x.data()[n] - u.data()[n]);
    EXPECT_EQ(cost, direct.rewiring);
  }
}

TEST(Mdmcf, FeasibleIncumbentIsKept) {
  std::mt19937_64 rng(33);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = oracle::uniform_index(rng, 2, 6);
    const IntMatrix a = oracle::random_matrix(rng, p, p, 1);
    const IntMatrix caps(p, 4, 2);
    CountTensor u;
    if (!greedy_layout(a, caps, u)) continue;
    EXPECT_EQ(mdmcf_config({a, u, caps}), u);
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(Mdmcf, RespectsCapsOnManyGroups) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = oracle::uniform_index(rng, 2, 6);
    const std::size_t h = oracle::uniform_index(rng, 1, 7);
    const IntMatrix caps(p, h, 1);
    // a sum of h random partial permutations
    IntMatrix a(p, p);
    std::vector<std::size_t> perm(p);
    for (std::size_t k = 0; k < h; ++k) {
      for (std::size_t i = 0; i < p; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i < p; ++i)
        if (oracle::uniform_index(rng, 0, 2)) ++a(i, perm[i]);
    }
    const CountTensor u = random_tensor(rng, p, h, 1);
    const auto x = mdmcf_config({a, u, caps});
    EXPECT_EQ(x.collapse(), a);
    for (std::size_t k = 0; k < h; ++k) EXPECT_TRUE(oracle::is_partial_permutation(x.layer(k)));
  }
}

TEST(MinRewiringCross, UnchangedDemandRewiresNothing) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    WorkloadSpec spec{8, 8, WorkloadMode::Heavy, 1, 0, 1, seed};
    const auto lt = gen_heavy_workload(spec);
    const auto w = build_wiring(WiringScheme::CrossWiring, 8, 8, 1);
    const auto u = solve_cross(lt, w);
    const auto x = min_rewiring_cross(lt, u, w);
    EXPECT_EQ(rewiring_cost(u.x, x.x), 0);
    EXPECT_EQ(mrar(u.x, x.x), Rational(1));
  }
}

TEST(MinRewiringCross, ZeroDemandTearsDown) {
  WorkloadSpec spec{6, 4, WorkloadMode::Heavy, 1, 0, 1, 3};
  const auto w = build_wiring(WiringScheme::CrossWiring, 6, 4, 1);
  const auto u = solve_cross(gen_heavy_workload(spec), w);
  const auto zero = LogicalTopology::from_matrix(IntMatrix::square(6), 4);
  const auto x = min_rewiring_cross(zero, u, w);
  EXPECT_EQ(x.x.total(), 0);
  EXPECT_EQ(mrar(u.x, x.x), Rational(1));
}

TEST(MinRewiringCross, SequenceStaysExact) {
  WorkloadSpec spec{10, 8, WorkloadMode::Sequence, 12, 1, 4, 77};
  const auto seq = gen_sequence(spec);
  const auto w = build_wiring(WiringScheme::CrossWiring, 10, 8, 1);
  OcsConfiguration aware = solve_cross(seq[0], w);
  OcsConfiguration blind = aware;
  Rational sum_aware, sum_blind;
  for (std::size_t t = 1; t < seq.size(); ++t) {
    auto xa = min_rewiring_cross(seq[t], aware, w);
    auto xb = min_rewiring_cross(seq[t], blind, w, OnlineOptions{false});
    ASSERT_TRUE(validate_configuration(xa, w, seq[t], true).ok());
    ASSERT_TRUE(validate_configuration(xb, w, seq[t], true).ok());
    sum_aware = sum_aware + mrar(aware.x, xa.x);
    sum_blind = sum_blind + mrar(blind.x, xb.x);
    aware = std::move(xa);
    blind = std::move(xb);
  }
  EXPECT_GE(sum_aware, sum_blind);
}
