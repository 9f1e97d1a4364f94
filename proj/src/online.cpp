#include "ocs_toe/online.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

#include "ocs_toe/decomp.hpp"
#include "ocs_toe/errors.hpp"
#include "ocs_toe/toe.hpp"

namespace ocs_toe {

Count pwl_value(Count u1, Count u2, Count a, Count x) {
  return std::max<Count>(u1 - x, 0) + std::max<Count>(u2 - a + x, 0);
}

PwlSegments pwl_segments(Count u1, Count u2, Count a) {
  if (u1 < 0 || u2 < 0 || a < 0) throw ValidationError("pwl_segments arguments must be nonnegative");
  PwlSegments out;
  out.value_at_zero = pwl_value(u1, u2, a, 0);
  if (a == 0) return out;
  std::vector<Count> cuts{0, a};
  for (Count b : {u1, a - u2})
    if (b > 0 && b < a) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t n = 0; n + 1 < cuts.size(); ++n) {
    const Count lo = cuts[n];
    const Count hi = cuts[n + 1];
    // slope on (lo, hi): -[x < u1] + [x > a - u2], evaluated at the midpoint
    const Count slope = (lo < u1 ? -1 : 0) + (hi > a - u2 ? 1 : 0);
    if (!out.segments.empty() && out.segments.back().slope == slope) {
      out.segments.back().length += hi - lo;
    } else {
      if (!out.segments.empty()) out.breakpoints.push_back(lo);
      out.segments.push_back({hi - lo, slope});
    }
  }
  return out;
}

namespace {

Count rewiring_between(const CountTensor& x, const CountTensor& u) {
  Count s = 0;
  for (std::size_t i = 0; i < x.p(); ++i)
    for (std::size_t j = 0; j < x.p(); ++j)
      for (std::size_t k = 0; k < x.layers(); ++k) s += std::llabs(x(i, j, k) - u(i, j, k));
  return s;
}

}  // namespace

TwoGroupSolution solve_two_group(const IntMatrix& a, const CountTensor& u, const IntMatrix& caps) {
  const std::size_t p = a.rows();
  if (!a.is_square() || u.p() != p || u.layers() != 2 || caps.rows() != p || caps.cols() != 2)
    throw DimensionError("two-group instance shapes disagree");

  FlowNetwork net;
  std::vector<int> supply(p);
  std::vector<int> demand(p);
  for (auto& s : supply) s = net.add_node();
  for (auto& d : demand) d = net.add_node();
  for (std::size_t i = 0; i < p; ++i) {
    // A negative lower end carries no constraint, clip it.
    const Count s_lo = std::max<Count>(a.row_sum(i) - caps(i, 1), 0);
    const Count s_hi = std::min(caps(i, 0), a.row_sum(i));
    const Count d_lo = std::max<Count>(a.col_sum(i) - caps(i, 1), 0);
    const Count d_hi = std::min(caps(i, 0), a.col_sum(i));
    if (s_lo > s_hi || d_lo > d_hi)
      throw InfeasibleError("EGroup " + std::to_string(i) + " demand exceeds the two groups' ports");
    with_node_supply_range(net, supply[i], s_lo, s_hi);
    with_node_supply_range(net, demand[i], -d_hi, -d_lo);
  }
  std::vector<std::vector<int>> bundle(p * p);
  Count base = 0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (a(i, j) < 0) throw ValidationError("negative demand in A");
      const PwlSegments f = pwl_segments(u(i, j, 0), u(i, j, 1), a(i, j));
      base += f.value_at_zero;
      bundle[i * p + j] = add_pwl_arc(net, supply[i], demand[j], f.segments);
    }
  }
  const FlowResult res = solve_min_cost_circulation(net);
  if (!res.feasible()) throw InfeasibleError("two-group rewiring instance is infeasible");

  TwoGroupSolution out{CountTensor(p, 2)};
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const Count first = res.flow_on(bundle[i * p + j]);
      out.x(i, j, 0) = first;
      out.x(i, j, 1) = a(i, j) - first;
    }
  }
  out.objective = base + res.total_cost;
  out.rewiring = rewiring_between(out.x, u);
  return out;
}

namespace {

void check_caps(const IntMatrix& a, const IntMatrix& caps) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Count ports = caps.row_sum(i);
    if (a.row_sum(i) > ports || a.col_sum(i) > ports)
      throw InfeasibleError("EGroup " + std::to_string(i) + " needs more ports than its OCS group offers");
  }
}

// Solves the sub-instance on groups [first, first + count) of the root problem.
void config_range(const IntMatrix& a, const RewiringProblem& root, std::size_t first, std::size_t count,
                  CountTensor& out) {
  const std::size_t p = a.rows();
  if (count == 1) {
    for (std::size_t i = 0; i < p; ++i) {
      if (a.row_sum(i) > root.caps(i, first) || a.col_sum(i) > root.caps(i, first))
        throw std::logic_error("merge-decomposition left an over-capacity single group");
      for (std::size_t j = 0; j < p; ++j) out(i, j, first) = a(i, j);
    }
    return;
  }
  const std::size_t left = count / 2;
  const std::size_t right = count - left;

  CountTensor merged_u(p, 2);
  IntMatrix merged_caps(p, 2);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t k = 0; k < count; ++k) merged_caps(i, k < left ? 0 : 1) += root.caps(i, first + k);
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k < count; ++k) merged_u(i, j, k < left ? 0 : 1) += root.u(i, j, first + k);
  }
  TwoGroupSolution merged;
  try {
    merged = solve_two_group(a, merged_u, merged_caps);
  } catch (const InfeasibleError&) {
    // The proportional split is a fractional feasible point whenever the
    // parent instance is feasible.
    throw std::logic_error("merge-decomposition produced an infeasible two-group instance");
  }
  const IntMatrix a_left = merged.x.layer(0);
  const IntMatrix a_right = merged.x.layer(1);
  config_range(a_left, root, first, left, out);
  config_range(a_right, root, first + left, right, out);
}

}  // namespace

CountTensor mdmcf_config(const RewiringProblem& problem) {
  const std::size_t p = problem.p();
  const std::size_t h = problem.groups();
  if (!problem.a.is_square() || problem.u.p() != p || problem.caps.rows() != p || problem.caps.cols() != h)
    throw DimensionError("rewiring problem shapes disagree");
  if (h == 0) throw ValidationError("rewiring problem needs at least one OCS");
  check_caps(problem.a, problem.caps);
  CountTensor out(p, h);
  config_range(problem.a, problem, 0, h, out);
  return out;
}

OcsConfiguration min_rewiring_cross(const LogicalTopology& c, const OcsConfiguration& u,
                                    const PhysicalTopology& phys, OnlineOptions options) {
  if (phys.scheme() != WiringScheme::CrossWiring) throw ValidationError("min_rewiring_cross requires Cross Wiring");
  if (c.p != phys.p() || c.k_egroup != phys.k_egroup()) throw DimensionError("logical and physical sizes differ");
  if (u.p() != phys.p() || u.num_ocs() != phys.num_ocs())
    throw DimensionError("incumbent configuration dimensions differ from wiring");
  const ValidationReport report = validate_logical(c);
  if (!report.ok()) throw ValidationError("invalid logical topology: " + report.summary());

  const std::size_t h = phys.num_ocs() / 2;
  RewiringProblem problem;
  problem.u = options.rewiring_aware ? project_even(u).x_sub : CountTensor(c.p, h);
  std::optional<IntMatrix> bias;
  if (options.rewiring_aware) bias = problem.u.collapse();
  problem.a = decompose_symmetric(c.c, bias).a;
  problem.caps = IntMatrix(c.p, h);
  for (std::size_t i = 0; i < c.p; ++i)
    for (std::size_t t = 0; t < h; ++t) problem.caps(i, t) = phys.capacity(i, 2 * t);

  const SubSolution sub{mdmcf_config(problem)};
  OcsConfiguration cfg = merge_mirror(sub, phys);
  const ValidationReport check = validate_configuration(cfg, phys, c, true);
  if (!check.ok()) throw std::logic_error("online pipeline produced an invalid configuration: " + check.summary());
  return cfg;
}

}  // namespace ocs_toe
