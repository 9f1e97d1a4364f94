#pragma once

#include <cstddef>
#include <vector>

#include "ocs_toe/flow.hpp"
#include "ocs_toe/matrix.hpp"
#include "ocs_toe/model.hpp"

namespace ocs_toe {

// Minimal-rewiring instance over one sub-topology: realize `a` on the OCSes
// of `u`, where caps(i, k) ports of EGroup i reach OCS k.
struct RewiringProblem {
  IntMatrix a;
  CountTensor u;
  IntMatrix caps;

  std::size_t p() const { return a.rows(); }
  std::size_t groups() const { return u.layers(); }
};

// Breakpoints and slopes of f(x) = (u1 - x)^+ + (u2 - a + x)^+ on [0, a].
struct PwlSegments {
  std::vector<Count> breakpoints;  // interior points where the slope changes
  std::vector<PwlSegment> segments;
  Count value_at_zero = 0;
};

PwlSegments pwl_segments(Count u1, Count u2, Count a);

// Value of f at integer x; reference for tests and for reporting objectives.
Count pwl_value(Count u1, Count u2, Count a, Count x);

struct TwoGroupSolution {
  CountTensor x;       // P x P x 2
  Count objective = 0; // sum of f_ij(x_ij on group 0)
  Count rewiring = 0;  // sum |x - u|
};

// Optimal minimal-rewiring split of `a` over two OCS groups. caps is P x 2.
// Throws InfeasibleError when the caps cannot host `a`.
TwoGroupSolution solve_two_group(const IntMatrix& a, const CountTensor& u, const IntMatrix& caps);

// Merge-decomposition: recursively halve the OCS set, solve the two-group
// instance with u summed per half, then split each half's share. Feasible for
// every feasible root instance; optimal only for two groups.
CountTensor mdmcf_config(const RewiringProblem& problem);

struct OnlineOptions {
  // false: drop the incumbent from every cost (rewiring-oblivious baseline)
  bool rewiring_aware = true;
};

// Online ToE under Cross Wiring with incumbent `u`: biased symmetric split,
// merge-decomposition on the even OCS group, then mirror.
OcsConfiguration min_rewiring_cross(const LogicalTopology& c, const OcsConfiguration& u,
                                    const PhysicalTopology& phys, OnlineOptions options = {});

}  // namespace ocs_toe
