#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ocs_toe/matrix.hpp"
#include "ocs_toe/model.hpp"

namespace ocs_toe {

// Links over one mirror sub-topology: layer t is the t-th OCS of the even
// group (Cross Wiring) or the A side of the t-th OCS (Dual-link).
struct SubSolution {
  CountTensor x_sub;
};

// Builds the sub-solution whose layer t is slices[t].
SubSolution stack_slices(const std::vector<IntMatrix>& slices);

// x(i, j, 2t) = x_sub(i, j, t) and x(j, i, 2t + 1) = x_sub(i, j, t).
OcsConfiguration merge_mirror(const SubSolution& sub, const PhysicalTopology& phys);

// Inverse of merge_mirror: the even-OCS layers of a Cross configuration.
SubSolution project_even(const OcsConfiguration& cfg);

// Offline ToE under Cross Wiring: symmetric split C = A + A^T, A spread over
// K/2 matchings, mirrored onto the odd OCSes. When `prev` is given, the split
// prefers an A close to prev's even-OCS totals.
OcsConfiguration solve_cross(const LogicalTopology& c, const PhysicalTopology& phys,
                             const std::optional<OcsConfiguration>& prev = std::nullopt);

// Offline ToE under Dual-link Uniform Wiring: OCS t carries slice t of A on its
// (odd Tx, even Rx) ports and the transpose on the mirrored ports.
OcsConfiguration solve_dual_link(const LogicalTopology& c, const PhysicalTopology& phys);

}  // namespace ocs_toe
