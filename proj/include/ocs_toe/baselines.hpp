#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ocs_toe/matrix.hpp"
#include "ocs_toe/model.hpp"

namespace ocs_toe {

struct UniformExactResult {
  OcsConfiguration x;
  Count best_realized = 0;  // sum_ij min(X_ij, C_ij)
};

inline constexpr std::size_t kUniformExactMaxP = 6;
inline constexpr Count kUniformExactMaxK = 6;

// Exact best-effort ToE under Uniform Wiring by branch and bound over one
// symmetric partial matching per OCS. Guarded to P <= 6, K <= 6.
UniformExactResult uniform_exact_small(const LogicalTopology& c, const PhysicalTopology& phys);

// Per OCS, takes a maximum-cardinality matching of the residual demand graph
// (seeded greedily by residual weight); self demand uses leftover ports.
OcsConfiguration uniform_bvn_heuristic(const LogicalTopology& c, const PhysicalTopology& phys);

// Helios-style: per OCS, a maximum-weight bipartite matching of Tx EGroups to
// Rx EGroups on the residual demand, then paired into bidirectional links.
OcsConfiguration helios_matching(const LogicalTopology& c, const PhysicalTopology& phys);

// Maximum-cardinality matching of a general graph (Edmonds). `initial` seeds
// the search and must itself be a matching. Returns mate[v] or -1.
std::vector<int> max_cardinality_matching(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                                          const std::vector<std::pair<int, int>>& initial = {});

// Maximum-weight assignment of rows to columns (Hungarian). Returns the column
// assigned to each row.
std::vector<int> max_weight_assignment(const IntMatrix& weight);

inline constexpr std::size_t kBruteForceMaxP = 4;
inline constexpr std::size_t kBruteForceMaxGroups = 3;
inline constexpr Count kBruteForceMaxEntry = 2;

// Exhaustive min sum |x - u| over every x with sum_k x_ijk = A_ij and per-OCS
// row/column sums within caps(i, k). Throws InfeasibleError if no x exists.
Count brute_force_min_rewiring(const IntMatrix& a, const CountTensor& u, const IntMatrix& caps);

}  // namespace ocs_toe
