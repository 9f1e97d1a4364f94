#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ocs_toe/matrix.hpp"
#include "ocs_toe/model.hpp"

namespace ocs_toe {

// A with A + A^T == C and every row/column sum of A within
// [floor(s/2), ceil(s/2)] of the matching row/column sum s of C.
struct HalfTopology {
  IntMatrix a;
};

// Slices x^(1..K) summing to a source matrix, each within the floor/ceil
// shares of the source entries, row sums and column sums.
struct MatrixSlices {
  std::vector<IntMatrix> slices;
};

// Solves the symmetric split as a feasibility circulation: one supply node per
// unordered pair {i, j}, one intermediate node per ordered pair, one row node
// per EGroup. With `bias`, minimizes sum |A_ij - bias_ij| among all valid A.
// Throws ValidationError for an invalid C.
HalfTopology decompose_symmetric(const LogicalTopology& c, const std::optional<IntMatrix>& bias = std::nullopt);

// Same as above for a bare symmetric matrix with even diagonal.
HalfTopology decompose_symmetric(const IntMatrix& c, const std::optional<IntMatrix>& bias = std::nullopt);

// K-way split by recursive near-halving: M = M1 + M2 with M1 inside the
// floor/ceil bounds for a floor(K/2)/K share, then recurse on both halves.
MatrixSlices decompose_kway(const IntMatrix& m, std::size_t k);

// H partial permutations summing to A. Requires every row and column sum of A
// to be at most H.
std::vector<IntMatrix> decompose_to_matchings(const IntMatrix& a, std::size_t h);

// floor(value * num / den) and ceil(value * num / den) for value >= 0.
Count floor_share(Count value, Count num, Count den);
Count ceil_share(Count value, Count num, Count den);

}  // namespace ocs_toe
