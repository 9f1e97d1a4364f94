#include "ocs_toe/decomp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ocs_toe/errors.hpp"
#include "ocs_toe/flow.hpp"

namespace ocs_toe {

Count floor_share(Count value, Count num, Count den) { return value * num / den; }

Count ceil_share(Count value, Count num, Count den) { return (value * num + den - 1) / den; }

namespace {

// |x - target| on [0, cap], shifted so the value at x = 0 is zero.
std::vector<PwlSegment> distance_segments(Count target, Count cap) {
  const Count knee = std::clamp<Count>(target, 0, cap);
  std::vector<PwlSegment> segs;
  if (knee > 0) segs.push_back({knee, -1});
  if (cap - knee > 0) segs.push_back({cap - knee, +1});
  return segs;
}

}  // namespace

HalfTopology decompose_symmetric(const IntMatrix& c, const std::optional<IntMatrix>& bias) {
  if (!c.is_square()) throw DimensionError("matrix must be square");
  const std::size_t p = c.rows();
  if (bias && (bias->rows() != p || bias->cols() != p)) throw DimensionError("bias shape differs from C");
  for (std::size_t i = 0; i < p; ++i) {
    if (c(i, i) % 2 != 0) throw ValidationError("diagonal entry c[" + std::to_string(i) + "] is odd");
    for (std::size_t j = 0; j < p; ++j) {
      if (c(i, j) < 0) throw ValidationError("negative entry in C");
      if (c(i, j) != c(j, i))
        throw ValidationError("C is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (bias && (*bias)(i, j) < 0) throw ValidationError("bias entries must be nonnegative");
    }
  }

  FlowNetwork net;
  const int dummy = net.add_node();
  std::vector<int> row_node(p);
  for (auto& r : row_node) r = net.add_node();
  // handles of the arcs whose total flow is A_ij
  std::vector<std::vector<int>> a_arcs(p * p);

  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      const Count cij = c(i, j);
      if (cij == 0) continue;
      const int supply = net.add_node();
      if (i == j) {
        const Count half = cij / 2;
        net.add_arc(dummy, supply, half, half);
        const int inter = net.add_node();
        a_arcs[i * p + i].push_back(net.add_arc(supply, inter, half, half));
        net.add_arc(inter, row_node[i], 0, half);
        continue;
      }
      net.add_arc(dummy, supply, cij, cij);
      for (const auto& [r, s] : {std::pair{i, j}, std::pair{j, i}}) {
        const int inter = net.add_node();
        if (bias) {
          const auto segs = distance_segments((*bias)(r, s), cij);
          a_arcs[r * p + s] = add_pwl_arc(net, supply, inter, segs);
        } else {
          a_arcs[r * p + s].push_back(net.add_arc(supply, inter, 0, cij));
        }
        net.add_arc(inter, row_node[r], 0, cij);
      }
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    const Count rs = c.row_sum(i);
    net.add_arc(row_node[i], dummy, rs / 2, (rs + 1) / 2);
  }

  const FlowResult res = solve_min_cost_circulation(net);
  // C/2 is a fractional feasible point, so an integral one always exists.
  if (!res.feasible()) throw std::logic_error("symmetric decomposition network infeasible for valid C");

  HalfTopology out{IntMatrix::square(p)};
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) out.a(i, j) = res.flow_on(a_arcs[i * p + j]);
  return out;
}

HalfTopology decompose_symmetric(const LogicalTopology& lt, const std::optional<IntMatrix>& bias) {
  const ValidationReport report = validate_logical(lt);
  if (!report.ok()) throw ValidationError("invalid logical topology: " + report.summary());
  return decompose_symmetric(lt.c, bias);
}

namespace {

// M1 with every entry, row sum and column sum inside [floor, ceil] of
// share/whole times the corresponding quantity of M.
IntMatrix split_share(const IntMatrix& m, Count share, Count whole) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  FlowNetwork net;
  const int s = net.add_node();
  const int t = net.add_node();
  std::vector<int> row(rows);
  std::vector<int> col(cols);
  for (auto& r : row) r = net.add_node();
  for (auto& q : col) q = net.add_node();
  net.add_arc(t, s, 0, m.total());
  for (std::size_t i = 0; i < rows; ++i) {
    const Count rs = m.row_sum(i);
    net.add_arc(s, row[i], floor_share(rs, share, whole), ceil_share(rs, share, whole));
  }
  for (std::size_t j = 0; j < cols; ++j) {
    const Count cs = m.col_sum(j);
    net.add_arc(col[j], t, floor_share(cs, share, whole), ceil_share(cs, share, whole));
  }
  std::vector<int> entry(rows * cols, -1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const Count v = m(i, j);
      if (v == 0) continue;
      entry[i * cols + j] = net.add_arc(row[i], col[j], floor_share(v, share, whole), ceil_share(v, share, whole));
    }
  }
  const FlowResult res = solve_min_cost_circulation(net);
  if (!res.feasible()) throw std::logic_error("integer matrix split infeasible");
  IntMatrix m1(rows, cols);
  for (std::size_t n = 0; n < entry.size(); ++n)
    if (entry[n] >= 0) m1(n / cols, n % cols) = res.flow[static_cast<std::size_t>(entry[n])];
  return m1;
}

void kway_into(const IntMatrix& m, std::size_t k, std::vector<IntMatrix>& out) {
  if (k == 1) {
    out.push_back(m);
    return;
  }
  const std::size_t k1 = k / 2;
  IntMatrix m1 = split_share(m, static_cast<Count>(k1), static_cast<Count>(k));
  IntMatrix m2 = m - m1;
  kway_into(m1, k1, out);
  kway_into(m2, k - k1, out);
}

}  // namespace

MatrixSlices decompose_kway(const IntMatrix& m, std::size_t k) {
  if (k == 0) throw ValidationError("K must be at least 1");
  for (Count v : m.data())
    if (v < 0) throw ValidationError("matrix entries must be nonnegative");
  MatrixSlices out;
  out.slices.reserve(k);
  kway_into(m, k, out.slices);
  return out;
}

std::vector<IntMatrix> decompose_to_matchings(const IntMatrix& a, std::size_t h) {
  if (h == 0) throw ValidationError("H must be at least 1");
  const auto cap = static_cast<Count>(h);
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (a.row_sum(i) > cap)
      throw ValidationError("row " + std::to_string(i) + " sum " + std::to_string(a.row_sum(i)) + " exceeds H=" +
                            std::to_string(h));
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (a.col_sum(j) > cap)
      throw ValidationError("column " + std::to_string(j) + " sum " + std::to_string(a.col_sum(j)) +
                            " exceeds H=" + std::to_string(h));
  MatrixSlices parts = decompose_kway(a, h);
  for (const auto& s : parts.slices) {
    for (std::size_t i = 0; i < s.rows(); ++i)
      if (s.row_sum(i) > 1) throw std::logic_error("matching slice has row sum above 1");
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (s.col_sum(j) > 1) throw std::logic_error("matching slice has column sum above 1");
  }
  return std::move(parts.slices);
}

}  // namespace ocs_toe
