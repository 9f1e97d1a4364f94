#include "ocs_toe/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "ocs_toe/errors.hpp"

namespace ocs_toe {

LogicalTopology LogicalTopology::from_matrix(IntMatrix c, Count k_egroup) {
  if (!c.is_square()) throw DimensionError("logical topology matrix must be square");
  LogicalTopology lt;
  lt.p = c.rows();
  lt.k_egroup = k_egroup;
  lt.c = std::move(c);
  return lt;
}

std::string_view scheme_name(WiringScheme scheme) {
  switch (scheme) {
    case WiringScheme::Uniform:
      return "uniform";
    case WiringScheme::DualLinkUniform:
      return "dual";
    case WiringScheme::CrossWiring:
      return "cross";
  }
  return "?";
}

WiringScheme parse_scheme(std::string_view name) {
  if (name == "uniform" || name == "Uniform") return WiringScheme::Uniform;
  if (name == "dual" || name == "DualLinkUniform") return WiringScheme::DualLinkUniform;
  if (name == "cross" || name == "CrossWiring") return WiringScheme::CrossWiring;
  throw ValidationError("unsupported wiring scheme '" + std::string(name) + "'");
}

std::string_view violation_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Dimension:
      return "dimension";
    case ViolationKind::Symmetry:
      return "symmetry";
    case ViolationKind::FanOut:
      return "fan-out";
    case ViolationKind::OddDiagonal:
      return "odd-diagonal";
    case ViolationKind::Capacity:
      return "capacity";
    case ViolationKind::Mirror:
      return "mirror";
    case ViolationKind::Demand:
      return "demand";
    case ViolationKind::Negative:
      return "negative";
  }
  return "?";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t n = 0; n < violations.size(); ++n) {
    if (n) os << "; ";
    os << violation_name(violations[n].kind) << ": " << violations[n].detail;
  }
  return os.str();
}

PhysicalTopology::PhysicalTopology(WiringScheme scheme, std::size_t p, Count k_egroup, int psi, std::size_t num_ocs,
                                   std::vector<std::size_t> tx_map, std::vector<std::size_t> rx_map)
    : scheme_(scheme),
      p_(p),
      k_egroup_(k_egroup),
      psi_(psi),
      num_ocs_(num_ocs),
      tx_ocs_(std::move(tx_map)),
      rx_ocs_(std::move(rx_map)),
      tx_capacity_(p, num_ocs),
      rx_capacity_(p, num_ocs) {
  const std::size_t expected = p * static_cast<std::size_t>(k_egroup);
  if (tx_ocs_.size() != expected || rx_ocs_.size() != expected)
    throw DimensionError("wiring map must have one Tx and one Rx entry per (egroup, port)");
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t n = 0; n < ports(); ++n) {
      const std::size_t t = tx_ocs(i, n);
      const std::size_t r = rx_ocs(i, n);
      if (t >= num_ocs || r >= num_ocs) throw ValidationError("wiring map references OCS out of range");
      ++tx_capacity_(i, t);
      ++rx_capacity_(i, r);
    }
  }
}

ValidationReport validate_logical(const LogicalTopology& lt) {
  const IntMatrix& c = lt.c;
  if (!c.is_square()) throw DimensionError("logical topology matrix must be square");
  if (c.rows() != lt.p) throw DimensionError("logical topology matrix size differs from p");
  ValidationReport report;
  for (std::size_t i = 0; i < lt.p; ++i) {
    for (std::size_t j = 0; j < lt.p; ++j) {
      if (c(i, j) < 0) {
        report.violations.push_back({ViolationKind::Negative, i, j, 0,
                                     "c[" + std::to_string(i) + "][" + std::to_string(j) + "] < 0"});
      }
      if (j > i && c(i, j) != c(j, i)) {
        report.violations.push_back({ViolationKind::Symmetry, i, j, 0,
                                     "c[" + std::to_string(i) + "][" + std::to_string(j) +
                                         "] != c[" + std::to_string(j) + "][" + std::to_string(i) + "]"});
      }
    }
    if (c(i, i) % 2 != 0) {
      report.violations.push_back({ViolationKind::OddDiagonal, i, i, 0,
                                   "c[" + std::to_string(i) + "][" + std::to_string(i) + "] is odd"});
    }
    const Count out = c.row_sum(i);
    const Count in = c.col_sum(i);
    if (out > lt.k_egroup || in > lt.k_egroup) {
      report.violations.push_back({ViolationKind::FanOut, i, i, 0,
                                   "row " + std::to_string(i) + ": " + std::to_string(std::max(out, in)) + " > " +
                                       std::to_string(lt.k_egroup)});
    }
  }
  return report;
}

PhysicalTopology build_wiring(WiringScheme scheme, std::size_t p, Count k_egroup, int psi) {
  if (k_egroup <= 0 || k_egroup % 2 != 0) throw ValidationError("k_egroup must be a positive even integer");
  if (p == 0) throw ValidationError("p must be positive");
  const int expected_psi = scheme == WiringScheme::DualLinkUniform ? 2 : 1;
  if (psi != expected_psi) {
    throw ValidationError("scheme " + std::string(scheme_name(scheme)) + " requires psi=" +
                          std::to_string(expected_psi));
  }
  const auto k = static_cast<std::size_t>(k_egroup);
  std::vector<std::size_t> tx(p * k);
  std::vector<std::size_t> rx(p * k);
  std::size_t num_ocs = 0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t n = 0; n < k; ++n) {
      std::size_t t = 0;
      std::size_t r = 0;
      switch (scheme) {
        case WiringScheme::Uniform:
          t = r = n;
          break;
        case WiringScheme::CrossWiring:
          // Even port: Tx on its own OCS, Rx on the odd partner. Odd port: the reverse.
          t = n;
          r = n ^ 1U;
          break;
        case WiringScheme::DualLinkUniform:
          t = r = n / 2;
          break;
      }
      tx[i * k + n] = t;
      rx[i * k + n] = r;
    }
  }
  num_ocs = scheme == WiringScheme::DualLinkUniform ? k / 2 : k;
  return PhysicalTopology(scheme, p, k_egroup, psi, num_ocs, std::move(tx), std::move(rx));
}

IntMatrix realized_matrix(const OcsConfiguration& cfg) { return cfg.x.collapse(); }

namespace {

std::string idx3(std::size_t i, std::size_t j, std::size_t k) {
  return "x[" + std::to_string(i) + "][" + std::to_string(j) + "][" + std::to_string(k) + "]";
}

void check_capacities(const OcsConfiguration& cfg, const PhysicalTopology& phys, ValidationReport& report) {
  const std::size_t p = cfg.p();
  for (std::size_t k = 0; k < cfg.num_ocs(); ++k) {
    for (std::size_t i = 0; i < p; ++i) {
      Count out = 0;
      Count in = 0;
      for (std::size_t j = 0; j < p; ++j) {
        out += cfg.x(i, j, k);
        in += cfg.x(j, i, k);
      }
      if (out > phys.capacity(i, k)) {
        report.violations.push_back({ViolationKind::Capacity, i, i, k,
                                     "egroup " + std::to_string(i) + " sends " + std::to_string(out) + " on OCS " +
                                         std::to_string(k) + " (G=" + std::to_string(phys.capacity(i, k)) + ")"});
      }
      if (in > phys.rx_capacity(i, k)) {
        report.violations.push_back({ViolationKind::Capacity, i, i, k,
                                     "egroup " + std::to_string(i) + " receives " + std::to_string(in) +
                                         " on OCS " + std::to_string(k) +
                                         " (G=" + std::to_string(phys.rx_capacity(i, k)) + ")"});
      }
    }
  }
}

void check_mirror(const OcsConfiguration& cfg, const PhysicalTopology& phys, ValidationReport& report) {
  const std::size_t p = cfg.p();
  const auto& x = cfg.x;
  switch (phys.scheme()) {
    case WiringScheme::CrossWiring:
      for (std::size_t t = 0; 2 * t + 1 < cfg.num_ocs(); ++t)
        for (std::size_t i = 0; i < p; ++i)
          for (std::size_t j = 0; j < p; ++j)
            if (x(i, j, 2 * t) != x(j, i, 2 * t + 1))
              report.violations.push_back(
                  {ViolationKind::Mirror, i, j, 2 * t, idx3(i, j, 2 * t) + " != " + idx3(j, i, 2 * t + 1)});
      break;
    case WiringScheme::Uniform:
    case WiringScheme::DualLinkUniform:
      for (std::size_t k = 0; k < cfg.num_ocs(); ++k) {
        for (std::size_t i = 0; i < p; ++i) {
          for (std::size_t j = i + 1; j < p; ++j)
            if (x(i, j, k) != x(j, i, k))
              report.violations.push_back({ViolationKind::Mirror, i, j, k, idx3(i, j, k) + " != " + idx3(j, i, k)});
          // A dual-link self link occupies both the A side and its mirror.
          if (phys.scheme() == WiringScheme::DualLinkUniform && x(i, i, k) % 2 != 0)
            report.violations.push_back({ViolationKind::Mirror, i, i, k, idx3(i, i, k) + " is odd"});
        }
      }
      break;
  }
}

}  // namespace

ValidationReport validate_configuration(const OcsConfiguration& cfg, const PhysicalTopology& phys,
                                        const LogicalTopology& lt, bool require_exact) {
  if (cfg.p() != phys.p() || lt.p != phys.p() || lt.c.rows() != lt.p || !lt.c.is_square())
    throw DimensionError("configuration, physical and logical EGroup counts differ");
  if (cfg.num_ocs() != phys.num_ocs()) throw DimensionError("configuration OCS count differs from wiring");

  ValidationReport report;
  const std::size_t p = cfg.p();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k < cfg.num_ocs(); ++k)
        if (cfg.x(i, j, k) < 0) report.violations.push_back({ViolationKind::Negative, i, j, k, idx3(i, j, k) + " < 0"});

  check_capacities(cfg, phys, report);
  check_mirror(cfg, phys, report);

  const IntMatrix realized = realized_matrix(cfg);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (require_exact && realized(i, j) != lt.c(i, j)) {
        report.violations.push_back({ViolationKind::Demand, i, j, 0,
                                     "X[" + std::to_string(i) + "][" + std::to_string(j) +
                                         "]=" + std::to_string(realized(i, j)) +
                                         " != C=" + std::to_string(lt.c(i, j))});
      }
      if (j > i && realized(i, j) != realized(j, i)) {
        report.violations.push_back({ViolationKind::Symmetry, i, j, 0,
                                     "realized X[" + std::to_string(i) + "][" + std::to_string(j) +
                                         "] != X[" + std::to_string(j) + "][" + std::to_string(i) + "]"});
      }
    }
  }
  return report;
}

namespace {

// Splits a symmetric count matrix whose rows sum to at most 2 (diagonal
// entries even) into B + B^T with B a partial permutation. The multigraph with
// one edge per undirected unit has maximum degree 2, so its components are
// paths, cycles and self loops; walking each one orients it.
IntMatrix orient_symmetric_layer(const IntMatrix& s) {
  const std::size_t p = s.rows();
  IntMatrix remaining = s;
  IntMatrix b = IntMatrix::square(p);
  for (std::size_t i = 0; i < p; ++i) {
    if (remaining(i, i) % 2 != 0) throw ValidationError("dual-link layer has odd diagonal");
    while (remaining(i, i) >= 2) {
      b(i, i) += 1;
      remaining(i, i) -= 2;
    }
  }
  auto degree = [&](std::size_t v) {
    Count d = 0;
    for (std::size_t w = 0; w < p; ++w) d += remaining(v, w);
    return d;
  };
  auto walk = [&](std::size_t start) {
    std::size_t v = start;
    for (;;) {
      std::size_t next = p;
      for (std::size_t w = 0; w < p; ++w) {
        if (remaining(v, w) > 0) {
          next = w;
          break;
        }
      }
      if (next == p) return;
      remaining(v, next) -= 1;
      remaining(next, v) -= 1;
      b(v, next) += 1;
      v = next;
    }
  };
  // Paths first, from an endpoint, so every interior node gets one in and one out.
  for (std::size_t v = 0; v < p; ++v)
    if (degree(v) == 1) walk(v);
  for (std::size_t v = 0; v < p; ++v)
    if (degree(v) > 0) walk(v);
  for (std::size_t i = 0; i < p; ++i) {
    if (b.row_sum(i) > 1 || b.col_sum(i) > 1)
      throw ValidationError("dual-link layer exceeds two OCS ports per EGroup");
  }
  return b;
}

}  // namespace

PortMatching materialize_ports(const OcsConfiguration& cfg, const PhysicalTopology& phys) {
  if (cfg.p() != phys.p() || cfg.num_ocs() != phys.num_ocs())
    throw DimensionError("configuration dimensions differ from wiring");
  const std::size_t p = cfg.p();
  const std::size_t ports = phys.ports();
  PortMatching matching;

  if (phys.scheme() == WiringScheme::DualLinkUniform) {
    for (std::size_t k = 0; k < cfg.num_ocs(); ++k) {
      const IntMatrix layer = cfg.x.layer(k);
      if (!layer.is_symmetric()) throw ValidationError("dual-link layer " + std::to_string(k) + " is not symmetric");
      const IntMatrix b = orient_symmetric_layer(layer);
      const std::size_t even_port = 2 * k;
      const std::size_t odd_port = 2 * k + 1;
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
          if (b(i, j) == 0) continue;
          matching.links.push_back({k, i, odd_port, j, even_port});
          matching.links.push_back({k, j, even_port, i, odd_port});
        }
      }
    }
    std::sort(matching.links.begin(), matching.links.end());
    return matching;
  }

  // next free Tx / Rx slot per (egroup, ocs), scanning ports in index order
  std::vector<std::vector<std::size_t>> tx_ports(p * cfg.num_ocs());
  std::vector<std::vector<std::size_t>> rx_ports(p * cfg.num_ocs());
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t n = 0; n < ports; ++n) {
      tx_ports[i * cfg.num_ocs() + phys.tx_ocs(i, n)].push_back(n);
      rx_ports[i * cfg.num_ocs() + phys.rx_ocs(i, n)].push_back(n);
    }
  }
  std::vector<std::size_t> tx_used(p * cfg.num_ocs(), 0);
  std::vector<std::size_t> rx_used(p * cfg.num_ocs(), 0);
  for (std::size_t k = 0; k < cfg.num_ocs(); ++k) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        const Count count = cfg.x(i, j, k);
        if (count < 0) throw ValidationError("negative link count at " + idx3(i, j, k));
        for (Count c = 0; c < count; ++c) {
          const std::size_t src = i * cfg.num_ocs() + k;
          const std::size_t dst = j * cfg.num_ocs() + k;
          if (tx_used[src] >= tx_ports[src].size() || rx_used[dst] >= rx_ports[dst].size())
            throw ValidationError("capacity violation while materializing " + idx3(i, j, k));
          matching.links.push_back({k, i, tx_ports[src][tx_used[src]++], j, rx_ports[dst][rx_used[dst]++]});
        }
      }
    }
  }
  return matching;
}

OcsConfiguration recount(const PortMatching& matching, std::size_t p, std::size_t num_ocs) {
  OcsConfiguration cfg(p, num_ocs);
  for (const auto& link : matching.links) {
    if (link.src_egroup >= p || link.dst_egroup >= p || link.ocs >= num_ocs)
      throw DimensionError("port link index out of range");
    cfg.x(link.src_egroup, link.dst_egroup, link.ocs) += 1;
  }
  return cfg;
}

ValidationReport validate_port_matching(const PortMatching& matching, const PhysicalTopology& phys) {
  ValidationReport report;
  using Port = std::pair<std::size_t, std::size_t>;
  std::map<Port, std::size_t> tx_use;
  std::map<Port, std::size_t> rx_use;
  std::map<std::pair<Port, Port>, std::size_t> directed;
  for (const auto& l : matching.links) {
    if (l.src_egroup >= phys.p() || l.dst_egroup >= phys.p() || l.src_port >= phys.ports() ||
        l.dst_port >= phys.ports()) {
      report.violations.push_back({ViolationKind::Dimension, l.src_egroup, l.dst_egroup, l.ocs, "port out of range"});
      continue;
    }
    const Port src{l.src_egroup, l.src_port};
    const Port dst{l.dst_egroup, l.dst_port};
    if (++tx_use[src] > 1)
      report.violations.push_back({ViolationKind::Capacity, l.src_egroup, l.src_egroup, l.ocs,
                                   "Tx of port (" + std::to_string(l.src_egroup) + "," +
                                       std::to_string(l.src_port) + ") used twice"});
    if (++rx_use[dst] > 1)
      report.violations.push_back({ViolationKind::Capacity, l.dst_egroup, l.dst_egroup, l.ocs,
                                   "Rx of port (" + std::to_string(l.dst_egroup) + "," +
                                       std::to_string(l.dst_port) + ") used twice"});
    if (phys.tx_ocs(l.src_egroup, l.src_port) != l.ocs || phys.rx_ocs(l.dst_egroup, l.dst_port) != l.ocs)
      report.violations.push_back({ViolationKind::Capacity, l.src_egroup, l.dst_egroup, l.ocs,
                                   "link endpoints are not wired to OCS " + std::to_string(l.ocs)});
    ++directed[{src, dst}];
  }
  for (const auto& [key, count] : directed) {
    const auto reverse = directed.find({key.second, key.first});
    if (reverse == directed.end() || reverse->second != count) {
      report.violations.push_back({ViolationKind::Symmetry, key.first.first, key.second.first, 0,
                                   "link (" + std::to_string(key.first.first) + "," +
                                       std::to_string(key.first.second) + ")->(" +
                                       std::to_string(key.second.first) + "," + std::to_string(key.second.second) +
                                       ") has no reverse"});
    }
  }
  return report;
}

}  // namespace ocs_toe
