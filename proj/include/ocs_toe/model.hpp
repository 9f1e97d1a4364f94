#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocs_toe/matrix.hpp"

namespace ocs_toe {

// Required inter-EGroup link counts. c(i, j) directed links from EGroup i to
// EGroup j; a legal topology is symmetric, has even diagonal and row sums
// bounded by k_egroup. Construction does not enforce those rules, use
// validate_logical().
struct LogicalTopology {
  std::size_t p = 0;
  Count k_egroup = 0;
  IntMatrix c;

  static LogicalTopology from_matrix(IntMatrix c, Count k_egroup);
};

enum class WiringScheme { Uniform, DualLinkUniform, CrossWiring };

std::string_view scheme_name(WiringScheme scheme);
// Accepts "uniform", "dual", "cross" (and the long enum spellings).
WiringScheme parse_scheme(std::string_view name);

// Port-level wiring between EGroups and OCSes. Ports are 0-indexed within an
// EGroup, OCSes are 0-indexed globally.
class PhysicalTopology {
 public:
  PhysicalTopology(WiringScheme scheme, std::size_t p, Count k_egroup, int psi, std::size_t num_ocs,
                   std::vector<std::size_t> tx_ocs, std::vector<std::size_t> rx_ocs);

  WiringScheme scheme() const { return scheme_; }
  std::size_t p() const { return p_; }
  Count k_egroup() const { return k_egroup_; }
  std::size_t ports() const { return static_cast<std::size_t>(k_egroup_); }
  int psi() const { return psi_; }
  std::size_t num_ocs() const { return num_ocs_; }

  std::size_t tx_ocs(std::size_t egroup, std::size_t port) const { return tx_ocs_[egroup * ports() + port]; }
  std::size_t rx_ocs(std::size_t egroup, std::size_t port) const { return rx_ocs_[egroup * ports() + port]; }

  // G[i][k]: ports of EGroup i whose Tx reaches OCS k.
  Count capacity(std::size_t egroup, std::size_t ocs) const { return tx_capacity_(egroup, ocs); }
  // Ports of EGroup i whose Rx reaches OCS k (equal to capacity() for every
  // scheme built by build_wiring).
  Count rx_capacity(std::size_t egroup, std::size_t ocs) const { return rx_capacity_(egroup, ocs); }
  const IntMatrix& capacity_matrix() const { return tx_capacity_; }

 private:
  WiringScheme scheme_;
  std::size_t p_;
  Count k_egroup_;
  int psi_;
  std::size_t num_ocs_;
  std::vector<std::size_t> tx_ocs_;
  std::vector<std::size_t> rx_ocs_;
  IntMatrix tx_capacity_;
  IntMatrix rx_capacity_;
};

// x(i, j, k): directed links OCS k creates from EGroup i to EGroup j.
struct OcsConfiguration {
  CountTensor x;

  OcsConfiguration() = default;
  OcsConfiguration(std::size_t p, std::size_t num_ocs) : x(p, num_ocs) {}
  explicit OcsConfiguration(CountTensor t) : x(std::move(t)) {}

  std::size_t p() const { return x.p(); }
  std::size_t num_ocs() const { return x.layers(); }
  friend bool operator==(const OcsConfiguration&, const OcsConfiguration&) = default;
};

struct PortLink {
  std::size_t ocs;
  std::size_t src_egroup;
  std::size_t src_port;
  std::size_t dst_egroup;
  std::size_t dst_port;
  friend bool operator==(const PortLink&, const PortLink&) = default;
  friend auto operator<=>(const PortLink&, const PortLink&) = default;
};

// Tx of (src_egroup, src_port) routed to Rx of (dst_egroup, dst_port).
struct PortMatching {
  std::vector<PortLink> links;
};

enum class ViolationKind { Dimension, Symmetry, FanOut, OddDiagonal, Capacity, Mirror, Demand, Negative };

std::string_view violation_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string summary() const;
};

ValidationReport validate_logical(const LogicalTopology& lt);

PhysicalTopology build_wiring(WiringScheme scheme, std::size_t p, Count k_egroup, int psi);

// Checks per-OCS port limits, the scheme's mirror rule, and either exact
// realization of lt (require_exact) or symmetry of the realized matrix.
ValidationReport validate_configuration(const OcsConfiguration& cfg, const PhysicalTopology& phys,
                                        const LogicalTopology& lt, bool require_exact);

// X(i, j) = sum over OCSes of x(i, j, k).
IntMatrix realized_matrix(const OcsConfiguration& cfg);

// Expands counts into concrete port links. Uniform and Cross assign the lowest
// free port first per EGroup per OCS. Dual-link orients each OCS's symmetric
// count matrix into a partial permutation B (A side, odd port Tx to even port
// Rx) plus its mirror.
PortMatching materialize_ports(const OcsConfiguration& cfg, const PhysicalTopology& phys);

// Counts the links of a port matching per (src, dst, ocs).
OcsConfiguration recount(const PortMatching& matching, std::size_t p, std::size_t num_ocs);

// Port-level legality: each Tx and each Rx used at most once, both ends wired
// to the routing OCS, and every link paired with its reverse.
ValidationReport validate_port_matching(const PortMatching& matching, const PhysicalTopology& phys);

}  // namespace ocs_toe
