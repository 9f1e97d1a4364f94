#include "ocs_toe/toe.hpp"

#include <stdexcept>
#include <string>

#include "ocs_toe/decomp.hpp"
#include "ocs_toe/errors.hpp"

namespace ocs_toe {

namespace {

void check_inputs(const LogicalTopology& c, const PhysicalTopology& phys, WiringScheme scheme) {
  if (phys.scheme() != scheme)
    throw ValidationError("expected " + std::string(scheme_name(scheme)) + " wiring, got " +
                          std::string(scheme_name(phys.scheme())));
  if (c.p != phys.p() || c.c.rows() != c.p) throw DimensionError("logical and physical EGroup counts differ");
  if (c.k_egroup != phys.k_egroup()) throw DimensionError("logical and physical k_egroup differ");
  const ValidationReport report = validate_logical(c);
  if (!report.ok()) throw ValidationError("invalid logical topology: " + report.summary());
}

void check_exact(const OcsConfiguration& cfg, const PhysicalTopology& phys, const LogicalTopology& c) {
  const ValidationReport report = validate_configuration(cfg, phys, c, true);
  if (!report.ok()) throw std::logic_error("mirror pipeline produced an invalid configuration: " + report.summary());
}

}  // namespace

SubSolution stack_slices(const std::vector<IntMatrix>& slices) {
  if (slices.empty()) return {};
  SubSolution sub{CountTensor(slices.front().rows(), slices.size())};
  for (std::size_t t = 0; t < slices.size(); ++t) sub.x_sub.set_layer(t, slices[t]);
  return sub;
}

OcsConfiguration merge_mirror(const SubSolution& sub, const PhysicalTopology& phys) {
  if (phys.scheme() != WiringScheme::CrossWiring) throw ValidationError("merge_mirror requires Cross Wiring");
  if (sub.x_sub.p() != phys.p() || 2 * sub.x_sub.layers() != phys.num_ocs())
    throw DimensionError("sub-solution does not cover the even OCS group");
  const std::size_t p = phys.p();
  OcsConfiguration cfg(p, phys.num_ocs());
  for (std::size_t t = 0; t < sub.x_sub.layers(); ++t) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        const Count v = sub.x_sub(i, j, t);
        cfg.x(i, j, 2 * t) = v;
        cfg.x(j, i, 2 * t + 1) = v;
      }
    }
  }
  return cfg;
}

SubSolution project_even(const OcsConfiguration& cfg) {
  const std::size_t p = cfg.p();
  SubSolution sub{CountTensor(p, cfg.num_ocs() / 2)};
  for (std::size_t t = 0; t < sub.x_sub.layers(); ++t)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) sub.x_sub(i, j, t) = cfg.x(i, j, 2 * t);
  return sub;
}

OcsConfiguration solve_cross(const LogicalTopology& c, const PhysicalTopology& phys,
                             const std::optional<OcsConfiguration>& prev) {
  check_inputs(c, phys, WiringScheme::CrossWiring);
  std::optional<IntMatrix> bias;
  if (prev) {
    if (prev->p() != phys.p() || prev->num_ocs() != phys.num_ocs())
      throw DimensionError("previous configuration dimensions differ from wiring");
    bias = project_even(*prev).x_sub.collapse();
  }
  const HalfTopology half = decompose_symmetric(c.c, bias);
  const auto h = static_cast<std::size_t>(c.k_egroup / 2);
  const SubSolution sub = stack_slices(decompose_to_matchings(half.a, h));
  OcsConfiguration cfg = merge_mirror(sub, phys);
  check_exact(cfg, phys, c);
  return cfg;
}

OcsConfiguration solve_dual_link(const LogicalTopology& c, const PhysicalTopology& phys) {
  check_inputs(c, phys, WiringScheme::DualLinkUniform);
  const HalfTopology half = decompose_symmetric(c.c);
  const auto h = static_cast<std::size_t>(c.k_egroup / 2);
  const std::vector<IntMatrix> slices = decompose_to_matchings(half.a, h);
  const std::size_t p = c.p;
  OcsConfiguration cfg(p, phys.num_ocs());
  for (std::size_t t = 0; t < slices.size(); ++t) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        cfg.x(i, j, t) += slices[t](i, j);
        cfg.x(j, i, t) += slices[t](i, j);
      }
    }
  }
  check_exact(cfg, phys, c);
  return cfg;
}

}  // namespace ocs_toe
