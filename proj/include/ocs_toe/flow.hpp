#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ocs_toe/matrix.hpp"

namespace ocs_toe {

struct FlowArc {
  int tail;
  int head;
  Count lower;
  Count upper;
  Count cost;
};

// Directed network with integral bounds and costs. Arc handles are insertion
// indices and stay stable.
class FlowNetwork {
 public:
  FlowNetwork() = default;
  explicit FlowNetwork(int nodes) : nodes_(nodes) {}

  int add_node() { return nodes_++; }
  int add_arc(int tail, int head, Count lower, Count upper, Count cost = 0);

  // Node used by with_node_supply_range to close supplies into a circulation.
  // Created on first use.
  int hub();

  int node_count() const { return nodes_; }
  std::size_t arc_count() const { return arcs_.size(); }
  const FlowArc& arc(std::size_t a) const { return arcs_[a]; }
  const std::vector<FlowArc>& arcs() const { return arcs_; }

 private:
  int nodes_ = 0;
  std::optional<int> hub_;
  std::vector<FlowArc> arcs_;
};

enum class FlowStatus { Feasible, Infeasible };

struct FlowResult {
  FlowStatus status = FlowStatus::Infeasible;
  std::vector<Count> flow;
  Count total_cost = 0;

  bool feasible() const { return status == FlowStatus::Feasible; }
  Count flow_on(std::span<const int> arcs) const;
};

// Minimum-cost circulation honoring every arc's [lower, upper]. Negative costs
// are allowed. Deterministic for a fixed arc insertion order.
FlowResult solve_min_cost_circulation(const FlowNetwork& net);

struct PwlSegment {
  Count length;
  Count slope;
  friend bool operator==(const PwlSegment&, const PwlSegment&) = default;
};

// Prices a convex piecewise-linear function of the total flow tail->head as
// parallel arcs, one per segment. Throws ValidationError on decreasing slopes
// or non-positive lengths.
std::vector<int> add_pwl_arc(FlowNetwork& net, int tail, int head, std::span<const PwlSegment> segments);

// Lets `node` inject between min_supply and max_supply units (negative values
// mean demand) through arcs to and from the network hub. Returns the arcs
// added.
std::vector<int> with_node_supply_range(FlowNetwork& net, int node, Count min_supply, Count max_supply);

// Writes the network in DIMACS min-cost-flow format after the standard
// lower-bound elimination (node supplies carry the forced flow).
void write_dimacs(std::ostream& os, const FlowNetwork& net);

}  // namespace ocs_toe
