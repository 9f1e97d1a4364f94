#include "ocs_toe/flow.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

#include "ocs_toe/errors.hpp"

namespace ocs_toe {

int FlowNetwork::add_arc(int tail, int head, Count lower, Count upper, Count cost) {
  if (tail < 0 || head < 0 || tail >= nodes_ || head >= nodes_)
    throw std::out_of_range("arc endpoint out of range");
  if (lower < 0 || upper < lower) throw ValidationError("arc bounds must satisfy 0 <= lower <= upper");
  arcs_.push_back({tail, head, lower, upper, cost});
  return static_cast<int>(arcs_.size() - 1);
}

int FlowNetwork::hub() {
  if (!hub_) hub_ = add_node();
  return *hub_;
}

Count FlowResult::flow_on(std::span<const int> arcs) const {
  Count s = 0;
  for (int a : arcs) s += flow[static_cast<std::size_t>(a)];
  return s;
}

namespace {

constexpr Count kInf = std::numeric_limits<Count>::max() / 4;

// Residual graph in paired-edge form: edge e and e^1 are mutual reverses.
struct Residual {
  struct Edge {
    int to;
    Count cap;
    Count cost;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> out;

  explicit Residual(int n) : out(static_cast<std::size_t>(n)) {}

  int add(int from, int to, Count cap, Count cost) {
    const int e = static_cast<int>(edges.size());
    edges.push_back({to, cap, cost});
    edges.push_back({from, 0, -cost});
    out[static_cast<std::size_t>(from)].push_back(e);
    out[static_cast<std::size_t>(to)].push_back(e + 1);
    return e;
  }
};

// Primal-dual successive shortest paths: Dijkstra on reduced costs to update
// potentials, then a blocking flow on the zero-reduced-cost subgraph.
class PrimalDual {
 public:
  PrimalDual(Residual& g, int source, int sink)
      : g_(g),
        n_(g.out.size()),
        s_(source),
        t_(sink),
        potential_(n_, 0),
        dist_(n_),
        level_(n_),
        iter_(n_) {}

  Count run(Count wanted) {
    Count sent = 0;
    while (sent < wanted && dijkstra()) {
      while (sent < wanted && bfs_levels()) {
        std::fill(iter_.begin(), iter_.end(), 0);
        for (;;) {
          const Count pushed = dfs(s_, wanted - sent);
          if (pushed == 0) break;
          sent += pushed;
        }
      }
    }
    return sent;
  }

 private:
  Count reduced(int from, const Residual::Edge& e) const {
    return e.cost + potential_[static_cast<std::size_t>(from)] - potential_[static_cast<std::size_t>(e.to)];
  }

  bool dijkstra() {
    std::fill(dist_.begin(), dist_.end(), kInf);
    using Item = std::pair<Count, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist_[static_cast<std::size_t>(s_)] = 0;
    heap.push({0, s_});
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d != dist_[static_cast<std::size_t>(v)]) continue;
      for (int e : g_.out[static_cast<std::size_t>(v)]) {
        const auto& edge = g_.edges[static_cast<std::size_t>(e)];
        if (edge.cap <= 0) continue;
        const Count nd = d + reduced(v, edge);
        if (nd < dist_[static_cast<std::size_t>(edge.to)]) {
          dist_[static_cast<std::size_t>(edge.to)] = nd;
          heap.push({nd, edge.to});
        }
      }
    }
    const Count dt = dist_[static_cast<std::size_t>(t_)];
    if (dt >= kInf) return false;
    for (std::size_t v = 0; v < n_; ++v) potential_[v] += std::min(dist_[v], dt);
    return true;
  }

  bool bfs_levels() {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s_)] = 0;
    q.push(s_);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int e : g_.out[static_cast<std::size_t>(v)]) {
        const auto& edge = g_.edges[static_cast<std::size_t>(e)];
        if (edge.cap > 0 && reduced(v, edge) == 0 && level_[static_cast<std::size_t>(edge.to)] < 0) {
          level_[static_cast<std::size_t>(edge.to)] = level_[static_cast<std::size_t>(v)] + 1;
          q.push(edge.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t_)] >= 0;
  }

  Count dfs(int v, Count limit) {
    if (v == t_) return limit;
    auto& it = iter_[static_cast<std::size_t>(v)];
    const auto& adj = g_.out[static_cast<std::size_t>(v)];
    for (; it < adj.size(); ++it) {
      const int e = adj[it];
      auto& edge = g_.edges[static_cast<std::size_t>(e)];
      if (edge.cap <= 0 || reduced(v, edge) != 0 ||
          level_[static_cast<std::size_t>(edge.to)] != level_[static_cast<std::size_t>(v)] + 1)
        continue;
      const Count pushed = dfs(edge.to, std::min(limit, edge.cap));
      if (pushed > 0) {
        edge.cap -= pushed;
        g_.edges[static_cast<std::size_t>(e ^ 1)].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  Residual& g_;
  std::size_t n_;
  int s_;
  int t_;
  std::vector<Count> potential_;
  std::vector<Count> dist_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

}  // namespace

FlowResult solve_min_cost_circulation(const FlowNetwork& net) {
  const int n = net.node_count();
  const int source = n;
  const int sink = n + 1;
  Residual g(n + 2);
  std::vector<Count> base(net.arc_count());
  std::vector<int> edge_of(net.arc_count());
  std::vector<Count> excess(static_cast<std::size_t>(n), 0);

  // Start every arc at the bound that makes its residual costs nonnegative:
  // lower for cost >= 0, upper for negative cost.
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    const FlowArc& arc = net.arc(a);
    const Count start = arc.cost >= 0 ? arc.lower : arc.upper;
    base[a] = start;
    excess[static_cast<std::size_t>(arc.head)] += start;
    excess[static_cast<std::size_t>(arc.tail)] -= start;
    if (arc.cost >= 0) {
      edge_of[a] = g.add(arc.tail, arc.head, arc.upper - arc.lower, arc.cost);
    } else {
      // Residual room lies on the reverse side; flow = upper - pushed.
      edge_of[a] = g.add(arc.head, arc.tail, arc.upper - arc.lower, -arc.cost);
    }
  }
  Count wanted = 0;
  for (int v = 0; v < n; ++v) {
    const Count e = excess[static_cast<std::size_t>(v)];
    if (e > 0) {
      g.add(source, v, e, 0);
      wanted += e;
    } else if (e < 0) {
      g.add(v, sink, -e, 0);
    }
  }

  PrimalDual solver(g, source, sink);
  const Count sent = solver.run(wanted);

  FlowResult result;
  if (sent != wanted) {
    result.status = FlowStatus::Infeasible;
    return result;
  }
  result.status = FlowStatus::Feasible;
  result.flow.resize(net.arc_count());
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    const FlowArc& arc = net.arc(a);
    const Count pushed = g.edges[static_cast<std::size_t>(edge_of[a]) ^ 1U].cap;
    result.flow[a] = arc.cost >= 0 ? base[a] + pushed : base[a] - pushed;
    result.total_cost += result.flow[a] * arc.cost;
  }
  return result;
}

std::vector<int> add_pwl_arc(FlowNetwork& net, int tail, int head, std::span<const PwlSegment> segments) {
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (segments[s].length <= 0) throw ValidationError("piecewise-linear segment lengths must be positive");
    if (s > 0 && segments[s].slope < segments[s - 1].slope)
      throw ValidationError("piecewise-linear cost must be convex (non-decreasing slopes)");
  }
  std::vector<int> arcs;
  arcs.reserve(segments.size());
  for (const auto& seg : segments) arcs.push_back(net.add_arc(tail, head, 0, seg.length, seg.slope));
  return arcs;
}

std::vector<int> with_node_supply_range(FlowNetwork& net, int node, Count min_supply, Count max_supply) {
  if (min_supply > max_supply) throw ValidationError("supply range must satisfy min <= max");
  const int h = net.hub();
  std::vector<int> arcs;
  if (min_supply >= 0) {
    arcs.push_back(net.add_arc(h, node, min_supply, max_supply));
  } else if (max_supply <= 0) {
    arcs.push_back(net.add_arc(node, h, -max_supply, -min_supply));
  } else {
    arcs.push_back(net.add_arc(h, node, 0, max_supply));
    arcs.push_back(net.add_arc(node, h, 0, -min_supply));
  }
  return arcs;
}

void write_dimacs(std::ostream& os, const FlowNetwork& net) {
  std::vector<Count> supply(static_cast<std::size_t>(net.node_count()), 0);
  for (const auto& arc : net.arcs()) {
    supply[static_cast<std::size_t>(arc.tail)] -= arc.lower;
    supply[static_cast<std::size_t>(arc.head)] += arc.lower;
  }
  os << "c lower bounds eliminated into node supplies\n";
  os << "p min " << net.node_count() << ' ' << net.arc_count() << '\n';
  for (int v = 0; v < net.node_count(); ++v)
    if (supply[static_cast<std::size_t>(v)] != 0) os << "n " << v + 1 << ' ' << supply[static_cast<std::size_t>(v)] << '\n';
  for (const auto& arc : net.arcs())
    os << "a " << arc.tail + 1 << ' ' << arc.head + 1 << " 0 " << arc.upper - arc.lower << ' ' << arc.cost << '\n';
}

}  // namespace ocs_toe
