#include "ocs_toe/baselines.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "ocs_toe/errors.hpp"

namespace ocs_toe {

namespace {

void require_uniform(const LogicalTopology& c, const PhysicalTopology& phys) {
  if (phys.scheme() != WiringScheme::Uniform) throw ValidationError("baseline requires Uniform wiring");
  if (c.p != phys.p() || c.c.rows() != c.p) throw DimensionError("logical and physical EGroup counts differ");
}

// One OCS's symmetric matching: pairs (i, j), i < j, and self loops.
struct SymMatching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> loops;
};

void apply(const SymMatching& m, std::size_t k, OcsConfiguration& cfg, IntMatrix& residual) {
  for (const auto& [i, j] : m.pairs) {
    cfg.x(i, j, k) += 1;
    cfg.x(j, i, k) += 1;
    residual(i, j) -= 1;
    residual(j, i) -= 1;
  }
  for (std::size_t i : m.loops) {
    cfg.x(i, i, k) += 1;
    residual(i, i) -= 1;
  }
}

class UniformSearch {
 public:
  UniformSearch(const IntMatrix& c, std::size_t ocs) : p_(c.rows()), ocs_(ocs), residual_(c), best_(c.rows(), ocs) {
    current_ = OcsConfiguration(p_, ocs_);
  }

  void run() { descend(0, 0); }
  Count best_value() const { return best_value_; }
  const OcsConfiguration& best() const { return best_; }

 private:
  // Each OCS adds at most one outgoing link per EGroup.
  Count bound(std::size_t remaining) const {
    Count b = 0;
    for (std::size_t i = 0; i < p_; ++i) {
      Count row = 0;
      for (std::size_t j = 0; j < p_; ++j) row += std::max<Count>(residual_(i, j), 0);
      b += std::min(row, static_cast<Count>(remaining));
    }
    return b;
  }

  void descend(std::size_t k, Count value) {
    if (value > best_value_) {
      best_value_ = value;
      best_ = current_;
    }
    if (k == ocs_ || value + bound(ocs_ - k) <= best_value_) return;
    std::vector<int> state(p_, 0);  // 0 free, 1 used
    SymMatching m;
    enumerate(k, 0, state, m, value);
  }

  // Enumerates matchings maximal in the residual demand graph. Some optimum
  // uses only such matchings: an edge with residual demand between two free
  // ports can always be added, pulling the link from a later OCS if needed.
  void enumerate(std::size_t k, std::size_t v, std::vector<int>& state, SymMatching& m, Count value) {
    while (v < p_ && state[v]) ++v;
    if (v == p_) {
      if (!is_maximal(state)) return;
      if (m.pairs.empty() && m.loops.empty()) {
        // Nothing left to realize anywhere.
        return;
      }
      apply(m, k, current_, residual_);
      descend(k + 1, value + 2 * static_cast<Count>(m.pairs.size()) + static_cast<Count>(m.loops.size()));
      undo(m, k);
      return;
    }
    state[v] = 1;
    for (std::size_t w = v + 1; w < p_; ++w) {
      if (state[w] || residual_(v, w) <= 0) continue;
      state[w] = 1;
      m.pairs.emplace_back(v, w);
      enumerate(k, v + 1, state, m, value);
      m.pairs.pop_back();
      state[w] = 0;
    }
    if (residual_(v, v) > 0) {
      m.loops.push_back(v);
      enumerate(k, v + 1, state, m, value);
      m.loops.pop_back();
    }
    // leave v idle on this OCS
    state[v] = 2;
    enumerate(k, v + 1, state, m, value);
    state[v] = 0;
  }

  bool is_maximal(const std::vector<int>& state) const {
    for (std::size_t v = 0; v < p_; ++v) {
      if (state[v] != 2) continue;
      if (residual_(v, v) > 0) return false;
      for (std::size_t w = v + 1; w < p_; ++w)
        if (state[w] == 2 && residual_(v, w) > 0) return false;
    }
    return true;
  }

  void undo(const SymMatching& m, std::size_t k) {
    for (const auto& [i, j] : m.pairs) {
      current_.x(i, j, k) -= 1;
      current_.x(j, i, k) -= 1;
      residual_(i, j) += 1;
      residual_(j, i) += 1;
    }
    for (std::size_t i : m.loops) {
      current_.x(i, i, k) -= 1;
      residual_(i, i) += 1;
    }
  }

  std::size_t p_;
  std::size_t ocs_;
  IntMatrix residual_;
  OcsConfiguration current_;
  OcsConfiguration best_;
  Count best_value_ = 0;
};

}  // namespace

UniformExactResult uniform_exact_small(const LogicalTopology& c, const PhysicalTopology& phys) {
  require_uniform(c, phys);
  if (c.p > kUniformExactMaxP || phys.k_egroup() > kUniformExactMaxK)
    throw SizeGuardError("uniform_exact_small is limited to P <= 6 and K <= 6; use uniform-heuristic or helios");
  if (!c.c.is_symmetric()) throw ValidationError("logical topology must be symmetric");
  UniformSearch search(c.c, phys.num_ocs());
  search.run();
  return {search.best(), search.best_value()};
}

// Edmonds' blossom algorithm, BFS form.
std::vector<int> max_cardinality_matching(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                                          const std::vector<std::pair<int, int>>& initial) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges) {
    if (a == b) continue;
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<int> mate(n, -1);
  for (const auto& [a, b] : initial) {
    if (mate[static_cast<std::size_t>(a)] != -1 || mate[static_cast<std::size_t>(b)] != -1)
      throw ValidationError("initial matching reuses a vertex");
    mate[static_cast<std::size_t>(a)] = b;
    mate[static_cast<std::size_t>(b)] = a;
  }
  std::vector<int> parent(n);
  std::vector<int> base(n);
  std::vector<char> used(n);
  std::vector<char> blossom(n);

  auto lca = [&](int a, int b) {
    std::vector<char> seen(n, 0);
    for (;;) {
      a = base[static_cast<std::size_t>(a)];
      seen[static_cast<std::size_t>(a)] = 1;
      if (mate[static_cast<std::size_t>(a)] == -1) break;
      a = parent[static_cast<std::size_t>(mate[static_cast<std::size_t>(a)])];
    }
    for (;;) {
      b = base[static_cast<std::size_t>(b)];
      if (seen[static_cast<std::size_t>(b)]) return b;
      b = parent[static_cast<std::size_t>(mate[static_cast<std::size_t>(b)])];
    }
  };
  auto mark_path = [&](int v, int b, int child) {
    while (base[static_cast<std::size_t>(v)] != b) {
      const int m = mate[static_cast<std::size_t>(v)];
      blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(v)])] = 1;
      blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(m)])] = 1;
      parent[static_cast<std::size_t>(v)] = child;
      child = m;
      v = parent[static_cast<std::size_t>(m)];
    }
  };
  auto find_path = [&](int root) -> int {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    std::iota(base.begin(), base.end(), 0);
    used[static_cast<std::size_t>(root)] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int to : adj[static_cast<std::size_t>(v)]) {
        if (base[static_cast<std::size_t>(v)] == base[static_cast<std::size_t>(to)] ||
            mate[static_cast<std::size_t>(v)] == to)
          continue;
        if (to == root ||
            (mate[static_cast<std::size_t>(to)] != -1 &&
             parent[static_cast<std::size_t>(mate[static_cast<std::size_t>(to)])] != -1)) {
          const int cur = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (std::size_t i = 0; i < n; ++i) {
            if (blossom[static_cast<std::size_t>(base[i])]) {
              base[i] = cur;
              if (!used[i]) {
                used[i] = 1;
                q.push(static_cast<int>(i));
              }
            }
          }
        } else if (parent[static_cast<std::size_t>(to)] == -1) {
          parent[static_cast<std::size_t>(to)] = v;
          if (mate[static_cast<std::size_t>(to)] == -1) return to;
          used[static_cast<std::size_t>(mate[static_cast<std::size_t>(to)])] = 1;
          q.push(mate[static_cast<std::size_t>(to)]);
        }
      }
    }
    return -1;
  };

  for (std::size_t v = 0; v < n; ++v) {
    if (mate[v] != -1) continue;
    int end = find_path(static_cast<int>(v));
    while (end != -1) {
      const int pv = parent[static_cast<std::size_t>(end)];
      const int next = mate[static_cast<std::size_t>(pv)];
      mate[static_cast<std::size_t>(end)] = pv;
      mate[static_cast<std::size_t>(pv)] = end;
      end = next;
    }
  }
  return mate;
}

OcsConfiguration uniform_bvn_heuristic(const LogicalTopology& c, const PhysicalTopology& phys) {
  require_uniform(c, phys);
  const std::size_t p = c.p;
  IntMatrix residual = c.c;
  OcsConfiguration cfg(p, phys.num_ocs());
  for (std::size_t k = 0; k < phys.num_ocs(); ++k) {
    struct Weighted {
      Count w;
      int a;
      int b;
    };
    std::vector<Weighted> cand;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j)
        if (residual(i, j) > 0 && residual(j, i) > 0)
          cand.push_back({std::min(residual(i, j), residual(j, i)), static_cast<int>(i), static_cast<int>(j)});
    std::stable_sort(cand.begin(), cand.end(), [](const Weighted& x, const Weighted& y) { return x.w > y.w; });
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> seed;
    std::vector<char> taken(p, 0);
    for (const auto& e : cand) {
      edges.emplace_back(e.a, e.b);
      if (!taken[static_cast<std::size_t>(e.a)] && !taken[static_cast<std::size_t>(e.b)]) {
        taken[static_cast<std::size_t>(e.a)] = taken[static_cast<std::size_t>(e.b)] = 1;
        seed.emplace_back(e.a, e.b);
      }
    }
    const std::vector<int> mate = max_cardinality_matching(p, edges, seed);
    SymMatching m;
    for (std::size_t i = 0; i < p; ++i) {
      if (mate[i] > static_cast<int>(i)) m.pairs.emplace_back(i, static_cast<std::size_t>(mate[i]));
      if (mate[i] == -1 && residual(i, i) > 0) m.loops.push_back(i);
    }
    if (m.pairs.empty() && m.loops.empty()) break;
    apply(m, k, cfg, residual);
  }
  return cfg;
}

// Kuhn-Munkres with potentials on cost = max_weight - weight.
std::vector<int> max_weight_assignment(const IntMatrix& weight) {
  const std::size_t n = weight.rows();
  if (!weight.is_square()) throw DimensionError("assignment matrix must be square");
  const Count top = weight.max_entry();
  constexpr Count kInf = std::numeric_limits<Count>::max() / 4;
  std::vector<Count> u(n + 1, 0);
  std::vector<Count> v(n + 1, 0);
  std::vector<std::size_t> col_owner(n + 1, 0);
  std::vector<std::size_t> way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    col_owner[0] = row;
    std::size_t j0 = 0;
    std::vector<Count> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = col_owner[j0];
      Count delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Count cur = (top - weight(i0 - 1, j - 1)) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[col_owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      col_owner[j0] = col_owner[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> assign(n, -1);
  for (std::size_t j = 1; j <= n; ++j)
    if (col_owner[j]) assign[col_owner[j] - 1] = static_cast<int>(j - 1);
  return assign;
}

OcsConfiguration helios_matching(const LogicalTopology& c, const PhysicalTopology& phys) {
  require_uniform(c, phys);
  const std::size_t p = c.p;
  IntMatrix residual = c.c;
  OcsConfiguration cfg(p, phys.num_ocs());
  for (std::size_t k = 0; k < phys.num_ocs(); ++k) {
    IntMatrix w = IntMatrix::square(p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) w(i, j) = std::max<Count>(residual(i, j), 0);
    if (w.total() == 0) break;
    const std::vector<int> assign = max_weight_assignment(w);
    // Keep only links that can be paired with their reverse on this OCS.
    SymMatching m;
    std::vector<char> used(p, 0);
    for (std::size_t i = 0; i < p; ++i) {
      const auto j = static_cast<std::size_t>(assign[i]);
      if (used[i] || used[j] || w(i, j) <= 0) continue;
      if (i == j) {
        m.loops.push_back(i);
        used[i] = 1;
      } else if (w(j, i) > 0) {
        m.pairs.emplace_back(std::min(i, j), std::max(i, j));
        used[i] = used[j] = 1;
      }
    }
    apply(m, k, cfg, residual);
  }
  return cfg;
}

namespace {

class RewiringEnumerator {
 public:
  RewiringEnumerator(const IntMatrix& a, const CountTensor& u, const IntMatrix& caps)
      : a_(a), u_(u), caps_(caps), p_(a.rows()), h_(u.layers()), row_(p_ * h_, 0), col_(p_ * h_, 0) {
    // Cheapest composition per entry ignoring caps; suffix sums give a bound.
    suffix_.assign(p_ * p_ + 1, 0);
    for (std::size_t e = p_ * p_; e-- > 0;) {
      Count best = std::numeric_limits<Count>::max();
      std::vector<Count> parts(h_, 0);
      cheapest(e, 0, a_(e / p_, e % p_), parts, best);
      suffix_[e] = suffix_[e + 1] + best;
    }
  }

  Count solve() {
    visit(0, 0);
    return best_;
  }

 private:
  Count entry_cost(std::size_t e, const std::vector<Count>& parts) const {
    Count c = 0;
    for (std::size_t k = 0; k < h_; ++k) c += std::llabs(parts[k] - u_(e / p_, e % p_, k));
    return c;
  }

  void cheapest(std::size_t e, std::size_t k, Count left, std::vector<Count>& parts, Count& best) const {
    if (k + 1 == h_) {
      parts[k] = left;
      best = std::min(best, entry_cost(e, parts));
      return;
    }
    for (Count v = 0; v <= left; ++v) {
      parts[k] = v;
      cheapest(e, k + 1, left - v, parts, best);
    }
  }

  void visit(std::size_t e, Count cost) {
    if (cost + suffix_[e] >= best_) return;
    if (e == p_ * p_) {
      best_ = cost;
      return;
    }
    compose(e, 0, a_(e / p_, e % p_), cost);
  }

  void compose(std::size_t e, std::size_t k, Count left, Count cost) {
    const std::size_t i = e / p_;
    const std::size_t j = e % p_;
    const Count lo = k + 1 == h_ ? left : 0;
    for (Count v = lo; v <= left; ++v) {
      if (row_[i * h_ + k] + v > caps_(i, k) || col_[j * h_ + k] + v > caps_(j, k)) break;
      row_[i * h_ + k] += v;
      col_[j * h_ + k] += v;
      const Count step = std::llabs(v - u_(i, j, k));
      if (k + 1 == h_) {
        visit(e + 1, cost + step);
      } else {
        compose(e, k + 1, left - v, cost + step);
      }
      row_[i * h_ + k] -= v;
      col_[j * h_ + k] -= v;
    }
  }

  const IntMatrix& a_;
  const CountTensor& u_;
  const IntMatrix& caps_;
  std::size_t p_;
  std::size_t h_;
  std::vector<Count> row_;
  std::vector<Count> col_;
  std::vector<Count> suffix_;
  Count best_ = std::numeric_limits<Count>::max();
};

}  // namespace

Count brute_force_min_rewiring(const IntMatrix& a, const CountTensor& u, const IntMatrix& caps) {
  const std::size_t p = a.rows();
  if (!a.is_square() || u.p() != p || caps.rows() != p || caps.cols() != u.layers())
    throw DimensionError("rewiring instance shapes disagree");
  if (p > kBruteForceMaxP || u.layers() > kBruteForceMaxGroups || a.max_entry() > kBruteForceMaxEntry)
    throw SizeGuardError("brute_force_min_rewiring is limited to P <= 4, groups <= 3, entries <= 2");
  if (u.layers() == 0) throw ValidationError("at least one OCS group is required");
  RewiringEnumerator search(a, u, caps);
  const Count best = search.solve();
  if (best == std::numeric_limits<Count>::max()) throw InfeasibleError("no feasible configuration exists");
  return best;
}

}  // namespace ocs_toe
