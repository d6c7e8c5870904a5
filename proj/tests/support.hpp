#pragma once

// Graph builders and brute-force oracles shared by the unit, property and
// acceptance tests.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dwrosn/las.hpp"
#include "dwrosn/matrix.hpp"
#include "dwrosn/rng.hpp"
#include "dwrosn/rwa.hpp"
#include "dwrosn/topology.hpp"

namespace dwrosn::testing {

using EdgeList = std::vector<std::array<int, 2>>;

inline TopologySnapshot make_snapshot(int n, const EdgeList& edges, int degree = 0) {
  const int d = degree > 0 ? degree : std::max(1, n - 1);
  TopologySnapshot snap(std::vector<int>(static_cast<std::size_t>(n), d), 0.0, 2000.0);
  for (const auto& [i, j] : edges) snap.add_edge(i, j);
  return snap;
}

inline BoolMatrix complete_potential(int n) {
  BoolMatrix m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m(i, j) = 1;
  return m;
}

inline PotentialLinkMatrix potential_from(const BoolMatrix& links) { return PotentialLinkMatrix{links, 0.0, 2000.0, {}}; }

inline NodeSet uniform_nodes(int n, int degree) {
  NodeSet nodes;
  for (int i = 0; i < n; ++i) nodes.nodes.push_back(SatelliteId{Layer::kLeo, 0, i, i});
  nodes.degree.assign(static_cast<std::size_t>(n), degree);
  return nodes;
}

// Erdos-Renyi graph with edge probability p.
inline EdgeList random_edges(int n, double p, Rng& rng) {
  std::bernoulli_distribution keep(p);
  EdgeList edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (keep(rng)) edges.push_back({i, j});
  return edges;
}

inline BoolMatrix random_symmetric(int n, double p, Rng& rng) {
  BoolMatrix m(static_cast<std::size_t>(n));
  for (const auto& [i, j] : random_edges(n, p, rng)) m(i, j) = m(j, i) = 1;
  return m;
}

// Floyd-Warshall with unreachable = n.
inline SquareMatrix<int> floyd_warshall(const TopologySnapshot& snap) {
  const int n = static_cast<int>(snap.size());
  const int inf = 1 << 20;
  SquareMatrix<int> d(snap.size(), inf);
  for (int i = 0; i < n; ++i) {
    d(i, i) = 0;
    for (int j : snap.neighbors(i)) d(i, j) = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  for (int i = 0; i < n; ++i)
    for (int& v : d.row(i))
      if (v >= inf) v = n;
  return d;
}

// Every simple path from s to d, by depth-first search.
inline std::vector<Path> all_simple_paths(const TopologySnapshot& snap, int s, int d) {
  std::vector<Path> out;
  Path current{s};
  std::vector<std::uint8_t> on_path(snap.size(), 0);
  on_path[s] = 1;
  std::function<void(int)> dfs = [&](int u) {
    if (u == d) {
      out.push_back(current);
      return;
    }
    for (int v : snap.neighbors(u)) {
      if (on_path[v]) continue;
      on_path[v] = 1;
      current.push_back(v);
      dfs(v);
      current.pop_back();
      on_path[v] = 0;
    }
  };
  dfs(s);
  return out;
}

// Number of minimum-hop paths per pair by exhaustive enumeration; 1 on the
// diagonal, 0 for unreachable pairs.
inline SquareMatrix<std::int64_t> enumerated_path_counts(const TopologySnapshot& snap) {
  const int n = static_cast<int>(snap.size());
  SquareMatrix<std::int64_t> k(snap.size(), 0);
  for (int s = 0; s < n; ++s) {
    k(s, s) = 1;
    for (int d = 0; d < n; ++d) {
      if (d == s) continue;
      const std::vector<Path> paths = all_simple_paths(snap, s, d);
      if (paths.empty()) continue;
      std::size_t best = paths.front().size();
      for (const Path& p : paths) best = std::min(best, p.size());
      k(s, d) = std::count_if(paths.begin(), paths.end(), [&](const Path& p) { return p.size() == best; });
    }
  }
  return k;
}

// Path counts from the Floyd-Warshall distances: K(s,d) sums K(s,w) over
// neighbours w of d one hop closer to s.
inline SquareMatrix<std::int64_t> dp_path_counts(const TopologySnapshot& snap, const SquareMatrix<int>& h) {
  const int n = static_cast<int>(snap.size());
  SquareMatrix<std::int64_t> k(snap.size(), 0);
  for (int s = 0; s < n; ++s) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return h(s, a) < h(s, b); });
    k(s, s) = 1;
    for (int d : order) {
      if (d == s || h(s, d) >= n) continue;
      for (int w : snap.neighbors(d))
        if (h(s, w) + 1 == h(s, d)) k(s, d) += k(s, w);
    }
  }
  return k;
}

struct BruteImportance {
  SquareMatrix<std::int64_t> a;
  SquareMatrix<std::int64_t> b;
};

// Full recomputation with each candidate edge added; ordered pairs, sentinel n.
inline BruteImportance brute_importance(const TopologySnapshot& snap, const BoolMatrix& potential) {
  const int n = static_cast<int>(snap.size());
  BruteImportance out{SquareMatrix<std::int64_t>(snap.size(), 0), SquareMatrix<std::int64_t>(snap.size(), 0)};
  const SquareMatrix<int> h0 = floyd_warshall(snap);
  const SquareMatrix<std::int64_t> k0 = dp_path_counts(snap, h0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!potential(i, j) || snap.has_edge(i, j) || snap.free_terminals(i) == 0 || snap.free_terminals(j) == 0)
        continue;
      TopologySnapshot next = snap;
      next.add_edge(i, j);
      const SquareMatrix<int> h1 = floyd_warshall(next);
      const SquareMatrix<std::int64_t> k1 = dp_path_counts(next, h1);
      std::int64_t a = 0;
      std::int64_t b = 0;
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          if (k == m) continue;
          a += h0(k, m) - h1(k, m);
          if (h0(k, m) == h1(k, m)) b += k1(k, m) - k0(k, m);
        }
      out.a(i, j) = out.a(j, i) = a;
      out.b(i, j) = out.b(j, i) = b;
    }
  }
  return out;
}

// Exhaustive simple paths within max_hops sorted by (hops, delay, nodes).
inline std::vector<Path> sorted_simple_paths(const TopologySnapshot& snap, const SquareMatrix<double>& delay, int s,
                                             int d, int max_hops, double per_hop_ms) {
  std::vector<Path> paths = all_simple_paths(snap, s, d);
  std::erase_if(paths, [&](const Path& p) { return path_hops(p) > max_hops; });
  std::sort(paths.begin(), paths.end(), [&](const Path& x, const Path& y) {
    const PathCost cx = path_cost(x, delay, per_hop_ms);
    const PathCost cy = path_cost(y, delay, per_hop_ms);
    if (cx != cy) return cx < cy;
    return x < y;
  });
  return paths;
}

// Random positive delays on the established links, distinct with probability 1.
inline SquareMatrix<double> random_link_delay(const TopologySnapshot& snap, Rng& rng) {
  std::uniform_real_distribution<double> u(1.0, 50.0);
  SquareMatrix<double> delay(snap.size(), 0.0);
  for (const auto& [i, j] : snap.edge_list()) delay(i, j) = delay(j, i) = u(rng);
  return delay;
}

// Channel exclusivity, continuity and hop bound of an RWA result.
struct RwaCheck {
  bool ok = true;
  std::string message;
};

inline RwaCheck check_rwa_invariants(const TopologySnapshot& snap, const RwaResult& result, int max_hops) {
  std::set<std::tuple<int, int, int>> used;
  const std::size_t n = snap.size();
  if (result.assignments.size() + result.unserved.size() != n * (n - 1) / 2)
    return {false, "served + unserved does not partition the request set"};
  for (const RouteAssignment& a : result.assignments) {
    const Path& p = a.path;
    if (p.size() < 2 || p.front() != a.request.source || p.back() != a.request.destination)
      return {false, "path endpoints do not match the request"};
    if (path_hops(p) > max_hops || a.hops != path_hops(p)) return {false, "hop bound violated"};
    if (a.wavelength < 1 || a.wavelength > result.n_lambda) return {false, "wavelength out of range"};
    std::set<int> seen(p.begin(), p.end());
    if (seen.size() != p.size()) return {false, "path is not simple"};
    for (std::size_t k = 1; k < p.size(); ++k) {
      const int u = std::min(p[k - 1], p[k]);
      const int v = std::max(p[k - 1], p[k]);
      if (!snap.has_edge(u, v)) return {false, "path uses a missing link"};
      if (!used.insert({u, v, a.wavelength}).second) return {false, "channel used twice"};
    }
  }
  return {};
}

}  // namespace dwrosn::testing
