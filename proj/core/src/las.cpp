#include "dwrosn/las.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <random>

#include "dwrosn/parallel.hpp"

namespace dwrosn {

ShortestPaths shortest_paths(const TopologySnapshot& snapshot) {
  const int n = static_cast<int>(snapshot.size());
  ShortestPaths sp{HopMatrix(snapshot.size(), n), PathCountMatrix(snapshot.size(), 0)};
  std::vector<int> queue(snapshot.size());
  for (int src = 0; src < n; ++src) {
    auto hops = sp.hops.row(src);
    auto counts = sp.counts.row(src);
    hops[src] = 0;
    counts[src] = 1;
    std::size_t head = 0;
    std::size_t tail = 0;
    queue[tail++] = src;
    // Nodes leave the queue in depth order, so counts[u] is final when u is popped.
    while (head < tail) {
      const int u = queue[head++];
      for (int v : snapshot.neighbors(u)) {
        if (hops[v] == n) {
          hops[v] = hops[u] + 1;
          counts[v] = counts[u];
          queue[tail++] = v;
        } else if (hops[v] == hops[u] + 1) {
          counts[v] += counts[u];
        }
      }
    }
  }
  return sp;
}

HopMatrix hop_matrix(const TopologySnapshot& snapshot) { return shortest_paths(snapshot).hops; }

PathCountMatrix shortest_path_counts(const TopologySnapshot& snapshot) {
  return shortest_paths(snapshot).counts;
}

namespace {

__extension__ using Wide = __int128;

bool scoreable(const TopologySnapshot& snapshot, const BoolMatrix& potential, int i, int j) {
  return potential(i, j) && !snapshot.has_edge(i, j) && snapshot.free_terminals(i) > 0 &&
         snapshot.free_terminals(j) > 0;
}

}  // namespace

ImportanceMatrices compute_importance(const TopologySnapshot& snapshot, const BoolMatrix& potential) {
  const int n = static_cast<int>(snapshot.size());
  if (potential.size() != snapshot.size()) throw std::invalid_argument("potential matrix size mismatch");

  const ShortestPaths sp = shortest_paths(snapshot);
  const int unreachable = sp.unreachable();

  // Unreachable pairs map to kFar; any route through one stays >= kFar.
  constexpr int kFar = 1 << 28;
  SquareMatrix<int> far(snapshot.size());
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) far(k, m) = sp.hops(k, m) == unreachable ? kFar : sp.hops(k, m);

  ImportanceMatrices out{SquareMatrix<std::int64_t>(snapshot.size(), 0),
                         SquareMatrix<std::int64_t>(snapshot.size(), 0), {}, 0, 0, BoolMatrix(snapshot.size())};

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!scoreable(snapshot, potential, i, j)) continue;
      const int* hi = far.row(i).data();
      const int* hj = far.row(j).data();
      const std::int64_t* ci = sp.counts.row(i).data();
      const std::int64_t* cj = sp.counts.row(j).data();
      std::int64_t a = 0;
      std::int64_t b = 0;
      // Unordered pairs k < m; symmetry doubles both sums at the end.
      for (int k = 0; k < n; ++k) {
        const int* hk = far.row(k).data();
        const int hki = hi[k];
        const int hkj = hj[k];
        const std::int64_t cki = ci[k];
        const std::int64_t ckj = cj[k];
        for (int m = k + 1; m < n; ++m) {
          const int before = hk[m];
          const int via_ij = hki + 1 + hj[m];
          const int via_ji = hkj + 1 + hi[m];
          const int after = std::min(before, std::min(via_ij, via_ji));
          if (after < before) {
            a += (before >= kFar ? unreachable : before) - after;
          } else if (before < kFar) {
            if (via_ij == before) b += cki * cj[m];
            if (via_ji == before) b += ckj * ci[m];
          }
        }
      }
      out.joins(i, j) = out.joins(j, i) = sp.hops(i, j) == unreachable;
      out.a(i, j) = out.a(j, i) = 2 * a;
      out.b(i, j) = out.b(j, i) = 2 * b;
      out.max_a = std::max(out.max_a, 2 * a);
      out.max_b = std::max(out.max_b, 2 * b);
    }
  }
  out.c = combine_importance(out.a, out.b);
  return out;
}

SquareMatrix<std::int64_t> importance_a(const TopologySnapshot& snapshot, const BoolMatrix& potential) {
  return compute_importance(snapshot, potential).a;
}

SquareMatrix<std::int64_t> importance_b(const TopologySnapshot& snapshot, const BoolMatrix& potential) {
  return compute_importance(snapshot, potential).b;
}

SquareMatrix<double> combine_importance(const SquareMatrix<std::int64_t>& a,
                                        const SquareMatrix<std::int64_t>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("importance matrices differ in size");
  const std::int64_t max_a = a.data().empty() ? 0 : *std::max_element(a.data().begin(), a.data().end());
  const std::int64_t max_b = b.data().empty() ? 0 : *std::max_element(b.data().begin(), b.data().end());
  SquareMatrix<double> c(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      double v = 0.0;
      if (max_a > 0) v += static_cast<double>(a(i, j)) / static_cast<double>(max_a);
      if (max_b > 0) v += static_cast<double>(b(i, j)) / static_cast<double>(max_b);
      c(i, j) = v;
    }
  }
  return c;
}

std::vector<int> node_visibility(const BoolMatrix& potential) {
  std::vector<int> nvc(potential.size(), 0);
  for (std::size_t i = 0; i < potential.size(); ++i)
    for (std::uint8_t v : potential.row(i)) nvc[i] += v;
  return nvc;
}

std::vector<Edge> tie_break_candidates(const ImportanceMatrices& importance, const BoolMatrix& potential) {
  const int n = static_cast<int>(potential.size());
  // c * max_a * max_b as an exact integer.
  const Wide scale_a = importance.max_b > 0 ? importance.max_b : 1;
  const Wide scale_b = importance.max_a > 0 ? importance.max_a : 1;
  auto score = [&](int i, int j) -> Wide {
    // Edges joining two components outrank every finite score.
    if (importance.joins(i, j)) return Wide(1) << 120;
    Wide s = 0;
    if (importance.max_a > 0) s += static_cast<Wide>(importance.a(i, j)) * scale_a;
    if (importance.max_b > 0) s += static_cast<Wide>(importance.b(i, j)) * scale_b;
    return s;
  };

  std::vector<Edge> best;
  Wide best_score = -1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!potential(i, j)) continue;
      const Wide s = score(i, j);
      if (s > best_score) {
        best_score = s;
        best.clear();
      }
      if (s == best_score) best.push_back({i, j});
    }
  }
  if (best.size() <= 1) return best;

  const std::vector<int> nvc = node_visibility(potential);
  int min_ivc = std::numeric_limits<int>::max();
  for (const auto& [i, j] : best) min_ivc = std::min(min_ivc, std::min(nvc[i], nvc[j]));
  std::erase_if(best, [&](const Edge& e) { return std::min(nvc[e[0]], nvc[e[1]]) != min_ivc; });
  return best;
}

Edge tie_break_select(const ImportanceMatrices& importance, const BoolMatrix& potential, Rng& rng) {
  const std::vector<Edge> candidates = tie_break_candidates(importance, potential);
  if (candidates.empty()) throw std::domain_error("no potential edge left to select");
  if (candidates.size() == 1) return candidates.front();
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  return candidates[pick(rng)];
}

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kPeim: return "peim";
    case Scheme::kAct: return "act";
    case Scheme::kGreedy: return "greedy";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "peim" || name == "PEIM") return Scheme::kPeim;
  if (name == "act" || name == "ACT") return Scheme::kAct;
  if (name == "greedy" || name == "GREEDY" || name == "Greedy") return Scheme::kGreedy;
  return std::nullopt;
}

namespace {

void check_inputs(const PotentialLinkMatrix& potential, const NodeSet& nodes) {
  nodes.validate();
  if (potential.size() != nodes.size()) throw std::invalid_argument("potential matrix / node set size mismatch");
}

std::vector<Edge> potential_edges(const PotentialLinkMatrix& potential) {
  std::vector<Edge> edges;
  const int n = static_cast<int>(potential.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (potential.links(i, j)) edges.push_back({i, j});
  return edges;
}

void drop_infeasible(std::vector<Edge>& edges, const TopologySnapshot& snap) {
  std::erase_if(edges, [&](const Edge& e) {
    return snap.has_edge(e[0], e[1]) || snap.free_terminals(e[0]) == 0 || snap.free_terminals(e[1]) == 0;
  });
}

}  // namespace

namespace {

// While some candidate joins two components only those candidates can win,
// so the full importance sweep is skipped.
std::optional<ImportanceMatrices> joining_edges(const TopologySnapshot& snapshot, const BoolMatrix& potential) {
  const int n = static_cast<int>(snapshot.size());
  std::vector<int> component(snapshot.size(), -1);
  std::vector<int> queue;
  for (int s = 0, label = 0; s < n; ++s, ++label) {
    if (component[s] >= 0) continue;
    component[s] = label;
    queue.assign(1, s);
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (int v : snapshot.neighbors(queue[q]))
        if (component[v] < 0) {
          component[v] = label;
          queue.push_back(v);
        }
  }
  ImportanceMatrices out{SquareMatrix<std::int64_t>(snapshot.size(), 0), SquareMatrix<std::int64_t>(snapshot.size(), 0),
                         SquareMatrix<double>(snapshot.size(), 0.0), 0, 0, BoolMatrix(snapshot.size())};
  bool any = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (component[i] != component[j] && scoreable(snapshot, potential, i, j)) {
        out.joins(i, j) = out.joins(j, i) = 1;
        any = true;
      }
  if (!any) return std::nullopt;
  return out;
}

}  // namespace

TopologySnapshot peim_assign(const PotentialLinkMatrix& potential, const NodeSet& nodes, Rng& rng) {
  check_inputs(potential, nodes);
  TopologySnapshot snap(nodes.degree, potential.slot_start, potential.slot_length);
  BoolMatrix working = potential.links;
  const int n = static_cast<int>(nodes.size());
  std::size_t remaining = potential.link_count();

  auto clear = [&](int i, int j) {
    if (working(i, j)) {
      working(i, j) = working(j, i) = 0;
      --remaining;
    }
  };

  while (remaining > 0) {
    std::optional<ImportanceMatrices> joining = joining_edges(snap, working);
    const ImportanceMatrices importance = joining ? std::move(*joining) : compute_importance(snap, working);
    const auto [i, j] = tie_break_select(importance, working, rng);
    snap.add_edge(i, j);
    clear(i, j);
    for (int v : {i, j}) {
      if (snap.free_terminals(v) == 0) {
        for (int k = 0; k < n; ++k) clear(v, k);
      }
    }
  }
  return snap;
}

TopologySnapshot act_assign(const PotentialLinkMatrix& potential, const NodeSet& nodes, Rng& rng) {
  check_inputs(potential, nodes);
  TopologySnapshot snap(nodes.degree, potential.slot_start, potential.slot_length);
  std::vector<Edge> edges = potential_edges(potential);
  for (;;) {
    drop_infeasible(edges, snap);
    if (edges.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    const std::size_t k = pick(rng);
    snap.add_edge(edges[k][0], edges[k][1]);
    edges[k] = edges.back();
    edges.pop_back();
  }
  return snap;
}

TopologySnapshot greedy_assign(const PotentialLinkMatrix& potential, const NodeSet& nodes, Rng& rng) {
  check_inputs(potential, nodes);
  TopologySnapshot snap(nodes.degree, potential.slot_start, potential.slot_length);
  std::vector<Edge> edges = potential_edges(potential);
  const bool has_length = potential.length_km.size() == potential.size();
  // Most free terminals first, then the shortest link.
  auto key = [&](const Edge& e) {
    const int terminals = snap.free_terminals(e[0]) + snap.free_terminals(e[1]);
    return std::pair{terminals, has_length ? -potential.length_km(e[0], e[1]) : 0.0};
  };
  std::vector<std::size_t> best;
  for (;;) {
    drop_infeasible(edges, snap);
    if (edges.empty()) break;
    std::pair<int, double> best_key{-1, 0.0};
    best.clear();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto s = key(edges[k]);
      if (s > best_key) {
        best_key = s;
        best.clear();
      }
      if (s == best_key) best.push_back(k);
    }
    std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
    const std::size_t k = best[pick(rng)];
    snap.add_edge(edges[k][0], edges[k][1]);
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return snap;
}

TopologySnapshot assign(Scheme scheme, const PotentialLinkMatrix& potential, const NodeSet& nodes, Rng& rng) {
  switch (scheme) {
    case Scheme::kPeim: return peim_assign(potential, nodes, rng);
    case Scheme::kAct: return act_assign(potential, nodes, rng);
    case Scheme::kGreedy: return greedy_assign(potential, nodes, rng);
  }
  throw std::invalid_argument("unknown scheme");
}

double average_hops(const HopMatrix& hops) {
  const std::size_t n = hops.size();
  if (n < 2) throw std::domain_error("average distance needs at least two nodes");
  const int unreachable = static_cast<int>(n);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (hops(i, j) >= unreachable) throw std::domain_error("average distance of a disconnected topology");
      total += hops(i, j);
    }
  }
  return static_cast<double>(total) / static_cast<double>(n * (n - 1));
}

double CandidatePool::min_hbar() const { return *std::min_element(hbar.begin(), hbar.end()); }
double CandidatePool::max_hbar() const { return *std::max_element(hbar.begin(), hbar.end()); }

CandidatePool generate_and_select(Scheme scheme, const PotentialLinkMatrix& potential,
                                  const NodeSet& nodes, const PoolOptions& options,
                                  std::uint64_t stream_seed) {
  if (options.count < 1) throw std::invalid_argument("candidate count must be >= 1");
  const auto count = static_cast<std::size_t>(options.count);
  const int max_attempts = 10 * options.count;

  CandidatePool pool;
  pool.candidates.resize(count);
  pool.hbar.resize(count);
  pool.attempts.resize(count);

  parallel_for(
      count,
      [&](std::size_t i) {
        Rng rng(derive_seed({stream_seed, i}));
        for (int attempt = 1; attempt <= max_attempts; ++attempt) {
          TopologySnapshot snap = assign(scheme, potential, nodes, rng);
          if (is_connected(snap)) {
            pool.hbar[i] = average_hops(hop_matrix(snap));
            pool.candidates[i] = std::move(snap);
            pool.attempts[i] = attempt;
            return;
          }
        }
        throw InfeasibleAssignment(std::string(scheme_name(scheme)) + ": no connected topology after " +
                                   std::to_string(max_attempts) + " attempts for candidate " +
                                   std::to_string(i));
      },
      options.threads);

  pool.selected = static_cast<std::size_t>(
      std::min_element(pool.hbar.begin(), pool.hbar.end()) - pool.hbar.begin());
  return pool;
}

CandidatePool generate_and_select(Scheme scheme, const PotentialLinkMatrix& potential,
                                  const NodeSet& nodes, const PoolOptions& options, Rng& rng) {
  return generate_and_select(scheme, potential, nodes, options, rng());
}

}  // namespace dwrosn
