#include "dwrosn/rwa.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <set>
#include <stdexcept>

#include "dwrosn/metrics.hpp"
#include "dwrosn/parallel.hpp"

namespace dwrosn {

namespace {

double propagation_ms(const Vec3& a, const Vec3& b) { return (b - a).norm() / kSpeedOfLightKmPerS * 1000.0; }

double propagation_ms(const Path& path, const std::vector<Vec3>& pos) {
  double total = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k)
    total += propagation_ms(pos[static_cast<std::size_t>(path[k - 1])], pos[static_cast<std::size_t>(path[k])]);
  return total;
}

}  // namespace

SquareMatrix<double> link_delay_ms(const TopologySnapshot& snapshot, const ConstellationSpec& spec, double tau) {
  if (static_cast<int>(snapshot.size()) != spec.node_count())
    throw std::invalid_argument("snapshot does not cover the constellation");
  const std::vector<Vec3> pos = positions_at(spec, tau);
  SquareMatrix<double> delay(snapshot.size(), 0.0);
  for (const auto& [i, j] : snapshot.edge_list()) delay(i, j) = delay(j, i) = propagation_ms(pos[i], pos[j]);
  return delay;
}

PathCost path_cost(const Path& path, const SquareMatrix<double>& link_delay, double per_hop_ms) {
  PathCost cost;
  for (std::size_t k = 1; k < path.size(); ++k) {
    cost.hops += 1;
    cost.delay_ms += link_delay(static_cast<std::size_t>(path[k - 1]), static_cast<std::size_t>(path[k])) + per_hop_ms;
  }
  return cost;
}

double path_delay(const Path& path, const ConstellationSpec& spec, double tau, double per_hop_ms) {
  if (path.size() < 2) throw std::invalid_argument("path delay needs at least one hop");
  return propagation_ms(path, positions_at(spec, tau)) + per_hop_ms * path_hops(path);
}

namespace {

struct Candidate {
  PathCost cost;
  Path nodes;

  bool operator<(const Candidate& o) const {
    if (cost != o.cost) return cost < o.cost;
    return nodes < o.nodes;
  }
};

// Lexicographic (hops, delay) Dijkstra from `from` to `to` that avoids
// blocked nodes and the blocked first hops out of `from`.
std::optional<Path> spur_search(const TopologySnapshot& snapshot, const SquareMatrix<double>& link_delay,
                                double per_hop_ms, int from, int to, const std::vector<std::uint8_t>& blocked_node,
                                const std::vector<std::uint8_t>& blocked_first_hop, int hop_limit) {
  if (hop_limit < 1) return std::nullopt;
  const std::size_t n = snapshot.size();
  const PathCost unreached{std::numeric_limits<int>::max(), 0.0};
  std::vector<PathCost> dist(n, unreached);
  std::vector<int> parent(n, -1);
  std::vector<std::uint8_t> done(n, 0);
  using Item = std::pair<PathCost, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[from] = {0, 0.0};
  heap.push({dist[from], from});
  while (!heap.empty()) {
    const auto [cost, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u == to) break;
    if (cost.hops >= hop_limit) continue;
    for (int v : snapshot.neighbors(u)) {
      if (blocked_node[v] || done[v]) continue;
      if (u == from && blocked_first_hop[v]) continue;
      const PathCost next{cost.hops + 1, cost.delay_ms + link_delay(u, v) + per_hop_ms};
      if (next < dist[v]) {
        dist[v] = next;
        parent[v] = u;
        heap.push({next, v});
      }
    }
  }
  if (!done[to]) return std::nullopt;
  Path path;
  for (int v = to; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<Path> enumerate_candidate_paths(const TopologySnapshot& snapshot,
                                            const SquareMatrix<double>& link_delay, int source,
                                            int destination, int max_hops, int k_cap, double per_hop_ms) {
  const int n = static_cast<int>(snapshot.size());
  if (source < 0 || destination < 0 || source >= n || destination >= n)
    throw std::invalid_argument("path endpoint out of range");
  if (source == destination) throw std::invalid_argument("path endpoints must differ");
  if (k_cap < 1) throw std::invalid_argument("k_cap must be >= 1");

  std::vector<std::uint8_t> blocked_node(snapshot.size(), 0);
  std::vector<std::uint8_t> blocked_first_hop(snapshot.size(), 0);

  std::vector<Path> accepted;
  auto first = spur_search(snapshot, link_delay, per_hop_ms, source, destination, blocked_node,
                           blocked_first_hop, max_hops);
  if (!first) return accepted;
  accepted.push_back(std::move(*first));

  std::set<Path> seen{accepted.front()};
  std::set<Candidate> pending;

  while (static_cast<int>(accepted.size()) < k_cap) {
    const Path& last = accepted.back();
    for (std::size_t idx = 0; idx + 1 < last.size(); ++idx) {
      const int spur = last[idx];
      std::fill(blocked_node.begin(), blocked_node.end(), 0);
      std::fill(blocked_first_hop.begin(), blocked_first_hop.end(), 0);
      for (std::size_t r = 0; r < idx; ++r) blocked_node[last[r]] = 1;
      for (const Path& p : accepted) {
        if (p.size() > idx + 1 && std::equal(last.begin(), last.begin() + static_cast<std::ptrdiff_t>(idx) + 1, p.begin()))
          blocked_first_hop[p[idx + 1]] = 1;
      }
      const int hop_limit = max_hops == kUnlimitedHops ? kUnlimitedHops : max_hops - static_cast<int>(idx);
      auto tail = spur_search(snapshot, link_delay, per_hop_ms, spur, destination, blocked_node,
                              blocked_first_hop, hop_limit);
      if (!tail) continue;
      Path full(last.begin(), last.begin() + static_cast<std::ptrdiff_t>(idx));
      full.insert(full.end(), tail->begin(), tail->end());
      if (seen.contains(full)) continue;
      const PathCost cost = path_cost(full, link_delay, per_hop_ms);
      seen.insert(full);
      pending.insert({cost, std::move(full)});
    }
    if (pending.empty()) break;
    accepted.push_back(pending.begin()->nodes);
    pending.erase(pending.begin());
  }
  return accepted;
}

std::vector<Path> enumerate_candidate_paths(const TopologySnapshot& snapshot, const ConstellationSpec& spec,
                                            int source, int destination, int max_hops, int k_cap,
                                            double eval_time) {
  return enumerate_candidate_paths(snapshot, link_delay_ms(snapshot, spec, eval_time), source, destination,
                                   max_hops, k_cap);
}

WavelengthState::WavelengthState(const TopologySnapshot& snapshot) : edge_ids_(snapshot.size(), -1) {
  int next = 0;
  for (const auto& [i, j] : snapshot.edge_list()) edge_ids_(i, j) = edge_ids_(j, i) = next++;
  busy_.assign(static_cast<std::size_t>(next), std::vector<std::uint64_t>(1, 0));
}

int WavelengthState::edge_id(int u, int v) const {
  const int id = edge_ids_(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  if (id < 0) throw std::invalid_argument("no link between " + std::to_string(u) + " and " + std::to_string(v));
  return id;
}

void WavelengthState::add_wavelength() {
  ++wavelengths_;
  const auto words = static_cast<std::size_t>((wavelengths_ + 63) / 64);
  for (auto& bits : busy_) bits.resize(words, 0);
}

bool WavelengthState::is_free(int u, int v, int lambda) const {
  if (lambda < 1 || lambda > wavelengths_) throw std::out_of_range("wavelength out of range");
  const auto bit = static_cast<std::size_t>(lambda - 1);
  return ((busy_[static_cast<std::size_t>(edge_id(u, v))][bit / 64] >> (bit % 64)) & 1U) == 0;
}

std::optional<int> WavelengthState::first_free(const Path& path) const {
  const std::size_t words = busy_.empty() ? 1 : busy_.front().size();
  std::vector<int> ids;
  ids.reserve(path.size());
  for (std::size_t k = 1; k < path.size(); ++k) ids.push_back(edge_id(path[k - 1], path[k]));
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t used = 0;
    for (int id : ids) used |= busy_[static_cast<std::size_t>(id)][w];
    const std::uint64_t free = ~used;
    if (free == 0) continue;
    const int lambda = static_cast<int>(w * 64) + std::countr_zero(free) + 1;
    if (lambda <= wavelengths_) return lambda;
    return std::nullopt;
  }
  return std::nullopt;
}

void WavelengthState::occupy(const Path& path, int lambda) {
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (!is_free(path[k - 1], path[k], lambda))
      throw std::logic_error("wavelength " + std::to_string(lambda) + " already busy");
  }
  const auto bit = static_cast<std::size_t>(lambda - 1);
  for (std::size_t k = 1; k < path.size(); ++k)
    busy_[static_cast<std::size_t>(edge_id(path[k - 1], path[k]))][bit / 64] |= std::uint64_t{1} << (bit % 64);
}

std::optional<FirstFitChoice> first_fit(std::span<const Path> paths, const WavelengthState& state) {
  for (std::size_t p = 0; p < paths.size(); ++p) {
    if (const auto lambda = state.first_free(paths[p])) return FirstFitChoice{p, *lambda};
  }
  return std::nullopt;
}

std::vector<TrafficRequest> all_pairs_requests(int node_count) {
  std::vector<TrafficRequest> q;
  q.reserve(static_cast<std::size_t>(node_count) * static_cast<std::size_t>(std::max(node_count - 1, 0)) / 2);
  for (int i = 0; i < node_count; ++i)
    for (int j = i + 1; j < node_count; ++j) q.push_back({i, j});
  return q;
}

double RwaResult::mean_delay_ms() const {
  if (assignments.empty()) return 0.0;
  double total = 0.0;
  for (const auto& a : assignments) total += a.delay_ms();
  return total / static_cast<double>(assignments.size());
}

std::size_t PathTable::admissible(int s, int d, int max_hops) const {
  const auto& list = at(s, d);
  std::size_t k = 0;
  while (k < list.size() && path_hops(list[k]) <= max_hops) ++k;
  return k;
}

PathTable build_path_table(const TopologySnapshot& snapshot, const SquareMatrix<double>& link_delay,
                           int max_hops, int k_cap, double per_hop_ms, int threads) {
  const int n = static_cast<int>(snapshot.size());
  PathTable table(snapshot.size());
  const std::vector<TrafficRequest> pairs = all_pairs_requests(n);
  parallel_for(
      pairs.size(),
      [&](std::size_t k) {
        const auto [s, d] = pairs[k];
        table.at(s, d) = enumerate_candidate_paths(snapshot, link_delay, s, d, max_hops, k_cap, per_hop_ms);
      },
      threads);
  return table;
}

RwaResult rwa_run(const PathTable& table, const TopologySnapshot& snapshot, const SquareMatrix<double>& link_delay,
                  const RwaOptions& options, Rng& rng) {
  if (link_delay.size() != snapshot.size()) throw std::invalid_argument("delay matrix does not match snapshot");
  if (table.size() != snapshot.size()) throw std::invalid_argument("path table does not match snapshot");
  if (options.max_hops < 1) throw std::invalid_argument("max_hops must be >= 1");

  std::vector<TrafficRequest> queue = all_pairs_requests(static_cast<int>(snapshot.size()));
  std::shuffle(queue.begin(), queue.end(), rng);

  WavelengthState state(snapshot);
  RwaResult result;
  result.assignments.reserve(queue.size());

  for (const TrafficRequest& req : queue) {
    const auto& list = table.at(req.source, req.destination);
    const std::size_t usable = table.admissible(req.source, req.destination, options.max_hops);
    if (usable == 0) {
      result.unserved.push_back(req);
      continue;
    }
    auto choice = first_fit(std::span<const Path>(list.data(), usable), state);
    if (!choice) {
      state.add_wavelength();
      choice = FirstFitChoice{0, state.wavelength_count()};
    }
    const Path& path = list[choice->path_index];
    state.occupy(path, choice->wavelength);
    const int hops = path_hops(path);
    const PathCost cost = path_cost(path, link_delay, 0.0);
    result.assignments.push_back(
        {req, path, choice->wavelength, hops, cost.delay_ms, options.per_hop_ms * hops});
  }
  result.n_lambda = state.wavelength_count();
  const int bound = options.max_hops == kUnlimitedHops ? static_cast<int>(snapshot.size()) : options.max_hops;
  result.beta = connectivity(snapshot, bound);
  return result;
}

RwaResult rwa_run(const PathTable& table, const TopologySnapshot& snapshot, const ConstellationSpec& spec,
                  const RwaOptions& options, Rng& rng) {
  return rwa_run(table, snapshot, link_delay_ms(snapshot, spec, options.eval_time), options, rng);
}

RwaResult rwa_run(const TopologySnapshot& snapshot, const ConstellationSpec& spec, const RwaOptions& options,
                  Rng& rng) {
  const SquareMatrix<double> delay = link_delay_ms(snapshot, spec, options.eval_time);
  const PathTable table =
      build_path_table(snapshot, delay, options.max_hops, options.k_cap, options.per_hop_ms, options.threads);
  return rwa_run(table, snapshot, delay, options, rng);
}

double mean_delay_at(const RwaResult& result, const ConstellationSpec& spec, double tau, double per_hop_ms) {
  if (result.assignments.empty()) return 0.0;
  const std::vector<Vec3> pos = positions_at(spec, tau);
  double total = 0.0;
  for (const auto& a : result.assignments) total += propagation_ms(a.path, pos) + per_hop_ms * a.hops;
  return total / static_cast<double>(result.assignments.size());
}

}  // namespace dwrosn
