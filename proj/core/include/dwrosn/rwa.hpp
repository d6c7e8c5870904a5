#pragma once

// Static routing and wavelength assignment over one topology snapshot:
// every unordered node pair requests one full wavelength channel, routes
// are tried shortest-first and wavelengths first-fit, with wavelength
// continuity along the whole light path.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "dwrosn/matrix.hpp"
#include "dwrosn/orbital.hpp"
#include "dwrosn/rng.hpp"
#include "dwrosn/topology.hpp"

namespace dwrosn {

inline constexpr int kUnlimitedHops = std::numeric_limits<int>::max();
inline constexpr int kUnlimitedPaths = std::numeric_limits<int>::max();
inline constexpr double kSpeedOfLightKmPerS = 299792.458;
inline constexpr double kDefaultProcessingMsPerHop = 10.0;

using Path = std::vector<int>;

struct PathCost {
  int hops = 0;
  double delay_ms = 0.0;

  auto operator<=>(const PathCost&) const = default;
};

inline int path_hops(const Path& path) { return static_cast<int>(path.size()) - 1; }

// Propagation delay (ms) of every established link at time tau; 0 elsewhere.
// Node indices are flat satellite indices of `spec`.
SquareMatrix<double> link_delay_ms(const TopologySnapshot& snapshot, const ConstellationSpec& spec, double tau);

// Hops and total delay (propagation + per-hop processing), summed from the
// source end.
PathCost path_cost(const Path& path, const SquareMatrix<double>& link_delay, double per_hop_ms);

// Propagation at tau plus hops * per_hop_ms. Paths need at least two nodes.
double path_delay(const Path& path, const ConstellationSpec& spec, double tau,
                  double per_hop_ms = kDefaultProcessingMsPerHop);

// Loopless k-shortest paths (Yen) under the lexicographic key
// (hops, delay). At most k_cap paths, none longer than max_hops.
std::vector<Path> enumerate_candidate_paths(const TopologySnapshot& snapshot,
                                            const SquareMatrix<double>& link_delay, int source,
                                            int destination, int max_hops, int k_cap,
                                            double per_hop_ms = kDefaultProcessingMsPerHop);
std::vector<Path> enumerate_candidate_paths(const TopologySnapshot& snapshot, const ConstellationSpec& spec,
                                            int source, int destination, int max_hops, int k_cap,
                                            double eval_time);

// Per-link wavelength occupancy; wavelengths are numbered from 1.
class WavelengthState {
 public:
  explicit WavelengthState(const TopologySnapshot& snapshot);

  int wavelength_count() const { return wavelengths_; }
  void add_wavelength();

  bool is_free(int u, int v, int lambda) const;
  // Lowest wavelength free on every link of the path, if any.
  std::optional<int> first_free(const Path& path) const;
  // Throws std::logic_error if any link of the path is busy at lambda.
  void occupy(const Path& path, int lambda);

 private:
  int edge_id(int u, int v) const;

  SquareMatrix<int> edge_ids_;
  std::vector<std::vector<std::uint64_t>> busy_;  // per link, bitset over wavelengths
  int wavelengths_ = 1;
};

struct FirstFitChoice {
  std::size_t path_index = 0;
  int wavelength = 1;
};

// Path-major, wavelength-minor scan. nullopt means a new wavelength is needed.
std::optional<FirstFitChoice> first_fit(std::span<const Path> paths, const WavelengthState& state);

struct TrafficRequest {
  int source = 0;
  int destination = 0;
};

// All N(N-1)/2 unordered pairs, source < destination, row-major.
std::vector<TrafficRequest> all_pairs_requests(int node_count);

struct RouteAssignment {
  TrafficRequest request;
  Path path;
  int wavelength = 1;
  int hops = 0;
  double propagation_ms = 0.0;
  double processing_ms = 0.0;

  double delay_ms() const { return propagation_ms + processing_ms; }
};

struct RwaResult {
  std::vector<RouteAssignment> assignments;
  std::vector<TrafficRequest> unserved;
  int n_lambda = 1;
  double beta = 0.0;

  double mean_delay_ms() const;
};

struct RwaOptions {
  int max_hops = kUnlimitedHops;
  int k_cap = 16;
  double eval_time = 0.0;
  double per_hop_ms = kDefaultProcessingMsPerHop;
  int threads = 0;
};

// Candidate path lists for every unordered pair. Lists are sorted by hops,
// so the list for a tighter hop bound is a prefix of this one.
class PathTable {
 public:
  PathTable() = default;
  explicit PathTable(std::size_t n) : n_(n), paths_(n * n) {}

  std::size_t size() const { return n_; }
  std::vector<Path>& at(int s, int d) { return paths_[index(s, d)]; }
  const std::vector<Path>& at(int s, int d) const { return paths_[index(s, d)]; }
  // Number of leading paths with at most max_hops hops.
  std::size_t admissible(int s, int d, int max_hops) const;

 private:
  std::size_t index(int s, int d) const {
    return s < d ? static_cast<std::size_t>(s) * n_ + d : static_cast<std::size_t>(d) * n_ + s;
  }
  std::size_t n_ = 0;
  std::vector<std::vector<Path>> paths_;
};

PathTable build_path_table(const TopologySnapshot& snapshot, const SquareMatrix<double>& link_delay,
                           int max_hops, int k_cap, double per_hop_ms = kDefaultProcessingMsPerHop,
                           int threads = 0);

// Serves all-pairs traffic in a uniformly shuffled order. Propagation delay
// of each assignment comes from `link_delay`, or from positions at
// options.eval_time when a constellation is given.
RwaResult rwa_run(const PathTable& table, const TopologySnapshot& snapshot, const SquareMatrix<double>& link_delay,
                  const RwaOptions& options, Rng& rng);
RwaResult rwa_run(const PathTable& table, const TopologySnapshot& snapshot, const ConstellationSpec& spec,
                  const RwaOptions& options, Rng& rng);
RwaResult rwa_run(const TopologySnapshot& snapshot, const ConstellationSpec& spec, const RwaOptions& options,
                  Rng& rng);

// Mean request delay of the assigned light paths re-evaluated at tau.
double mean_delay_at(const RwaResult& result, const ConstellationSpec& spec, double tau,
                     double per_hop_ms = kDefaultProcessingMsPerHop);

}  // namespace dwrosn
