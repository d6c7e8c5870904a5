#pragma once

// Link-assignment schemes: the potential-edge-importance (PEIM) greedy
// construction and the ACT / Greedy baselines, plus pool generation and
// best-topology selection.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "dwrosn/matrix.hpp"
#include "dwrosn/rng.hpp"
#include "dwrosn/topology.hpp"

namespace dwrosn {

// Minimum hop counts. Unreachable pairs hold the node count N, which no
// simple path can reach.
using HopMatrix = SquareMatrix<int>;
// Number of distinct minimum-hop paths; 0 for unreachable, 1 on the diagonal.
using PathCountMatrix = SquareMatrix<std::int64_t>;

struct ShortestPaths {
  HopMatrix hops;
  PathCountMatrix counts;
  int unreachable() const { return static_cast<int>(hops.size()); }
};

HopMatrix hop_matrix(const TopologySnapshot& snapshot);
PathCountMatrix shortest_path_counts(const TopologySnapshot& snapshot);
// Both in one breadth-first sweep per source.
ShortestPaths shortest_paths(const TopologySnapshot& snapshot);

struct ImportanceMatrices {
  SquareMatrix<std::int64_t> a;  // summed hop decrease, ordered pairs
  SquareMatrix<std::int64_t> b;  // summed extra equal-length paths, ordered pairs
  SquareMatrix<double> c;        // a / max(a) + b / max(b)
  std::int64_t max_a = 0;
  std::int64_t max_b = 0;
  // 1 where the edge would join two disconnected components.
  BoolMatrix joins;
};

// Scores every potential edge (L[i][j] = 1, both endpoints with a free
// terminal, not yet established) against the current snapshot.
ImportanceMatrices compute_importance(const TopologySnapshot& snapshot, const BoolMatrix& potential);
SquareMatrix<std::int64_t> importance_a(const TopologySnapshot& snapshot, const BoolMatrix& potential);
SquareMatrix<std::int64_t> importance_b(const TopologySnapshot& snapshot, const BoolMatrix& potential);

// c = a / max(a) + b / max(b); a term with zero max contributes 0.
SquareMatrix<double> combine_importance(const SquareMatrix<std::int64_t>& a,
                                        const SquareMatrix<std::int64_t>& b);

using Edge = std::array<int, 2>;

// Node visibility coefficient: row sum of the working potential matrix.
std::vector<int> node_visibility(const BoolMatrix& potential);

// Potential edges attaining max C (compared exactly on the integer
// numerators), filtered to those whose min(NVC_i, NVC_j) is smallest.
// Edges are reported with i < j in row-major order.
std::vector<Edge> tie_break_candidates(const ImportanceMatrices& importance, const BoolMatrix& potential);

// Uniform pick among tie_break_candidates. Throws std::domain_error when no
// potential edge remains.
Edge tie_break_select(const ImportanceMatrices& importance, const BoolMatrix& potential, Rng& rng);

enum class Scheme { kPeim, kAct, kGreedy };

std::string_view scheme_name(Scheme scheme);  // "peim", "act", "greedy"
std::optional<Scheme> parse_scheme(std::string_view name);

// Repeatedly adds the highest-importance edge; edges joining two components
// rank above every other edge. Ties go to the scarcest endpoint, then random.
TopologySnapshot peim_assign(const PotentialLinkMatrix& potential, const NodeSet& nodes, Rng& rng);
// Uniformly random feasible edge until none remain.
TopologySnapshot act_assign(const PotentialLinkMatrix& potential, const NodeSet& nodes, Rng& rng);
// Edge with the most free terminals at its endpoints, ties to the shortest
// link (when potential.length_km is present), then random.
TopologySnapshot greedy_assign(const PotentialLinkMatrix& potential, const NodeSet& nodes, Rng& rng);
TopologySnapshot assign(Scheme scheme, const PotentialLinkMatrix& potential, const NodeSet& nodes, Rng& rng);

// Average node-to-node distance over ordered pairs. Throws
// std::domain_error on a disconnected snapshot.
double average_hops(const HopMatrix& hops);

class InfeasibleAssignment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CandidatePool {
  std::vector<TopologySnapshot> candidates;
  std::vector<double> hbar;
  std::vector<int> attempts;  // assignments run per candidate, including discarded ones
  std::size_t selected = 0;

  const TopologySnapshot& best() const { return candidates[selected]; }
  double best_hbar() const { return hbar[selected]; }
  double min_hbar() const;
  double max_hbar() const;
};

struct PoolOptions {
  int count = 100;
  int threads = 0;  // 0 = default_thread_count()
};

// Builds `count` connected candidates and selects the one with minimum
// average hop distance (lowest index on ties). Candidate i draws from the
// substream derive_seed({stream_seed, i}); a disconnected result is
// discarded and the scheme re-run on the same substream. A candidate that
// stays disconnected for 10 * count attempts raises InfeasibleAssignment.
CandidatePool generate_and_select(Scheme scheme, const PotentialLinkMatrix& potential,
                                  const NodeSet& nodes, const PoolOptions& options,
                                  std::uint64_t stream_seed);
CandidatePool generate_and_select(Scheme scheme, const PotentialLinkMatrix& potential,
                                  const NodeSet& nodes, const PoolOptions& options, Rng& rng);

}  // namespace dwrosn
