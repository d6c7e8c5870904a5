#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwrosn/matrix.hpp"
#include "dwrosn/orbital.hpp"

namespace dwrosn {

// Satellites of a constellation with their laser-terminal budgets.
struct NodeSet {
  std::vector<SatelliteId> nodes;
  std::vector<int> degree;

  // Every satellite of `spec`, with d_leo terminals on LEO nodes and d_geo
  // on GEO nodes.
  static NodeSet uniform(const ConstellationSpec& spec, int d_leo, int d_geo);

  std::size_t size() const { return nodes.size(); }
  void validate() const;  // sizes agree, every degree >= 1
};

struct PotentialLinkMatrix {
  BoolMatrix links;
  double slot_start = 0.0;
  double slot_length = 0.0;
  // Link length at slot start (km) for potential pairs; empty when the
  // matrix was not built from geometry.
  SquareMatrix<double> length_km;

  std::size_t size() const { return links.size(); }
  std::size_t link_count() const;
};

// Link-budget violation or a malformed edge insertion.
class TopologyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// One slot's established links. Edge insertion enforces the invariants:
// no self loops, at most one link per pair, used <= budget per node.
class TopologySnapshot {
 public:
  TopologySnapshot() = default;
  TopologySnapshot(std::vector<int> degree, double slot_start, double slot_length);

  std::size_t size() const { return degree_.size(); }
  double slot_start() const { return slot_start_; }
  double slot_length() const { return slot_length_; }

  void add_edge(int i, int j);
  bool has_edge(int i, int j) const { return edges_(i, j) != 0; }
  const BoolMatrix& edges() const { return edges_; }
  const std::vector<int>& neighbors(int i) const { return adjacency_[i]; }
  std::size_t edge_count() const { return edge_count_; }

  int degree(int i) const { return degree_[i]; }
  int used_terminals(int i) const { return static_cast<int>(adjacency_[i].size()); }
  int free_terminals(int i) const { return degree_[i] - used_terminals(i); }
  const std::vector<int>& degrees() const { return degree_; }

  // Unordered edge list (i < j), row-major.
  std::vector<std::array<int, 2>> edge_list() const;

  bool operator==(const TopologySnapshot& o) const { return edges_ == o.edges_ && degree_ == o.degree_; }

 private:
  BoolMatrix edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> degree_;
  double slot_start_ = 0.0;
  double slot_length_ = 0.0;
  std::size_t edge_count_ = 0;
};

enum class LinkClass { kIntraOrbit = 0, kInterOrbitSameLayer = 1, kInterLayer = 2 };
inline constexpr std::size_t kLinkClassCount = 3;

std::string_view link_class_name(LinkClass c);

// Throws std::domain_error when i and j are the same satellite.
LinkClass classify_link(const SatelliteId& i, const SatelliteId& j);

// Instantaneous visibility of all pairs at time t.
BoolMatrix visibility_matrix(const ConstellationSpec& spec, const NodeSet& nodes, double t);

// Pairs that stay visible at every sample of [t, t + dt).
PotentialLinkMatrix build_potential_matrix(const ConstellationSpec& spec, const NodeSet& nodes,
                                           double t, double dt, double step);

// Counts of visible (at slot start) and potential (whole slot) links by class.
struct LinkCensus {
  using ClassCounts = std::array<int, kLinkClassCount>;

  double slot_start = 0.0;
  double slot_length = 0.0;
  ClassCounts visible{};              // unordered pairs
  ClassCounts potential{};
  std::vector<ClassCounts> node_visible;  // per node: links incident to it
  std::vector<ClassCounts> node_potential;

  int total_visible() const { return visible[0] + visible[1] + visible[2]; }
  int total_potential() const { return potential[0] + potential[1] + potential[2]; }
  int count(const ClassCounts& c, LinkClass k) const { return c[static_cast<std::size_t>(k)]; }
};

LinkCensus link_census(const ConstellationSpec& spec, const NodeSet& nodes, double t, double dt,
                       double step);
LinkCensus link_census(const NodeSet& nodes, const BoolMatrix& visible,
                       const PotentialLinkMatrix& potential);

bool is_connected(const TopologySnapshot& snapshot);

// Edge-list text format:
//   # t=<seconds> dt=<seconds>
//   LEO:0:0 LEO:0:1
//   ...
void write_edge_list(std::ostream& os, const TopologySnapshot& snapshot, const NodeSet& nodes);

// Reads the format above. Terminal budgets come from `nodes`; unknown
// satellites, duplicate edges and budget overruns throw std::runtime_error.
TopologySnapshot read_edge_list(std::istream& is, const ConstellationSpec& spec, const NodeSet& nodes);

}  // namespace dwrosn
