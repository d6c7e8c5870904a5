#include "dwrosn/topology.hpp"

#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace dwrosn {

NodeSet NodeSet::uniform(const ConstellationSpec& spec, int d_leo, int d_geo) {
  NodeSet set;
  set.nodes = spec.satellites();
  set.degree.reserve(set.nodes.size());
  for (const auto& sat : set.nodes) set.degree.push_back(sat.layer == Layer::kLeo ? d_leo : d_geo);
  set.validate();
  return set;
}

void NodeSet::validate() const {
  if (nodes.size() != degree.size()) throw std::invalid_argument("node/degree size mismatch");
  for (int d : degree) {
    if (d < 1) throw std::invalid_argument("every node needs at least one terminal");
  }
}

std::size_t PotentialLinkMatrix::link_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < links.size(); ++i)
    for (std::size_t j = i + 1; j < links.size(); ++j) n += links(i, j);
  return n;
}

TopologySnapshot::TopologySnapshot(std::vector<int> degree, double slot_start, double slot_length)
    : edges_(degree.size()),
      adjacency_(degree.size()),
      degree_(std::move(degree)),
      slot_start_(slot_start),
      slot_length_(slot_length) {}

void TopologySnapshot::add_edge(int i, int j) {
  const int n = static_cast<int>(size());
  if (i < 0 || j < 0 || i >= n || j >= n) throw TopologyError("edge endpoint out of range");
  if (i == j) throw TopologyError("self loop");
  if (edges_(i, j)) throw TopologyError("duplicate link " + std::to_string(i) + "-" + std::to_string(j));
  if (free_terminals(i) <= 0 || free_terminals(j) <= 0)
    throw TopologyError("terminal budget exceeded on link " + std::to_string(i) + "-" + std::to_string(j));
  edges_(i, j) = edges_(j, i) = 1;
  adjacency_[i].push_back(j);
  adjacency_[j].push_back(i);
  ++edge_count_;
}

std::vector<std::array<int, 2>> TopologySnapshot::edge_list() const {
  std::vector<std::array<int, 2>> out;
  out.reserve(edge_count_);
  const int n = static_cast<int>(size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edges_(i, j)) out.push_back({i, j});
  return out;
}

std::string_view link_class_name(LinkClass c) {
  switch (c) {
    case LinkClass::kIntraOrbit: return "intraorbit";
    case LinkClass::kInterOrbitSameLayer: return "interorbit_same_layer";
    case LinkClass::kInterLayer: return "inter_layer";
  }
  return "unknown";
}

LinkClass classify_link(const SatelliteId& i, const SatelliteId& j) {
  if (i.layer == j.layer && i.plane == j.plane && i.slot == j.slot)
    throw std::domain_error("cannot classify a link from a satellite to itself");
  if (i.layer != j.layer) return LinkClass::kInterLayer;
  return i.plane == j.plane ? LinkClass::kIntraOrbit : LinkClass::kInterOrbitSameLayer;
}

namespace {

std::vector<Vec3> node_positions(const ConstellationSpec& spec, const NodeSet& nodes, double t) {
  const std::vector<Vec3> all = positions_at(spec, t);
  std::vector<Vec3> out;
  out.reserve(nodes.size());
  for (const auto& sat : nodes.nodes) out.push_back(all.at(static_cast<std::size_t>(sat.flat_index)));
  return out;
}

}  // namespace

BoolMatrix visibility_matrix(const ConstellationSpec& spec, const NodeSet& nodes, double t) {
  const std::vector<Vec3> pos = node_positions(spec, nodes, t);
  const std::size_t n = nodes.size();
  BoolMatrix vis(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool v = is_visible(pos[i], pos[j], spec.earth_radius_km, spec.clearance_km);
      vis(i, j) = vis(j, i) = v;
    }
  }
  return vis;
}

PotentialLinkMatrix build_potential_matrix(const ConstellationSpec& spec, const NodeSet& nodes,
                                           double t, double dt, double step) {
  const long samples = window_sample_count(t, t + dt, step);
  const std::size_t n = nodes.size();

  // Surviving pairs shrink as samples fail, so later samples are cheap.
  std::vector<std::array<int, 2>> alive;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) alive.push_back({static_cast<int>(i), static_cast<int>(j)});

  for (long k = 0; k < samples && !alive.empty(); ++k) {
    const std::vector<Vec3> pos = node_positions(spec, nodes, t + static_cast<double>(k) * step);
    std::erase_if(alive, [&](const std::array<int, 2>& p) {
      return !is_visible(pos[p[0]], pos[p[1]], spec.earth_radius_km, spec.clearance_km);
    });
  }

  PotentialLinkMatrix out{BoolMatrix(n), t, dt, SquareMatrix<double>(n, 0.0)};
  const std::vector<Vec3> start = node_positions(spec, nodes, t);
  for (const auto& [i, j] : alive) {
    out.links(i, j) = out.links(j, i) = 1;
    out.length_km(i, j) = out.length_km(j, i) = (start[i] - start[j]).norm();
  }
  return out;
}

LinkCensus link_census(const NodeSet& nodes, const BoolMatrix& visible,
                       const PotentialLinkMatrix& potential) {
  const std::size_t n = nodes.size();
  LinkCensus census;
  census.slot_start = potential.slot_start;
  census.slot_length = potential.slot_length;
  census.node_visible.assign(n, {});
  census.node_potential.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto c = static_cast<std::size_t>(classify_link(nodes.nodes[i], nodes.nodes[j]));
      if (visible(i, j)) {
        ++census.visible[c];
        ++census.node_visible[i][c];
        ++census.node_visible[j][c];
      }
      if (potential.links(i, j)) {
        ++census.potential[c];
        ++census.node_potential[i][c];
        ++census.node_potential[j][c];
      }
    }
  }
  return census;
}

LinkCensus link_census(const ConstellationSpec& spec, const NodeSet& nodes, double t, double dt,
                       double step) {
  return link_census(nodes, visibility_matrix(spec, nodes, t),
                     build_potential_matrix(spec, nodes, t, dt, step));
}

bool is_connected(const TopologySnapshot& snapshot) {
  const std::size_t n = snapshot.size();
  if (n <= 1) return true;
  std::vector<std::uint8_t> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : snapshot.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

void write_edge_list(std::ostream& os, const TopologySnapshot& snapshot, const NodeSet& nodes) {
  os << "# t=" << snapshot.slot_start() << " dt=" << snapshot.slot_length() << "\n";
  for (const auto& [i, j] : snapshot.edge_list())
    os << format_satellite(nodes.nodes[i]) << " " << format_satellite(nodes.nodes[j]) << "\n";
}

namespace {

SatelliteId parse_label(const std::string& label, const ConstellationSpec& spec) {
  std::istringstream in(label);
  std::string layer, plane, slot;
  if (!std::getline(in, layer, ':') || !std::getline(in, plane, ':') || !std::getline(in, slot))
    throw std::runtime_error("malformed satellite label '" + label + "'");
  const auto l = parse_layer(layer);
  if (!l) throw std::runtime_error("unknown layer in '" + label + "'");
  try {
    return spec.satellite(*l, std::stoi(plane), std::stoi(slot));
  } catch (const std::logic_error&) {
    throw std::runtime_error("invalid satellite '" + label + "'");
  }
}

}  // namespace

TopologySnapshot read_edge_list(std::istream& is, const ConstellationSpec& spec, const NodeSet& nodes) {
  double t = 0.0;
  double dt = 0.0;
  std::vector<int> index_of(static_cast<std::size_t>(spec.node_count()), -1);
  for (std::size_t k = 0; k < nodes.size(); ++k)
    index_of.at(static_cast<std::size_t>(nodes.nodes[k].flat_index)) = static_cast<int>(k);

  std::vector<std::array<int, 2>> edges;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream header(line.substr(1));
      std::string field;
      while (header >> field) {
        if (field.rfind("t=", 0) == 0) t = std::stod(field.substr(2));
        if (field.rfind("dt=", 0) == 0) dt = std::stod(field.substr(3));
      }
      continue;
    }
    std::istringstream in(line);
    std::string a, b, extra;
    if (!(in >> a >> b) || (in >> extra)) throw std::runtime_error("malformed edge line '" + line + "'");
    const int i = index_of[static_cast<std::size_t>(parse_label(a, spec).flat_index)];
    const int j = index_of[static_cast<std::size_t>(parse_label(b, spec).flat_index)];
    if (i < 0 || j < 0) throw std::runtime_error("edge references a satellite outside the node set");
    edges.push_back({i, j});
  }
  TopologySnapshot out(nodes.degree, t, dt);
  for (const auto& [i, j] : edges) {
    try {
      out.add_edge(i, j);
    } catch (const TopologyError& e) {
      throw std::runtime_error(std::string("edge list: ") + e.what());
    }
  }
  return out;
}

}  // namespace dwrosn
