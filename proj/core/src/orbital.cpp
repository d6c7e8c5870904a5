#include "dwrosn/orbital.hpp"

#include <algorithm>
#include <stdexcept>

namespace dwrosn {

namespace {

constexpr double kDegToRad = kPi / 180.0;

Vec3 walker_position(const LayerSpec& layer, double radius, int plane, int slot, double t) {
  const int planes = layer.planes;
  const int per_plane = layer.sats_per_plane();
  const double raan = 2.0 * kPi * plane / planes;
  const double phase = layer.angular_velocity() * t +
                       2.0 * kPi *
                           (static_cast<double>(slot) / per_plane +
                            static_cast<double>(plane) * layer.phase_factor / (planes * per_plane));
  const double incl = layer.inclination_deg * kDegToRad;
  const double cos_i = std::cos(incl);
  const double sin_i = std::sin(incl);
  const double cos_o = std::cos(raan);
  const double sin_o = std::sin(raan);
  const double cos_u = std::cos(phase);
  const double sin_u = std::sin(phase);
  return {radius * (cos_o * cos_u - cos_i * sin_o * sin_u),
          radius * (sin_o * cos_u + cos_i * cos_o * sin_u),
          radius * sin_i * sin_u};
}

}  // namespace

std::string_view layer_name(Layer layer) { return layer == Layer::kLeo ? "LEO" : "GEO"; }

std::optional<Layer> parse_layer(std::string_view name) {
  if (name == "LEO") return Layer::kLeo;
  if (name == "GEO") return Layer::kGeo;
  return std::nullopt;
}

void LayerSpec::validate() const {
  const std::string who(layer_name(layer));
  if (total_sats <= 0 || planes <= 0) throw std::invalid_argument(who + ": T and P must be positive");
  if (total_sats % planes != 0) throw std::invalid_argument(who + ": T must be divisible by P");
  if (phase_factor < 0 || phase_factor > planes - 1)
    throw std::invalid_argument(who + ": F must lie in [0, P-1]");
  if (!(altitude_km > 0.0)) throw std::invalid_argument(who + ": altitude must be positive");
  if (!(period_s > 0.0)) throw std::invalid_argument(who + ": period must be positive");
  if (!(inclination_deg >= 0.0 && inclination_deg < 180.0))
    throw std::invalid_argument(who + ": inclination must lie in [0, 180)");
}

std::string format_satellite(const SatelliteId& sat) {
  return std::string(layer_name(sat.layer)) + ":" + std::to_string(sat.plane) + ":" +
         std::to_string(sat.slot);
}

ConstellationSpec ConstellationSpec::reference() {
  ConstellationSpec spec;
  spec.layers.push_back({Layer::kLeo, 120, 10, 1, 1200.0, 55.0, 6565.0});
  spec.layers.push_back({Layer::kGeo, 3, 1, 0, 35786.0, 0.0, 86400.0});
  return spec;
}

void ConstellationSpec::validate() const {
  if (layers.empty()) throw std::invalid_argument("constellation needs at least one layer");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    layers[i].validate();
    for (std::size_t j = 0; j < i; ++j) {
      if (layers[j].layer == layers[i].layer)
        throw std::invalid_argument("duplicate layer " + std::string(layer_name(layers[i].layer)));
    }
  }
  if (!(earth_radius_km > 0.0)) throw std::invalid_argument("earth radius must be positive");
  if (!(clearance_km >= 0.0)) throw std::invalid_argument("clearance must be non-negative");
}

int ConstellationSpec::node_count() const {
  int n = 0;
  for (const auto& l : layers) n += l.total_sats;
  return n;
}

int ConstellationSpec::layer_offset(std::size_t layer_index) const {
  int offset = 0;
  for (std::size_t i = 0; i < layer_index; ++i) offset += layers[i].total_sats;
  return offset;
}

std::size_t ConstellationSpec::layer_index(Layer layer) const {
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].layer == layer) return i;
  }
  throw std::domain_error("layer " + std::string(layer_name(layer)) + " not in constellation");
}

SatelliteId ConstellationSpec::satellite(int flat_index) const {
  if (flat_index < 0) throw std::domain_error("negative satellite index");
  int offset = 0;
  for (const auto& l : layers) {
    if (flat_index < offset + l.total_sats) {
      const int local = flat_index - offset;
      const int per_plane = l.sats_per_plane();
      return {l.layer, local / per_plane, local % per_plane, flat_index};
    }
    offset += l.total_sats;
  }
  throw std::domain_error("satellite index " + std::to_string(flat_index) + " out of range");
}

SatelliteId ConstellationSpec::satellite(Layer layer, int plane, int slot) const {
  const std::size_t li = layer_index(layer);
  const LayerSpec& l = layers[li];
  if (plane < 0 || plane >= l.planes || slot < 0 || slot >= l.sats_per_plane())
    throw std::domain_error("satellite " + std::string(layer_name(layer)) + ":" +
                            std::to_string(plane) + ":" + std::to_string(slot) + " out of range");
  return {layer, plane, slot, layer_offset(li) + plane * l.sats_per_plane() + slot};
}

std::vector<SatelliteId> ConstellationSpec::satellites() const {
  std::vector<SatelliteId> out;
  out.reserve(static_cast<std::size_t>(node_count()));
  for (int i = 0; i < node_count(); ++i) out.push_back(satellite(i));
  return out;
}

void ConstellationSpec::check(const SatelliteId& sat) const {
  const SatelliteId canonical = satellite(sat.layer, sat.plane, sat.slot);
  if (canonical.flat_index != sat.flat_index)
    throw std::domain_error("satellite " + format_satellite(sat) + " has inconsistent flat index");
}

EciPosition position(const ConstellationSpec& spec, const SatelliteId& sat, double t) {
  spec.check(sat);
  const LayerSpec& l = spec.layer_spec(sat.layer);
  return {walker_position(l, spec.earth_radius_km + l.altitude_km, sat.plane, sat.slot, t), t};
}

std::vector<Vec3> positions_at(const ConstellationSpec& spec, double t) {
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(spec.node_count()));
  for (const auto& l : spec.layers) {
    const double radius = spec.earth_radius_km + l.altitude_km;
    for (int p = 0; p < l.planes; ++p) {
      for (int m = 0; m < l.sats_per_plane(); ++m) out.push_back(walker_position(l, radius, p, m, t));
    }
  }
  return out;
}

double segment_distance_to_origin(const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double len2 = d.dot(d);
  double s = len2 > 0.0 ? -a.dot(d) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (a + d * s).norm();
}

bool is_visible(const Vec3& a, const Vec3& b, double earth_radius_km, double clearance_km) {
  const Vec3 d = b - a;
  if (d.dot(d) == 0.0) throw std::domain_error("visibility undefined for coincident positions");
  return segment_distance_to_origin(a, b) >= earth_radius_km + clearance_km;
}

bool is_visible(const EciPosition& a, const EciPosition& b, double earth_radius_km,
                double clearance_km) {
  return is_visible(a.r, b.r, earth_radius_km, clearance_km);
}

long window_sample_count(double t0, double t1, double step) {
  if (!(t0 < t1)) throw std::invalid_argument("window requires t0 < t1");
  if (!(step > 0.0)) throw std::invalid_argument("window step must be positive");
  long n = static_cast<long>(std::ceil((t1 - t0) / step));
  while (n > 0 && t0 + static_cast<double>(n - 1) * step >= t1) --n;
  while (t0 + static_cast<double>(n) * step < t1) ++n;
  return n;
}

bool visible_over_window(const ConstellationSpec& spec, const SatelliteId& a, const SatelliteId& b,
                         double t0, double t1, double step) {
  if (a.flat_index == b.flat_index) throw std::domain_error("window visibility needs two satellites");
  const long samples = window_sample_count(t0, t1, step);
  for (long k = 0; k < samples; ++k) {
    const double t = t0 + static_cast<double>(k) * step;
    if (!is_visible(position(spec, a, t), position(spec, b, t), spec.earth_radius_km,
                    spec.clearance_km))
      return false;
  }
  return true;
}

}  // namespace dwrosn
