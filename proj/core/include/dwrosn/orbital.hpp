#pragma once

// Circular Walker-Delta orbit propagation in the Earth-centered inertial
// frame and line-of-sight checks between satellites.
//
// Assumptions:
// - spherical Earth, circular Keplerian orbits, no perturbations
// - a link is usable only if the whole segment stays `clearance_km`
//   above the Earth surface

#include <cmath>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dwrosn {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kWgs84EquatorialRadiusKm = 6378.137;
inline constexpr double kDefaultClearanceKm = 100.0;

enum class Layer { kLeo, kGeo };

std::string_view layer_name(Layer layer);
std::optional<Layer> parse_layer(std::string_view name);

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};

// One Walker-Delta shell T/P/F:h:I plus its period U.
struct LayerSpec {
  Layer layer = Layer::kLeo;
  int total_sats = 0;         // T
  int planes = 0;             // P
  int phase_factor = 0;       // F
  double altitude_km = 0.0;   // h
  double inclination_deg = 0.0;
  double period_s = 0.0;      // U

  int sats_per_plane() const { return total_sats / planes; }
  double angular_velocity() const { return 2.0 * kPi / period_s; }

  // Throws std::invalid_argument when T % P != 0, F outside [0, P-1],
  // h or U not positive, or I outside [0, 180).
  void validate() const;
};

struct SatelliteId {
  Layer layer = Layer::kLeo;
  int plane = 0;
  int slot = 0;
  int flat_index = 0;

  auto operator<=>(const SatelliteId&) const = default;
};

// "LEO:p:m"
std::string format_satellite(const SatelliteId& sat);

struct ConstellationSpec {
  std::vector<LayerSpec> layers;
  double earth_radius_km = kWgs84EquatorialRadiusKm;
  double clearance_km = kDefaultClearanceKm;

  // 120/10/1:1200:55 LEO (U = 6565 s) and 3/1/0:35786:0 GEO (U = 86400 s).
  static ConstellationSpec reference();

  // Layers must be valid and carry distinct layer ids; clearance >= 0.
  void validate() const;

  int node_count() const;
  int layer_offset(std::size_t layer_index) const;
  std::size_t layer_index(Layer layer) const;  // throws std::domain_error if absent
  const LayerSpec& layer_spec(Layer layer) const { return layers[layer_index(layer)]; }
  double orbit_radius_km(Layer layer) const { return earth_radius_km + layer_spec(layer).altitude_km; }

  // Flat enumeration: layers in list order, plane-major then slot.
  SatelliteId satellite(int flat_index) const;
  SatelliteId satellite(Layer layer, int plane, int slot) const;
  std::vector<SatelliteId> satellites() const;

  // Throws std::domain_error if plane/slot/flat index do not match the constellation.
  void check(const SatelliteId& sat) const;
};

struct EciPosition {
  Vec3 r;
  double t = 0.0;
};

EciPosition position(const ConstellationSpec& spec, const SatelliteId& sat, double t);

// Positions of every satellite at time t, in flat-index order.
std::vector<Vec3> positions_at(const ConstellationSpec& spec, double t);

// Minimum distance from the Earth center to the closed segment [a, b].
double segment_distance_to_origin(const Vec3& a, const Vec3& b);

// True iff the segment [a, b] keeps at least earth_radius_km + clearance_km
// from the Earth center. Coincident endpoints throw std::domain_error.
bool is_visible(const Vec3& a, const Vec3& b, double earth_radius_km, double clearance_km);
bool is_visible(const EciPosition& a, const EciPosition& b, double earth_radius_km,
                double clearance_km);

// Samples t0, t0 + step, ... (all < t1) and requires visibility at each.
bool visible_over_window(const ConstellationSpec& spec, const SatelliteId& a, const SatelliteId& b,
                         double t0, double t1, double step);

// Number of samples in [t0, t1) at `step`; throws unless t0 < t1 and step > 0.
long window_sample_count(double t0, double t1, double step);

}  // namespace dwrosn
