#include "dwrosn/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dwrosn {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("bad value for " + key + ": '" + value + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad value for " + key + ": '" + value + "'");
  }
  if (used != value.size() || !std::isfinite(out)) throw ConfigError("bad value for " + key + ": '" + value + "'");
  return out;
}

int parse_hops(const std::string& key, const std::string& value) {
  if (value == "inf" || value == "unlimited") return kUnlimitedHops;
  return parse_number<int>(key, value);
}

std::string real_text(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    constellation.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(slot_length_s > 0.0)) throw ConfigError("slot.dt_s must be positive");
  if (!(horizon_s > 0.0)) throw ConfigError("slot.horizon_s must be positive");
  if (!(step_s > 0.0)) throw ConfigError("slot.step_s must be positive");
  const double slots = horizon_s / slot_length_s;
  if (std::abs(slots - std::round(slots)) > 1e-9 || std::round(slots) < 1)
    throw ConfigError("slot.horizon_s must be a positive multiple of slot.dt_s");
  if (count < 1) throw ConfigError("las.count must be >= 1");
  if (schemes.empty()) throw ConfigError("las.schemes must name at least one scheme");
  if (d_leo < 1) throw ConfigError("nodes.d_leo must be >= 1");
  if (d_geo.empty()) throw ConfigError("nodes.d_geo must list at least one value");
  for (int d : d_geo)
    if (d < 1) throw ConfigError("nodes.d_geo values must be >= 1");
  if (max_hops.empty()) throw ConfigError("rwa.max_hops must list at least one value");
  for (int h : max_hops)
    if (h < 1) throw ConfigError("rwa.max_hops values must be >= 1");
  if (k_cap < 1) throw ConfigError("rwa.k_cap must be >= 1");
  if (reps < 1) throw ConfigError("rwa.reps must be >= 1");
  if (!(delay_sample_s > 0.0)) throw ConfigError("delay sampling interval must be positive");
}

int ExperimentConfig::slot_count() const { return static_cast<int>(std::lround(horizon_s / slot_length_s)); }

int ExperimentConfig::comparison_d_geo() const {
  for (int d : d_geo)
    if (d == 6) return d;
  return d_geo.front();
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  LayerSpec& leo = config.constellation.layers[0];
  LayerSpec& geo = config.constellation.layers[1];

  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto layer_keys = [](LayerSpec& layer, const std::string& prefix, std::map<std::string, Setter>& keys) {
    keys[prefix + ".sats"] = [&layer](auto& k, auto& v) { layer.total_sats = parse_number<int>(k, v); };
    keys[prefix + ".planes"] = [&layer](auto& k, auto& v) { layer.planes = parse_number<int>(k, v); };
    keys[prefix + ".phase"] = [&layer](auto& k, auto& v) { layer.phase_factor = parse_number<int>(k, v); };
    keys[prefix + ".alt_km"] = [&layer](auto& k, auto& v) { layer.altitude_km = parse_real(k, v); };
    keys[prefix + ".incl_deg"] = [&layer](auto& k, auto& v) { layer.inclination_deg = parse_real(k, v); };
    keys[prefix + ".period_s"] = [&layer](auto& k, auto& v) { layer.period_s = parse_real(k, v); };
  };

  std::map<std::string, Setter> keys;
  layer_keys(leo, "leo", keys);
  layer_keys(geo, "geo", keys);
  keys["earth.radius_km"] = [&](auto& k, auto& v) { config.constellation.earth_radius_km = parse_real(k, v); };
  keys["earth.clearance_km"] = [&](auto& k, auto& v) { config.constellation.clearance_km = parse_real(k, v); };
  keys["slot.dt_s"] = [&](auto& k, auto& v) { config.slot_length_s = parse_real(k, v); };
  keys["slot.horizon_s"] = [&](auto& k, auto& v) { config.horizon_s = parse_real(k, v); };
  keys["slot.step_s"] = [&](auto& k, auto& v) { config.step_s = parse_real(k, v); };
  keys["las.count"] = [&](auto& k, auto& v) { config.count = parse_number<int>(k, v); };
  keys["las.schemes"] = [&](auto& k, auto& v) {
    config.schemes.clear();
    for (const auto& item : split_list(v)) {
      const auto s = parse_scheme(item);
      if (!s) throw ConfigError("unknown scheme in " + k + ": '" + item + "'");
      config.schemes.push_back(*s);
    }
  };
  keys["nodes.d_leo"] = [&](auto& k, auto& v) { config.d_leo = parse_number<int>(k, v); };
  keys["nodes.d_geo"] = [&](auto& k, auto& v) {
    config.d_geo.clear();
    for (const auto& item : split_list(v)) config.d_geo.push_back(parse_number<int>(k, item));
  };
  keys["rwa.max_hops"] = [&](auto& k, auto& v) {
    config.max_hops.clear();
    for (const auto& item : split_list(v)) config.max_hops.push_back(parse_hops(k, item));
  };
  keys["rwa.k_cap"] = [&](auto& k, auto& v) { config.k_cap = parse_number<int>(k, v); };
  keys["rwa.reps"] = [&](auto& k, auto& v) { config.reps = parse_number<int>(k, v); };
  keys["seed"] = [&](auto& k, auto& v) { config.seed = parse_number<std::uint64_t>(k, v); };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
    it->second(key, value);
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  return parse_config(in);
}

std::string format_config(const ExperimentConfig& config) {
  std::ostringstream out;
  auto layer = [&](const LayerSpec& l, const char* prefix) {
    out << prefix << ".sats = " << l.total_sats << "\n"
        << prefix << ".planes = " << l.planes << "\n"
        << prefix << ".phase = " << l.phase_factor << "\n"
        << prefix << ".alt_km = " << real_text(l.altitude_km) << "\n"
        << prefix << ".incl_deg = " << real_text(l.inclination_deg) << "\n"
        << prefix << ".period_s = " << real_text(l.period_s) << "\n";
  };
  layer(config.constellation.layer_spec(Layer::kLeo), "leo");
  layer(config.constellation.layer_spec(Layer::kGeo), "geo");
  out << "earth.radius_km = " << real_text(config.constellation.earth_radius_km) << "\n"
      << "earth.clearance_km = " << real_text(config.constellation.clearance_km) << "\n"
      << "slot.dt_s = " << real_text(config.slot_length_s) << "\n"
      << "slot.horizon_s = " << real_text(config.horizon_s) << "\n"
      << "slot.step_s = " << real_text(config.step_s) << "\n"
      << "las.count = " << config.count << "\n"
      << "las.schemes = ";
  for (std::size_t i = 0; i < config.schemes.size(); ++i) out << (i ? "," : "") << scheme_name(config.schemes[i]);
  out << "\nnodes.d_leo = " << config.d_leo << "\nnodes.d_geo = ";
  for (std::size_t i = 0; i < config.d_geo.size(); ++i) out << (i ? "," : "") << config.d_geo[i];
  out << "\nrwa.max_hops = ";
  for (std::size_t i = 0; i < config.max_hops.size(); ++i) {
    out << (i ? "," : "");
    if (config.max_hops[i] == kUnlimitedHops)
      out << "inf";
    else
      out << config.max_hops[i];
  }
  out << "\nrwa.k_cap = " << config.k_cap << "\nrwa.reps = " << config.reps << "\nseed = " << config.seed << "\n";
  return out.str();
}

}  // namespace dwrosn
