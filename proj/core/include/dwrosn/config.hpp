#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwrosn/las.hpp"
#include "dwrosn/orbital.hpp"
#include "dwrosn/rwa.hpp"

namespace dwrosn {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  ConstellationSpec constellation = ConstellationSpec::reference();
  double slot_length_s = 2000.0;
  double horizon_s = 20000.0;
  double step_s = 1.0;
  int count = 100;
  std::vector<Scheme> schemes{Scheme::kPeim, Scheme::kAct, Scheme::kGreedy};
  int d_leo = 5;
  // More than one value turns on the GEO-degree sweep (PEIM only).
  std::vector<int> d_geo{6};
  std::vector<int> max_hops{1, 2, 3, 4, 5, 6, 7, 8, kUnlimitedHops};
  int k_cap = 16;
  int reps = 10;
  std::uint64_t seed = 1;
  double delay_sample_s = 100.0;

  void validate() const;  // throws ConfigError
  int slot_count() const;
  double slot_start(int slot) const { return slot * slot_length_s; }
  // GEO degree for the scheme comparison: 6 when listed, else the first entry.
  int comparison_d_geo() const;
};

// Flat `key = value` text with `#` comments. Unknown keys, malformed values
// and invariant violations raise ConfigError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical text form; parse_config(format_config(c)) == c field by field.
std::string format_config(const ExperimentConfig& config);

}  // namespace dwrosn
