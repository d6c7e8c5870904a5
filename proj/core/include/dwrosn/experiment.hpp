#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dwrosn/config.hpp"
#include "dwrosn/las.hpp"
#include "dwrosn/metrics.hpp"
#include "dwrosn/report.hpp"
#include "dwrosn/rwa.hpp"
#include "dwrosn/topology.hpp"

namespace dwrosn {

// RWA outcome of one (slot, scheme, d_geo) cell under one hop bound.
struct RwaSummary {
  int max_hops = kUnlimitedHops;
  double beta = 0.0;
  std::vector<int> n_lambda;          // per repetition
  std::vector<double> mean_delay_ms;  // per repetition, positions at slot start
  std::vector<std::size_t> unserved;  // per repetition
};

struct CellResult {
  int slot = 0;
  Scheme scheme = Scheme::kPeim;
  int d_geo = 6;
  double pool_hbar_min = 0.0;
  double pool_hbar_max = 0.0;
  TopologySnapshot topology;
  MetricsReport metrics;
  std::vector<RwaSummary> rwa;  // parallel to config.max_hops; empty when RWA is skipped
  // Mean request delay (over repetitions) of the widest hop bound, re-evaluated
  // every delay_sample_s across the slot.
  std::vector<std::pair<double, double>> delay_series;

  const RwaSummary* rwa_for(int max_hops) const;
  const RwaSummary* widest_rwa() const;
};

// Substream keys; every random draw is a pure function of these tuples.
std::uint64_t pool_seed(const ExperimentConfig& config, int slot, Scheme scheme, int d_geo);
std::uint64_t rwa_seed(const ExperimentConfig& config, int slot, Scheme scheme, int d_geo, int rep);

PotentialLinkMatrix slot_potential(const ExperimentConfig& config, int slot);

// Pool generation, selection, topology metrics and (optionally) RWA
// repetitions for one cell.
CellResult evaluate_cell(const ExperimentConfig& config, const PotentialLinkMatrix& potential, int slot,
                         Scheme scheme, int d_geo, bool with_rwa, std::ostream* log = nullptr);

// Slots to process: all of them, or the single requested one (validated).
std::vector<int> resolve_slots(const ExperimentConfig& config, std::optional<int> slot);

struct ExperimentReport {
  std::vector<Table> tables;
  std::vector<std::pair<std::string, std::string>> topologies;  // file name, edge-list text
};

Table positions_table(const ExperimentConfig& config, const std::vector<int>& slots, double interval_s);
std::vector<Table> census_tables(const ExperimentConfig& config, const std::vector<int>& slots);

// Table rows for a list of evaluated cells.
void append_cell_rows(const CellResult& cell, const ExperimentConfig& config, ExperimentReport& report);

// Full pipeline over the requested slots.
ExperimentReport run_experiment(const ExperimentConfig& config, const std::vector<int>& slots,
                                std::ostream* log = nullptr);

void write_report(const ExperimentReport& report, const std::filesystem::path& dir, OutputFormat format);

std::string hops_label(int max_hops);  // "inf" for kUnlimitedHops

}  // namespace dwrosn
