#pragma once

#include <map>
#include <vector>

#include "dwrosn/las.hpp"
#include "dwrosn/topology.hpp"

namespace dwrosn {

// Sum of used terminals over sum of terminal budgets.
double utilization(const TopologySnapshot& snapshot);

// Mean minimum hop count over ordered pairs; std::domain_error if disconnected.
double avg_distance(const TopologySnapshot& snapshot);

// Fraction of ordered pairs within max_hops hops. max_hops >= 1.
double connectivity(const TopologySnapshot& snapshot, int max_hops);
double connectivity(const HopMatrix& hops, int max_hops);

struct HopDistribution {
  std::map<int, double> fraction;  // hop count -> fraction of ordered pairs
  double unreachable = 0.0;

  double mean() const;  // weighted mean over finite hop values
};

HopDistribution hop_distribution(const TopologySnapshot& snapshot);
HopDistribution hop_distribution(const HopMatrix& hops);

// Largest finite hop count; the smallest max_hops with full connectivity
// when the snapshot is connected.
int diameter(const HopMatrix& hops);

struct SummaryStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

SummaryStats summarize(const std::vector<double>& values);

struct MetricsReport {
  double alpha = 0.0;
  double hbar = 0.0;  // NaN when the snapshot is disconnected
  std::map<int, double> beta;  // max_hops -> connectivity
  HopDistribution hops;
  SummaryStats wavelength_demand;
  SummaryStats delay_ms;
};

MetricsReport topology_metrics(const TopologySnapshot& snapshot, const std::vector<int>& max_hops);

}  // namespace dwrosn
