#include "dwrosn/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dwrosn {

double utilization(const TopologySnapshot& snapshot) {
  long used = 0;
  long budget = 0;
  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    used += snapshot.used_terminals(static_cast<int>(i));
    budget += snapshot.degree(static_cast<int>(i));
  }
  return budget == 0 ? 0.0 : static_cast<double>(used) / static_cast<double>(budget);
}

double avg_distance(const TopologySnapshot& snapshot) { return average_hops(hop_matrix(snapshot)); }

double connectivity(const HopMatrix& hops, int max_hops) {
  if (max_hops < 1) throw std::invalid_argument("max_hops must be >= 1");
  const std::size_t n = hops.size();
  if (n < 2) return 1.0;
  const int unreachable = static_cast<int>(n);
  std::size_t reachable = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && hops(i, j) < unreachable && hops(i, j) <= max_hops) ++reachable;
  return static_cast<double>(reachable) / static_cast<double>(n * (n - 1));
}

double connectivity(const TopologySnapshot& snapshot, int max_hops) {
  return connectivity(hop_matrix(snapshot), max_hops);
}

double HopDistribution::mean() const {
  double total = 0.0;
  double weight = 0.0;
  for (const auto& [h, f] : fraction) {
    total += h * f;
    weight += f;
  }
  return weight > 0.0 ? total / weight : 0.0;
}

HopDistribution hop_distribution(const HopMatrix& hops) {
  const std::size_t n = hops.size();
  HopDistribution dist;
  if (n < 2) return dist;
  const int unreachable = static_cast<int>(n);
  std::map<int, std::size_t> counts;
  std::size_t missing = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (hops(i, j) >= unreachable)
        ++missing;
      else
        ++counts[hops(i, j)];
    }
  }
  const auto pairs = static_cast<double>(n * (n - 1));
  for (const auto& [h, c] : counts) dist.fraction[h] = static_cast<double>(c) / pairs;
  dist.unreachable = static_cast<double>(missing) / pairs;
  return dist;
}

HopDistribution hop_distribution(const TopologySnapshot& snapshot) {
  return hop_distribution(hop_matrix(snapshot));
}

int diameter(const HopMatrix& hops) {
  const int unreachable = static_cast<int>(hops.size());
  int d = 0;
  for (int h : hops.data())
    if (h < unreachable) d = std::max(d, h);
  return d;
}

SummaryStats summarize(const std::vector<double>& values) {
  if (values.empty()) return {};
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size()), *lo, *hi};
}

MetricsReport topology_metrics(const TopologySnapshot& snapshot, const std::vector<int>& max_hops) {
  const HopMatrix hops = hop_matrix(snapshot);
  MetricsReport report;
  report.alpha = utilization(snapshot);
  report.hops = hop_distribution(hops);
  report.hbar = report.hops.unreachable > 0.0 ? std::numeric_limits<double>::quiet_NaN() : average_hops(hops);
  for (int h : max_hops) report.beta[h] = connectivity(hops, h);
  return report;
}

}  // namespace dwrosn
