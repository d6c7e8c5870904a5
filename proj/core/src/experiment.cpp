#include "dwrosn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace dwrosn {

namespace {

constexpr std::uint64_t kPoolTag = 0x706f6f6cULL;  // "pool"
constexpr std::uint64_t kRwaTag = 0x00727761ULL;   // "rwa"

std::int64_t i64(auto v) { return static_cast<std::int64_t>(v); }

Table make_table(std::string name, std::vector<std::string> columns) {
  return Table{std::move(name), std::move(columns), {}};
}

Table& table(ExperimentReport& report, const std::string& name, const std::vector<std::string>& columns) {
  for (auto& t : report.tables)
    if (t.name == name) return t;
  report.tables.push_back(make_table(name, columns));
  return report.tables.back();
}

std::string scheme_text(Scheme s) { return std::string(scheme_name(s)); }

}  // namespace

std::string hops_label(int max_hops) {
  return max_hops == kUnlimitedHops ? std::string("inf") : std::to_string(max_hops);
}

const RwaSummary* CellResult::rwa_for(int max_hops) const {
  for (const auto& r : rwa)
    if (r.max_hops == max_hops) return &r;
  return nullptr;
}

const RwaSummary* CellResult::widest_rwa() const {
  const RwaSummary* best = nullptr;
  for (const auto& r : rwa)
    if (!best || r.max_hops > best->max_hops) best = &r;
  return best;
}

std::uint64_t pool_seed(const ExperimentConfig& config, int slot, Scheme scheme, int d_geo) {
  return derive_seed({config.seed, kPoolTag, static_cast<std::uint64_t>(slot), static_cast<std::uint64_t>(scheme),
                      static_cast<std::uint64_t>(d_geo)});
}

std::uint64_t rwa_seed(const ExperimentConfig& config, int slot, Scheme scheme, int d_geo, int rep) {
  return derive_seed({config.seed, kRwaTag, static_cast<std::uint64_t>(slot), static_cast<std::uint64_t>(scheme),
                      static_cast<std::uint64_t>(d_geo), static_cast<std::uint64_t>(rep)});
}

PotentialLinkMatrix slot_potential(const ExperimentConfig& config, int slot) {
  const NodeSet nodes = NodeSet::uniform(config.constellation, 1, 1);
  return build_potential_matrix(config.constellation, nodes, config.slot_start(slot), config.slot_length_s,
                                config.step_s);
}

CellResult evaluate_cell(const ExperimentConfig& config, const PotentialLinkMatrix& potential, int slot,
                         Scheme scheme, int d_geo, bool with_rwa, std::ostream* log) {
  const NodeSet nodes = NodeSet::uniform(config.constellation, config.d_leo, d_geo);
  const CandidatePool pool =
      generate_and_select(scheme, potential, nodes, PoolOptions{config.count, 0}, pool_seed(config, slot, scheme, d_geo));

  CellResult cell;
  cell.slot = slot;
  cell.scheme = scheme;
  cell.d_geo = d_geo;
  cell.pool_hbar_min = pool.min_hbar();
  cell.pool_hbar_max = pool.max_hbar();
  cell.topology = pool.best();

  std::vector<int> finite_hops;
  for (int h : config.max_hops) finite_hops.push_back(h == kUnlimitedHops ? static_cast<int>(nodes.size()) : h);
  cell.metrics = topology_metrics(cell.topology, finite_hops);

  if (log) {
    *log << "slot " << slot << " " << scheme_name(scheme) << " d_geo=" << d_geo << ": pool hbar min "
         << cell.pool_hbar_min << " max " << cell.pool_hbar_max << ", selected " << pool.best_hbar()
         << ", alpha " << cell.metrics.alpha << "\n";
  }
  if (!with_rwa) return cell;

  const double t0 = config.slot_start(slot);
  const int widest = *std::max_element(config.max_hops.begin(), config.max_hops.end());
  const PathTable paths = build_path_table(cell.topology, link_delay_ms(cell.topology, config.constellation, t0),
                                           widest, config.k_cap);

  std::vector<double> taus;
  for (long k = 0;; ++k) {
    const double tau = t0 + static_cast<double>(k) * config.delay_sample_s;
    if (tau >= t0 + config.slot_length_s) break;
    taus.push_back(tau);
  }
  std::vector<double> series(taus.size(), 0.0);

  for (int h : config.max_hops) {
    RwaSummary summary;
    summary.max_hops = h;
    RwaOptions options;
    options.max_hops = h;
    options.k_cap = config.k_cap;
    options.eval_time = t0;
    for (int rep = 0; rep < config.reps; ++rep) {
      Rng rng(rwa_seed(config, slot, scheme, d_geo, rep));
      const RwaResult result = rwa_run(paths, cell.topology, config.constellation, options, rng);
      summary.beta = result.beta;
      summary.n_lambda.push_back(result.n_lambda);
      summary.mean_delay_ms.push_back(result.mean_delay_ms());
      summary.unserved.push_back(result.unserved.size());
      if (h == widest) {
        for (std::size_t k = 0; k < taus.size(); ++k)
          series[k] += mean_delay_at(result, config.constellation, taus[k]) / config.reps;
      }
    }
    cell.rwa.push_back(std::move(summary));
  }
  for (std::size_t k = 0; k < taus.size(); ++k) cell.delay_series.emplace_back(taus[k], series[k]);
  if (log) {
    const RwaSummary* w = cell.widest_rwa();
    std::vector<double> nl(w->n_lambda.begin(), w->n_lambda.end());
    *log << "  rwa max_hops=" << hops_label(widest) << ": mean n_lambda " << summarize(nl).mean
         << ", mean delay " << summarize(w->mean_delay_ms).mean << " ms\n";
  }
  return cell;
}

std::vector<int> resolve_slots(const ExperimentConfig& config, std::optional<int> slot) {
  if (slot) {
    if (*slot < 0 || *slot >= config.slot_count())
      throw ConfigError("slot " + std::to_string(*slot) + " outside [0, " + std::to_string(config.slot_count()) + ")");
    return {*slot};
  }
  std::vector<int> all(static_cast<std::size_t>(config.slot_count()));
  for (int s = 0; s < config.slot_count(); ++s) all[static_cast<std::size_t>(s)] = s;
  return all;
}

Table positions_table(const ExperimentConfig& config, const std::vector<int>& slots, double interval_s) {
  if (!(interval_s > 0.0)) throw ConfigError("propagation interval must be positive");
  Table out = make_table("positions", {"t", "sat", "x_km", "y_km", "z_km"});
  const auto sats = config.constellation.satellites();
  for (int slot : slots) {
    const double t0 = config.slot_start(slot);
    for (long k = 0;; ++k) {
      const double t = t0 + static_cast<double>(k) * interval_s;
      if (t >= t0 + config.slot_length_s) break;
      const auto pos = positions_at(config.constellation, t);
      for (std::size_t i = 0; i < sats.size(); ++i)
        out.add_row({t, format_satellite(sats[i]), pos[i].x, pos[i].y, pos[i].z});
    }
  }
  return out;
}

std::vector<Table> census_tables(const ExperimentConfig& config, const std::vector<int>& slots) {
  Table total = make_table("census", {"t", "class", "visible", "potential"});
  Table per_node = make_table("census_nodes", {"t", "sat", "class", "visible", "potential"});
  const NodeSet nodes = NodeSet::uniform(config.constellation, 1, 1);
  for (int slot : slots) {
    const double t0 = config.slot_start(slot);
    const LinkCensus census = link_census(nodes, visibility_matrix(config.constellation, nodes, t0),
                                          slot_potential(config, slot));
    for (std::size_t c = 0; c < kLinkClassCount; ++c) {
      total.add_row({t0, std::string(link_class_name(static_cast<LinkClass>(c))), i64(census.visible[c]),
                     i64(census.potential[c])});
    }
    total.add_row({t0, std::string("total"), i64(census.total_visible()), i64(census.total_potential())});
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t c = 0; c < kLinkClassCount; ++c) {
        per_node.add_row({t0, format_satellite(nodes.nodes[i]),
                          std::string(link_class_name(static_cast<LinkClass>(c))),
                          i64(census.node_visible[i][c]), i64(census.node_potential[i][c])});
      }
    }
  }
  return {std::move(total), std::move(per_node)};
}

void append_cell_rows(const CellResult& cell, const ExperimentConfig& config, ExperimentReport& report) {
  const std::string scheme = scheme_text(cell.scheme);
  const auto slot = i64(cell.slot);

  table(report, "pool", {"slot", "scheme", "d_geo", "hbar_min", "hbar_max", "hbar_selected"})
      .add_row({slot, scheme, i64(cell.d_geo), cell.pool_hbar_min, cell.pool_hbar_max, cell.metrics.hbar});
  table(report, "topo_metrics", {"slot", "scheme", "alpha", "hbar"})
      .add_row({slot, scheme, cell.metrics.alpha, cell.metrics.hbar});

  Table& hopdist = table(report, "hopdist", {"slot", "scheme", "hops", "fraction"});
  for (const auto& [h, f] : cell.metrics.hops.fraction) hopdist.add_row({slot, scheme, i64(h), f});

  Table& conn = table(report, "connectivity", {"slot", "scheme", "max_hops", "beta"});
  for (std::size_t k = 0; k < config.max_hops.size(); ++k) {
    const int h = config.max_hops[k];
    const int bound = h == kUnlimitedHops ? static_cast<int>(cell.topology.size()) : h;
    conn.add_row({slot, scheme, hops_label(h), cell.metrics.beta.at(bound)});
  }

  if (cell.rwa.empty()) return;
  const RwaSummary* widest = cell.widest_rwa();
  Table& wl = table(report, "wavelength", {"slot", "scheme", "rep", "n_lambda"});
  for (std::size_t r = 0; r < widest->n_lambda.size(); ++r)
    wl.add_row({slot, scheme, i64(r), i64(widest->n_lambda[r])});

  Table& wlh = table(report, "wavelength_hops", {"slot", "scheme", "max_hops", "rep", "n_lambda", "beta", "unserved"});
  for (const auto& summary : cell.rwa) {
    for (std::size_t r = 0; r < summary.n_lambda.size(); ++r)
      wlh.add_row({slot, scheme, hops_label(summary.max_hops), i64(r), i64(summary.n_lambda[r]), summary.beta,
                   i64(summary.unserved[r])});
  }

  Table& delay = table(report, "delay", {"slot", "scheme", "tau_s", "mean_delay_ms"});
  for (const auto& [tau, ms] : cell.delay_series) delay.add_row({slot, scheme, tau, ms});
}

namespace {

void append_summary(const std::vector<CellResult>& cells, const ExperimentConfig& config, ExperimentReport& report) {
  Table& summary = table(report, "summary",
                         {"scheme", "alpha_mean", "hbar_mean", "n_lambda_mean", "n_lambda_min", "n_lambda_max",
                          "delay_ms_mean"});
  for (Scheme scheme : config.schemes) {
    std::vector<double> alpha, hbar, nl, delay;
    for (const auto& c : cells) {
      if (c.scheme != scheme) continue;
      alpha.push_back(c.metrics.alpha);
      hbar.push_back(c.metrics.hbar);
      if (const RwaSummary* w = c.widest_rwa()) {
        for (int v : w->n_lambda) nl.push_back(v);
        for (double d : w->mean_delay_ms) delay.push_back(d);
      }
    }
    const SummaryStats nls = summarize(nl);
    summary.add_row({scheme_text(scheme), summarize(alpha).mean, summarize(hbar).mean, nls.mean, nls.min, nls.max,
                     summarize(delay).mean});
  }
}

void append_sweep_rows(const CellResult& cell, ExperimentReport& report) {
  Table& sweep = table(report, "degree_sweep", {"slot", "d_geo", "hbar", "max_hops", "beta", "n_lambda_mean"});
  for (const auto& r : cell.rwa) {
    std::vector<double> nl(r.n_lambda.begin(), r.n_lambda.end());
    sweep.add_row({i64(cell.slot), i64(cell.d_geo), cell.metrics.hbar, hops_label(r.max_hops), r.beta,
                   summarize(nl).mean});
  }
}

std::string topology_file_name(const CellResult& cell) {
  std::ostringstream name;
  name << "topology_slot" << cell.slot << "_" << scheme_name(cell.scheme) << "_dgeo" << cell.d_geo << ".txt";
  return name.str();
}

std::string edge_list_text(const CellResult& cell, const ExperimentConfig& config) {
  std::ostringstream text;
  write_edge_list(text, cell.topology, NodeSet::uniform(config.constellation, config.d_leo, cell.d_geo));
  return text.str();
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config, const std::vector<int>& slots, std::ostream* log) {
  config.validate();
  ExperimentReport report;
  for (Table& t : census_tables(config, slots)) report.tables.push_back(std::move(t));

  const int d_main = config.comparison_d_geo();
  const bool sweep = config.d_geo.size() > 1;
  std::vector<CellResult> main_cells;

  for (int slot : slots) {
    const PotentialLinkMatrix potential = slot_potential(config, slot);
    for (Scheme scheme : config.schemes) {
      CellResult cell = evaluate_cell(config, potential, slot, scheme, d_main, true, log);
      append_cell_rows(cell, config, report);
      report.topologies.emplace_back(topology_file_name(cell), edge_list_text(cell, config));
      cell.topology = TopologySnapshot();  // keep only the summaries around
      main_cells.push_back(std::move(cell));
    }
    if (!sweep) continue;
    for (int d : config.d_geo) {
      const CellResult* reuse = nullptr;
      if (d == d_main) {
        for (const auto& c : main_cells)
          if (c.slot == slot && c.scheme == Scheme::kPeim) reuse = &c;
      }
      if (reuse) {
        append_sweep_rows(*reuse, report);
        continue;
      }
      const CellResult cell = evaluate_cell(config, potential, slot, Scheme::kPeim, d, true, log);
      append_sweep_rows(cell, report);
      report.topologies.emplace_back(topology_file_name(cell), edge_list_text(cell, config));
    }
  }
  append_summary(main_cells, config, report);
  return report;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir, OutputFormat format) {
  for (const Table& t : report.tables) write_table(t, dir, format);
  if (report.topologies.empty()) return;
  const auto topo_dir = dir / "topologies";
  std::filesystem::create_directories(topo_dir);
  for (const auto& [name, text] : report.topologies) {
    std::ofstream out(topo_dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + (topo_dir / name).string() + "'");
    out << text;
  }
}

}  // namespace dwrosn
