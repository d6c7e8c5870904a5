#include "dwrosn/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dwrosn/experiment.hpp"

namespace dwrosn {

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string scheme;
  std::optional<int> slot;
  std::string out_dir = "out";
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Experiment config (key = value)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", flags.seed, "Master seed (overrides config)");
  cmd->add_option("--scheme", flags.scheme, "Restrict to one scheme: peim, act, greedy");
  cmd->add_option("--slot", flags.slot, "Process a single slot index");
  cmd->add_option("--out", flags.out_dir, "Output directory");
  cmd->add_option("--format", flags.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExperimentConfig resolve_config(const CommonFlags& flags) {
  ExperimentConfig config = flags.config_path.empty() ? ExperimentConfig{} : load_config(flags.config_path);
  if (flags.seed) config.seed = *flags.seed;
  if (!flags.scheme.empty()) {
    const auto s = parse_scheme(flags.scheme);
    if (!s) throw UsageError("unknown scheme '" + flags.scheme + "'");
    config.schemes = {*s};
  }
  config.validate();
  return config;
}

OutputFormat format_of(const CommonFlags& flags) {
  return flags.format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
}

void report_written(std::ostream& out, const std::filesystem::path& dir) {
  out << "wrote results to " << dir.string() << "\n";
}

int run_propagate(const CommonFlags& flags, double interval, std::ostream& out) {
  const ExperimentConfig config = resolve_config(flags);
  const auto slots = resolve_slots(config, flags.slot);
  write_table(positions_table(config, slots, interval), flags.out_dir, format_of(flags));
  report_written(out, flags.out_dir);
  return kExitOk;
}

int run_census(const CommonFlags& flags, std::ostream& out) {
  const ExperimentConfig config = resolve_config(flags);
  const auto slots = resolve_slots(config, flags.slot);
  for (const Table& t : census_tables(config, slots)) write_table(t, flags.out_dir, format_of(flags));
  for (const Table& t : census_tables(config, slots)) {
    if (t.name != "census") continue;
    for (const auto& row : t.rows) {
      if (format_cell(row[1]) == "total")
        out << "t=" << format_cell(row[0]) << " potential links: " << format_cell(row[3]) << "\n";
    }
  }
  report_written(out, flags.out_dir);
  return kExitOk;
}

int run_assign_or_rwa(const CommonFlags& flags, bool with_rwa, const std::string& topology_path, std::ostream& out,
                      std::ostream& log) {
  const ExperimentConfig config = resolve_config(flags);
  const auto slots = resolve_slots(config, flags.slot);
  const int d_geo = config.comparison_d_geo();
  const NodeSet nodes = NodeSet::uniform(config.constellation, config.d_leo, d_geo);
  ExperimentReport report;

  if (!topology_path.empty()) {
    std::ifstream in(topology_path);
    if (!in) throw std::filesystem::filesystem_error("cannot open topology", topology_path, std::error_code());
    const TopologySnapshot snap = read_edge_list(in, config.constellation, nodes);
    const int slot = static_cast<int>(std::lround(snap.slot_start() / config.slot_length_s));
    // A loaded topology is evaluated like a pool of one under the first scheme label.
    CellResult cell;
    cell.slot = slot;
    cell.scheme = config.schemes.front();
    cell.d_geo = d_geo;
    cell.topology = snap;
    std::vector<int> bounds;
    for (int h : config.max_hops) bounds.push_back(h == kUnlimitedHops ? static_cast<int>(nodes.size()) : h);
    cell.metrics = topology_metrics(snap, bounds);
    cell.pool_hbar_min = cell.pool_hbar_max = cell.metrics.hbar;
    const double t0 = snap.slot_start();
    const int widest = *std::max_element(config.max_hops.begin(), config.max_hops.end());
    const PathTable paths =
        build_path_table(snap, link_delay_ms(snap, config.constellation, t0), widest, config.k_cap);
    for (int h : config.max_hops) {
      RwaSummary summary;
      summary.max_hops = h;
      RwaOptions options;
      options.max_hops = h;
      options.k_cap = config.k_cap;
      options.eval_time = t0;
      for (int rep = 0; rep < config.reps; ++rep) {
        Rng rng(rwa_seed(config, slot, cell.scheme, d_geo, rep));
        const RwaResult r = rwa_run(paths, snap, config.constellation, options, rng);
        summary.beta = r.beta;
        summary.n_lambda.push_back(r.n_lambda);
        summary.mean_delay_ms.push_back(r.mean_delay_ms());
        summary.unserved.push_back(r.unserved.size());
        if (h == widest) {
          for (double tau = t0; tau < t0 + config.slot_length_s; tau += config.delay_sample_s) {
            if (rep == 0) cell.delay_series.emplace_back(tau, 0.0);
          }
          for (auto& [tau, ms] : cell.delay_series) ms += mean_delay_at(r, config.constellation, tau) / config.reps;
        }
      }
      cell.rwa.push_back(std::move(summary));
    }
    append_cell_rows(cell, config, report);
  } else {
    for (int slot : slots) {
      const PotentialLinkMatrix potential = slot_potential(config, slot);
      for (Scheme scheme : config.schemes) {
        CellResult cell = evaluate_cell(config, potential, slot, scheme, d_geo, with_rwa, &log);
        append_cell_rows(cell, config, report);
        std::ostringstream text;
        write_edge_list(text, cell.topology, nodes);
        report.topologies.emplace_back("topology_slot" + std::to_string(slot) + "_" +
                                           std::string(scheme_name(scheme)) + ".txt",
                                       text.str());
      }
    }
  }
  write_report(report, flags.out_dir, format_of(flags));
  report_written(out, flags.out_dir);
  return kExitOk;
}

int run_full(const CommonFlags& flags, std::ostream& out, std::ostream& log) {
  const ExperimentConfig config = resolve_config(flags);
  const auto slots = resolve_slots(config, flags.slot);
  const ExperimentReport report = run_experiment(config, slots, &log);
  write_report(report, flags.out_dir, format_of(flags));
  std::ofstream echo(std::filesystem::path(flags.out_dir) / "config.used", std::ios::binary);
  echo << format_config(config);
  report_written(out, flags.out_dir);
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual-layer optical satellite network link assignment and RWA simulator", "dwrosn"};
  app.require_subcommand(1);

  CommonFlags flags;
  double interval = 100.0;
  std::string topology_path;

  auto* propagate = app.add_subcommand("propagate", "Satellite ECI positions (positions.csv)");
  add_common(propagate, flags);
  propagate->add_option("--interval", interval, "Sampling interval in seconds");

  auto* census = app.add_subcommand("census", "Visible and potential link counts per slot");
  add_common(census, flags);

  auto* assign = app.add_subcommand("assign", "Build and select per-slot topologies");
  add_common(assign, flags);

  auto* rwa = app.add_subcommand("rwa", "Wavelength demand, connectivity and delay");
  add_common(rwa, flags);
  rwa->add_option("--topology", topology_path, "Evaluate this edge-list file instead of generating")
      ->check(CLI::ExistingFile);

  auto* experiment = app.add_subcommand("experiment", "Full pipeline over all slots and schemes");
  add_common(experiment, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*propagate) return run_propagate(flags, interval, out);
    if (*census) return run_census(flags, out);
    if (*assign) return run_assign_or_rwa(flags, false, "", out, err);
    if (*rwa) return run_assign_or_rwa(flags, true, topology_path, out, err);
    if (*experiment) return run_full(flags, out, err);
  } catch (const ConfigError& e) {
    err << "error: config: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfeasibleAssignment& e) {
    err << "error: infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: io: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    const std::string what = e.what();
    const bool io = what.rfind("cannot ", 0) == 0 || what.rfind("write failed", 0) == 0;
    err << "error: " << (io ? "io" : "internal") << ": " << what << "\n";
    return io ? kExitIo : kExitFailure;
  }
  return kExitFailure;
}

}  // namespace dwrosn
