// SPDX-License-Identifier: Apache-2.0
//
// irs_sense: sweeps, single-point SNR evaluation, closed-form cross-checks
// and plot data for fully- vs semi-passive IRS sensing.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "irs/analysis.hpp"
#include "irs/checks.hpp"
#include "irs/errors.hpp"
#include "irs/experiment.hpp"
#include "irs/snr.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 1;
  std::string n_range;
  std::optional<int> trials;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Scenario config file (key = value)");
  cmd->add_option("--out", o.out_path, "Output file (default: stdout)");
  cmd->add_option("--seed", o.seed, "Master RNG seed")->capture_default_str();
  cmd->add_option("--n-range", o.n_range, "Element sweep A:B:S (overrides n_min/n_max/n_step)");
  cmd->add_option("--trials", o.trials, "Rayleigh trials per point");
  cmd->add_flag("--quiet", o.quiet, "Suppress progress and summaries on stderr");
}

irs::ExperimentConfig resolve_config(const CommonOptions& o) {
  irs::ExperimentConfig cfg =
      o.config_path.empty() ? irs::ExperimentConfig{} : irs::load_config(o.config_path);
  if (!o.n_range.empty()) {
    int a = 0, b = 0, s = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(o.n_range);
    if (!(in >> a >> c1 >> b >> c2 >> s) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
      throw irs::ConfigInvalid("--n-range expects A:B:S, got '" + o.n_range + "'");
    }
    cfg.sweep.n_min = a;
    cfg.sweep.n_max = b;
    cfg.sweep.n_step = s;
  }
  if (o.trials) cfg.sweep.trials = *o.trials;
  cfg.system.validate();
  cfg.sweep.validate();
  return cfg;
}

/// Runs `emit` against --out or stdout.
template <typename Emit>
void with_output(const std::string& path, Emit&& emit) {
  if (path.empty()) {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw irs::IoError("cannot open output file '" + path + "'");
  emit(out);
  if (!out) throw irs::IoError("failed writing '" + path + "'");
}

void print_crossovers(const irs::SweepResult& result) {
  for (const irs::CrossoverFinding& f : irs::crossover_scan(result)) {
    std::cerr << "crossover " << irs::to_string(f.channel) << '/' << irs::to_string(f.scheme) << ": "
              << (f.n ? std::to_string(*f.n) : std::string("none")) << "\n";
  }
}

int cmd_sweep(const CommonOptions& o) {
  const irs::ExperimentConfig cfg = resolve_config(o);
  irs::SweepProgress progress;
  if (!o.quiet) {
    progress = [](irs::ChannelModel c, int n) {
      std::cerr << "  " << irs::to_string(c) << " N=" << n << " done\n";
    };
  }
  const irs::SweepResult result = irs::run_sweep(cfg, o.seed, progress);
  with_output(o.out_path, [&](std::ostream& out) { irs::write_csv(out, result); });
  if (!o.quiet) print_crossovers(result);
  return kExitOk;
}

int cmd_snr(const CommonOptions& o, int n, const std::string& channel, const std::string& scheme) {
  irs::ExperimentConfig cfg = resolve_config(o);
  const irs::ChannelModel model = irs::parse_channel_model(channel);
  const irs::Scheme sch = irs::parse_scheme(scheme);
  cfg.sweep.n_min = cfg.sweep.n_max = n > 0 ? n : cfg.system.n;
  cfg.sweep.n_step = 1;
  cfg.sweep.channel_models = {model};
  cfg.sweep.schemes = {sch};
  const irs::SweepResult result = irs::run_sweep(cfg, o.seed);
  const irs::SweepRow* fully =
      result.find(model, irs::Architecture::kFully, sch, cfg.sweep.n_min);
  const irs::SweepRow* semi = result.find(model, irs::Architecture::kSemi, sch, cfg.sweep.n_min);
  with_output(o.out_path, [&](std::ostream& out) {
    out << "channel,scheme,N,snr_fully_db,snr_semi_db,trials,seed\n";
    out << channel << ',' << scheme << ',' << fully->n << ',' << fully->snr_db_mean << ','
        << semi->snr_db_mean << ',' << fully->trials << ',' << o.seed << "\n";
  });
  return kExitOk;
}

int cmd_check(const CommonOptions& o) {
  const irs::ExperimentConfig cfg = resolve_config(o);
  bool all = true;
  with_output(o.out_path, [&](std::ostream& out) {
    for (const irs::CheckResult& r : irs::run_consistency_checks(cfg.system, o.seed)) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << " -- " << r.detail << "\n";
      all = all && r.passed;
    }
  });
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_plot(const CommonOptions& o, const std::string& from_csv) {
  irs::SweepResult result;
  if (!from_csv.empty()) {
    std::ifstream in(from_csv);
    if (!in) throw irs::IoError("cannot open '" + from_csv + "'");
    result = irs::read_csv(in);
  } else {
    result = irs::run_sweep(resolve_config(o), o.seed);
  }
  with_output(o.out_path, [&](std::ostream& out) { irs::write_plot_data(out, result); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensing SNR of fully- versus semi-passive IRS architectures"};
  app.require_subcommand(1);

  CommonOptions sweep_opts, snr_opts, check_opts, plot_opts;
  auto* sweep = app.add_subcommand("sweep", "Run the N sweep and write the CSV table");
  add_common(sweep, sweep_opts);

  auto* snr = app.add_subcommand("snr", "Evaluate a single (channel, scheme, N) point");
  add_common(snr, snr_opts);
  int snr_n = 0;
  std::string snr_channel = "los";
  std::string snr_scheme = "joint";
  snr->add_option("--n", snr_n, "Number of IRS elements (default: config n)");
  snr->add_option("--channel", snr_channel, "los | rayleigh")->capture_default_str();
  snr->add_option("--scheme", snr_scheme, "joint | reflective_only | transmit_only | none")
      ->capture_default_str();

  auto* check = app.add_subcommand("check", "Cross-check the simulator against closed forms");
  add_common(check, check_opts);

  auto* plot = app.add_subcommand("plot", "Write gnuplot data for the SNR-versus-N curves");
  add_common(plot, plot_opts);
  std::string from_csv;
  plot->add_option("--from-csv", from_csv, "Convert an existing sweep CSV instead of running");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*sweep) return cmd_sweep(sweep_opts);
    if (*snr) return cmd_snr(snr_opts, snr_n, snr_channel, snr_scheme);
    if (*check) return cmd_check(check_opts);
    if (*plot) return cmd_plot(plot_opts, from_csv);
  } catch (const irs::ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const irs::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const irs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
