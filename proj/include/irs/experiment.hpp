// SPDX-License-Identifier: Apache-2.0
//
// N-sweep experiment harness: scenario config files, Monte Carlo sweeps over
// beamforming schemes and architectures, CSV output and crossover location.
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irs/analysis.hpp"
#include "irs/beamform.hpp"
#include "irs/channel.hpp"

namespace irs {

enum class Architecture { kFully, kSemi };
enum class Scheme { kJoint, kReflectiveOnly, kTransmitOnly, kNone };
enum class AvgDomain { kDb, kLinear };

std::string_view to_string(ChannelModel c);
std::string_view to_string(Architecture a);
std::string_view to_string(Scheme s);
std::string_view to_string(AvgDomain d);
ChannelModel parse_channel_model(std::string_view text);
Architecture parse_architecture(std::string_view text);
Scheme parse_scheme(std::string_view text);
AvgDomain parse_avg_domain(std::string_view text);

struct SweepControls {
  int n_min = 10;
  int n_max = 100;
  int n_step = 10;
  int trials = 100;
  std::vector<Scheme> schemes{Scheme::kJoint, Scheme::kReflectiveOnly, Scheme::kTransmitOnly,
                              Scheme::kNone};
  std::vector<ChannelModel> channel_models{ChannelModel::kLos, ChannelModel::kRayleigh};
  int rand_count = 100;
  int sca_max_iter = 50;
  AvgDomain avg_domain = AvgDomain::kDb;

  [[nodiscard]] std::vector<int> grid() const;
  void validate() const;
};

struct ExperimentConfig {
  SystemConfig system;
  SweepControls sweep;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys, malformed
/// values and constraint violations throw ConfigInvalid. Power and loss keys
/// are given in dB (p0_dbm, sigma2_dbm, k0_db) and converted here.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(std::string_view text);
/// Throws IoError if the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

struct SweepRow {
  ChannelModel channel = ChannelModel::kLos;
  Architecture arch = Architecture::kFully;
  Scheme scheme = Scheme::kJoint;
  int n = 0;
  double snr_db_mean = 0.0;
  double snr_db_ci95 = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  int warnings = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by (channel, arch, scheme, N)
  AvgDomain avg_domain = AvgDomain::kDb;

  [[nodiscard]] const SweepRow* find(ChannelModel c, Architecture a, Scheme s, int n) const;
};

/// Independent stream for one (channel, N, trial, stream) tuple.
std::uint64_t derive_seed(std::uint64_t master, ChannelModel channel, int n, int trial,
                          int stream);

/// Per-trial SNRs (linear) for every requested scheme and both architectures.
struct TrialOutcome {
  // Indexed [scheme][arch]; unset entries stay NaN.
  double snr[4][2];
  int warnings[2] = {0, 0};
};

TrialOutcome run_trial(const SystemConfig& system, const SweepControls& controls,
                       ChannelModel channel, int trial, std::uint64_t seed);

/// Called after each (channel, N) grid point completes.
using SweepProgress = std::function<void(ChannelModel channel, int n)>;

SweepResult run_sweep(const ExperimentConfig& config, std::uint64_t seed,
                      const SweepProgress& progress = {});

/// Loads the config, runs the sweep and writes the CSV.
SweepResult run_sweep(const std::filesystem::path& config_path,
                      const std::filesystem::path& output_path, std::uint64_t seed);

inline constexpr std::string_view kCsvHeader =
    "channel,arch,scheme,N,snr_db_mean,snr_db_ci95,trials,seed,warnings";

/// A `# avg_domain=...` comment line followed by the header and the rows.
void write_csv(std::ostream& out, const SweepResult& result);
SweepResult read_csv(std::istream& in);

/// gnuplot data: one indexed block per (channel, arch, scheme) series.
void write_plot_data(std::ostream& out, const SweepResult& result);

struct CrossoverFinding {
  ChannelModel channel = ChannelModel::kLos;
  Scheme scheme = Scheme::kJoint;
  std::optional<int> n;  // none when fully-passive never stays ahead
};

/// Smallest sampled N from which fully-passive stays above semi-passive.
/// Throws GridMismatch when the two architectures were sampled on
/// different N grids.
std::vector<CrossoverFinding> crossover_scan(const SweepResult& sweep);

}  // namespace irs
