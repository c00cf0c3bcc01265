// SPDX-License-Identifier: Apache-2.0
#include "irs/experiment.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "irs/errors.hpp"
#include "irs/snr.hpp"

namespace irs {

// --- names ------------------------------------------------------------------

std::string_view to_string(ChannelModel c) { return c == ChannelModel::kLos ? "los" : "rayleigh"; }

std::string_view to_string(Architecture a) { return a == Architecture::kFully ? "fully" : "semi"; }

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::kJoint:
      return "joint";
    case Scheme::kReflectiveOnly:
      return "reflective_only";
    case Scheme::kTransmitOnly:
      return "transmit_only";
    case Scheme::kNone:
      return "none";
  }
  return "?";
}

std::string_view to_string(AvgDomain d) { return d == AvgDomain::kDb ? "db" : "linear"; }

ChannelModel parse_channel_model(std::string_view text) {
  if (text == "los") return ChannelModel::kLos;
  if (text == "rayleigh") return ChannelModel::kRayleigh;
  throw ConfigInvalid("unknown channel model '" + std::string(text) + "'");
}

Architecture parse_architecture(std::string_view text) {
  if (text == "fully") return Architecture::kFully;
  if (text == "semi") return Architecture::kSemi;
  throw ConfigInvalid("unknown architecture '" + std::string(text) + "'");
}

Scheme parse_scheme(std::string_view text) {
  if (text == "joint") return Scheme::kJoint;
  if (text == "reflective_only") return Scheme::kReflectiveOnly;
  if (text == "transmit_only") return Scheme::kTransmitOnly;
  if (text == "none") return Scheme::kNone;
  throw ConfigInvalid("unknown scheme '" + std::string(text) + "'");
}

AvgDomain parse_avg_domain(std::string_view text) {
  if (text == "db") return AvgDomain::kDb;
  if (text == "linear") return AvgDomain::kLinear;
  throw ConfigInvalid("unknown avg_domain '" + std::string(text) + "'");
}

// --- config -----------------------------------------------------------------

std::vector<int> SweepControls::grid() const {
  std::vector<int> out;
  for (int n = n_min; n <= n_max; n += n_step) {
    out.push_back(n);
  }
  return out;
}

void SweepControls::validate() const {
  if (n_min < 1 || n_max < n_min || n_step < 1) {
    throw ConfigInvalid("sweep range needs 1 <= n_min <= n_max and n_step >= 1");
  }
  if (trials < 1) throw ConfigInvalid("trials must be >= 1");
  if (rand_count < 1) throw ConfigInvalid("rand_count must be >= 1");
  if (sca_max_iter < 1) throw ConfigInvalid("sca_max_iter must be >= 1");
  if (schemes.empty()) throw ConfigInvalid("schemes must not be empty");
  if (channel_models.empty()) throw ConfigInvalid("channel_models must not be empty");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, int line) {
  std::ostringstream os;
  os << "line " << line << ": invalid value '" << value << "' for key '" << key << "'";
  throw ConfigInvalid(os.str());
}

double to_double(std::string_view key, std::string_view value, int line) {
  const std::string text(value);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    bad_value(key, value, line);
  }
  return v;
}

int to_int(std::string_view key, std::string_view value, int line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, line);
  }
  return v;
}

bool to_bool(std::string_view key, std::string_view value, int line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, line);
}

Point2 to_point(std::string_view key, std::string_view value, int line) {
  const auto parts = split(value, ',');
  if (parts.size() != 2) bad_value(key, value, line);
  return {to_double(key, parts[0], line), to_double(key, parts[1], line)};
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

template <typename T, typename Parse>
std::vector<T> to_list(std::string_view value, Parse parse) {
  std::vector<T> out;
  for (std::string_view item : split(value, ',')) {
    if (item.empty()) continue;
    const T parsed = parse(item);
    if (std::find(out.begin(), out.end(), parsed) == out.end()) {
      out.push_back(parsed);
    }
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  SystemConfig& sys = cfg.system;
  SweepControls& sw = cfg.sweep;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream os;
      os << "line " << line_no << ": expected 'key = value'";
      throw ConfigInvalid(os.str());
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "bs_pos") sys.bs_pos = to_point(key, value, line_no);
    else if (key == "irs_pos") sys.irs_pos = to_point(key, value, line_no);
    else if (key == "target_pos") sys.target_pos = to_point(key, value, line_no);
    else if (key == "m_t") sys.m_t = to_int(key, value, line_no);
    else if (key == "m_r") sys.m_r = to_int(key, value, line_no);
    else if (key == "n") sys.n = to_int(key, value, line_no);
    else if (key == "spacing_ratio") sys.spacing_ratio = to_double(key, value, line_no);
    else if (key == "p0_dbm") sys.p0 = dbm_to_watt(to_double(key, value, line_no));
    else if (key == "sigma2_dbm") sys.sigma2 = dbm_to_watt(to_double(key, value, line_no));
    else if (key == "k0_db") sys.k0 = from_db(to_double(key, value, line_no));
    else if (key == "d0") sys.d0 = to_double(key, value, line_no);
    else if (key == "alpha_bs_irs") sys.alpha_bs_irs = to_double(key, value, line_no);
    else if (key == "alpha_irs_target") sys.alpha_irs_target = to_double(key, value, line_no);
    else if (key == "rcs") sys.rcs = to_double(key, value, line_no);
    else if (key == "T") sys.symbols = to_int(key, value, line_no);
    else if (key == "reciprocal") sys.reciprocal = to_bool(key, value, line_no);
    else if (key == "n_min") sw.n_min = to_int(key, value, line_no);
    else if (key == "n_max") sw.n_max = to_int(key, value, line_no);
    else if (key == "n_step") sw.n_step = to_int(key, value, line_no);
    else if (key == "trials") sw.trials = to_int(key, value, line_no);
    else if (key == "rand_count") sw.rand_count = to_int(key, value, line_no);
    else if (key == "sca_max_iter") sw.sca_max_iter = to_int(key, value, line_no);
    else if (key == "avg_domain") sw.avg_domain = parse_avg_domain(value);
    else if (key == "schemes") sw.schemes = to_list<Scheme>(value, parse_scheme);
    else if (key == "channel_models")
      sw.channel_models = to_list<ChannelModel>(value, parse_channel_model);
    else {
      std::ostringstream os;
      os << "line " << line_no << ": unknown key '" << key << "'";
      throw ConfigInvalid(os.str());
    }
  }
  sys.validate();
  sw.validate();
  return cfg;
}

ExperimentConfig parse_config_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_config(in);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file '" + path.string() + "'");
  }
  return parse_config(in);
}

// --- sweep ------------------------------------------------------------------

const SweepRow* SweepResult::find(ChannelModel c, Architecture a, Scheme s, int n) const {
  for (const SweepRow& row : rows) {
    if (row.channel == c && row.arch == a && row.scheme == s && row.n == n) return &row;
  }
  return nullptr;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr int kStreamChannel = 0;
constexpr int kStreamPhases = 1;
constexpr int kStreamOptimizer = 2;

bool wants(const SweepControls& c, Scheme s) {
  return std::find(c.schemes.begin(), c.schemes.end(), s) != c.schemes.end();
}

int index_of(Scheme s) { return static_cast<int>(s); }
int index_of(Architecture a) { return static_cast<int>(a); }

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, ChannelModel channel, int n, int trial,
                          int stream) {
  std::uint64_t h = splitmix64(static_cast<std::uint64_t>(channel) + 1);
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  h = splitmix64(h ^ static_cast<std::uint64_t>(trial));
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return master ^ h;
}

TrialOutcome run_trial(const SystemConfig& system, const SweepControls& controls,
                       ChannelModel channel, int trial, std::uint64_t seed) {
  TrialOutcome out;
  for (auto& row : out.snr) {
    row[0] = row[1] = std::numeric_limits<double>::quiet_NaN();
  }
  const int n = system.n;
  const double p0 = system.p0;
  const double sigma2 = system.sigma2;

  ChannelSet ch;
  if (channel == ChannelModel::kLos) {
    ch = los_channels(system);
  } else {
    Rng rng(derive_seed(seed, channel, n, trial, kStreamChannel));
    ch = rayleigh_channels(system, rng);
  }

  const bool optimized = wants(controls, Scheme::kJoint) || wants(controls, Scheme::kReflectiveOnly);
  const bool random = wants(controls, Scheme::kTransmitOnly) || wants(controls, Scheme::kNone);
  const TransmitCovariance iso = isotropic_covariance(p0, system.m_t);

  auto record = [&](Scheme s, Architecture a, const TransmitCovariance& r, const ReflectPattern& phi) {
    if (!wants(controls, s)) return;
    const double value = a == Architecture::kFully ? snr_fully_passive(r, phi, ch, sigma2)
                                                   : snr_semi_passive(r, phi, ch, sigma2);
    out.snr[index_of(s)][index_of(a)] = value;
  };

  if (optimized) {
    ReflectPattern fully_phi;
    ReflectPattern semi_phi;
    if (channel == ChannelModel::kLos) {
      fully_phi = los_optimal_phases(ch.los->irs_steering, ch.target_steering);
      semi_phi = fully_phi;
    } else {
      Rng rng(derive_seed(seed, channel, n, trial, kStreamOptimizer));
      ScaOptions sca;
      sca.max_iter = controls.sca_max_iter;
      const P2Result p2 = optimize_p2(ch, sca, controls.rand_count, rng);
      const P3Result p3 = optimize_p3(ch, controls.rand_count, rng, sca.sdp);
      fully_phi = p2.phases;
      semi_phi = p3.phases;
      out.warnings[index_of(Architecture::kFully)] += p2.solver_warnings;
      out.warnings[index_of(Architecture::kSemi)] += p3.solver_warnings;
    }
    record(Scheme::kJoint, Architecture::kFully, mrt_covariance(fully_phi, ch, p0), fully_phi);
    record(Scheme::kJoint, Architecture::kSemi, mrt_covariance(semi_phi, ch, p0), semi_phi);
    record(Scheme::kReflectiveOnly, Architecture::kFully, iso, fully_phi);
    record(Scheme::kReflectiveOnly, Architecture::kSemi, iso, semi_phi);
  }
  if (random) {
    // Both random-phase schemes see the same draw.
    Rng rng(derive_seed(seed, channel, n, trial, kStreamPhases));
    const ReflectPattern phi = random_phases(n, rng);
    const TransmitCovariance mrt = mrt_covariance(phi, ch, p0);
    record(Scheme::kTransmitOnly, Architecture::kFully, mrt, phi);
    record(Scheme::kTransmitOnly, Architecture::kSemi, mrt, phi);
    record(Scheme::kNone, Architecture::kFully, iso, phi);
    record(Scheme::kNone, Architecture::kSemi, iso, phi);
  }
  return out;
}

namespace {

std::pair<double, double> summarize(const std::vector<double>& linear, AvgDomain domain) {
  const double count = static_cast<double>(linear.size());
  if (domain == AvgDomain::kDb) {
    double sum = 0.0;
    for (double v : linear) sum += to_db(v);
    const double mean = sum / count;
    if (linear.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : linear) ss += (to_db(v) - mean) * (to_db(v) - mean);
    const double sd = std::sqrt(ss / (count - 1.0));
    return {mean, 1.96 * sd / std::sqrt(count)};
  }
  double sum = 0.0;
  for (double v : linear) sum += v;
  const double mean = sum / count;
  if (linear.size() < 2) return {to_db(mean), 0.0};
  double ss = 0.0;
  for (double v : linear) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (count - 1.0));
  // First-order propagation of the CI of the mean into dB.
  return {to_db(mean), 10.0 / std::log(10.0) * 1.96 * sd / (std::sqrt(count) * mean)};
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& config, std::uint64_t seed,
                      const SweepProgress& progress) {
  config.system.validate();
  config.sweep.validate();
  const SweepControls& controls = config.sweep;
  SweepResult result;
  result.avg_domain = controls.avg_domain;

  for (ChannelModel channel : controls.channel_models) {
    const int trials = channel == ChannelModel::kLos ? 1 : controls.trials;
    for (int n : controls.grid()) {
      const SystemConfig system = config.system.with_elements(n);
      std::vector<double> samples[4][2];
      int warnings[2] = {0, 0};
      for (int t = 0; t < trials; ++t) {
        const TrialOutcome o = run_trial(system, controls, channel, t, seed);
        for (int s = 0; s < 4; ++s) {
          for (int a = 0; a < 2; ++a) {
            if (!std::isnan(o.snr[s][a])) samples[s][a].push_back(o.snr[s][a]);
          }
        }
        warnings[0] += o.warnings[0];
        warnings[1] += o.warnings[1];
      }
      for (Scheme scheme : controls.schemes) {
        for (Architecture arch : {Architecture::kFully, Architecture::kSemi}) {
          const auto& values = samples[index_of(scheme)][index_of(arch)];
          const auto [mean, ci] = summarize(values, controls.avg_domain);
          const bool optimized = scheme == Scheme::kJoint || scheme == Scheme::kReflectiveOnly;
          result.rows.push_back({channel, arch, scheme, n, mean, ci,
                                 static_cast<int>(values.size()), seed,
                                 optimized ? warnings[index_of(arch)] : 0});
        }
      }
      if (progress) progress(channel, n);
    }
  }
  std::sort(result.rows.begin(), result.rows.end(), [](const SweepRow& l, const SweepRow& r) {
    return std::tie(l.channel, l.arch, l.scheme, l.n) < std::tie(r.channel, r.arch, r.scheme, r.n);
  });
  return result;
}

SweepResult run_sweep(const std::filesystem::path& config_path,
                      const std::filesystem::path& output_path, std::uint64_t seed) {
  const ExperimentConfig config = load_config(config_path);
  SweepResult result = run_sweep(config, seed);
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open output file '" + output_path.string() + "'");
  }
  write_csv(out, result);
  if (!out) {
    throw IoError("failed writing '" + output_path.string() + "'");
  }
  return result;
}

// --- CSV / plot -------------------------------------------------------------

namespace {

std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "# avg_domain=" << to_string(result.avg_domain) << "\n";
  out << kCsvHeader << "\n";
  for (const SweepRow& r : result.rows) {
    out << to_string(r.channel) << ',' << to_string(r.arch) << ',' << to_string(r.scheme) << ','
        << r.n << ',' << format_g6(r.snr_db_mean) << ',' << format_g6(r.snr_db_ci95) << ','
        << r.trials << ',' << r.seed << ',' << r.warnings << "\n";
  }
}

SweepResult read_csv(std::istream& in) {
  SweepResult result;
  std::string raw;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kTag = "# avg_domain=";
      if (line.starts_with(kTag)) result.avg_domain = parse_avg_domain(line.substr(kTag.size()));
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) throw ConfigInvalid("unexpected CSV header");
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 9) {
      std::ostringstream os;
      os << "CSV line " << line_no << ": expected 9 fields";
      throw ConfigInvalid(os.str());
    }
    SweepRow row;
    row.channel = parse_channel_model(f[0]);
    row.arch = parse_architecture(f[1]);
    row.scheme = parse_scheme(f[2]);
    row.n = to_int("N", f[3], line_no);
    row.snr_db_mean = to_double("snr_db_mean", f[4], line_no);
    row.snr_db_ci95 = to_double("snr_db_ci95", f[5], line_no);
    row.trials = to_int("trials", f[6], line_no);
    row.seed = std::stoull(std::string(f[7]));
    row.warnings = to_int("warnings", f[8], line_no);
    result.rows.push_back(row);
  }
  if (!header_seen) throw ConfigInvalid("CSV has no header line");
  return result;
}

void write_plot_data(std::ostream& out, const SweepResult& result) {
  out << "# avg_domain=" << to_string(result.avg_domain) << "\n";
  out << "# columns: N snr_db_mean snr_db_ci95\n";
  bool first = true;
  const SweepRow* prev = nullptr;
  for (const SweepRow& r : result.rows) {
    if (prev == nullptr || prev->channel != r.channel || prev->arch != r.arch ||
        prev->scheme != r.scheme) {
      if (!first) out << "\n\n";
      first = false;
      out << "# " << to_string(r.channel) << ' ' << to_string(r.arch) << ' ' << to_string(r.scheme)
          << "\n";
    }
    out << r.n << ' ' << format_g6(r.snr_db_mean) << ' ' << format_g6(r.snr_db_ci95) << "\n";
    prev = &r;
  }
}

// --- crossover --------------------------------------------------------------

std::vector<CrossoverFinding> crossover_scan(const SweepResult& sweep) {
  using Key = std::pair<ChannelModel, Scheme>;
  std::map<Key, std::map<int, double>> fully;
  std::map<Key, std::map<int, double>> semi;
  for (const SweepRow& r : sweep.rows) {
    auto& target = r.arch == Architecture::kFully ? fully : semi;
    target[{r.channel, r.scheme}][r.n] = r.snr_db_mean;
  }
  std::vector<CrossoverFinding> out;
  for (const auto& [key, f_series] : fully) {
    const auto it = semi.find(key);
    if (it == semi.end() || it->second.size() != f_series.size() ||
        !std::equal(f_series.begin(), f_series.end(), it->second.begin(),
                    [](const auto& l, const auto& r) { return l.first == r.first; })) {
      throw GridMismatch("fully- and semi-passive series for " + std::string(to_string(key.first)) +
                         "/" + std::string(to_string(key.second)) + " use different N grids");
    }
    std::optional<int> crossing;
    const std::map<int, double>& s_series = it->second;
    auto s = s_series.rbegin();
    for (auto f = f_series.rbegin(); f != f_series.rend(); ++f, ++s) {
      if (!(f->second > s->second)) break;
      crossing = f->first;
    }
    out.push_back({key.first, key.second, crossing});
  }
  for (const auto& [key, series] : semi) {
    if (!fully.contains(key)) {
      throw GridMismatch("semi-passive series without a fully-passive counterpart");
    }
  }
  return out;
}

}  // namespace irs
