// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "irs/errors.hpp"
#include "irs/experiment.hpp"
#include "irs/snr.hpp"

using namespace irs;

namespace {

std::string csv_of(const SweepResult& r) {
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

SweepRow row(Architecture a, int n, double db) {
  SweepRow r;
  r.channel = ChannelModel::kRayleigh;
  r.arch = a;
  r.scheme = Scheme::kJoint;
  r.n = n;
  r.snr_db_mean = db;
  r.trials = 10;
  return r;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config_text(
      "# reference deployment\n"
      "bs_pos = 0, 0\n"
      "irs_pos = 1,1   # trailing comment\n"
      "target_pos = 1, -5\n"
      "m_t = 4\n"
      "p0_dbm = 30\n"
      "sigma2_dbm = -90\n"
      "k0_db = -30\n"
      "\n"
      "n_min = 5\n"
      "n_max = 15\n"
      "n_step = 5\n"
      "trials = 3\n"
      "schemes = joint, none\n"
      "channel_models = rayleigh\n"
      "avg_domain = linear\n"
      "reciprocal = false\n");
  CHECK(cfg.system.m_t == 4);
  CHECK(cfg.system.p0 == doctest::Approx(1.0));
  CHECK(cfg.system.sigma2 == doctest::Approx(1e-12));
  CHECK(cfg.system.k0 == doctest::Approx(1e-3));
  CHECK(cfg.system.target_pos.y == doctest::Approx(-5.0));
  CHECK_FALSE(cfg.system.reciprocal);
  CHECK(cfg.sweep.grid() == std::vector<int>{5, 10, 15});
  CHECK(cfg.sweep.schemes.size() == 2);
  CHECK(cfg.sweep.channel_models == std::vector<ChannelModel>{ChannelModel::kRayleigh});
  CHECK(cfg.sweep.avg_domain == AvgDomain::kLinear);

  CHECK_THROWS_AS(parse_config_text("bogus = 1\n"), ConfigInvalid);
  CHECK_THROWS_AS(parse_config_text("m_t = five\n"), ConfigInvalid);
  CHECK_THROWS_AS(parse_config_text("m_t 5\n"), ConfigInvalid);
  CHECK_THROWS_AS(parse_config_text("m_t = 0\n"), ConfigInvalid);
  CHECK_THROWS_AS(parse_config_text("n_min = 20\nn_max = 10\n"), ConfigInvalid);
  CHECK_THROWS_AS(parse_config_text("schemes = joint, best\n"), ConfigInvalid);
  CHECK_THROWS_AS(parse_config_text("bs_pos = 1\n"), ConfigInvalid);
  CHECK_THROWS_AS(load_config("/nonexistent/dir/x.cfg"), IoError);
}

TEST_CASE("seed derivation") {
  const auto s = derive_seed(1, ChannelModel::kRayleigh, 10, 0, 0);
  CHECK(s == derive_seed(1, ChannelModel::kRayleigh, 10, 0, 0));
  CHECK(s != derive_seed(2, ChannelModel::kRayleigh, 10, 0, 0));
  CHECK(s != derive_seed(1, ChannelModel::kLos, 10, 0, 0));
  CHECK(s != derive_seed(1, ChannelModel::kRayleigh, 11, 0, 0));
  CHECK(s != derive_seed(1, ChannelModel::kRayleigh, 10, 1, 0));
  CHECK(s != derive_seed(1, ChannelModel::kRayleigh, 10, 0, 1));
}

TEST_CASE("line-of-sight sweep") {
  ExperimentConfig cfg;
  cfg.sweep.n_min = 10;
  cfg.sweep.n_max = 100;
  cfg.sweep.n_step = 1;
  cfg.sweep.channel_models = {ChannelModel::kLos};
  const auto res = run_sweep(cfg, 7);

  for (int n = 10; n <= 100; ++n) {
    const auto cf = closed_form_snr_los(cfg.system, n);
    const auto* f = res.find(ChannelModel::kLos, Architecture::kFully, Scheme::kJoint, n);
    const auto* s = res.find(ChannelModel::kLos, Architecture::kSemi, Scheme::kJoint, n);
    REQUIRE(f);
    REQUIRE(s);
    CHECK(std::abs(f->snr_db_mean - to_db(cf.fully)) < 1e-6);
    CHECK(std::abs(s->snr_db_mean - to_db(cf.semi)) < 1e-6);
    CHECK(f->trials == 1);
    CHECK(f->snr_db_ci95 == 0.0);

    for (auto a : {Architecture::kFully, Architecture::kSemi}) {
      const double joint = res.find(ChannelModel::kLos, a, Scheme::kJoint, n)->snr_db_mean;
      const double refl = res.find(ChannelModel::kLos, a, Scheme::kReflectiveOnly, n)->snr_db_mean;
      const double tx = res.find(ChannelModel::kLos, a, Scheme::kTransmitOnly, n)->snr_db_mean;
      const double none = res.find(ChannelModel::kLos, a, Scheme::kNone, n)->snr_db_mean;
      CHECK(joint >= refl - 1e-12);
      CHECK(joint >= tx - 1e-12);
      CHECK(refl >= none - 1e-12);
      CHECK(tx >= none - 1e-12);
    }
    for (auto sc : {Scheme::kTransmitOnly, Scheme::kNone}) {
      CHECK(res.find(ChannelModel::kLos, Architecture::kFully, sc, n)->snr_db_mean <
            res.find(ChannelModel::kLos, Architecture::kSemi, sc, n)->snr_db_mean);
    }
  }

  for (const auto& c : crossover_scan(res)) {
    if (c.scheme == Scheme::kJoint || c.scheme == Scheme::kReflectiveOnly) {
      REQUIRE(c.n.has_value());
      CHECK(*c.n == 47);
    } else {
      CHECK_FALSE(c.n.has_value());
    }
  }
}

TEST_CASE("rayleigh sweep is deterministic and round-trips") {
  ExperimentConfig cfg;
  cfg.sweep.n_min = 4;
  cfg.sweep.n_max = 8;
  cfg.sweep.n_step = 4;
  cfg.sweep.trials = 3;
  cfg.sweep.rand_count = 20;
  cfg.sweep.channel_models = {ChannelModel::kRayleigh};
  const auto a = run_sweep(cfg, 42);
  const auto b = run_sweep(cfg, 42);
  const auto c = run_sweep(cfg, 43);
  CHECK(csv_of(a) == csv_of(b));
  CHECK(csv_of(a) != csv_of(c));
  CHECK(a.rows.size() == 2 * 4 * 2);
  for (const auto& r : a.rows) {
    CHECK(r.trials == 3);
    CHECK(r.seed == 42);
    CHECK(std::isfinite(r.snr_db_mean));
    CHECK(r.snr_db_ci95 >= 0.0);
  }

  // common random numbers: transmit_only dominates none in every trial
  for (int trial = 0; trial < 3; ++trial) {
    const auto t = run_trial(cfg.system.with_elements(8), cfg.sweep, ChannelModel::kRayleigh, trial, 42);
    for (int arch = 0; arch < 2; ++arch) {
      CHECK(t.snr[int(Scheme::kTransmitOnly)][arch] >= t.snr[int(Scheme::kNone)][arch]);
      CHECK(t.snr[int(Scheme::kJoint)][arch] >= t.snr[int(Scheme::kReflectiveOnly)][arch]);
    }
  }

  const std::string text = csv_of(a);
  CHECK(text.rfind("# avg_domain=db\n", 0) == 0);
  CHECK(text.find(std::string(kCsvHeader) + "\n") != std::string::npos);
  std::istringstream in(text);
  const auto back = read_csv(in);
  CHECK(csv_of(back) == text);

  std::ostringstream plot;
  write_plot_data(plot, a);
  CHECK(plot.str().find("rayleigh fully joint") != std::string::npos);
}

TEST_CASE("file-based sweep") {
  const auto dir = std::filesystem::temp_directory_path() / "irs_sensing_unit";
  std::filesystem::create_directories(dir);
  const auto cfg_path = dir / "los.cfg";
  {
    std::ofstream out(cfg_path);
    out << "n_min = 10\nn_max = 30\nn_step = 10\nchannel_models = los\n";
  }
  const auto out_path = dir / "los.csv";
  const auto res = run_sweep(cfg_path, out_path, 5);
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == csv_of(res));
  CHECK_THROWS_AS(run_sweep(cfg_path, dir / "missing" / "x.csv", 5), IoError);
  CHECK_THROWS_AS(run_sweep(dir / "absent.cfg", out_path, 5), IoError);
}

TEST_CASE("crossover scan fixtures") {
  SweepResult s;
  for (int n = 10; n <= 60; n += 5) {
    s.rows.push_back(row(Architecture::kFully, n, 2.0 * n));
    s.rows.push_back(row(Architecture::kSemi, n, n + 30.0 - (n == 30 ? 1.0 : 0.0)));
  }
  auto found = crossover_scan(s);
  REQUIRE(found.size() == 1);
  REQUIRE(found[0].n.has_value());
  CHECK(*found[0].n == 30);

  // a later dip below pushes the crossover past it
  for (auto& r : s.rows)
    if (r.arch == Architecture::kFully && r.n == 45) r.snr_db_mean = 0.0;
  CHECK(*crossover_scan(s)[0].n == 50);

  for (auto& r : s.rows)
    if (r.arch == Architecture::kFully && r.n == 60) r.snr_db_mean = 0.0;
  CHECK_FALSE(crossover_scan(s)[0].n.has_value());

  s.rows.push_back(row(Architecture::kSemi, 65, 1.0));
  CHECK_THROWS_AS(crossover_scan(s), GridMismatch);
}
