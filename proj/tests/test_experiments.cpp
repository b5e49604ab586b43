#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ostar/experiments.hpp"

using namespace ostar;

namespace {

ExperimentConfig quick(ScenarioId id, int trials = 2) {
  ExperimentConfig c;
  c.scenario = id;
  c.trials = trials;
  c.seed = 2024;
  c.threads = 1;
  c.sca.iterations = 40;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ostar_exp_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST(Scenarios, SchemesAndSweeps) {
  auto c = quick(ScenarioId::PowerSweep);
  EXPECT_EQ(scenario_schemes(c), (std::vector<std::string>{"noma", "rsma"}));
  EXPECT_EQ(swept_values(c).size(), 7u);
  c.scenario = ScenarioId::AllocStrategies;
  EXPECT_EQ(scenario_schemes(c), (std::vector<std::string>{"rsma_equal", "rsma_noma_alike", "rsma_random"}));
  c.scenario = ScenarioId::ElementSweep;
  EXPECT_EQ(swept_values(c), (std::vector<double>{10, 20, 30, 40, 50, 60, 70, 80}));
  c.scenario = ScenarioId::UserCount;
  EXPECT_EQ(swept_values(c), (std::vector<double>{2, 4, 6, 8}));
}

TEST(PointSetup, AppliesSweptValue) {
  auto c = quick(ScenarioId::PowerSweep);
  auto ps = point_setup(c, "rsma", 1.5);
  EXPECT_EQ(ps.setup.scheme, Scheme::Rsma);
  EXPECT_DOUBLE_EQ(ps.setup.budget.optical_power, 1.5);
  EXPECT_DOUBLE_EQ(ps.power.signal_power, 0.25);

  c.scenario = ScenarioId::ElementSweep;
  ps = point_setup(c, "noma", 30);
  EXPECT_EQ(ps.scene.panel_rows * ps.scene.panel_cols, 30);
  EXPECT_TRUE(ps.see_objective);

  c.scenario = ScenarioId::Wavelength;
  EXPECT_DOUBLE_EQ(point_setup(c, "noma", 670).setup.channel.wavelength, 670e-9);

  c.scenario = ScenarioId::AllocStrategies;
  EXPECT_EQ(point_setup(c, "rsma_noma_alike", 2).setup.rsma.strategy, RsmaStrategy::NomaAlike);
  EXPECT_THROW(point_setup(c, "noma", 2), std::invalid_argument);
  EXPECT_THROW(point_setup(c, "oma", 2), std::invalid_argument);
}

TEST(TrialSeed, DistinctAndStable) {
  EXPECT_EQ(trial_seed(1, 0), trial_seed(1, 0));
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
  EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
}

TEST(RunRows, RowCountAndOrder) {
  const auto c = quick(ScenarioId::PowerSweep, 1);
  const auto rows = run_rows(c);
  ASSERT_EQ(rows.size(), 14u);
  EXPECT_EQ(rows.front().scheme, "noma");
  EXPECT_EQ(rows.back().scheme, "rsma");
  EXPECT_DOUBLE_EQ(rows[0].swept_value, 1.0);
  EXPECT_DOUBLE_EQ(rows[6].swept_value, 4.0);
  for (const auto& r : rows) {
    EXPECT_EQ(r.scenario, "power_sweep");
    EXPECT_GE(r.sum_rate, 0.0);
    EXPECT_GE(r.eta_c, 1.5);
    EXPECT_LE(r.eta_c, 1.7);
  }
}

TEST(RunRows, IndependentOfThreadCount) {
  auto c = quick(ScenarioId::AllocStrategies, 3);
  c.power_sweep_w = {1.0, 3.0};
  const auto serial = run_rows(c);
  c.threads = 4;
  const auto parallel = run_rows(c);
  std::ostringstream a;
  std::ostringstream b;
  write_rows_csv(a, serial);
  write_rows_csv(b, parallel);
  EXPECT_EQ(a.str(), b.str());
}

TEST(RunRows, ElementSweepPowerMatchesModel) {
  auto c = quick(ScenarioId::ElementSweep, 1);
  for (const auto& r : run_rows(c)) {
    PowerModel pm = c.power;
    pm.signal_power = c.budget.electrical_power();
    const int n = static_cast<int>(r.swept_value);
    const auto panel = build_panel(c.element_sweep_rows, n / c.element_sweep_rows, 0.1, c.scene.wall());
    EXPECT_EQ(r.total_power, total_power(pm, panel.mirror_count(), panel.lc_count()));
    EXPECT_EQ(r.see, see(r.sum_rate, r.total_power));
  }
}

TEST(RunRows, ReplayReproducesEveryRow) {
  for (auto id : {ScenarioId::PowerSweep, ScenarioId::Wavelength, ScenarioId::UserCount, ScenarioId::AllocStrategies,
                  ScenarioId::ElementSweep}) {
    const auto c = quick(id, 2);
    std::ostringstream os;
    write_rows_csv(os, run_rows(c));
    std::istringstream is(os.str());
    for (const auto& r : read_rows_csv(is)) {
      const double again = replay_sum_rate(c, r);
      EXPECT_NEAR(again, r.sum_rate, 1e-9 * std::max(r.sum_rate, 1e-300)) << r.scenario << " " << r.scheme;
    }
  }
}

TEST(Summary, MeanAndStandardError) {
  std::vector<ResultRow> rows;
  for (double v : {1.0, 2.0, 3.0, 6.0}) rows.push_back({"s", "noma", 1.0, 0, 0, 0, 0, v, 10.0, v / 10.0});
  rows.push_back({"s", "rsma", 1.0, 0, 0, 0, 0, 5.0, 10.0, 0.5});
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].trials, 4);
  EXPECT_DOUBLE_EQ(s[0].sum_rate_mean, 3.0);
  // Sample variance 14/3 over n = 4.
  EXPECT_NEAR(s[0].sum_rate_se, std::sqrt(14.0 / 3.0 / 4.0), 1e-15);
  EXPECT_EQ(s[1].sum_rate_se, 0.0);
}

TEST(Csv, HeaderAndRoundTrip) {
  const std::vector<ResultRow> rows{{"power_sweep", "noma", 1.5, 18446744073709551615ull, 0.1, -0.2, 1.6,
                                     123456.78901234567, 20.5649, 6003.2}};
  std::ostringstream os;
  write_rows_csv(os, rows);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "scenario,scheme,swept_value,trial_seed,omega,gamma,eta_c,sum_rate,total_power,see");
  EXPECT_EQ(text.find('\r'), std::string::npos);
  std::istringstream is(text);
  const auto back = read_rows_csv(is);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].trial_seed, rows[0].trial_seed);
  EXPECT_EQ(back[0].sum_rate, rows[0].sum_rate);
  EXPECT_EQ(back[0].gamma, rows[0].gamma);
}

TEST(RunScenario, WritesFilesDeterministically) {
  auto c = quick(ScenarioId::Wavelength, 2);
  c.out_dir = scratch("a").string();
  const auto first = run_scenario(c);
  const std::string rows = slurp(first.rows);
  const std::string meta = slurp(first.meta);
  c.out_dir = scratch("b").string();
  const auto second = run_scenario(c);
  EXPECT_EQ(slurp(second.rows), rows);
  EXPECT_TRUE(std::filesystem::exists(second.summary));
  EXPECT_NE(meta.find("\"trials\": 2"), std::string::npos);
  std::filesystem::remove_all(scratch("a"));
  std::filesystem::remove_all(scratch("b"));
}

TEST(RunScenario, UnwritableOutput) {
  auto c = quick(ScenarioId::Wavelength, 1);
  const auto blocker = scratch("file");
  std::ofstream(blocker) << "x";
  c.out_dir = (blocker / "sub").string();
  EXPECT_THROW(run_scenario(c), std::runtime_error);
  std::filesystem::remove(blocker);
}

TEST(OracleCell, RatioReported) {
  auto c = quick(ScenarioId::PowerSweep, 1);
  c.oracle_points = 5;
  const auto r = oracle_cell(c, 0, 4, trial_seed(c.seed, 0));
  EXPECT_EQ(r.scheme, "noma");
  EXPECT_DOUBLE_EQ(r.swept_value, 3.0);
  EXPECT_GE(r.ratio, 0.0);
}
