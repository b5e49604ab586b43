#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ostar/config.hpp"
#include "ostar/experiments.hpp"

namespace {

struct CommonOptions {
  std::string scenario;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--scenario", o.scenario, "power_sweep | wavelength | user_count | alloc_strategies | element_sweep")
      ->required();
  cmd->add_option("--config", o.config, "JSON config; absent keys keep their defaults")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "run seed");
  cmd->add_option("--trials", o.trials, "Monte Carlo drops")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
}

ostar::ExperimentConfig resolve(const CommonOptions& o) {
  auto cfg = o.config.empty() ? ostar::ExperimentConfig{} : ostar::load_config(o.config);
  cfg.scenario = ostar::parse_scenario(o.scenario);
  if (o.seed) cfg.seed = *o.seed;
  if (o.trials) cfg.trials = *o.trials;
  if (o.threads) cfg.threads = *o.threads;
  cfg.validate();
  return cfg;
}

void progress_bar(std::size_t done, std::size_t total) {
  if (done == total || done % 10 == 0) {
    std::fprintf(stderr, "\r%zu/%zu cells", done, total);
    if (done == total) std::fputc('\n', stderr);
  }
}

int cmd_run(const CommonOptions& o, const std::string& out, bool quiet) {
  auto cfg = resolve(o);
  if (!out.empty()) cfg.out_dir = out;
  const auto files = ostar::run_scenario(cfg, quiet ? ostar::Progress{} : ostar::Progress{progress_bar});
  std::cout << files.rows.string() << '\n' << files.summary.string() << '\n' << files.meta.string() << '\n';
  return 0;
}

int cmd_validate(const std::string& path, bool print) {
  const auto cfg = ostar::load_config(path);
  if (print) std::cout << ostar::config_to_json(cfg) << '\n';
  std::cout << path << ": ok\n";
  return 0;
}

int cmd_oracle(const CommonOptions& o, std::optional<int> points, double min_ratio, const std::string& csv) {
  auto cfg = resolve(o);
  if (!o.trials) cfg.trials = 5;
  if (points) cfg.oracle_points = *points;
  cfg.validate();

  const auto schemes = ostar::scenario_schemes(cfg);
  const auto values = ostar::swept_values(cfg);
  std::ofstream file;
  if (!csv.empty()) {
    file.open(csv, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + csv);
    file << ostar::kOracleHeader << '\n';
  }

  double worst = INFINITY;
  std::printf("%-16s %10s %20s %14s %14s %9s\n", "scheme", "swept", "trial_seed", "sca", "oracle", "ratio");
  for (int t = 0; t < cfg.trials; ++t) {
    const auto seed = ostar::trial_seed(cfg.seed, t);
    for (std::size_t s = 0; s < schemes.size(); ++s) {
      for (std::size_t v = 0; v < values.size(); ++v) {
        const auto r = ostar::oracle_cell(cfg, s, v, seed);
        worst = std::min(worst, r.ratio);
        std::printf("%-16s %10g %20llu %14.6e %14.6e %9.6f\n", r.scheme.c_str(), r.swept_value,
                    static_cast<unsigned long long>(r.trial_seed), r.sca_best, r.oracle_best, r.ratio);
        if (file) {
          char line[256];
          std::snprintf(line, sizeof line, "%s,%s,%.17g,%llu,%.17g,%.17g,%.17g\n",
                        std::string(ostar::to_string(cfg.scenario)).c_str(), r.scheme.c_str(), r.swept_value,
                        static_cast<unsigned long long>(r.trial_seed), r.sca_best, r.oracle_best, r.ratio);
          file << line;
        }
      }
    }
  }
  std::printf("worst ratio %.6f (threshold %.3f)\n", worst, min_ratio);
  return worst >= min_ratio ? 0 : 1;
}

int cmd_replay(const std::string& config, const std::string& csv, double tol) {
  const auto rows = [&] {
    std::ifstream in(csv, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + csv);
    return ostar::read_rows_csv(in);
  }();
  auto cfg = config.empty() ? ostar::ExperimentConfig{} : ostar::load_config(config);
  std::size_t bad = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    cfg.scenario = ostar::parse_scenario(r.scenario);
    const double again = ostar::replay_sum_rate(cfg, r);
    const double scale = std::max(std::abs(r.sum_rate), 1e-300);
    const double rel = r.sum_rate == again ? 0.0 : std::abs(again - r.sum_rate) / scale;
    worst = std::max(worst, rel);
    if (rel > tol) ++bad;
  }
  std::printf("%zu rows, %zu mismatches, worst relative error %.3e\n", rows.size(), bad, worst);
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and optimizer for an indoor VLC link aided by an optical STAR-RIS panel"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string out;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "run a scenario sweep and write CSV results");
  add_common(run, run_opts);
  run->add_option("--out", out, "output directory");
  run->add_flag("--quiet", quiet, "suppress progress output");

  std::string validate_path;
  bool print_config = false;
  auto* validate = app.add_subcommand("validate-config", "parse and validate a config file");
  validate->add_option("path", validate_path, "config file")->required()->check(CLI::ExistingFile);
  validate->add_flag("--print", print_config, "print the resolved config");

  CommonOptions oracle_opts;
  std::optional<int> points;
  double min_ratio = 0.99;
  std::string oracle_csv;
  auto* oracle = app.add_subcommand("oracle", "compare the optimizer with an exhaustive grid search");
  add_common(oracle, oracle_opts);
  oracle->add_option("--points", points, "lattice points per axis")->check(CLI::Range(2, 1000));
  oracle->add_option("--min-ratio", min_ratio, "exit nonzero if any optimizer/oracle ratio falls below this");
  oracle->add_option("--csv", oracle_csv, "also write the comparison as CSV");

  std::string replay_config;
  std::string replay_csv;
  double replay_tol = 1e-9;
  auto* replay = app.add_subcommand("replay", "recompute every row of a result CSV from its stored state");
  replay->add_option("csv", replay_csv, "result CSV")->required()->check(CLI::ExistingFile);
  replay->add_option("--config", replay_config, "config used for the run")->check(CLI::ExistingFile);
  replay->add_option("--tol", replay_tol, "relative tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_opts, out, quiet);
    if (*validate) return cmd_validate(validate_path, print_config);
    if (*oracle) return cmd_oracle(oracle_opts, points, min_ratio, oracle_csv);
    if (*replay) return cmd_replay(replay_config, replay_csv, replay_tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
