#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "ostar/config.hpp"
#include "ostar/objective.hpp"

namespace ostar {

struct ResultRow {
  std::string scenario;
  std::string scheme;
  double swept_value = 0.0;
  std::uint64_t trial_seed = 0;
  double omega = 0.0;
  double gamma = 0.0;
  double eta_c = 0.0;
  double sum_rate = 0.0;
  double total_power = 0.0;
  double see = 0.0;
};

inline constexpr const char* kResultHeader =
    "scenario,scheme,swept_value,trial_seed,omega,gamma,eta_c,sum_rate,total_power,see";

struct SummaryRow {
  std::string scenario;
  std::string scheme;
  double swept_value = 0.0;
  int trials = 0;
  double sum_rate_mean = 0.0;
  double sum_rate_se = 0.0;
  double total_power_mean = 0.0;
  double see_mean = 0.0;
  double see_se = 0.0;
};

inline constexpr const char* kSummaryHeader =
    "scenario,scheme,swept_value,trials,sum_rate_mean,sum_rate_se,total_power_mean,see_mean,see_se";

// Scheme labels and swept values of the configured scenario, in output order.
std::vector<std::string> scenario_schemes(const ExperimentConfig& cfg);
std::vector<double> swept_values(const ExperimentConfig& cfg);

// Everything needed to evaluate one (scheme, swept value) cell.
struct PointSetup {
  SceneSpec scene;
  SchemeSetup setup;
  PowerModel power;
  bool see_objective = false;
};

// Throws std::invalid_argument for a scheme label the scenario does not use.
PointSetup point_setup(const ExperimentConfig& cfg, const std::string& scheme, double swept);

// Seed of trial `index`, derived from the run seed by a SplitMix64 step.
std::uint64_t trial_seed(std::uint64_t run_seed, int index);

// Stream used for the RSMA random split of one trial. Shared by every cell of
// the trial so that the split fractions are common across swept values.
std::mt19937_64 split_stream(std::uint64_t trial_seed);

// Stream driving the optimizer for one cell.
std::mt19937_64 optimizer_stream(std::uint64_t trial_seed, std::size_t scheme_index, std::size_t sweep_index);

// Runs the optimizer on the frozen drop of one cell.
ResultRow run_cell(const ExperimentConfig& cfg, std::size_t scheme_index, std::size_t sweep_index,
                   std::uint64_t trial_seed);

// Rebuilds the drop of `row` and re-evaluates the sum rate at its stored state.
double replay_sum_rate(const ExperimentConfig& cfg, const ResultRow& row);

struct OracleRow {
  std::string scheme;
  double swept_value = 0.0;
  std::uint64_t trial_seed = 0;
  double sca_best = 0.0;
  double oracle_best = 0.0;
  double ratio = 0.0;  // sca_best / oracle_best, 1 when both are zero
};

inline constexpr const char* kOracleHeader = "scenario,scheme,swept_value,trial_seed,sca_best,oracle_best,ratio";

// Compares the optimizer against the grid oracle on one cell. Both search the
// configured objective (sum rate, or SEE for the element sweep).
OracleRow oracle_cell(const ExperimentConfig& cfg, std::size_t scheme_index, std::size_t sweep_index,
                      std::uint64_t trial_seed);

using Progress = std::function<void(std::size_t done, std::size_t total)>;

// Rows ordered by (scheme, swept value, trial index), independent of the
// thread count.
std::vector<ResultRow> run_rows(const ExperimentConfig& cfg, const Progress& progress = {});

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

void write_rows_csv(std::ostream& os, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_rows_csv(std::istream& is);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

struct ScenarioFiles {
  std::filesystem::path rows;
  std::filesystem::path summary;
  std::filesystem::path meta;
};

// Runs the scenario and writes <scenario>.csv, <scenario>_summary.csv and
// <scenario>_meta.json under cfg.out_dir.
ScenarioFiles run_scenario(const ExperimentConfig& cfg, const Progress& progress = {});

}  // namespace ostar
