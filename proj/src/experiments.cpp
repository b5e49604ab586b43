#include "ostar/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace ostar {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::seed_seq::result_type lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
std::seed_seq::result_type hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

constexpr std::uint32_t kSplitTag = 0x5eed5911u;
constexpr std::uint32_t kOptimizerTag = 0x0c7a11e5u;

// Schemes that differ only in the RSMA private split.
struct StrategyLabel {
  RsmaStrategy strategy;
  const char* label;
};
constexpr StrategyLabel kStrategyLabels[] = {
    {RsmaStrategy::Equal, "rsma_equal"},
    {RsmaStrategy::NomaAlike, "rsma_noma_alike"},
    {RsmaStrategy::Random, "rsma_random"},
};

Scene drop(const PointSetup& ps, std::uint64_t seed) { return draw_scene(ps.scene, seed); }

double objective_divisor(const PointSetup& ps, const Scene& scene) {
  return total_power(ps.power, scene.panel.mirror_count(), scene.panel.lc_count());
}

Objective objective_for(const PointSetup& ps, const Scene& scene, std::uint64_t seed) {
  auto split = split_stream(seed);
  return ps.see_objective ? make_see_objective(scene, ps.setup, ps.power, split)
                          : make_p0_objective(scene, ps.setup, split);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1)) / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace

std::vector<std::string> scenario_schemes(const ExperimentConfig& cfg) {
  if (cfg.scenario != ScenarioId::AllocStrategies) return {"noma", "rsma"};
  std::vector<std::string> out;
  for (auto s : cfg.strategies) {
    for (const auto& l : kStrategyLabels) {
      if (l.strategy == s) out.emplace_back(l.label);
    }
  }
  return out;
}

std::vector<double> swept_values(const ExperimentConfig& cfg) {
  switch (cfg.scenario) {
    case ScenarioId::PowerSweep:
    case ScenarioId::AllocStrategies:
      return cfg.power_sweep_w;
    case ScenarioId::Wavelength:
      return cfg.wavelengths_nm;
    case ScenarioId::UserCount:
      return {cfg.user_counts.begin(), cfg.user_counts.end()};
    case ScenarioId::ElementSweep:
      return {cfg.element_counts.begin(), cfg.element_counts.end()};
  }
  return {};
}

PointSetup point_setup(const ExperimentConfig& cfg, const std::string& scheme, double swept) {
  PointSetup ps;
  ps.scene = cfg.scene;
  ps.setup.budget = cfg.budget;
  ps.setup.noma = cfg.noma;
  ps.setup.rsma = cfg.rsma;
  ps.setup.channel = cfg.channel;
  ps.power = cfg.power;

  if (scheme == "noma") {
    ps.setup.scheme = Scheme::Noma;
  } else if (scheme == "rsma") {
    ps.setup.scheme = Scheme::Rsma;
  } else {
    const auto* it = std::find_if(std::begin(kStrategyLabels), std::end(kStrategyLabels),
                                  [&](const StrategyLabel& l) { return scheme == l.label; });
    if (it == std::end(kStrategyLabels)) throw std::invalid_argument("unknown scheme '" + scheme + "'");
    ps.setup.scheme = Scheme::Rsma;
    ps.setup.rsma.strategy = it->strategy;
  }
  const bool strategy_scheme = scheme != "noma" && scheme != "rsma";
  if (strategy_scheme != (cfg.scenario == ScenarioId::AllocStrategies)) {
    throw std::invalid_argument("scheme '" + scheme + "' does not belong to scenario " +
                                std::string(to_string(cfg.scenario)));
  }

  switch (cfg.scenario) {
    case ScenarioId::PowerSweep:
    case ScenarioId::AllocStrategies:
      ps.setup.budget.optical_power = swept;
      break;
    case ScenarioId::Wavelength:
      ps.setup.channel.wavelength = swept * 1e-9;
      break;
    case ScenarioId::UserCount:
      ps.scene.users = static_cast<int>(std::lround(swept));
      break;
    case ScenarioId::ElementSweep: {
      const int n = static_cast<int>(std::lround(swept));
      ps.scene.panel_rows = cfg.element_sweep_rows;
      ps.scene.panel_cols = n / cfg.element_sweep_rows;
      ps.see_objective = true;
      break;
    }
  }
  ps.power.signal_power = ps.setup.budget.electrical_power();
  return ps;
}

std::uint64_t trial_seed(std::uint64_t run_seed, int index) {
  std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 split_stream(std::uint64_t seed) {
  std::seed_seq seq{lo32(seed), hi32(seed), kSplitTag};
  return std::mt19937_64(seq);
}

std::mt19937_64 optimizer_stream(std::uint64_t seed, std::size_t scheme_index, std::size_t sweep_index) {
  std::seed_seq seq{lo32(seed), hi32(seed), kOptimizerTag, static_cast<std::uint32_t>(scheme_index),
                    static_cast<std::uint32_t>(sweep_index)};
  return std::mt19937_64(seq);
}

ResultRow run_cell(const ExperimentConfig& cfg, std::size_t scheme_index, std::size_t sweep_index,
                   std::uint64_t seed) {
  const auto schemes = scenario_schemes(cfg);
  const auto values = swept_values(cfg);
  const auto ps = point_setup(cfg, schemes.at(scheme_index), values.at(sweep_index));
  const Scene scene = drop(ps, seed);

  auto rng = optimizer_stream(seed, scheme_index, sweep_index);
  const auto result = sca_optimize(objective_for(ps, scene, seed), SearchSpace::panel_default(), cfg.sca, rng);

  auto split = split_stream(seed);
  const SumRateEvaluator eval(scene, ps.setup, split);
  const PanelState state = panel_state_from(result.best_solution);

  ResultRow row;
  row.scenario = std::string(to_string(cfg.scenario));
  row.scheme = schemes[scheme_index];
  row.swept_value = values[sweep_index];
  row.trial_seed = seed;
  row.omega = state.roll;
  row.gamma = state.yaw;
  row.eta_c = state.eta_c;
  row.sum_rate = eval.sum_rate(state);
  row.total_power = objective_divisor(ps, scene);
  row.see = see(row.sum_rate, row.total_power);
  return row;
}

double replay_sum_rate(const ExperimentConfig& cfg, const ResultRow& row) {
  const auto ps = point_setup(cfg, row.scheme, row.swept_value);
  const Scene scene = drop(ps, row.trial_seed);
  auto split = split_stream(row.trial_seed);
  const SumRateEvaluator eval(scene, ps.setup, split);
  return eval.sum_rate(PanelState{row.omega, row.gamma, row.eta_c});
}

OracleRow oracle_cell(const ExperimentConfig& cfg, std::size_t scheme_index, std::size_t sweep_index,
                      std::uint64_t seed) {
  const auto schemes = scenario_schemes(cfg);
  const auto values = swept_values(cfg);
  const auto ps = point_setup(cfg, schemes.at(scheme_index), values.at(sweep_index));
  const Scene scene = drop(ps, seed);
  const auto objective = objective_for(ps, scene, seed);
  const auto space = SearchSpace::panel_default();

  auto rng = optimizer_stream(seed, scheme_index, sweep_index);
  const auto sca = sca_optimize(objective, space, cfg.sca, rng);
  const auto grid = grid_oracle(objective, space, cfg.oracle_points);

  OracleRow row;
  row.scheme = schemes[scheme_index];
  row.swept_value = values[sweep_index];
  row.trial_seed = seed;
  row.sca_best = sca.best_fitness;
  row.oracle_best = grid.best_fitness;
  if (grid.best_fitness == 0.0) {
    row.ratio = sca.best_fitness >= 0.0 ? 1.0 : 0.0;
  } else {
    row.ratio = sca.best_fitness / grid.best_fitness;
  }
  return row;
}

std::vector<ResultRow> run_rows(const ExperimentConfig& cfg, const Progress& progress) {
  cfg.validate();
  const auto schemes = scenario_schemes(cfg);
  const auto values = swept_values(cfg);
  const std::size_t cells = schemes.size() * values.size();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t jobs = cells * trials;

  // slot[(scheme * values + value) * trials + trial] fixes the output order.
  std::vector<ResultRow> slots(jobs);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex report;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      const std::size_t trial = job % trials;
      const std::size_t cell = job / trials;
      try {
        slots[job] = run_cell(cfg, cell / values.size(), cell % values.size(),
                              trial_seed(cfg.seed, static_cast<int>(trial)));
      } catch (...) {
        std::lock_guard lock(report);
        if (!failure) failure = std::current_exception();
        next.store(jobs);
        return;
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(report);
        progress(d, jobs);
      }
    }
  };

  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
  n_threads = std::clamp<unsigned>(n_threads, 1, static_cast<unsigned>(std::max<std::size_t>(jobs, 1)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return slots;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  // Keep first-appearance order of (scheme, swept value).
  std::vector<SummaryRow> out;
  std::vector<std::vector<double>> rates;
  std::vector<std::vector<double>> powers;
  std::vector<std::vector<double>> sees;
  std::map<std::pair<std::string, double>, std::size_t> index;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.scheme, r.swept_value);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      out.push_back({r.scenario, r.scheme, r.swept_value, 0, 0, 0, 0, 0, 0});
      rates.emplace_back();
      powers.emplace_back();
      sees.emplace_back();
    }
    rates[it->second].push_back(r.sum_rate);
    powers[it->second].push_back(r.total_power);
    sees[it->second].push_back(r.see);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& s = out[i];
    s.trials = static_cast<int>(rates[i].size());
    s.sum_rate_mean = mean_of(rates[i]);
    s.sum_rate_se = stderr_of(rates[i], s.sum_rate_mean);
    s.total_power_mean = mean_of(powers[i]);
    s.see_mean = mean_of(sees[i]);
    s.see_se = stderr_of(sees[i], s.see_mean);
  }
  return out;
}

void write_rows_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kResultHeader << '\n';
  for (const auto& r : rows) {
    os << r.scenario << ',' << r.scheme << ',' << fmt17(r.swept_value) << ',' << r.trial_seed << ','
       << fmt17(r.omega) << ',' << fmt17(r.gamma) << ',' << fmt17(r.eta_c) << ',' << fmt17(r.sum_rate)
       << ',' << fmt17(r.total_power) << ',' << fmt17(r.see) << '\n';
  }
}

std::vector<ResultRow> read_rows_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kResultHeader) {
    throw std::runtime_error("result CSV: unexpected header");
  }
  std::vector<ResultRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c = split_csv_line(line);
    if (c.size() != 10) throw std::runtime_error("result CSV: expected 10 columns in '" + line + "'");
    ResultRow r;
    r.scenario = c[0];
    r.scheme = c[1];
    r.swept_value = std::stod(c[2]);
    r.trial_seed = std::stoull(c[3]);
    r.omega = std::stod(c[4]);
    r.gamma = std::stod(c[5]);
    r.eta_c = std::stod(c[6]);
    r.sum_rate = std::stod(c[7]);
    r.total_power = std::stod(c[8]);
    r.see = std::stod(c[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << kSummaryHeader << '\n';
  for (const auto& s : rows) {
    os << s.scenario << ',' << s.scheme << ',' << fmt17(s.swept_value) << ',' << s.trials << ','
       << fmt17(s.sum_rate_mean) << ',' << fmt17(s.sum_rate_se) << ',' << fmt17(s.total_power_mean)
       << ',' << fmt17(s.see_mean) << ',' << fmt17(s.see_se) << '\n';
  }
}

ScenarioFiles run_scenario(const ExperimentConfig& cfg, const Progress& progress) {
  cfg.validate();
  const std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  const std::string name(to_string(cfg.scenario));
  ScenarioFiles files{dir / (name + ".csv"), dir / (name + "_summary.csv"), dir / (name + "_meta.json")};

  const auto rows = run_rows(cfg, progress);

  auto open = [](const std::filesystem::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    return os;
  };
  {
    auto os = open(files.rows);
    write_rows_csv(os, rows);
  }
  {
    auto os = open(files.summary);
    write_summary_csv(os, summarize(rows));
  }
  {
    nlohmann::json meta;
    meta["scenario"] = name;
    meta["trials"] = cfg.trials;
    meta["seed"] = cfg.seed;
    meta["schemes"] = scenario_schemes(cfg);
    meta["swept_values"] = swept_values(cfg);
    meta["objective"] = cfg.scenario == ScenarioId::ElementSweep ? "see" : "sum_rate";
    meta["monte_carlo"] = {
        {"drop", "users and device orientations drawn once per trial seed, frozen during optimization"},
        {"trial_seed", "splitmix64(seed + golden_gamma * (trial_index + 1))"},
        {"summary", "per-cell mean and standard error over trials"}};
    meta["config"] = nlohmann::json::parse(config_to_json(cfg));
    auto os = open(files.meta);
    os << meta.dump(2) << '\n';
  }
  return files;
}

}  // namespace ostar
