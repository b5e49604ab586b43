// Acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Scenario outputs are written under the directory
// given as the first argument (default: ./acceptance_out).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ostar/access.hpp"
#include "ostar/experiments.hpp"
#include "ostar/photonics.hpp"
#include "ostar/power.hpp"

using namespace ostar;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(const char* name, const Verdict& v, double seconds) {
  std::printf("%s %-28s %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), seconds);
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

void run(const char* name, const std::function<Verdict()>& body) {
  const auto t0 = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  report(name, v, std::chrono::duration<double>(Clock::now() - t0).count());
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool within_ulps(double a, double b, int ulps) {
  return std::abs(a - b) <= ulps * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
}

// Summary keyed by scheme, in swept order.
using Curves = std::map<std::string, std::vector<SummaryRow>>;

Curves curves_of(const std::vector<SummaryRow>& rows) {
  Curves c;
  for (const auto& r : rows) c[r.scheme].push_back(r);
  return c;
}

struct Outputs {
  std::filesystem::path dir;
  std::map<ScenarioId, std::vector<ResultRow>> rows;
  std::map<ScenarioId, double> seconds;
};

const std::vector<ResultRow>& scenario_rows(Outputs& out, ScenarioId id) {
  auto it = out.rows.find(id);
  if (it != out.rows.end()) return it->second;
  ExperimentConfig cfg;
  cfg.scenario = id;
  cfg.out_dir = out.dir.string();
  const auto t0 = Clock::now();
  const auto files = run_scenario(cfg);
  out.seconds[id] = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ifstream in(files.rows, std::ios::binary);
  return out.rows[id] = read_rows_csv(in);
}

Verdict physics() {
  const LcCell cell;
  const auto t0 = Clock::now();
  const double r = reflectance_entry(0.0, 1.5);
  const bool fresnel = std::abs(r - 0.04) <= 1e-12;
  const bool ends = index_from_tilt(cell, 0.0) == 1.7 && index_from_tilt(cell, std::numbers::pi / 2) == 1.5;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double eta = 1.5 + 1e-6 + (0.2 - 1e-6) * (i + 1) / 100.0;
    const double back = index_from_tilt(cell, tilt_from_voltage(cell, voltage_from_index(cell, eta)));
    worst = std::max(worst, std::abs(back - eta));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return {fresnel && ends && worst <= 1e-9 && secs < 1.0,
          fmt("R(0,1.5)=%.15f endpoints=%s round-trip max err=%.2e runtime=%.4fs", r, ends ? "exact" : "off", worst, secs)};
}

Verdict noma_coefficients_check() {
  const auto c = noma_coefficients(4, 0.6);
  const double want[] = {0.6, 0.24, 0.096, 0.064};
  bool ok = c.size() == 4;
  for (std::size_t i = 0; ok && i < 4; ++i) ok = within_ulps(c[i], want[i], 2);
  const double sum = std::accumulate(c.begin(), c.end(), 0.0);
  ok = ok && sum == 1.0;
  return {ok, fmt("c=[%.17g, %.17g, %.17g, %.17g] sum=%.17g", c[0], c[1], c[2], c[3], sum)};
}

Verdict power_model() {
  PowerModel m;
  m.signal_power = LinkBudget{}.electrical_power();
  const double total = total_power(m, 25, 25);
  double worst_k = 0.0;
  double worst_n = 0.0;
  for (int k = 0; k <= 80; ++k) {
    for (int n = 0; n <= 80; n += 8) {
      const double t = total_power(m, k, n);
      const double tol = 4 * std::numeric_limits<double>::epsilon() * t;
      worst_k = std::max(worst_k, std::abs(total_power(m, k + 1, n) - t - 0.1) / tol);
      worst_n = std::max(worst_n, std::abs(total_power(m, k, n + 1) - t - 0.32) / tol);
    }
  }
  const bool ok = std::abs(total - 20.5649) <= 1e-6 && worst_k <= 1.0 && worst_n <= 1.0;
  return {ok, fmt("total(p=3,K=N=25)=%.10f W; slope residuals within %.2f / %.2f of 4-ulp rounding bound", total,
                  worst_k, worst_n)};
}

Verdict optimizer_vs_oracle() {
  ExperimentConfig cfg;
  cfg.scenario = ScenarioId::PowerSweep;
  const auto values = swept_values(cfg);
  const std::size_t at_3w = std::find(values.begin(), values.end(), 3.0) - values.begin();
  double worst = std::numeric_limits<double>::infinity();
  int nonzero = 0;
  const auto t0 = Clock::now();
  for (int scene = 0; scene < 5; ++scene) {
    for (std::size_t s = 0; s < 2; ++s) {
      const auto r = oracle_cell(cfg, s, at_3w, trial_seed(cfg.seed, scene));
      worst = std::min(worst, r.ratio);
      nonzero += r.oracle_best > 0.0;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return {worst >= 0.99 && secs < 120.0,
          fmt("worst SCA/oracle ratio %.6f over 5 scenes x 2 schemes (%d with nonzero optimum), runtime %.1fs", worst,
              nonzero, secs)};
}

bool nondecreasing_within(const std::vector<SummaryRow>& curve, bool use_see = false) {
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double a = use_see ? curve[i - 1].see_mean : curve[i - 1].sum_rate_mean;
    const double b = use_see ? curve[i].see_mean : curve[i].sum_rate_mean;
    const double sa = use_see ? curve[i - 1].see_se : curve[i - 1].sum_rate_se;
    const double sb = use_see ? curve[i].see_se : curve[i].sum_rate_se;
    if (b < a - 2.0 * std::hypot(sa, sb)) return false;
  }
  return true;
}

Verdict rsma_over_noma(Outputs& out) {
  const auto c = curves_of(summarize(scenario_rows(out, ScenarioId::PowerSweep)));
  const auto& noma = c.at("noma");
  const auto& rsma = c.at("rsma");
  bool above = true;
  double peak = -std::numeric_limits<double>::infinity();
  std::string gains;
  for (std::size_t i = 0; i < noma.size(); ++i) {
    above = above && rsma[i].sum_rate_mean > noma[i].sum_rate_mean;
    const double g = noma[i].sum_rate_mean > 0 ? rsma[i].sum_rate_mean / noma[i].sum_rate_mean - 1.0 : 0.0;
    peak = std::max(peak, g);
    gains += fmt("%s%+.1f%%", i ? " " : "", 100.0 * g);
  }
  const bool mono = nondecreasing_within(noma) && nondecreasing_within(rsma);
  const double secs = out.seconds[ScenarioId::PowerSweep];
  return {above && mono && peak >= 0.5 && secs < 600.0,
          fmt("RSMA vs NOMA mean gain per p: [%s]; peak %+.1f%%; monotone=%s; runtime %.0fs", gains.c_str(),
              100.0 * peak, mono ? "yes" : "no", secs)};
}

Verdict wavelength(Outputs& out) {
  const auto c = curves_of(summarize(scenario_rows(out, ScenarioId::Wavelength)));
  bool ok = true;
  std::string detail;
  for (const char* scheme : {"noma", "rsma"}) {
    const auto& curve = c.at(scheme);
    const double r510 = curve.at(0).sum_rate_mean;
    const double r670 = curve.at(1).sum_rate_mean;
    const double drop = r510 > 0 ? 1.0 - r670 / r510 : 0.0;
    ok = ok && r670 < r510 && drop >= 0.05 && drop <= 0.50;
    detail += fmt("%s: 510nm %.6g, 670nm %.6g, deterioration %.3f%%; ", scheme, r510, r670, 100.0 * drop);
  }
  return {ok, detail};
}

Verdict element_sweep(Outputs& out) {
  const auto& rows = scenario_rows(out, ScenarioId::ElementSweep);
  const auto c = curves_of(summarize(rows));
  ExperimentConfig cfg;
  PowerModel pm = cfg.power;
  pm.signal_power = cfg.budget.electrical_power();
  bool affine = true;
  for (const auto& r : rows) {
    const int n = static_cast<int>(r.swept_value);
    const int k = (n + 1) / 2;  // checkerboard mirror count
    affine = affine && r.total_power == total_power(pm, k, n - k);
  }
  bool mono = true;
  bool rise_fall = true;
  std::string detail;
  for (const char* scheme : {"noma", "rsma"}) {
    const auto& curve = c.at(scheme);
    mono = mono && nondecreasing_within(curve);
    double best = 0.0;
    for (const auto& p : curve) best = std::max(best, p.see_mean);
    rise_fall = rise_fall && curve.back().see_mean < best;
    detail += fmt("%s: SEE at %g elements %.6g vs sweep max %.6g; ", scheme, curve.back().swept_value,
                  curve.back().see_mean, best);
  }
  detail += fmt("rate monotone=%s power affine=%s", mono ? "yes" : "no", affine ? "yes" : "no");
  return {mono && affine && rise_fall, detail};
}

Verdict strategies(Outputs& out) {
  const auto c = curves_of(summarize(scenario_rows(out, ScenarioId::AllocStrategies)));
  const auto& eq = c.at("rsma_equal");
  const auto& na = c.at("rsma_noma_alike");
  const auto& rnd = c.at("rsma_random");
  bool ok = true;
  int violations = 0;
  std::string detail;
  for (std::size_t i = 0; i < eq.size(); ++i) {
    const bool here = eq[i].sum_rate_mean >= na[i].sum_rate_mean && eq[i].sum_rate_mean >= rnd[i].sum_rate_mean;
    ok = ok && here;
    violations += !here;
  }
  const std::size_t last = eq.size() - 1;
  detail = fmt("points violating Equal >= others: %d of %zu; at p=%g W equal %.6g, noma_alike %.6g, random %.6g",
               violations, eq.size(), eq[last].swept_value, eq[last].sum_rate_mean, na[last].sum_rate_mean,
               rnd[last].sum_rate_mean);
  return {ok, detail};
}

Verdict replay(Outputs& out) {
  std::size_t checked = 0;
  double worst = 0.0;
  for (auto id : {ScenarioId::PowerSweep, ScenarioId::Wavelength, ScenarioId::ElementSweep, ScenarioId::AllocStrategies}) {
    ExperimentConfig cfg;
    cfg.scenario = id;
    for (const auto& r : scenario_rows(out, id)) {
      const double again = replay_sum_rate(cfg, r);
      const double rel = again == r.sum_rate ? 0.0 : std::abs(again - r.sum_rate) / std::abs(r.sum_rate);
      worst = std::max(worst, rel);
      ++checked;
    }
  }
  return {worst <= 1e-9, fmt("%zu rows re-evaluated from stored state, worst relative error %.3e", checked, worst)};
}

}  // namespace

int main(int argc, char** argv) {
  Outputs out;
  out.dir = argc > 1 ? argv[1] : "acceptance_out";
  std::filesystem::create_directories(out.dir);

  run("physics_exactness", physics);
  run("noma_coefficients", noma_coefficients_check);
  run("power_model", power_model);
  run("optimizer_vs_oracle", optimizer_vs_oracle);
  run("rsma_exceeds_noma", [&] { return rsma_over_noma(out); });
  run("wavelength_deterioration", [&] { return wavelength(out); });
  run("element_sweep_shape", [&] { return element_sweep(out); });
  run("allocation_strategies", [&] { return strategies(out); });
  run("replay", [&] { return replay(out); });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
