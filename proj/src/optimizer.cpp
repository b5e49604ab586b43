#include "ostar/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ostar {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, std::span<const double> x) {
  const double v = f(x);
  return std::isfinite(v) ? v : kNegInf;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SearchSpace SearchSpace::panel_default() {
  constexpr double h = std::numbers::pi / 2.0;
  return SearchSpace{{{-h, h}, {-h, h}, {1.5 + 1e-6, 1.7}}};
}

void SearchSpace::validate() const {
  if (bounds.empty()) throw std::invalid_argument("search space: no variables");
  for (const auto& b : bounds) {
    if (!(std::isfinite(b.lo) && std::isfinite(b.hi) && b.lo < b.hi)) {
      throw std::invalid_argument("search space: each variable needs finite lo < hi");
    }
  }
}

void ScaParams::validate() const {
  if (agents < 1) throw std::invalid_argument("sca: agents must be >= 1");
  if (iterations < 0) throw std::invalid_argument("sca: iterations must be >= 0");
  if (!(a_tilde > 0.0)) throw std::invalid_argument("sca: a_tilde must be positive");
}

double sca_r1(int t, int iterations, double a_tilde) {
  if (iterations <= 0) return a_tilde;
  return a_tilde - t * (a_tilde / iterations);
}

ScaResult sca_optimize(const Objective& objective, const SearchSpace& space, const ScaParams& params,
                       std::mt19937_64& rng, const ScaObserver& observer) {
  space.validate();
  params.validate();
  const std::size_t dim = space.size();
  const auto g_count = static_cast<std::size_t>(params.agents);

  std::vector<std::vector<double>> agents(g_count, std::vector<double>(dim));
  for (auto& a : agents) {
    for (std::size_t v = 0; v < dim; ++v) {
      a[v] = std::uniform_real_distribution<double>(space.bounds[v].lo, space.bounds[v].hi)(rng);
    }
  }

  ScaResult out;
  out.best_solution = agents.front();
  out.best_fitness = kNegInf;
  auto absorb = [&] {
    for (const auto& a : agents) {
      const double f = safe_eval(objective, a);
      ++out.evaluations;
      if (f > out.best_fitness) {
        out.best_fitness = f;
        out.best_solution = a;
      }
    }
    out.trace.push_back({out.best_fitness, out.best_solution});
  };
  out.trace.reserve(static_cast<std::size_t>(params.iterations) + 1);
  absorb();

  std::uniform_real_distribution<double> u01(0.0, 1.0);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (int t = 0; t < params.iterations; ++t) {
    const double r1 = sca_r1(t, params.iterations, params.a_tilde);
    const auto& dest = out.best_solution;
    for (auto& a : agents) {
      for (std::size_t v = 0; v < dim; ++v) {
        const double r2 = kTwoPi * u01(rng);
        const double r3 = 2.0 * u01(rng);
        const double r4 = u01(rng);
        const double step = std::abs(r3 * dest[v] - a[v]);
        const double wave = r4 < 0.5 ? std::sin(r2) : std::cos(r2);
        a[v] = std::clamp(a[v] + r1 * wave * step, space.bounds[v].lo, space.bounds[v].hi);
      }
    }
    if (observer) observer(t, agents);
    absorb();
  }
  return out;
}

GridResult grid_oracle(const Objective& objective, const SearchSpace& space, int points_per_axis) {
  space.validate();
  if (points_per_axis < 2) throw std::invalid_argument("grid_oracle: need at least 2 points per axis");
  const std::size_t dim = space.size();
  const auto n = static_cast<std::size_t>(points_per_axis);

  auto coordinate = [&](std::size_t v, std::size_t i) {
    const auto& b = space.bounds[v];
    if (i + 1 == n) return b.hi;
    return b.lo + static_cast<double>(i) * (b.hi - b.lo) / static_cast<double>(n - 1);
  };

  GridResult out;
  out.best_fitness = kNegInf;
  std::vector<std::size_t> idx(dim, 0);
  std::vector<double> x(dim);
  for (;;) {
    for (std::size_t v = 0; v < dim; ++v) x[v] = coordinate(v, idx[v]);
    const double f = safe_eval(objective, x);
    ++out.evaluations;
    if (out.best_solution.empty() || f > out.best_fitness) {
      out.best_fitness = f;
      out.best_solution = x;
    }
    // Odometer increment, last variable fastest.
    std::size_t v = dim;
    while (v > 0) {
      --v;
      if (++idx[v] < n) break;
      idx[v] = 0;
      if (v == 0) return out;
    }
  }
}

void write_trace_csv(std::ostream& os, const ScaResult& result, std::span<const char* const> names) {
  os << "iteration,best_fitness";
  for (const char* n : names) os << ',' << n;
  os << '\n';
  for (std::size_t t = 0; t < result.trace.size(); ++t) {
    const auto& p = result.trace[t];
    os << t << ',' << fmt17(p.best_fitness);
    for (double x : p.solution) os << ',' << fmt17(x);
    os << '\n';
  }
}

}  // namespace ostar
