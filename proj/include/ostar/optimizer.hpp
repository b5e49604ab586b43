#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

namespace ostar {

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

struct SearchSpace {
  std::vector<Bounds> bounds;

  // (roll, yaw, eta_c). The index bound sits just above eta_o, where the
  // drive voltage diverges.
  static SearchSpace panel_default();

  [[nodiscard]] std::size_t size() const { return bounds.size(); }
  void validate() const;
};

struct ScaParams {
  int agents = 5;
  int iterations = 4000;
  double a_tilde = 2.0;

  void validate() const;
};

// Maximised. Non-finite values count as -infinity.
using Objective = std::function<double(std::span<const double>)>;

struct TracePoint {
  double best_fitness = 0.0;
  std::vector<double> solution;
};

struct ScaResult {
  std::vector<double> best_solution;
  double best_fitness = 0.0;
  std::vector<TracePoint> trace;  // destination after init and after each iteration
  std::size_t evaluations = 0;
};

// Called after every position update with the iteration index and all agents.
using ScaObserver = std::function<void(int, std::span<const std::vector<double>>)>;

// r1 = a_tilde - t * a_tilde / T.
double sca_r1(int t, int iterations, double a_tilde);

ScaResult sca_optimize(const Objective& objective, const SearchSpace& space, const ScaParams& params,
                       std::mt19937_64& rng, const ScaObserver& observer = {});

struct GridResult {
  std::vector<double> best_solution;
  double best_fitness = 0.0;
  std::size_t evaluations = 0;
};

// Exhaustive search on a uniform lattice that includes both bounds. The first
// variable varies slowest; ties keep the earliest lattice point.
GridResult grid_oracle(const Objective& objective, const SearchSpace& space, int points_per_axis);

// Columns: iteration,best_fitness,<one column per variable name>.
void write_trace_csv(std::ostream& os, const ScaResult& result, std::span<const char* const> names);

}  // namespace ostar
