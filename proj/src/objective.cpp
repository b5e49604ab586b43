#include "ostar/objective.hpp"

#include <limits>
#include <stdexcept>

namespace ostar {

PanelState panel_state_from(std::span<const double> x) {
  if (x.size() != 3) throw std::invalid_argument("panel state needs (roll, yaw, eta_c)");
  return PanelState{x[0], x[1], x[2]};
}

SumRateEvaluator::SumRateEvaluator(const Scene& scene, const SchemeSetup& setup,
                                   std::mt19937_64& split_rng)
    : channel_(scene, setup.channel), setup_(setup) {
  setup_.budget.validate();
  const std::size_t users = channel_.user_count();
  if (users == 0) throw std::invalid_argument("sum rate: scene has no users");
  rooms_.reserve(users);
  for (std::size_t i = 0; i < users; ++i) rooms_.push_back(channel_.room(i));
  if (setup_.scheme == Scheme::Rsma) split_ = rsma_power_split(setup_.budget, setup_.rsma, users, split_rng);
}

double SumRateEvaluator::sum_rate(const PanelState& state) const {
  const auto g = channel_.gains(state);
  std::vector<double> eff(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) eff[i] = g[i].effective();
  const auto ordered = order_users(eff, rooms_);
  const double resp = setup_.channel.pd.responsivity;
  if (setup_.scheme == Scheme::Noma) return noma_sum_rate(ordered, setup_.budget, setup_.noma, resp).sum;
  return rsma_sum_rate(ordered, setup_.budget, setup_.rsma, split_, resp).sum;
}

namespace {

Objective wrap(std::shared_ptr<const SumRateEvaluator> eval, double divisor) {
  return [eval = std::move(eval), divisor](std::span<const double> x) {
    try {
      return eval->sum_rate(panel_state_from(x)) / divisor;
    } catch (const std::exception&) {
      return -std::numeric_limits<double>::infinity();
    }
  };
}

}  // namespace

Objective make_p0_objective(const Scene& scene, const SchemeSetup& setup, std::mt19937_64& split_rng) {
  return wrap(std::make_shared<const SumRateEvaluator>(scene, setup, split_rng), 1.0);
}

Objective make_see_objective(const Scene& scene, const SchemeSetup& setup, const PowerModel& power,
                             std::mt19937_64& split_rng) {
  const double total = total_power(power, scene.panel.mirror_count(), scene.panel.lc_count());
  if (!(total > 0.0)) throw std::invalid_argument("see objective: total power must be positive");
  return wrap(std::make_shared<const SumRateEvaluator>(scene, setup, split_rng), total);
}

}  // namespace ostar
