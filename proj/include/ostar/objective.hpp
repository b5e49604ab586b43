#pragma once

#include <memory>
#include <random>
#include <span>

#include "ostar/access.hpp"
#include "ostar/channel.hpp"
#include "ostar/optimizer.hpp"
#include "ostar/power.hpp"

namespace ostar {

enum class Scheme { Noma, Rsma };

struct SchemeSetup {
  Scheme scheme = Scheme::Noma;
  LinkBudget budget;
  NomaConfig noma;
  RsmaConfig rsma;
  ChannelParams channel;
};

// Decision vector layout: (roll omega, yaw gamma, eta_c).
PanelState panel_state_from(std::span<const double> x);

// Sum rate of one frozen drop as a function of the panel state. The RSMA
// private split is drawn once at construction, so repeated evaluations are
// deterministic.
class SumRateEvaluator {
 public:
  SumRateEvaluator(const Scene& scene, const SchemeSetup& setup, std::mt19937_64& split_rng);

  // Throws whatever the channel or access layer throws.
  [[nodiscard]] double sum_rate(const PanelState& state) const;

  [[nodiscard]] const PowerSplit& split() const { return split_; }
  [[nodiscard]] const FrozenChannel& channel() const { return channel_; }

 private:
  FrozenChannel channel_;
  SchemeSetup setup_;
  PowerSplit split_;
  std::vector<RoomId> rooms_;
};

// Sum-rate objective. Channel or access errors map to -infinity.
Objective make_p0_objective(const Scene& scene, const SchemeSetup& setup, std::mt19937_64& split_rng);

// Sum rate divided by the (state-independent) total consumed power.
Objective make_see_objective(const Scene& scene, const SchemeSetup& setup, const PowerModel& power,
                             std::mt19937_64& split_rng);

}  // namespace ostar
