#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ostar/access.hpp"
#include "ostar/channel.hpp"
#include "ostar/geometry.hpp"
#include "ostar/optimizer.hpp"
#include "ostar/power.hpp"

namespace ostar {

enum class ScenarioId { PowerSweep, Wavelength, UserCount, AllocStrategies, ElementSweep };

std::string_view to_string(ScenarioId id);
// Throws std::invalid_argument listing the accepted names.
ScenarioId parse_scenario(std::string_view name);

std::string_view to_string(RsmaStrategy s);
RsmaStrategy parse_strategy(std::string_view name);

struct ExperimentConfig {
  ScenarioId scenario = ScenarioId::PowerSweep;
  int trials = 100;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 picks the hardware concurrency
  std::string out_dir = "results";

  SceneSpec scene;
  ChannelParams channel;
  LinkBudget budget;
  NomaConfig noma;
  RsmaConfig rsma;
  PowerModel power;
  ScaParams sca;
  double rho_wall = 0.8;  // accepted and recorded; no path consumes it

  std::vector<double> power_sweep_w{1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  std::vector<double> wavelengths_nm{510.0, 670.0};
  std::vector<int> user_counts{2, 4, 6, 8};
  std::vector<int> element_counts{10, 20, 30, 40, 50, 60, 70, 80};
  std::vector<RsmaStrategy> strategies{RsmaStrategy::Equal, RsmaStrategy::NomaAlike,
                                       RsmaStrategy::Random};
  int element_sweep_rows = 5;
  int oracle_points = 21;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Parses a JSON object. Absent keys keep their defaults; unknown keys and
// out-of-range values throw std::invalid_argument naming the key.
ExperimentConfig config_from_json_text(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Serialises every key accepted by config_from_json_text.
std::string config_to_json(const ExperimentConfig& cfg, int indent = 2);

}  // namespace ostar
