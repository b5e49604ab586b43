#pragma once

#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "ostar/geometry.hpp"

namespace ostar {

struct LinkBudget {
  double bandwidth = 200e6;     // B [Hz]
  double noise_psd = 1e-21;     // N_o [A^2/Hz]
  double optical_power = 3.0;   // p [W]
  double conversion_q = 3.0;    // q
  double dc_bias = 0.0;         // I_DC [A], bookkeeping only

  // P_S = (p / q)^2.
  [[nodiscard]] double electrical_power() const {
    const double r = optical_power / conversion_q;
    return r * r;
  }
  [[nodiscard]] double noise_power() const { return noise_psd * bandwidth; }
  void validate() const;
};

struct NomaConfig {
  double mu = 0.6;
};

enum class RsmaStrategy { Equal, NomaAlike, Random };

// How the common stream enters the RSMA sum rate.
enum class CommonRateAccounting {
  AllocatedShare,  // the common stream is counted once at its decodable rate
  PerUserDecode,   // every user's common-stream decode rate is summed
};

struct RsmaConfig {
  double mu = 0.6;
  double p_tol = 0.01;  // SIC threshold [W] (10 dBm)
  RsmaStrategy strategy = RsmaStrategy::Equal;
  double noma_alike_mu = 0.6;  // coefficient law used by the NomaAlike split
  CommonRateAccounting accounting = CommonRateAccounting::AllocatedShare;
};

// Users in decoding order: the Room-1 block (descending effective gain)
// followed by the Room-2 block (descending effective gain).
struct OrderedUsers {
  struct Entry {
    double gain = 0.0;  // h * amp_factor
    RoomId room = RoomId::One;
    std::size_t original = 0;
  };
  std::vector<Entry> entries;

  [[nodiscard]] std::size_t size() const { return entries.size(); }
  [[nodiscard]] std::vector<std::size_t> permutation() const;
};

struct RateResult {
  std::vector<double> per_user;  // in ordered position
  double sum = 0.0;
};

struct PowerSplit {
  double common = 0.0;
  std::vector<double> private_powers;  // in ordered position
};

struct CommonRate {
  std::vector<double> per_user_decode;
  double rate = 0.0;
  std::size_t bottleneck = 0;  // ordered position attaining the minimum
};

struct RsmaResult {
  double sum = 0.0;
  CommonRate common;
  std::vector<double> private_rates;
  std::vector<bool> sic_feasible;
  PowerSplit split;
};

// exp(1) / (2 pi) scaling of the electrical SINR.
inline constexpr double kSinrScale = std::numbers::e / (2.0 * std::numbers::pi);

double rate_from_sinr(double bandwidth, double sinr);

std::vector<double> noma_coefficients(std::size_t users, double mu);

OrderedUsers order_users(std::span<const double> gains, std::span<const RoomId> rooms);

RateResult noma_sum_rate(const OrderedUsers& ordered, const LinkBudget& budget,
                         const NomaConfig& cfg, double responsivity);

PowerSplit rsma_power_split(const LinkBudget& budget, const RsmaConfig& cfg, std::size_t users,
                            std::mt19937_64& rng);

std::vector<bool> rsma_sic_feasible(double common_power, std::span<const double> private_powers,
                                    std::span<const double> gains, double noise_psd, double p_tol);

CommonRate rsma_common_rate(const OrderedUsers& ordered, const LinkBudget& budget,
                            double common_power, std::span<const double> private_powers,
                            double responsivity);

std::vector<double> rsma_private_rates(const OrderedUsers& ordered, const LinkBudget& budget,
                                       std::span<const double> private_powers, double responsivity);

// Sum rate for an already drawn power split.
RsmaResult rsma_sum_rate(const OrderedUsers& ordered, const LinkBudget& budget,
                         const RsmaConfig& cfg, const PowerSplit& split, double responsivity);

RsmaResult rsma_sum_rate(const OrderedUsers& ordered, const LinkBudget& budget,
                         const RsmaConfig& cfg, double responsivity, std::mt19937_64& rng);

}  // namespace ostar
