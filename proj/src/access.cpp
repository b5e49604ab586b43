#include "ostar/access.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ostar {

void LinkBudget::validate() const {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("link budget: bandwidth must be positive");
  if (!(noise_psd > 0.0)) throw std::invalid_argument("link budget: noise PSD must be positive");
  if (!(optical_power > 0.0)) throw std::invalid_argument("link budget: optical power must be positive");
  if (!(conversion_q > 0.0)) throw std::invalid_argument("link budget: conversion ratio must be positive");
}

std::vector<std::size_t> OrderedUsers::permutation() const {
  std::vector<std::size_t> p;
  p.reserve(entries.size());
  for (const auto& e : entries) p.push_back(e.original);
  return p;
}

double rate_from_sinr(double bandwidth, double sinr) { return bandwidth * std::log2(1.0 + sinr); }

std::vector<double> noma_coefficients(std::size_t users, double mu) {
  if (users < 1) throw std::invalid_argument("noma_coefficients: need at least one user");
  if (!(mu > 0.5 && mu <= 1.0)) throw std::invalid_argument("noma_coefficients: mu must lie in (0.5, 1]");
  std::vector<double> c(users);
  double tail = 1.0;  // (1 - mu)^(u - 1)
  for (std::size_t u = 0; u + 1 < users; ++u) {
    c[u] = mu * tail;
    tail *= 1.0 - mu;
  }
  c[users - 1] = tail;
  return c;
}

OrderedUsers order_users(std::span<const double> gains, std::span<const RoomId> rooms) {
  if (gains.size() != rooms.size()) throw std::invalid_argument("order_users: size mismatch");
  if (gains.empty()) throw std::invalid_argument("order_users: no users");
  OrderedUsers out;
  out.entries.reserve(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) out.entries.push_back({gains[i], rooms[i], i});
  std::stable_sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
    if (a.room != b.room) return a.room == RoomId::One;
    return a.gain > b.gain;
  });
  return out;
}

RateResult noma_sum_rate(const OrderedUsers& ordered, const LinkBudget& budget,
                         const NomaConfig& cfg, double responsivity) {
  const auto c = noma_coefficients(ordered.size(), cfg.mu);
  const double ps = budget.electrical_power();
  const double noise = budget.noise_power();
  RateResult r;
  r.per_user.resize(ordered.size());
  double stronger = 0.0;  // sum of c_j over already-decoded users j < i
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const double a = responsivity * ordered.entries[i].gain;
    const double a2 = a * a;
    const double interference = i == 0 ? 0.0 : a2 * stronger * ps;
    const double sinr = kSinrScale * a2 * c[i] * ps / (interference + noise);
    r.per_user[i] = rate_from_sinr(budget.bandwidth, sinr);
    r.sum += r.per_user[i];
    stronger += c[i];
  }
  return r;
}

PowerSplit rsma_power_split(const LinkBudget& budget, const RsmaConfig& cfg, std::size_t users,
                            std::mt19937_64& rng) {
  if (users < 1) throw std::invalid_argument("rsma_power_split: need at least one user");
  if (!(cfg.mu > 0.0 && cfg.mu < 1.0)) throw std::invalid_argument("rsma_power_split: mu must lie in (0, 1)");
  const double ps = budget.electrical_power();
  PowerSplit split;
  split.common = cfg.mu * ps;
  const double pool = ps - split.common;
  split.private_powers.resize(users);

  switch (cfg.strategy) {
    case RsmaStrategy::Equal:
      std::fill(split.private_powers.begin(), split.private_powers.end(), pool / users);
      break;
    case RsmaStrategy::NomaAlike: {
      const auto c = noma_coefficients(users, cfg.noma_alike_mu);
      for (std::size_t u = 0; u < users; ++u) split.private_powers[u] = pool * c[u];
      break;
    }
    case RsmaStrategy::Random: {
      // Flat Dirichlet draw via normalised exponentials.
      std::exponential_distribution<double> ex(1.0);
      std::vector<double> w(users);
      for (auto& x : w) x = ex(rng);
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      double assigned = 0.0;
      for (std::size_t u = 0; u + 1 < users; ++u) {
        split.private_powers[u] = pool * w[u] / total;
        assigned += split.private_powers[u];
      }
      split.private_powers[users - 1] = std::max(0.0, pool - assigned);
      break;
    }
  }
  return split;
}

std::vector<bool> rsma_sic_feasible(double common_power, std::span<const double> private_powers,
                                    std::span<const double> gains, double noise_psd, double p_tol) {
  if (private_powers.size() != gains.size()) throw std::invalid_argument("rsma_sic_feasible: size mismatch");
  const double private_total = std::accumulate(private_powers.begin(), private_powers.end(), 0.0);
  std::vector<bool> ok(gains.size());
  for (std::size_t u = 0; u < gains.size(); ++u) {
    const double delta = gains[u] * gains[u] / noise_psd;
    ok[u] = common_power * delta - private_total * delta >= p_tol;
  }
  return ok;
}

CommonRate rsma_common_rate(const OrderedUsers& ordered, const LinkBudget& budget,
                            double common_power, std::span<const double> private_powers,
                            double responsivity) {
  if (ordered.size() == 0) throw std::invalid_argument("rsma_common_rate: no users");
  if (private_powers.size() != ordered.size()) throw std::invalid_argument("rsma_common_rate: size mismatch");
  const double private_total = std::accumulate(private_powers.begin(), private_powers.end(), 0.0);
  const double noise = budget.noise_power();
  CommonRate cr;
  cr.per_user_decode.resize(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const double a = responsivity * ordered.entries[i].gain;
    const double a2 = a * a;
    const double sinr = kSinrScale * a2 * common_power / (a2 * private_total + noise);
    cr.per_user_decode[i] = rate_from_sinr(budget.bandwidth, sinr);
  }
  const auto it = std::min_element(cr.per_user_decode.begin(), cr.per_user_decode.end());
  cr.bottleneck = static_cast<std::size_t>(it - cr.per_user_decode.begin());
  cr.rate = *it;
  return cr;
}

std::vector<double> rsma_private_rates(const OrderedUsers& ordered, const LinkBudget& budget,
                                       std::span<const double> private_powers, double responsivity) {
  if (private_powers.size() != ordered.size()) throw std::invalid_argument("rsma_private_rates: size mismatch");
  const double private_total = std::accumulate(private_powers.begin(), private_powers.end(), 0.0);
  const double noise = budget.noise_power();
  std::vector<double> rates(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const double a = responsivity * ordered.entries[i].gain;
    const double a2 = a * a;
    const double others = private_total - private_powers[i];
    const double sinr = kSinrScale * a2 * private_powers[i] / (a2 * others + noise);
    rates[i] = rate_from_sinr(budget.bandwidth, sinr);
  }
  return rates;
}

RsmaResult rsma_sum_rate(const OrderedUsers& ordered, const LinkBudget& budget,
                         const RsmaConfig& cfg, const PowerSplit& split, double responsivity) {
  RsmaResult r;
  r.split = split;
  r.common = rsma_common_rate(ordered, budget, split.common, split.private_powers, responsivity);
  r.private_rates = rsma_private_rates(ordered, budget, split.private_powers, responsivity);

  std::vector<double> gains(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) gains[i] = ordered.entries[i].gain;
  r.sic_feasible = rsma_sic_feasible(split.common, split.private_powers, gains, budget.noise_psd, cfg.p_tol);

  const double private_sum = std::accumulate(r.private_rates.begin(), r.private_rates.end(), 0.0);
  const double common_part =
      cfg.accounting == CommonRateAccounting::AllocatedShare
          ? r.common.rate
          : std::accumulate(r.common.per_user_decode.begin(), r.common.per_user_decode.end(), 0.0);
  r.sum = common_part + private_sum;
  return r;
}

RsmaResult rsma_sum_rate(const OrderedUsers& ordered, const LinkBudget& budget,
                         const RsmaConfig& cfg, double responsivity, std::mt19937_64& rng) {
  const auto split = rsma_power_split(budget, cfg, ordered.size(), rng);
  return rsma_sum_rate(ordered, budget, cfg, split, responsivity);
}

}  // namespace ostar
