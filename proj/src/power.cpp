#include "ostar/power.hpp"

#include <stdexcept>

namespace ostar {

namespace {
constexpr double kMilli = 1e-3;
}

void PowerModel::validate() const {
  for (double v : {t_circuit_mw, driver_mw, pa_mw, filter_mw, dac_mw, mirror_mw, lc_mw, r_circuit_mw,
                   tia_mw, adc_mw, signal_power}) {
    if (!(v >= 0.0)) throw std::invalid_argument("power model: entries must be nonnegative");
  }
  if (rx_count < 0) throw std::invalid_argument("power model: rx_count must be nonnegative");
}

double ap_power(const PowerModel& m) {
  return (m.t_circuit_mw + m.driver_mw + m.pa_mw + m.filter_mw + m.dac_mw) * kMilli + m.signal_power;
}

double ris_power(const PowerModel& m, int mirrors, int lc_elements) {
  if (mirrors < 0 || lc_elements < 0) throw std::invalid_argument("ris_power: negative element count");
  return (mirrors * m.mirror_mw + lc_elements * m.lc_mw) * kMilli;
}

double rx_power(const PowerModel& m) {
  return m.rx_count * (m.r_circuit_mw + m.filter_mw + m.tia_mw + m.adc_mw) * kMilli;
}

double total_power(const PowerModel& m, int mirrors, int lc_elements) {
  return ap_power(m) + ris_power(m, mirrors, lc_elements) + rx_power(m);
}

double see(double sum_rate, double total) {
  if (!(total > 0.0)) throw std::invalid_argument("see: total power must be positive");
  return sum_rate / total;
}

}  // namespace ostar
