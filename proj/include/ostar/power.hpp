#pragma once

namespace ostar {

// Circuit power budget. Constants are in milliwatts, signal power in watts.
struct PowerModel {
  double t_circuit_mw = 3250.0;
  double driver_mw = 2758.0;
  double pa_mw = 280.0;
  double filter_mw = 2.5;
  double dac_mw = 175.0;
  double mirror_mw = 100.0;  // per mirror element
  double lc_mw = 320.0;      // per LC element
  double r_circuit_mw = 1.9;
  double tia_mw = 2500.0;
  double adc_mw = 95.0;
  double signal_power = 1.0;  // P_S [W]
  int rx_count = 1;           // receiver blocks counted in the total

  // Throws std::invalid_argument on negative entries.
  void validate() const;
};

double ap_power(const PowerModel& model);
double ris_power(const PowerModel& model, int mirrors, int lc_elements);
double rx_power(const PowerModel& model);
double total_power(const PowerModel& model, int mirrors, int lc_elements);

// Sum energy efficiency in bits per joule. Throws std::invalid_argument when
// total is not positive.
double see(double sum_rate, double total);

}  // namespace ostar
