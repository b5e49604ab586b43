#include <gtest/gtest.h>

#include "ostar/power.hpp"

using namespace ostar;

namespace {

PowerModel zeros() {
  PowerModel m;
  m.t_circuit_mw = m.driver_mw = m.pa_mw = m.filter_mw = m.dac_mw = 0.0;
  m.mirror_mw = m.lc_mw = m.r_circuit_mw = m.tia_mw = m.adc_mw = 0.0;
  m.signal_power = 0.0;
  return m;
}

// Sum of the table entries, written independently in watts.
constexpr double kApCircuits = 3.250 + 2.758 + 0.280 + 0.0025 + 0.175;
constexpr double kRxCircuits = 0.0019 + 0.0025 + 2.5 + 0.095;

}  // namespace

TEST(ApPower, TableSums) {
  PowerModel m;
  EXPECT_NEAR(ap_power(m), 7.4655, 1e-12);
  m.signal_power = 0.0;
  EXPECT_NEAR(ap_power(m), kApCircuits, 1e-12);
  PowerModel z = zeros();
  z.signal_power = 0.42;
  EXPECT_DOUBLE_EQ(ap_power(z), 0.42);
}

TEST(RisPower, Linear) {
  PowerModel m;
  EXPECT_NEAR(ris_power(m, 25, 25), 10.5, 1e-12);
  EXPECT_EQ(ris_power(m, 0, 0), 0.0);
  EXPECT_NEAR(ris_power(m, 50, 0), 5.0, 1e-12);
  EXPECT_THROW(ris_power(m, -1, 0), std::invalid_argument);
}

TEST(RxPower, TableSum) {
  PowerModel m;
  EXPECT_NEAR(rx_power(m), 2.5994, 1e-12);
  EXPECT_NEAR(rx_power(m), kRxCircuits, 1e-12);
  EXPECT_EQ(rx_power(zeros()), 0.0);
  PowerModel twice = m;
  twice.tia_mw *= 2.0;
  EXPECT_NEAR(rx_power(twice) - rx_power(m), 2.5, 1e-12);
  PowerModel multi = m;
  multi.rx_count = 4;
  EXPECT_NEAR(rx_power(multi), 4.0 * rx_power(m), 1e-12);
}

TEST(TotalPower, WorkedValues) {
  PowerModel m;
  m.signal_power = 1.0;  // p = 3 W, q = 3
  EXPECT_NEAR(total_power(m, 25, 25), 20.5649, 1e-6);
  m.signal_power = 1.0 / 9.0;  // p = 1 W
  EXPECT_NEAR(total_power(m, 25, 25), 19.6760, 1e-4);
  EXPECT_NEAR(total_power(m, 25, 25), kApCircuits + 1.0 / 9.0 + 10.5 + kRxCircuits, 1e-12);
}

TEST(TotalPower, AffineInElementCounts) {
  PowerModel m;
  const double base = total_power(m, 0, 0);
  for (int k = 0; k <= 60; k += 5) {
    for (int n = 0; n <= 60; n += 5) {
      const double t = total_power(m, k, n);
      EXPECT_NEAR(t, base + 0.1 * k + 0.32 * n, 1e-12);
      EXPECT_NEAR(total_power(m, k + 1, n) - t, 0.1, 1e-13);
      EXPECT_NEAR(total_power(m, k, n + 1) - t, 0.32, 1e-13);
    }
  }
}

TEST(See, Quotient) {
  EXPECT_NEAR(see(2.05649e8, 20.5649), 1e7, 1e-6);
  EXPECT_EQ(see(0.0, 20.0), 0.0);
  EXPECT_EQ(see(3e6, 12.0), see(6e6, 24.0));
  EXPECT_THROW(see(1.0, 0.0), std::invalid_argument);
}

TEST(PowerModel, RejectsNegativeEntries) {
  PowerModel m;
  m.tia_mw = -1.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}
