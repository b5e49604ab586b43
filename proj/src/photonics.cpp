#include "ostar/photonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ostar {

namespace {

constexpr double kPi = std::numbers::pi;

// Mean of the squared p- and s-amplitude terms.
double fresnel_average(double cos_i, double sin_i, double eta) {
  const double radicand = eta * eta - sin_i * sin_i;
  if (radicand < 0.0) {
    throw std::domain_error("reflectance: total internal reflection regime");
  }
  const double root = std::sqrt(radicand);
  const double e2c = eta * eta * cos_i;
  const double tp = (e2c - root) / (e2c + root);
  const double ts = (cos_i - root) / (cos_i + root);
  return 0.5 * tp * tp + 0.5 * ts * ts;
}

void check_angle(double a, const char* what) {
  if (!(a >= 0.0 && a <= kPi / 2)) throw std::invalid_argument(what);
}

}  // namespace

void LcCell::validate() const {
  if (!(eta_o >= 1.0 && eta_e > eta_o)) throw std::invalid_argument("LcCell: need eta_e > eta_o >= 1");
  if (!(eta_a > 0.0)) throw std::invalid_argument("LcCell: eta_a must be positive");
  if (!(v_th > 0.0)) throw std::invalid_argument("LcCell: v_th must be positive");
  if (!(v_0 > 0.0)) throw std::invalid_argument("LcCell: v_0 must be positive");
  if (!(depth > 0.0)) throw std::invalid_argument("LcCell: depth must be positive");
  if (!(r_eff >= 0.0)) throw std::invalid_argument("LcCell: r_eff must be nonnegative");
}

double tilt_from_voltage(const LcCell& cell, double v_e) {
  if (v_e < 0.0) throw std::invalid_argument("tilt_from_voltage: negative voltage");
  if (v_e <= cell.v_th) return 0.0;
  return kPi / 2 - 2.0 * std::atan(std::exp((cell.v_th - v_e) / cell.v_0));
}

double index_from_tilt(const LcCell& cell, double tilt) {
  if (!(tilt >= 0.0 && tilt <= kPi / 2)) throw std::invalid_argument("index_from_tilt: tilt outside [0, pi/2]");
  const double c = std::cos(tilt);
  const double s = std::sin(tilt);
  const double inv = c * c / (cell.eta_e * cell.eta_e) + s * s / (cell.eta_o * cell.eta_o);
  return 1.0 / std::sqrt(inv);
}

double voltage_from_index(const LcCell& cell, double eta_c) {
  if (!(eta_c > cell.eta_o && eta_c <= cell.eta_e)) {
    throw std::domain_error("voltage_from_index: eta_c outside (eta_o, eta_e]");
  }
  const double eo2 = cell.eta_o * cell.eta_o;
  const double ee2 = cell.eta_e * cell.eta_e;
  const double ec2 = eta_c * eta_c;
  // Tilt producing eta_c: tan = eta_o sqrt(ee2 - ec2) / (eta_e sqrt(ec2 - eo2)).
  const double tilt = std::atan2(cell.eta_o * std::sqrt(ee2 - ec2), cell.eta_e * std::sqrt(ec2 - eo2));
  const double arg = -std::tan(tilt / 2 - kPi / 4);
  if (!(arg > 0.0)) throw std::domain_error("voltage_from_index: voltage diverges");
  return cell.v_th - cell.v_0 * std::log(arg);
}

double reflectance_entry(double xi, double eta_rel) {
  check_angle(xi, "reflectance_entry: angle outside [0, pi/2]");
  if (!(eta_rel > 0.0)) throw std::invalid_argument("reflectance_entry: relative index must be positive");
  return fresnel_average(std::cos(xi), std::sin(xi), eta_rel);
}

double reflectance_exit(double theta, double eta1_rel) {
  check_angle(theta, "reflectance_exit: angle outside [0, pi/2]");
  if (!(eta1_rel > 0.0)) throw std::invalid_argument("reflectance_exit: relative index must be positive");
  return fresnel_average(std::cos(theta), std::sin(theta), eta1_rel);
}

double refraction_angle(const LcCell& cell, double eta_c, double xi) {
  return std::asin(std::sin(xi) * cell.eta_a / eta_c);
}

double transition_coefficient(const LcCell& cell, double eta_c, double xi) {
  const double theta = refraction_angle(cell, eta_c, xi);
  const double t_in = 1.0 - reflectance_entry(xi, eta_c / cell.eta_a);
  const double t_out = 1.0 - reflectance_exit(theta, cell.eta_a / eta_c);
  return t_in * t_out;
}

double amplification_gamma(const LcCell& cell, double eta_c, double xi, double wavelength) {
  if (!(wavelength > 0.0)) throw std::invalid_argument("amplification_gamma: wavelength must be positive");
  check_angle(xi, "amplification_gamma: angle outside [0, pi/2)");
  const double c = std::cos(xi);
  if (!(c > 1e-15)) throw std::domain_error("amplification_gamma: grazing incidence");
  const double e_field = voltage_from_index(cell, eta_c) / cell.depth;
  return 2.0 * kPi * eta_c * eta_c * eta_c * cell.r_eff * e_field / (c * wavelength);
}

double amplify(double p_in, double gamma, double depth, double psi) {
  if (p_in < 0.0) throw std::invalid_argument("amplify: negative input power");
  return p_in * std::exp(gamma * depth) * psi;
}

LcState lc_state(const LcCell& cell, double eta_c, double xi, double wavelength) {
  LcState s;
  s.eta_c = eta_c;
  s.v_e = voltage_from_index(cell, eta_c);
  s.tilt = tilt_from_voltage(cell, s.v_e);
  s.e_field = s.v_e / cell.depth;
  s.gamma_amp = amplification_gamma(cell, eta_c, xi, wavelength);
  return s;
}

}  // namespace ostar
