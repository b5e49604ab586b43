#pragma once

// Reference computations written from first principles, kept independent of
// the library code paths they check.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ostar/geometry.hpp"

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

inline ostar::Vec3 unit(ostar::Vec3 v) { return (1.0 / v.norm()) * v; }

inline ostar::Vec3 device_normal(double alpha, double beta) {
  return {std::sin(alpha) * std::cos(beta), std::sin(alpha) * std::sin(beta), std::cos(alpha)};
}

inline ostar::Vec3 panel_normal(double yaw, double roll) {
  return {std::sin(yaw) * std::cos(roll), std::cos(yaw) * std::cos(roll), std::sin(roll)};
}

// Unpolarised reflectance from the textbook s/p amplitudes with the
// transmitted angle found by Snell's law.
inline double fresnel_reflectance(double incidence, double n1, double n2) {
  const double st = n1 / n2 * std::sin(incidence);
  const double ct = std::sqrt(1.0 - st * st);
  const double ci = std::cos(incidence);
  const double rs = (n1 * ci - n2 * ct) / (n1 * ci + n2 * ct);
  const double rp = (n2 * ci - n1 * ct) / (n2 * ci + n1 * ct);
  return 0.5 * (rs * rs + rp * rp);
}

// Index ellipse evaluated at tilt, in the form n = n_o n_e / sqrt(...).
inline double index_ellipse(double no, double ne, double tilt) {
  const double c = std::cos(tilt);
  const double s = std::sin(tilt);
  return no * ne / std::sqrt(no * no * c * c + ne * ne * s * s);
}

// Lambertian path term between a downward-facing source and a receiver.
inline double lambertian_los(double phi_half, double area, double f, double fov, ostar::Vec3 ap,
                             ostar::Vec3 rx, ostar::Vec3 rx_normal) {
  const double m = std::log(0.5) / std::log(std::cos(phi_half));
  const ostar::Vec3 d = ap - rx;
  const double dist = d.norm();
  const double cos_phi = unit(d).dot({0.0, 0.0, 1.0});
  const double cos_xi = unit(d).dot(rx_normal);
  if (std::acos(cos_xi) > fov || cos_phi <= 0.0) return 0.0;
  const double g = f * f / std::pow(std::sin(fov), 2);
  return (m + 1.0) * area / (2.0 * kPi * dist * dist) * std::pow(cos_phi, m) * g * cos_xi;
}

// Reflected or refracted path through one panel element. `face` is the wall
// normal looking toward the AP, `steer` the element normal.
inline double panel_path(double phi_half, double area, double f, double fov, ostar::Vec3 ap,
                         ostar::Vec3 element, double element_area, ostar::Vec3 face, ostar::Vec3 steer,
                         ostar::Vec3 rx, ostar::Vec3 rx_normal) {
  const double m = std::log(0.5) / std::log(std::cos(phi_half));
  const ostar::Vec3 to_ap = ap - element;
  const ostar::Vec3 to_el = element - rx;
  const double cos_phi_a = unit(to_ap).dot({0.0, 0.0, 1.0});
  const double cos_xi_a = unit(to_ap).dot(unit(face));
  const double cos_xi_u = unit(to_el).dot(rx_normal);
  const double cos_phi_u = unit(to_el).dot(steer);
  if (cos_phi_a <= 0.0 || cos_xi_a <= 0.0 || std::acos(std::min(1.0, cos_xi_u)) > fov || cos_phi_u <= 0.0) {
    return 0.0;
  }
  const double g = f * f / std::pow(std::sin(fov), 2);
  const double da2 = to_ap.dot(to_ap);
  const double du2 = to_el.dot(to_el);
  return (m + 1.0) * area * element_area / (2.0 * kPi * kPi * da2 * du2) * std::pow(cos_phi_a, m) *
         cos_xi_a * g * cos_xi_u * cos_phi_u;
}

inline double shannon_vlc(double bandwidth, double sinr) {
  return bandwidth * std::log(1.0 + sinr) / std::log(2.0);
}

}  // namespace oracle
