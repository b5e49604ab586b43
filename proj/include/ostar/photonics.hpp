#pragma once

namespace ostar {

// Liquid-crystal refractor cell constants (SI units).
struct LcCell {
  double eta_o = 1.5;       // ordinary index
  double eta_e = 1.7;       // extraordinary index
  double eta_a = 1.0;       // surrounding air
  double v_th = 1.34;       // tilt threshold voltage [V]
  double v_0 = 1.0;         // tilt voltage scale [V]
  double depth = 0.75e-3;   // cell depth D [m]
  double r_eff = 12e-12;    // electro-optic coefficient [m/V]

  // Throws std::invalid_argument if the constants are not physical.
  void validate() const;
};

// Operating point of a cell tuned to refractive index eta_c.
struct LcState {
  double eta_c = 0.0;
  double tilt = 0.0;       // molecular tilt [rad]
  double v_e = 0.0;        // applied voltage [V]
  double e_field = 0.0;    // v_e / depth [V/m]
  double gamma_amp = 0.0;  // amplification gain coefficient [1/m]
};

double tilt_from_voltage(const LcCell& cell, double v_e);
double index_from_tilt(const LcCell& cell, double tilt);

// Exact inverse of index_from_tilt followed by tilt_from_voltage. Diverges at
// eta_o; throws std::domain_error for eta_c outside (eta_o, eta_e].
double voltage_from_index(const LcCell& cell, double eta_c);

// Unpolarised Fresnel reflectance entering a medium of relative index
// eta_rel at incidence xi. Throws std::domain_error in the total internal
// reflection regime (eta_rel^2 < sin^2 xi).
double reflectance_entry(double xi, double eta_rel);

// Same quantity written for the cell-to-air face, eta1_rel = eta_a / eta_c.
double reflectance_exit(double theta, double eta1_rel);

// Internal refraction angle by Snell's law for light entering at xi.
double refraction_angle(const LcCell& cell, double eta_c, double xi);

// psi_LC = (1 - R_entry(xi)) * (1 - R_exit(theta)).
double transition_coefficient(const LcCell& cell, double eta_c, double xi);

// Gamma = 2 pi eta_c^3 r_eff E / (cos(xi) lambda), E = V_E / D.
double amplification_gamma(const LcCell& cell, double eta_c, double xi, double wavelength);

// P_out = P_in * exp(Gamma D) * psi.
double amplify(double p_in, double gamma, double depth, double psi);

LcState lc_state(const LcCell& cell, double eta_c, double xi, double wavelength);

}  // namespace ostar
