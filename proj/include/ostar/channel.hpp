#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "ostar/geometry.hpp"
#include "ostar/photonics.hpp"

namespace ostar {

double lambertian_order(double phi_half);

struct LedParams {
  double phi_half = 70.0 * std::numbers::pi / 180.0;

  [[nodiscard]] double lambertian_m() const { return lambertian_order(phi_half); }
};

struct PdParams {
  double area = 1e-4;          // A_PD [m^2]
  double responsivity = 0.53;  // R_PD [A/W]
  double concentrator_f = 1.5;
  double fov = 85.0 * std::numbers::pi / 180.0;
  double filter_gain = 1.0;

  [[nodiscard]] double concentrator_gain() const;
};

// Decision variables shared by every panel element.
struct PanelState {
  double roll = 0.0;   // omega
  double yaw = 0.0;    // gamma
  double eta_c = 1.7;  // LC refractive index
};

enum class PsiMode {
  PerElement,      // psi evaluated at each LC element's own entry angle
  PanelAggregate,  // one psi at the panel-centre entry angle, outside the sum
};

struct ChannelParams {
  LedParams led;
  PdParams pd;
  LcCell cell;
  double rho_ris = 0.95;
  double wavelength = 510e-9;
  PsiMode psi_mode = PsiMode::PerElement;
};

struct ChannelGain {
  double h = 0.0;           // optical DC gain
  double amp_factor = 1.0;  // exp(Gamma D) for Room 2, 1 otherwise

  [[nodiscard]] double effective() const { return h * amp_factor; }
};

double los_gain(const LedParams& led, const PdParams& pd, Vec3 ap, const UserTerminal& user);

// Reflected path AP -> mirror -> user. Zero outside the receiver FoV and
// whenever the element faces away from the AP or the user.
double mirror_nlos_gain(const PanelElement& element, Vec3 ap, Vec3 face_normal,
                        const UserTerminal& user, double yaw, double roll, const LedParams& led,
                        const PdParams& pd, double rho_ris);

// Refracted path AP -> LC element -> Room-2 user, before psi_LC.
double lc_nlos_gain(const PanelElement& element, Vec3 ap, Vec3 face_normal,
                    const UserTerminal& user, double yaw, double roll, const LedParams& led,
                    const PdParams& pd);

// Angle between the AP direction and the wall face normal at `at`.
double panel_entry_angle(Vec3 at, Vec3 ap, Vec3 face_normal);

// Amplification factor exp(Gamma D), with Gamma taken at the panel-centre
// entry angle so that it is shared by all Room-2 users.
double amplification_factor(const Scene& scene, const ChannelParams& params, double eta_c);

ChannelGain total_gain(const Scene& scene, const UserTerminal& user, const PanelState& state,
                       const ChannelParams& params);

// Precomputes every geometry-only factor of a frozen drop so that per-user
// gains for a new PanelState cost one dot product per visible element.
class FrozenChannel {
 public:
  FrozenChannel(const Scene& scene, const ChannelParams& params);

  void gains(const PanelState& state, std::span<ChannelGain> out) const;
  [[nodiscard]] std::vector<ChannelGain> gains(const PanelState& state) const;

  [[nodiscard]] std::size_t user_count() const { return users_.size(); }
  [[nodiscard]] RoomId room(std::size_t user) const { return users_[user].room; }

 private:
  struct Term {
    double weight;  // every factor except cos(Phi_u^k) and psi_LC
    Vec3 dir;       // unit vector receiver -> element
    int lc_slot;    // index into lc_entry_, -1 for mirrors
  };
  struct UserLinks {
    RoomId room;
    double los;
    std::vector<Term> terms;
  };

  ChannelParams params_;
  std::vector<UserLinks> users_;
  std::vector<double> lc_entry_;  // entry angle per LC element
  double center_entry_ = 0.0;
};

}  // namespace ostar
