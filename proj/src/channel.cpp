#include "ostar/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ostar {

namespace {

constexpr double kPi = std::numbers::pi;

// AP emitters face straight down.
double cos_radiation(Vec3 ap, Vec3 target) {
  const Vec3 d = ap - target;
  return d.z / d.norm();
}

struct NlosFactors {
  double weight = 0.0;  // zero when the path is cut by FoV or back-facing
  Vec3 dir;             // unit receiver -> element
};

// All factors of the reflected/refracted path except cos(Phi_u^k).
NlosFactors nlos_static(const PanelElement& element, Vec3 ap, Vec3 face_normal,
                        const UserTerminal& user, const LedParams& led, const PdParams& pd) {
  NlosFactors f;
  const Vec3 rx = user.receiver();
  const Vec3 to_user = element.center - rx;
  const double d_u = to_user.norm();
  const double d_a = (ap - element.center).norm();
  if (!(d_u > 0.0) || !(d_a > 0.0)) throw std::invalid_argument("nlos gain: degenerate geometry");
  f.dir = (1.0 / d_u) * to_user;

  const double cos_phi_a = cos_radiation(ap, element.center);
  const double cos_xi_a = std::cos(panel_entry_angle(element.center, ap, face_normal));
  const double cos_xi_u = cos_incidence(element.center, rx, user.orientation);
  if (cos_phi_a <= 0.0 || cos_xi_a <= 0.0 || cos_xi_u < std::cos(pd.fov)) return f;

  const double m = led.lambertian_m();
  f.weight = (m + 1.0) * pd.area / (2.0 * kPi * kPi * d_a * d_a * d_u * d_u) * element.area *
             pd.concentrator_gain() * pd.filter_gain * std::pow(cos_phi_a, m) * cos_xi_a * cos_xi_u;
  return f;
}

double steered(const NlosFactors& f, const PanelElement& element, const UserTerminal& user,
               double yaw, double roll) {
  if (f.weight == 0.0) return 0.0;
  const double cos_phi_u = cos_irradiance_panel(element.center, user.receiver(), yaw, roll);
  return cos_phi_u > 0.0 ? f.weight * cos_phi_u : 0.0;
}

Vec3 panel_normal(double yaw, double roll) {
  const double cr = std::cos(roll);
  return {std::sin(yaw) * cr, std::cos(yaw) * cr, std::sin(roll)};
}

double psi_at(const ChannelParams& p, double eta_c, double entry) {
  return transition_coefficient(p.cell, eta_c, entry);
}

}  // namespace

double lambertian_order(double phi_half) {
  if (!(phi_half > 0.0 && phi_half < kPi / 2)) {
    throw std::invalid_argument("lambertian_order: half-power angle outside (0, pi/2)");
  }
  return -1.0 / std::log2(std::cos(phi_half));
}

double PdParams::concentrator_gain() const {
  const double s = std::sin(fov);
  return concentrator_f * concentrator_f / (s * s);
}

double los_gain(const LedParams& led, const PdParams& pd, Vec3 ap, const UserTerminal& user) {
  const Vec3 rx = user.receiver();
  const double d = (ap - rx).norm();
  const double cos_xi = cos_incidence(ap, rx, user.orientation);
  const double cos_phi = cos_radiation(ap, rx);
  if (cos_xi < std::cos(pd.fov) || cos_phi <= 0.0) return 0.0;
  const double m = led.lambertian_m();
  return (m + 1.0) * pd.area / (2.0 * kPi * d * d) * pd.concentrator_gain() * pd.filter_gain *
         std::pow(cos_phi, m) * cos_xi;
}

double mirror_nlos_gain(const PanelElement& element, Vec3 ap, Vec3 face_normal,
                        const UserTerminal& user, double yaw, double roll, const LedParams& led,
                        const PdParams& pd, double rho_ris) {
  if (element.kind != ElementKind::Mirror) {
    throw std::invalid_argument("mirror_nlos_gain: element is not a mirror");
  }
  const auto f = nlos_static(element, ap, face_normal, user, led, pd);
  return rho_ris * steered(f, element, user, yaw, roll);
}

double lc_nlos_gain(const PanelElement& element, Vec3 ap, Vec3 face_normal,
                    const UserTerminal& user, double yaw, double roll, const LedParams& led,
                    const PdParams& pd) {
  if (element.kind != ElementKind::LiquidCrystal) {
    throw std::invalid_argument("lc_nlos_gain: element is not a liquid-crystal cell");
  }
  if (user.room != RoomId::Two) throw std::invalid_argument("lc_nlos_gain: user must be in Room 2");
  const auto f = nlos_static(element, ap, face_normal, user, led, pd);
  return steered(f, element, user, yaw, roll);
}

double panel_entry_angle(Vec3 at, Vec3 ap, Vec3 face_normal) {
  const Vec3 d = ap - at;
  const double c = face_normal.dot(d) / (d.norm() * face_normal.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double amplification_factor(const Scene& scene, const ChannelParams& params, double eta_c) {
  const double xi = panel_entry_angle(scene.panel.center, scene.ap, scene.panel.face_normal);
  const double gamma = amplification_gamma(params.cell, eta_c, xi, params.wavelength);
  return std::exp(gamma * params.cell.depth);
}

ChannelGain total_gain(const Scene& scene, const UserTerminal& user, const PanelState& state,
                       const ChannelParams& params) {
  ChannelGain g;
  const auto& panel = scene.panel;
  if (user.room == RoomId::One) {
    bool los_on = scene.los_indicator == 1;
    if (los_on && scene.los_blockage_test) {
      los_on = !los_blocked(scene.ap, user.receiver(), scene.blockers, user.body, scene.rooms);
    }
    if (los_on) g.h += los_gain(params.led, params.pd, scene.ap, user);
    for (const auto& e : panel.elements) {
      if (e.kind != ElementKind::Mirror) continue;
      g.h += mirror_nlos_gain(e, scene.ap, panel.face_normal, user, state.yaw, state.roll,
                              params.led, params.pd, params.rho_ris);
    }
    return g;
  }

  const double center_psi =
      psi_at(params, state.eta_c, panel_entry_angle(panel.center, scene.ap, panel.face_normal));
  double sum = 0.0;
  for (const auto& e : panel.elements) {
    if (e.kind != ElementKind::LiquidCrystal) continue;
    const double gain =
        lc_nlos_gain(e, scene.ap, panel.face_normal, user, state.yaw, state.roll, params.led, params.pd);
    if (params.psi_mode == PsiMode::PerElement) {
      sum += gain * psi_at(params, state.eta_c, panel_entry_angle(e.center, scene.ap, panel.face_normal));
    } else {
      sum += gain;
    }
  }
  g.h = params.psi_mode == PsiMode::PerElement ? sum : sum * center_psi;
  g.amp_factor = amplification_factor(scene, params, state.eta_c);
  return g;
}

FrozenChannel::FrozenChannel(const Scene& scene, const ChannelParams& params) : params_(params) {
  const auto& panel = scene.panel;
  center_entry_ = panel_entry_angle(panel.center, scene.ap, panel.face_normal);
  std::vector<int> slot(panel.elements.size(), -1);
  for (std::size_t i = 0; i < panel.elements.size(); ++i) {
    const auto& e = panel.elements[i];
    if (e.kind != ElementKind::LiquidCrystal) continue;
    slot[i] = static_cast<int>(lc_entry_.size());
    lc_entry_.push_back(panel_entry_angle(e.center, scene.ap, panel.face_normal));
  }

  for (const auto& user : scene.users) {
    UserLinks links{user.room, 0.0, {}};
    const auto wanted = user.room == RoomId::One ? ElementKind::Mirror : ElementKind::LiquidCrystal;
    if (user.room == RoomId::One) {
      bool los_on = scene.los_indicator == 1;
      if (los_on && scene.los_blockage_test) {
        los_on = !los_blocked(scene.ap, user.receiver(), scene.blockers, user.body, scene.rooms);
      }
      if (los_on) links.los = los_gain(params.led, params.pd, scene.ap, user);
    }
    for (std::size_t i = 0; i < panel.elements.size(); ++i) {
      const auto& e = panel.elements[i];
      if (e.kind != wanted) continue;
      auto f = nlos_static(e, scene.ap, panel.face_normal, user, params.led, params.pd);
      if (f.weight == 0.0) continue;
      if (e.kind == ElementKind::Mirror) f.weight *= params.rho_ris;
      links.terms.push_back({f.weight, f.dir, slot[i]});
    }
    users_.push_back(std::move(links));
  }
}

void FrozenChannel::gains(const PanelState& state, std::span<ChannelGain> out) const {
  if (out.size() != users_.size()) throw std::invalid_argument("FrozenChannel: output size mismatch");
  const Vec3 n = panel_normal(state.yaw, state.roll);

  bool need_lc = false;
  for (const auto& u : users_) need_lc = need_lc || (u.room == RoomId::Two);
  std::vector<double> psi;
  double center_psi = 1.0;
  double amp = 1.0;
  if (need_lc) {
    if (params_.psi_mode == PsiMode::PerElement) {
      psi.reserve(lc_entry_.size());
      for (double xi : lc_entry_) psi.push_back(psi_at(params_, state.eta_c, xi));
    } else {
      center_psi = psi_at(params_, state.eta_c, center_entry_);
    }
    const double gamma = amplification_gamma(params_.cell, state.eta_c, center_entry_, params_.wavelength);
    amp = std::exp(gamma * params_.cell.depth);
  }

  for (std::size_t u = 0; u < users_.size(); ++u) {
    const auto& links = users_[u];
    double h = 0.0;
    for (const auto& t : links.terms) {
      const double c = t.dir.dot(n);
      if (c <= 0.0) continue;
      const double psi_n =
          (t.lc_slot >= 0 && params_.psi_mode == PsiMode::PerElement) ? psi[t.lc_slot] : 1.0;
      h += t.weight * c * psi_n;
    }
    if (links.room == RoomId::One) {
      out[u] = {links.los + h, 1.0};
    } else {
      out[u] = {params_.psi_mode == PsiMode::PerElement ? h : h * center_psi, amp};
    }
  }
}

std::vector<ChannelGain> FrozenChannel::gains(const PanelState& state) const {
  std::vector<ChannelGain> out(users_.size());
  gains(state, out);
  return out;
}

}  // namespace ostar
