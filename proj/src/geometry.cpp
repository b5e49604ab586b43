#include "ostar/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace ostar {

Vec3 DeviceOrientation::normal() const {
  return {std::sin(alpha) * std::cos(beta), std::sin(alpha) * std::sin(beta), std::cos(alpha)};
}

Vec3 UserTerminal::receiver() const {
  return {body.base.x + receiver_offset * std::cos(orientation.beta),
          body.base.y + receiver_offset * std::sin(orientation.beta),
          body.base.z + receiver_height};
}

bool RoomLayout::contains(Vec3 p, RoomId room) const {
  const double x0 = room == RoomId::One ? 0.0 : length;
  return p.x >= x0 && p.x <= x0 + length && p.y >= 0.0 && p.y <= width && p.z >= 0.0 &&
         p.z <= height;
}

int PanelLayout::mirror_count() const {
  return static_cast<int>(std::count_if(elements.begin(), elements.end(), [](const PanelElement& e) {
    return e.kind == ElementKind::Mirror;
  }));
}

int PanelLayout::lc_count() const {
  return static_cast<int>(elements.size()) - mirror_count();
}

double AngleLaw::sample(std::mt19937_64& rng) const {
  if (kind == Kind::Uniform) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  // Inverse-CDF Laplace draw, rejected until it lands inside [lo, hi].
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (;;) {
    const double v = u(rng);
    const double x = location - scale * std::copysign(1.0, v) * std::log1p(-2.0 * std::abs(v));
    if (x >= lo && x <= hi) return x;
  }
}

void AngleLaw::validate() const {
  if (!(lo < hi)) throw std::invalid_argument("angle law requires lo < hi");
  if (kind == Kind::TruncatedLaplace && !(scale > 0.0)) {
    throw std::invalid_argument("laplace scale must be positive");
  }
}

DeviceOrientation sample_orientation(std::mt19937_64& rng, const OrientationModel& model) {
  DeviceOrientation o;
  o.alpha = model.polar.sample(rng);
  o.beta = model.azimuth.sample(rng);
  return o;
}

double cos_incidence(Vec3 source, Vec3 receiver, DeviceOrientation orientation) {
  const Vec3 d = source - receiver;
  const double dist = d.norm();
  if (!(dist > 0.0)) throw std::invalid_argument("cos_incidence: source and receiver coincide");
  const double sa = std::sin(orientation.alpha);
  return (d.x / dist) * std::cos(orientation.beta) * sa +
         (d.y / dist) * std::sin(orientation.beta) * sa + (d.z / dist) * std::cos(orientation.alpha);
}

double cos_irradiance_panel(Vec3 element, Vec3 receiver, double yaw, double roll) {
  const Vec3 d = element - receiver;
  const double dist = d.norm();
  if (!(dist > 0.0)) {
    throw std::invalid_argument("cos_irradiance_panel: element and receiver coincide");
  }
  const double cr = std::cos(roll);
  return (d.x / dist) * std::sin(yaw) * cr + (d.y / dist) * std::cos(yaw) * cr +
         (d.z / dist) * std::sin(roll);
}

bool segment_hits_cylinder(Vec3 a, Vec3 b, const Cylinder& c) {
  constexpr double kTiny = 1e-15;
  const Vec3 d = b - a;
  double lo = 0.0;
  double hi = 1.0;

  // Horizontal disk test.
  const double ox = a.x - c.base.x;
  const double oy = a.y - c.base.y;
  const double r = c.radius();
  const double qa = d.x * d.x + d.y * d.y;
  const double qb = 2.0 * (ox * d.x + oy * d.y);
  const double qc = ox * ox + oy * oy - r * r;
  if (qa < kTiny) {
    if (qc > 0.0) return false;
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return false;
    const double s = std::sqrt(disc);
    lo = std::max(lo, (-qb - s) / (2.0 * qa));
    hi = std::min(hi, (-qb + s) / (2.0 * qa));
  }

  // Vertical extent.
  const double z0 = c.base.z;
  const double z1 = c.base.z + c.height;
  if (std::abs(d.z) < kTiny) {
    if (a.z < z0 || a.z > z1) return false;
  } else {
    double t0 = (z0 - a.z) / d.z;
    double t1 = (z1 - a.z) / d.z;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  }
  return lo < hi;
}

bool los_blocked(Vec3 ap, Vec3 receiver, std::span<const Cylinder> blockers,
                 const Cylinder& self_body, const RoomLayout& rooms) {
  const double w = rooms.wall_x();
  if ((ap.x - w) * (receiver.x - w) < 0.0) return true;
  if (segment_hits_cylinder(ap, receiver, self_body)) return true;
  return std::any_of(blockers.begin(), blockers.end(),
                     [&](const Cylinder& c) { return segment_hits_cylinder(ap, receiver, c); });
}

PanelLayout build_panel(int rows, int cols, double element_side, const WallSpec& wall) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("build_panel: rows and cols must be >= 1");
  if (!(element_side > 0.0)) throw std::invalid_argument("build_panel: element side must be positive");
  const double span_y = cols * element_side;
  const double span_z = rows * element_side;
  constexpr double kSlack = 1e-12;
  if (wall.center_y - span_y / 2 < -kSlack || wall.center_y + span_y / 2 > wall.width + kSlack ||
      wall.center_z - span_z / 2 < -kSlack || wall.center_z + span_z / 2 > wall.height + kSlack) {
    throw std::invalid_argument("build_panel: panel footprint " + std::to_string(span_y) + " x " +
                                std::to_string(span_z) + " m exceeds the wall");
  }

  PanelLayout panel;
  panel.rows = rows;
  panel.cols = cols;
  panel.element_side = element_side;
  panel.center = {wall.plane_x, wall.center_y, wall.center_z};
  panel.elements.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      PanelElement e;
      e.center = {wall.plane_x, wall.center_y + (c - (cols - 1) / 2.0) * element_side,
                  wall.center_z + ((rows - 1) / 2.0 - r) * element_side};
      e.kind = (r + c) % 2 == 0 ? ElementKind::Mirror : ElementKind::LiquidCrystal;
      e.area = element_side * element_side;
      panel.elements.push_back(e);
    }
  }
  return panel;
}

WallSpec SceneSpec::wall() const {
  return {rooms.wall_x(), rooms.width, rooms.height, rooms.width / 2.0, panel_center_z};
}

namespace {

bool overlaps(const Cylinder& a, const Cylinder& b) {
  const double dx = a.base.x - b.base.x;
  const double dy = a.base.y - b.base.y;
  const double reach = a.radius() + b.radius();
  return dx * dx + dy * dy < reach * reach;
}

Vec3 place_in_room(const RoomLayout& rooms, RoomId room, double margin, std::mt19937_64& rng) {
  const double x0 = room == RoomId::One ? 0.0 : rooms.length;
  if (2 * margin >= rooms.length || 2 * margin >= rooms.width) {
    throw std::invalid_argument("room too small for the body footprint");
  }
  std::uniform_real_distribution<double> ux(x0 + margin, x0 + rooms.length - margin);
  std::uniform_real_distribution<double> uy(margin, rooms.width - margin);
  const double x = ux(rng);
  const double y = uy(rng);
  return {x, y, 0.0};
}

}  // namespace

Scene draw_scene(const SceneSpec& spec, std::uint64_t seed) {
  if (spec.users < 1) throw std::invalid_argument("draw_scene: at least one user required");
  if (spec.los_indicator != 0 && spec.los_indicator != 1) {
    throw std::invalid_argument("draw_scene: los indicator must be 0 or 1");
  }
  constexpr int kMaxAttempts = 10000;

  Scene scene;
  scene.rooms = spec.rooms;
  scene.ap = spec.ap;
  scene.los_indicator = spec.los_indicator;
  scene.los_blockage_test = spec.los_blockage_test;
  if (!spec.rooms.contains(spec.ap, RoomId::One)) {
    throw std::invalid_argument("draw_scene: AP must lie inside Room 1");
  }
  scene.panel = build_panel(spec.panel_rows, spec.panel_cols, spec.element_side, spec.wall());

  std::mt19937_64 rng(seed);
  std::vector<Cylinder> occupied;
  const int room_one_users = (spec.users + 1) / 2;
  const double margin = spec.body.diameter / 2 + spec.body.receiver_offset;

  for (int i = 0; i < spec.users; ++i) {
    UserTerminal user;
    user.room = i < room_one_users ? RoomId::One : RoomId::Two;
    user.body.height = spec.body.height;
    user.body.diameter = spec.body.diameter;
    user.receiver_offset = spec.body.receiver_offset;
    user.receiver_height = spec.body.receiver_height;
    int attempt = 0;
    do {
      if (++attempt > kMaxAttempts) throw std::runtime_error("draw_scene: could not place users");
      user.body.base = place_in_room(spec.rooms, user.room, margin, rng);
    } while (std::any_of(occupied.begin(), occupied.end(),
                         [&](const Cylinder& c) { return overlaps(c, user.body); }));
    user.orientation = sample_orientation(rng, spec.orientation);
    occupied.push_back(user.body);
    scene.users.push_back(user);
  }

  for (RoomId room : {RoomId::One, RoomId::Two}) {
    for (int b = 0; b < spec.blockers_per_room; ++b) {
      Cylinder blocker = spec.blocker_shape;
      int attempt = 0;
      do {
        if (++attempt > kMaxAttempts) throw std::runtime_error("draw_scene: could not place blockers");
        blocker.base = place_in_room(spec.rooms, room, blocker.radius(), rng);
      } while (std::any_of(occupied.begin(), occupied.end(),
                           [&](const Cylinder& c) { return overlaps(c, blocker); }));
      occupied.push_back(blocker);
      scene.blockers.push_back(blocker);
    }
  }
  return scene;
}

}  // namespace ostar
