#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace ostar {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
  friend constexpr bool operator==(Vec3 a, Vec3 b) = default;

  [[nodiscard]] constexpr double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  [[nodiscard]] double norm() const { return std::sqrt(dot(*this)); }
  [[nodiscard]] bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

// Receiver polar (alpha) and azimuth (beta) angles in radians.
struct DeviceOrientation {
  double alpha = 0.0;
  double beta = 0.0;

  // Unit normal of the photodiode surface.
  [[nodiscard]] Vec3 normal() const;
};

// Vertical cylinder standing on `base` (its axis foot point).
struct Cylinder {
  Vec3 base;
  double height = 0.0;
  double diameter = 0.0;

  [[nodiscard]] double radius() const { return 0.5 * diameter; }
};

enum class RoomId : int { One = 1, Two = 2 };

struct UserTerminal {
  Cylinder body;
  double receiver_offset = 0.36;
  double receiver_height = 0.85;
  DeviceOrientation orientation;
  RoomId room = RoomId::One;

  // The device is held `receiver_offset` metres from the body axis along
  // the horizontal azimuth of its normal, at `receiver_height`.
  [[nodiscard]] Vec3 receiver() const;
};

enum class ElementKind { Mirror, LiquidCrystal };

struct PanelElement {
  Vec3 center;
  ElementKind kind = ElementKind::Mirror;
  double area = 0.0;
};

// Rooms share the wall plane x = length. Room 1 spans x in [0, length],
// Room 2 spans x in [length, 2 * length]; both span y in [0, width] and
// z in [0, height].
struct RoomLayout {
  double length = 5.0;
  double width = 5.0;
  double height = 3.0;

  [[nodiscard]] double wall_x() const { return length; }
  [[nodiscard]] bool contains(Vec3 p, RoomId room) const;
  [[nodiscard]] RoomId room_of(Vec3 p) const { return p.x <= length ? RoomId::One : RoomId::Two; }
};

struct WallSpec {
  double plane_x = 5.0;
  double width = 5.0;   // extent along y, starting at y = 0
  double height = 3.0;  // extent along z, starting at z = 0
  double center_y = 2.5;
  double center_z = 1.5;
};

struct PanelLayout {
  int rows = 0;
  int cols = 0;
  double element_side = 0.0;
  Vec3 center;
  // Unit normal of the wall face looking into Room 1 (toward the AP).
  Vec3 face_normal{-1.0, 0.0, 0.0};
  std::vector<PanelElement> elements;

  [[nodiscard]] int mirror_count() const;
  [[nodiscard]] int lc_count() const;
};

struct Scene {
  RoomLayout rooms;
  Vec3 ap{2.5, 2.5, 3.0};
  PanelLayout panel;
  std::vector<UserTerminal> users;
  std::vector<Cylinder> blockers;
  int los_indicator = 0;
  // When set, the LoS term of a user is dropped if los_blocked() reports an
  // obstruction, even with los_indicator = 1.
  bool los_blockage_test = false;
};

// Angle distribution with support [lo, hi]. Laplace draws outside the support
// are rejected and redrawn.
struct AngleLaw {
  enum class Kind { Uniform, TruncatedLaplace };
  Kind kind = Kind::Uniform;
  double lo = 0.0;
  double hi = 0.0;
  double location = 0.0;
  double scale = 1.0;

  double sample(std::mt19937_64& rng) const;
  void validate() const;
};

struct OrientationModel {
  AngleLaw polar{AngleLaw::Kind::Uniform, -std::numbers::pi, std::numbers::pi, 0.0, 1.0};
  AngleLaw azimuth{AngleLaw::Kind::TruncatedLaplace, 0.0, std::numbers::pi / 2.0, std::numbers::pi / 4.0, std::numbers::pi / 12.0};
};

DeviceOrientation sample_orientation(std::mt19937_64& rng, const OrientationModel& model = {});

// Direction cosine between the source direction and the receiver normal.
// Throws std::invalid_argument when source and receiver coincide.
double cos_incidence(Vec3 source, Vec3 receiver, DeviceOrientation orientation);

// Irradiance cosine for a panel element steered by yaw and roll.
// Throws std::invalid_argument when element and receiver coincide.
double cos_irradiance_panel(Vec3 element, Vec3 receiver, double yaw, double roll);

// True if the open segment ap -> receiver crosses the inter-room wall or
// intersects any blocker or the user's own body.
bool los_blocked(Vec3 ap, Vec3 receiver, std::span<const Cylinder> blockers,
                 const Cylinder& self_body, const RoomLayout& rooms);

bool segment_hits_cylinder(Vec3 a, Vec3 b, const Cylinder& c);

// Checkerboard-interleaved panel centered on the wall; (row + col) even is a
// mirror. Throws std::invalid_argument if the footprint leaves the wall.
PanelLayout build_panel(int rows, int cols, double element_side, const WallSpec& wall);

struct BodySpec {
  double height = 1.65;
  double diameter = 0.3;
  double receiver_offset = 0.36;
  double receiver_height = 0.85;
};

struct SceneSpec {
  RoomLayout rooms;
  Vec3 ap{2.5, 2.5, 3.0};
  int panel_rows = 5;
  int panel_cols = 10;
  double element_side = 0.1;
  double panel_center_z = 1.5;
  int users = 4;
  int blockers_per_room = 0;
  BodySpec body;
  Cylinder blocker_shape{{}, 1.65, 0.3};
  OrientationModel orientation;
  int los_indicator = 0;
  bool los_blockage_test = false;

  [[nodiscard]] WallSpec wall() const;
};

// One Monte Carlo drop. Users are split evenly across rooms (Room 1 takes the
// extra user when the count is odd) and placed uniformly with re-sampling on
// body overlap.
Scene draw_scene(const SceneSpec& spec, std::uint64_t seed);

}  // namespace ostar
