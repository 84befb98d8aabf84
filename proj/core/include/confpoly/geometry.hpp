#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace confpoly {

inline constexpr double kAcosSlack = 1e-12;   // tolerated excursion past [-1,1]
inline constexpr double kEdgeTol = 1e-9;      // unit-edge / closure validation
inline constexpr double kBranchGuard = 1e-8;  // distance to arccos branch points

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

/// arccos with unconditional clamp of the argument into [-1,1].
double acos_clamped(double x);

/// arccos that tolerates excursions up to kAcosSlack past [-1,1] and
/// throws std::domain_error beyond that.
double acos_checked(double x);

/// Closed equilateral space polygon, stored as its unit edge vectors.
/// Invariants: n >= 3, every |e_i| = 1 within 1e-9, sum e_i = 0 within 1e-9.
class Polygon {
 public:
  static Polygon from_edges(std::vector<Vec3> edges);
  static Polygon from_vertices(std::span<const Vec3> verts);

  int n() const { return static_cast<int>(edges_.size()); }
  const std::vector<Vec3>& edges() const { return edges_; }

  /// Vertices v_1..v_n with v_1 at the origin.
  std::vector<Vec3> vertices() const;

 private:
  explicit Polygon(std::vector<Vec3> edges) : edges_(std::move(edges)) {}
  std::vector<Vec3> edges_;
};

/// Chart coordinates for a quadrilateral: ell = d(v1,v3) in [0,2] and the
/// dihedral angle theta in [0,pi] about that diagonal.
struct QuadCoords {
  double ell = 0.0;
  double theta = 0.0;

  bool valid() const;
};

/// Embeds the chart point with phi = arccos(ell/2):
///   v1 = 0, v2 = (cos phi, sin phi, 0), v3 = (2 cos phi, 0, 0),
///   v4 = (cos phi, sin phi cos theta, sin phi sin theta).
Polygon quad_from_coords(const QuadCoords& q);

/// Sum of exterior turning angles, arccos of clamped consecutive edge dots.
double total_curvature(const Polygon& p);

/// Largest pairwise vertex distance.
double diameter(const Polygon& p);

/// Turning-angle sum of the quadrilateral chart in t = cos^2 phi = ell^2/4,
/// c = cos theta:  2 arccos(-t - (1-t) c) + 2 arccos(2t - 1).
double quad_curvature_closed(double t, double c);

/// Length of the cross diagonal: d(v2,v4) = sqrt((1 - ell^2/4)(2 - 2 cos theta)).
double d24_closed(const QuadCoords& q);

/// d/dt of quad_curvature_closed at fixed c:
///   -2(c-1)/sqrt(1-(-c(1-t)-t)^2) - 4/sqrt(1-(2t-1)^2).
/// Requires t in (0,1) with both arccos arguments at least kBranchGuard
/// away from +-1; throws std::domain_error otherwise.
double dkappa_dt_closed(double t, double c);

}  // namespace confpoly
