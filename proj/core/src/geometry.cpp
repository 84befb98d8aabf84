#include "confpoly/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace confpoly {

namespace {
constexpr double kPi = std::numbers::pi;
}

double acos_clamped(double x) {
  if (x > 1.0) x = 1.0;
  if (x < -1.0) x = -1.0;
  return std::acos(x);
}

double acos_checked(double x) {
  if (x > 1.0 + kAcosSlack || x < -1.0 - kAcosSlack) {
    throw std::domain_error("acos argument " + std::to_string(x) +
                            " outside [-1,1] beyond tolerance");
  }
  return acos_clamped(x);
}

Polygon Polygon::from_edges(std::vector<Vec3> edges) {
  if (edges.size() < 3) throw std::invalid_argument("polygon needs >= 3 edges");
  Vec3 sum{};
  for (const Vec3& e : edges) {
    if (std::abs(norm(e) - 1.0) > kEdgeTol) {
      throw std::invalid_argument("polygon edge is not unit length");
    }
    sum += e;
  }
  if (norm(sum) > kEdgeTol) {
    throw std::invalid_argument("polygon edges do not close");
  }
  return Polygon(std::move(edges));
}

Polygon Polygon::from_vertices(std::span<const Vec3> verts) {
  const size_t n = verts.size();
  std::vector<Vec3> edges(n);
  for (size_t i = 0; i < n; ++i) edges[i] = verts[(i + 1) % n] - verts[i];
  return from_edges(std::move(edges));
}

std::vector<Vec3> Polygon::vertices() const {
  std::vector<Vec3> v(edges_.size());
  Vec3 acc{};
  for (size_t i = 0; i < edges_.size(); ++i) {
    v[i] = acc;
    acc += edges_[i];
  }
  return v;
}

bool QuadCoords::valid() const {
  return std::isfinite(ell) && std::isfinite(theta) && ell >= 0.0 &&
         ell <= 2.0 && theta >= 0.0 && theta <= std::acos(-1.0);
}

Polygon quad_from_coords(const QuadCoords& q) {
  if (!q.valid()) throw std::invalid_argument("quad coords out of range");
  const double phi = std::acos(q.ell / 2.0);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const Vec3 v1{0.0, 0.0, 0.0};
  const Vec3 v2{cp, sp, 0.0};
  const Vec3 v3{2.0 * cp, 0.0, 0.0};
  const Vec3 v4{cp, sp * std::cos(q.theta), sp * std::sin(q.theta)};
  const Vec3 verts[4] = {v1, v2, v3, v4};
  return Polygon::from_vertices(verts);
}

double total_curvature(const Polygon& p) {
  const auto& e = p.edges();
  const int n = p.n();
  double kappa = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec3& a = e[i];
    const Vec3& b = e[(i + 1) % n];
    // atan2 keeps full precision for turning angles near 0 and pi, where
    // acos(dot) would lose half the digits
    kappa += std::atan2(norm(cross(a, b)), dot(a, b));
  }
  return kappa;
}

double diameter(const Polygon& p) {
  const auto v = p.vertices();
  double best = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    for (size_t j = i + 1; j < v.size(); ++j) {
      best = std::max(best, dist(v[i], v[j]));
    }
  }
  return best;
}

double quad_curvature_closed(double t, double c) {
  if (t < -kAcosSlack || t > 1.0 + kAcosSlack || c < -1.0 - kAcosSlack ||
      c > 1.0 + kAcosSlack) {
    throw std::domain_error("chart point (" + std::to_string(t) + ", " +
                            std::to_string(c) + ") outside [0,1] x [-1,1]");
  }
  t = std::min(1.0, std::max(0.0, t));
  c = std::min(1.0, std::max(-1.0, c));
  // The two arccos terms have arguments -t-(1-t)c and 2t-1. Each is evaluated
  // through asin of the square root of whichever complement (1+x or 1-x) is
  // small, computed without cancellation; plain acos(x) would drop to ~1e-8
  // accuracy at the degenerate chart boundary.
  const double u1 = (1.0 - t) * (1.0 - c);            // 1 + x for the first term
  const double v1 = 2.0 * t + (1.0 - t) * (1.0 + c);  // 1 - x
  const double a1 = u1 <= v1 ? kPi - 2.0 * std::asin(std::sqrt(0.5 * u1))
                             : 2.0 * std::asin(std::sqrt(0.5 * v1));
  const double a2 = t < 0.5 ? kPi - 2.0 * std::asin(std::sqrt(t))
                            : 2.0 * std::asin(std::sqrt(1.0 - t));
  return 2.0 * a1 + 2.0 * a2;
}

double d24_closed(const QuadCoords& q) {
  const double s = (1.0 - q.ell * q.ell / 4.0) * (2.0 - 2.0 * std::cos(q.theta));
  return std::sqrt(std::max(0.0, s));
}

double dkappa_dt_closed(double t, double c) {
  const double u = -c * (1.0 - t) - t;     // argument of the theta-dependent arccos
  const double w = 2.0 * t - 1.0;          // argument of the fold arccos
  if (1.0 - std::abs(u) < kBranchGuard || 1.0 - std::abs(w) < kBranchGuard) {
    throw std::domain_error("dkappa_dt evaluated too close to an arccos branch point");
  }
  return -2.0 * (-1.0 + c) / std::sqrt(1.0 - u * u) - 4.0 / std::sqrt(1.0 - w * w);
}

}  // namespace confpoly
