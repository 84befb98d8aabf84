#include "confpoly/crofton.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "confpoly/moduli.hpp"
#include "confpoly/quadrature.hpp"
#include "confpoly/stats.hpp"

namespace confpoly {
namespace {

constexpr double kPi = 3.141592653589793238;

double kappa_chart(double ell, double theta) {
  return quad_curvature_closed(ell * ell / 4.0, std::cos(theta));
}

// Integral over ell in [0, min(r,2)] of f(ell), split at the fiber-saturation
// point ell* = sqrt(4 - r^2) where theta_max reaches pi; integrands built on
// theta_max have square-root behavior on the left of ell*, which the
// endpoint substitution removes.
struct SplitIntegral {
  double value = 0.0;
  double delta = 0.0;
};

SplitIntegral integrate_over_ell(const std::function<double(double)>& f, double r,
                                 double tol) {
  const double hi = std::min(r, 2.0);
  const double saturation = 4.0 - r * r;
  SplitIntegral out;
  if (saturation <= 0.0) {
    // r >= 2: theta_max is pi everywhere; no interior split point.
    const auto q = integrate_adaptive(f, 0.0, hi, tol);
    return {q.value, q.delta};
  }
  const double star = std::sqrt(saturation);
  if (star >= hi) {
    const auto q = integrate_sqrt_endpoint(f, 0.0, hi, tol);
    return {q.value, q.delta};
  }
  const auto left = integrate_sqrt_endpoint(f, 0.0, star, tol);
  const auto right = integrate_adaptive(f, star, hi, tol);
  return {left.value + right.value, left.delta + right.delta};
}

// Mean of kappa(r, theta) weighted by `weight` over theta in [0, hi], with an
// optional square-root kink of the weight at `kink` (the ell_min departure).
double weighted_theta_mean(double r, double hi,
                           const std::function<double(double)>& weight,
                           std::optional<double> kink, double tol,
                           double* delta_out) {
  auto num = [r, &weight](double th) { return kappa_chart(r, th) * weight(th); };
  auto den = [&weight](double th) { return weight(th); };
  double nv = 0.0, dv = 0.0, dd = 0.0;
  if (kink && *kink > 0.0 && *kink < hi) {
    const auto n1 = integrate_adaptive(num, 0.0, *kink, tol);
    const auto n2 = integrate_sqrt_start(num, *kink, hi, tol);
    const auto d1 = integrate_adaptive(den, 0.0, *kink, tol);
    const auto d2 = integrate_sqrt_start(den, *kink, hi, tol);
    nv = n1.value + n2.value;
    dv = d1.value + d2.value;
    dd = n1.delta + n2.delta + d1.delta + d2.delta;
  } else {
    const auto n1 = integrate_adaptive(num, 0.0, hi, tol);
    const auto d1 = integrate_adaptive(den, 0.0, hi, tol);
    nv = n1.value;
    dv = d1.value;
    dd = n1.delta + d1.delta;
  }
  if (delta_out) *delta_out = dd;
  return nv / dv;
}

void require_curve_range(double r) {
  if (!(r >= 1.0 && r <= 2.0)) {
    throw std::domain_error("confined quadrilateral analyses need r in [1,2]");
  }
}

}  // namespace

double area_region(double r) {
  if (!(r > 0.0)) throw std::domain_error("r must be positive");
  if (r >= 2.0) return 2.0 * kPi;
  const auto q = integrate_over_ell([r](double ell) { return theta_max(ell, r); },
                                    r, 1e-11);
  return q.value;
}

Estimate kappa_bar(double r, EstimateMethod method, long budget,
                   std::optional<uint64_t> seed) {
  require_curve_range(r);
  Estimate est;
  est.method = method;
  if (method == EstimateMethod::kQuadrature) {
    // Inner theta integral of the closed-form curvature is analytic on
    // [0, theta_max]; two 64-node panels are already past machine accuracy.
    auto fiber = [r](double ell) {
      return gauss_legendre_panels(
          [ell](double th) { return kappa_chart(ell, th); }, 0.0,
          theta_max(ell, r), 2);
    };
    const auto num = integrate_over_ell(fiber, r, 1e-7 * 0.1);
    const double area = area_region(r);
    est.value = num.value / area;
    est.refinement_delta = num.delta / area;
    return est;
  }

  if (budget <= 0) throw std::invalid_argument("Monte Carlo budget must be positive");
  const uint64_t s = seed.value_or(0);
  ConfinedSampler sampler({4, r}, s);
  RunningStats stats;
  for (long i = 0; i < budget; ++i) stats.add(total_curvature(sampler.next()));
  est.value = stats.mean();
  est.std_error = stats.std_error();
  est.samples = budget;
  est.seed = s;
  return est;
}

Estimate kappa_boundary(double r, BoundaryMeasure measure) {
  Estimate est;
  est.method = EstimateMethod::kQuadrature;
  const double tol = 1e-10;
  double delta = 0.0;

  switch (measure) {
    case BoundaryMeasure::kMuB: {
      const MuMasses mm = mu_boundary_masses(r);  // enforces the mu regime
      const double thr = mm.ell_mass;
      const auto ell_part = integrate_adaptive(
          [r](double th) { return kappa_chart(r, th); }, 0.0, thr, tol);
      const auto theta_part = integrate_sqrt_endpoint(
          [r](double ell) {
            return kappa_chart(ell, theta_max(ell, r)) * shell_speed_theta_arc(ell, r);
          },
          0.0, r, tol);
      est.value = (ell_part.value + theta_part.value) / (thr + mm.theta_mass);
      delta = ell_part.delta + theta_part.delta;
      break;
    }
    case BoundaryMeasure::kMuI: {
      const MuMasses mm = mu_boundary_masses(r);
      const double alpha = mm.alpha();
      const double thr = mm.ell_mass;
      const double kink = acos_clamped(1.0 - r * r / 2.0);
      double d_ell = 0.0, d_theta = 0.0;
      const double ell_mean = weighted_theta_mean(
          r, thr, [r](double th) { return std::max(0.0, r - ell_min(th, r)); },
          kink, tol, &d_ell);
      // theta-arc weight theta_max(ell, r) is smooth below the mu regime cap.
      auto num = [r](double ell) {
        return kappa_chart(ell, theta_max(ell, r)) * theta_max(ell, r);
      };
      const auto n = integrate_adaptive(num, 0.0, r, tol);
      const double fiber_area = area_region(r);
      const double theta_mean = n.value / fiber_area;
      d_theta = n.delta;
      est.value = alpha * ell_mean + (1.0 - alpha) * theta_mean;
      delta = d_ell + d_theta;
      break;
    }
    case BoundaryMeasure::kNuB: {
      if (!(r > 1.0 && r < 2.0)) {
        throw std::domain_error("nu boundary measures need 1 < r < 2");
      }
      const double hi = theta_max_dominant(r);
      const auto q = integrate_adaptive(
          [r](double th) { return kappa_chart(r, th); }, 0.0, hi, tol);
      est.value = q.value / hi;
      delta = q.delta;
      break;
    }
    case BoundaryMeasure::kNuI: {
      if (!(r > 1.0 && r < 2.0)) {
        throw std::domain_error("nu boundary measures need 1 < r < 2");
      }
      const double hi = theta_max_dominant(r);
      est.value = weighted_theta_mean(
          r, hi, [r](double th) { return std::max(0.0, r - ell_min_dominant(th)); },
          std::nullopt, tol, &delta);
      break;
    }
  }
  est.refinement_delta = delta;
  return est;
}

double crofton_residual(double r, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(r - h >= 1.0 && r + h <= 2.0)) {
    throw std::domain_error("residual stencil leaves [1,2]");
  }
  const double k_plus = kappa_bar(r + h, EstimateMethod::kQuadrature).value;
  const double k_minus = kappa_bar(r - h, EstimateMethod::kQuadrature).value;
  const double k_mid = kappa_bar(r, EstimateMethod::kQuadrature).value;
  const double lhs = (k_plus - k_minus) / (2.0 * h);

  const double a_plus = area_region(r + h);
  const double a_minus = area_region(r - h);
  const double a_mid = area_region(r);
  const double a_prime = (a_plus - a_minus) / (2.0 * h);

  const BoundaryMeasure bm =
      r < kRegimeSplit ? BoundaryMeasure::kMuB : BoundaryMeasure::kNuB;
  const double k_b = kappa_boundary(r, bm).value;
  const double rhs = (k_b - k_mid) * a_prime / a_mid;
  return std::abs(lhs - rhs);
}

ScanResult monotonicity_scan(std::span<const double> r_grid) {
  ScanResult out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double h = 1e-3;

  for (double r : r_grid) {
    require_curve_range(r);
    out.curve.r_values.push_back(r);
    out.curve.kappa_bar.push_back(kappa_bar(r, EstimateMethod::kQuadrature));
    out.curve.area.push_back(area_region(r));

    double kb = nan;
    if (r > 1.0 && r < 2.0) {
      const BoundaryMeasure bm =
          r < kRegimeSplit ? BoundaryMeasure::kMuB : BoundaryMeasure::kNuB;
      kb = kappa_boundary(r, bm).value;
    }
    out.curve.kappa_boundary.push_back(kb);

    const bool in_collar = std::abs(r - kRegimeSplit) <= kRegimeCollar + h;
    const bool stencil_ok = r - h >= 1.0 && r + h <= 2.0;
    out.curve.crofton_residual.push_back(
        !in_collar && stencil_ok ? crofton_residual(r, h) : nan);
  }

  out.monotone = true;
  out.max_violation = 0.0;
  for (size_t i = 1; i < out.curve.kappa_bar.size(); ++i) {
    const auto& prev = out.curve.kappa_bar[i - 1];
    const auto& cur = out.curve.kappa_bar[i];
    const double tol =
        kCurveTol + prev.refinement_delta + cur.refinement_delta;
    const double rise = cur.value - prev.value;
    if (rise > tol) out.monotone = false;
    out.max_violation = std::max(out.max_violation, rise);
  }
  return out;
}

}  // namespace confpoly
