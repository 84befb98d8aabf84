#include "confpoly/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "confpoly/quadrature.hpp"

namespace confpoly {
namespace {

constexpr double kPi = 3.141592653589793238;
constexpr double kSqrt2 = 1.414213562373095049;

void require_mu_regime(double r) {
  if (!(r > 1.0 && r < kSqrt2)) {
    throw std::domain_error("mu boundary measures need 1 < r < sqrt(2)");
  }
}

void require_nu_regime(double r) {
  if (!(r > 1.0 && r < 2.0)) {
    throw std::domain_error("nu boundary measures need 1 < r < 2");
  }
}

// Parameter grid on the ell arc [0, theta_max(r,r)]. ell_min leaves zero at
// theta_kink = arccos(1 - r^2/2) with square-root growth, so the grid is
// uniform up to the kink and quadratically graded after it; the trapezoid
// rule then converges there instead of stalling at O(h^{3/2}).
std::vector<double> ell_arc_params(double r, int grid_size) {
  const double hi = theta_max(r, r);
  const double kink = acos_clamped(1.0 - r * r / 2.0);
  int n1 = static_cast<int>(std::lround(grid_size * kink / hi));
  n1 = std::clamp(n1, 2, grid_size - 2);
  const int n2 = grid_size - n1;
  std::vector<double> params(grid_size);
  for (int k = 0; k < n1; ++k) params[k] = kink * k / (n1 - 1);
  for (int j = 1; j <= n2; ++j) {
    const double s = static_cast<double>(j) / n2;
    params[n1 - 1 + j] = kink + (hi - kink) * s * s;
  }
  params.back() = hi;
  return params;
}

std::vector<double> uniform_params(double lo, double hi, int grid_size) {
  std::vector<double> params(grid_size);
  for (int k = 0; k < grid_size; ++k) {
    params[k] = lo + (hi - lo) * k / (grid_size - 1);
  }
  params.back() = hi;
  return params;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (size_t i = 1; i < x.size(); ++i) {
    acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  }
  return acc;
}

// Scales density values so the trapezoid integral equals target_mass exactly.
DensityGrid make_grid(BoundaryArc arc, std::vector<double> params,
                      std::vector<double> density, double target_mass) {
  DensityGrid g;
  g.arc = arc;
  g.params = std::move(params);
  g.density = std::move(density);
  const double raw = trapezoid(g.params, g.density);
  if (!(raw > 0.0)) throw std::runtime_error("degenerate boundary density");
  const double scale = target_mass / raw;
  for (double& d : g.density) d *= scale;
  g.normalized_mass = target_mass;
  return g;
}

void check_grid_size(int grid_size) {
  if (grid_size < 8) throw std::invalid_argument("grid_size must be >= 8");
}

}  // namespace

double theta_max(double ell, double r) {
  if (!(ell >= 0.0 && ell <= 2.0)) throw std::domain_error("ell outside [0,2]");
  if (!(r > 0.0)) throw std::domain_error("r must be positive");
  const double q = 2.0 - ell * ell / 2.0;
  if (q <= 0.0) return kPi;  // ell = 2: d24 is identically 0
  const double y = 1.0 - r * r / q;
  if (y <= -1.0) return kPi;
  return acos_clamped(y);
}

double ell_min(double theta, double r) {
  if (!(r > 0.0)) throw std::domain_error("r must be positive");
  const double q = 2.0 - 2.0 * std::cos(theta);
  if (q <= 0.0) return 0.0;  // theta = 0: the cross diagonal vanishes
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - r * r / q));
}

double theta_max_dominant(double ell) {
  if (!(ell >= 0.0 && ell <= 2.0)) throw std::domain_error("ell outside [0,2]");
  if (ell >= 2.0) return kPi;
  return acos_clamped((4.0 - 3.0 * ell * ell) / (4.0 - ell * ell));
}

double ell_min_dominant(double theta) {
  const double c = std::cos(theta);
  return 2.0 * std::sqrt(std::max(0.0, (1.0 - c) / (3.0 - c)));
}

double shell_speed_theta_arc(double ell, double r) {
  const double q = 2.0 - ell * ell / 2.0;
  const double y = 1.0 - r * r / q;
  const double s = 1.0 - y * y;
  if (s <= 0.0) {
    throw std::domain_error("shell speed evaluated at a degenerate arc point");
  }
  return 2.0 * r / (q * std::sqrt(s));
}

double DensityGrid::mass_trapezoid() const { return trapezoid(params, density); }

std::vector<double> DensityGrid::cdf() const {
  std::vector<double> out(params.size(), 0.0);
  for (size_t i = 1; i < params.size(); ++i) {
    out[i] = out[i - 1] +
             0.5 * (density[i] + density[i - 1]) * (params[i] - params[i - 1]);
  }
  return out;
}

MuMasses mu_boundary_masses(double r) {
  require_mu_regime(r);
  MuMasses mm;
  mm.ell_mass = theta_max(r, r);
  mm.theta_mass =
      integrate_sqrt_endpoint([r](double ell) { return shell_speed_theta_arc(ell, r); },
                              0.0, r, 1e-11)
          .value;
  return mm;
}

MuGrids mu_B_grid(double r, int grid_size) {
  require_mu_regime(r);
  check_grid_size(grid_size);
  const MuMasses mm = mu_boundary_masses(r);
  const double alpha = mm.alpha();
  const double thr = theta_max(r, r);

  MuGrids out;
  out.alpha = alpha;

  auto eparams = ell_arc_params(r, grid_size);
  std::vector<double> edens(eparams.size(), 1.0);
  out.ell_arc = make_grid({ArcKind::kEll, r, 0.0, thr}, std::move(eparams),
                          std::move(edens), alpha);

  auto tparams = uniform_params(0.0, r, grid_size);
  std::vector<double> tdens(tparams.size());
  for (size_t i = 0; i < tparams.size(); ++i) {
    tdens[i] = shell_speed_theta_arc(tparams[i], r);
  }
  out.theta_arc = make_grid({ArcKind::kTheta, r, 0.0, r}, std::move(tparams),
                            std::move(tdens), 1.0 - alpha);
  return out;
}

MuGrids mu_I_grid(double r, int grid_size, double alpha) {
  require_mu_regime(r);
  check_grid_size(grid_size);
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha outside (0,1)");
  const double thr = theta_max(r, r);

  MuGrids out;
  out.alpha = alpha;

  auto eparams = ell_arc_params(r, grid_size);
  std::vector<double> edens(eparams.size());
  for (size_t i = 0; i < eparams.size(); ++i) {
    edens[i] = std::max(0.0, r - ell_min(eparams[i], r));
  }
  out.ell_arc = make_grid({ArcKind::kEll, r, 0.0, thr}, std::move(eparams),
                          std::move(edens), alpha);

  auto tparams = uniform_params(0.0, r, grid_size);
  std::vector<double> tdens(tparams.size());
  for (size_t i = 0; i < tparams.size(); ++i) {
    tdens[i] = theta_max(tparams[i], r);
  }
  out.theta_arc = make_grid({ArcKind::kTheta, r, 0.0, r}, std::move(tparams),
                            std::move(tdens), 1.0 - alpha);
  return out;
}

NuGrids nu_grids(double r, int grid_size) {
  require_nu_regime(r);
  check_grid_size(grid_size);
  const double hi = theta_max_dominant(r);

  NuGrids out;
  auto bparams = uniform_params(0.0, hi, grid_size);
  std::vector<double> bdens(bparams.size(), 1.0);
  out.nu_B = make_grid({ArcKind::kEllDominant, r, 0.0, hi}, std::move(bparams),
                       std::move(bdens), 1.0);

  auto iparams = uniform_params(0.0, hi, grid_size);
  std::vector<double> idens(iparams.size());
  for (size_t i = 0; i < iparams.size(); ++i) {
    idens[i] = std::max(0.0, r - ell_min_dominant(iparams[i]));
  }
  out.nu_I = make_grid({ArcKind::kEllDominant, r, 0.0, hi}, std::move(iparams),
                       std::move(idens), 1.0);
  return out;
}

QuadCoords project_pi_ell(const QuadCoords& q, double r) {
  if (!(d24_closed(q) <= r + 1e-9 && q.ell <= r + 1e-9)) {
    throw std::invalid_argument("point outside the confined region");
  }
  return {r, q.theta};
}

QuadCoords project_pi_theta(const QuadCoords& q, double r) {
  if (!(d24_closed(q) <= r + 1e-9 && q.ell <= r + 1e-9)) {
    throw std::invalid_argument("point outside the confined region");
  }
  return {q.ell, theta_max(q.ell, r)};
}

QuadCoords project_pi_dominant(const QuadCoords& q, double r) {
  if (!(d24_closed(q) <= std::min(q.ell, r) + 1e-9 && q.ell <= r + 1e-9)) {
    throw std::invalid_argument("point outside the diagonal-dominant region");
  }
  return {r, q.theta};
}

double psi1(double ell, double r) {
  if (!(ell >= 0.0 && ell < 2.0 && r > 0.0 && ell * ell + r * r <= 4.0 + 1e-12)) {
    throw std::domain_error("psi1 needs ell in [0,2), r > 0, ell^2 + r^2 <= 4");
  }
  const double a = 4.0 - ell * ell;
  const double rad = std::max(0.0, r * r * (a - r * r));
  const double term1 = -2.0 * std::sqrt(rad) / a;
  // arccos((ell^2 + 2r^2 - 4) / (ell^2 - 4)) rewritten through asin: the
  // argument's distance from 1 is exactly 2r^2/(4 - ell^2), so this form keeps
  // relative accuracy where r is small and acos would return a bare 0
  const double term2 = 2.0 * std::asin(std::min(1.0, r / std::sqrt(a)));
  return term1 + term2;
}

DominanceReport stochastic_dominance(const DensityGrid& lower,
                                     const DensityGrid& upper) {
  if (lower.arc.kind != upper.arc.kind ||
      std::abs(lower.arc.r - upper.arc.r) > 1e-12 ||
      lower.params.size() != upper.params.size()) {
    throw std::invalid_argument("dominance needs grids on the same arc");
  }
  for (size_t i = 0; i < lower.params.size(); ++i) {
    if (std::abs(lower.params[i] - upper.params[i]) > 1e-12) {
      throw std::invalid_argument("dominance needs a shared parameter grid");
    }
  }
  if (std::abs(lower.normalized_mass - upper.normalized_mass) > 1e-9) {
    throw std::invalid_argument("dominance needs equal masses");
  }

  DominanceReport rep;
  const auto flo = lower.cdf();
  const auto fup = upper.cdf();
  double worst_cdf = 0.0;
  for (size_t i = 0; i < flo.size(); ++i) {
    worst_cdf = std::max(worst_cdf, fup[i] - flo[i]);
  }
  rep.max_cdf_violation = worst_cdf;
  rep.cdf_ok = worst_cdf <= 1e-8;

  double worst_slope = 0.0;
  bool have_prev = false;
  double prev_ratio = 0.0, prev_param = 0.0;
  for (size_t i = 0; i < lower.params.size(); ++i) {
    if (lower.density[i] <= 1e-13 || upper.density[i] <= 1e-13) {
      have_prev = false;
      continue;
    }
    const double ratio = upper.density[i] / lower.density[i];
    if (have_prev) {
      const double slope = (ratio - prev_ratio) / (lower.params[i] - prev_param);
      worst_slope = std::min(worst_slope, slope);
    }
    prev_ratio = ratio;
    prev_param = lower.params[i];
    have_prev = true;
  }
  rep.max_mlr_violation = std::max(0.0, -worst_slope);
  rep.mlr_ok = worst_slope >= -1e-8;
  return rep;
}

}  // namespace confpoly
