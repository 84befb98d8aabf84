#include "confpoly/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "confpoly/crofton.hpp"
#include "confpoly/geometry.hpp"
#include "confpoly/knotproxy.hpp"
#include "confpoly/measures.hpp"
#include "confpoly/moduli.hpp"
#include "confpoly/rng.hpp"
#include "confpoly/stats.hpp"

namespace confpoly {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return std::string(buf);
}

CheckResult check(std::string name, double tolerance, double margin,
                  std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.tolerance = tolerance;
  c.margin = margin;
  c.pass = margin >= 0.0;
  c.detail = std::move(detail);
  return c;
}

long scaled(long base, double scale) {
  double v = static_cast<double>(base) * scale;
  return std::max<long>(100, static_cast<long>(std::llround(v)));
}

double kappa_at(double ell, double theta) {
  return quad_curvature_closed(ell * ell / 4.0, std::cos(theta));
}

// 21-point confinement grid 1.00, 1.05, ..., 2.00 with exact endpoints.
std::vector<double> curve_grid() {
  std::vector<double> r;
  for (int i = 0; i <= 20; ++i) r.push_back(static_cast<double>(100 + 5 * i) / 100.0);
  return r;
}

// ---------------------------------------------------------------- lemmas --

std::vector<CheckResult> suite_lemmas(uint64_t seed, double /*scale*/) {
  std::vector<CheckResult> out;

  {
    double dev = std::abs(kappa_at(std::sqrt(2.0), kPi) - kTwoPi);
    out.push_back(check("chart_square_curvature", 1e-12, 1e-12 - dev,
                        fmt("planar square: |kappa - 2*pi| = %.3g", dev)));
  }
  {
    double d1 = std::abs(quad_curvature_closed(0.0, 1.0) - 4.0 * kPi);
    double d2 = std::abs(quad_curvature_closed(0.0, -1.0) - kTwoPi);
    double d3 = std::abs(quad_curvature_closed(0.0, 0.0) - 3.0 * kPi);
    double dev = std::max({d1, d2, d3});
    out.push_back(check("chart_degenerate_corners", 1e-12, 1e-12 - dev,
                        fmt("(t,c) corners (0,1)->4pi, (0,-1)->2pi, (0,0)->3pi; "
                            "max dev %.3g", dev)));
  }
  {
    double dev = 0.0;
    for (int i = 0; i < 200; ++i) {
      double ell = 2.0 * i / 199.0;
      dev = std::max(dev, std::abs(kappa_at(ell, kPi) - kTwoPi));
    }
    out.push_back(check("planar_fiber_constant_two_pi", 1e-9, 1e-9 - dev,
                        fmt("max |kappa(ell, pi) - 2*pi| = %.3g over 200 ells", dev)));
  }

  // 200 x 200 inclusive chart grid for the closed-form comparisons.
  {
    double dev_kappa = 0.0;
    double dev_d24 = 0.0;
    for (int i = 0; i < 200; ++i) {
      double ell = 2.0 * i / 199.0;
      for (int j = 0; j < 200; ++j) {
        double theta = kPi * j / 199.0;
        QuadCoords q{ell, theta};
        Polygon p = quad_from_coords(q);
        dev_kappa = std::max(dev_kappa,
                             std::abs(total_curvature(p) - kappa_at(ell, theta)));
        auto v = p.vertices();
        dev_d24 = std::max(dev_d24, std::abs(dist(v[1], v[3]) - d24_closed(q)));
      }
    }
    out.push_back(check("closed_form_matches_vertex_curvature", 1e-9,
                        1e-9 - dev_kappa,
                        fmt("max |vertex - closed form| = %.3g on 200x200", dev_kappa)));
    out.push_back(check("cross_diagonal_matches_vertices", 1e-9, 1e-9 - dev_d24,
                        fmt("max |d(v2,v4) - closed form| = %.3g on 200x200", dev_d24)));
  }

  {
    double h = 1e-6;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      double t = 0.05 + 0.9 * i / 49.0;
      for (int j = 0; j < 50; ++j) {
        double c = -0.95 + 1.9 * j / 49.0;
        double fd = (quad_curvature_closed(t + h, c) -
                     quad_curvature_closed(t - h, c)) / (2.0 * h);
        double an = dkappa_dt_closed(t, c);
        worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
      }
    }
    out.push_back(check("curvature_derivative_matches_fd", 1e-4, 1e-4 - worst,
                        fmt("max rel dev analytic vs central FD = %.3g", worst)));
  }

  // Monotonicity of kappa along both chart coordinates, as grid differences.
  {
    double rise_ell = 0.0;
    double rise_theta = 0.0;
    std::vector<double> kappa_row(200);
    for (int j = 0; j < 200; ++j) {
      double theta = kPi * j / 199.0;
      double prev = 0.0;
      for (int i = 0; i < 200; ++i) {
        double ell = 2.0 * i / 199.0;
        double k = kappa_at(ell, theta);
        if (i > 0) rise_ell = std::max(rise_ell, k - prev);
        prev = k;
      }
    }
    for (int i = 0; i < 200; ++i) {
      double ell = 2.0 * i / 199.0;
      double prev = 0.0;
      for (int j = 0; j < 200; ++j) {
        double theta = kPi * j / 199.0;
        double k = kappa_at(ell, theta);
        if (j > 0) rise_theta = std::max(rise_theta, k - prev);
        prev = k;
      }
    }
    out.push_back(check("curvature_nonincreasing_in_ell", 1e-9, 1e-9 - rise_ell,
                        fmt("max rise along ell = %.3g", rise_ell)));
    out.push_back(check("curvature_nonincreasing_in_theta", 1e-9,
                        1e-9 - rise_theta,
                        fmt("max rise along theta = %.3g", rise_theta)));
  }

  {
    double worst = 0.0;
    for (int n : {4, 5, 6, 7, 8, 9, 12}) {
      UnconfinedSampler sampler(n, seed, /*stream=*/static_cast<uint64_t>(n));
      for (int s = 0; s < 200; ++s) {
        ActionAngle aa = sampler.next();
        ActionAngle back = recover_action_angles(reconstruct(aa));
        for (size_t k = 0; k < aa.ells.size(); ++k) {
          worst = std::max(worst, std::abs(aa.ells[k] - back.ells[k]));
          double dtheta = std::abs(aa.thetas[k] - back.thetas[k]);
          worst = std::max(worst, std::min(dtheta, kTwoPi - dtheta));
        }
      }
    }
    out.push_back(check("coordinate_round_trip", 1e-9, 1e-9 - worst,
                        fmt("max round-trip error %.3g over n in {4..9,12}", worst)));
  }

  {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      double ell = 0.02 + (1.96) * i / 49.0;
      for (int j = 0; j < 50; ++j) {
        double theta = 0.02 + (kPi - 0.04) * j / 49.0;
        QuadCoords q{ell, theta};
        QuadCoords back = quad_coords_of(quad_from_coords(q));
        worst = std::max(worst, std::abs(back.ell - ell));
        worst = std::max(worst, std::abs(back.theta - theta));
      }
    }
    out.push_back(check("chart_round_trip", 1e-9, 1e-9 - worst,
                        fmt("max |coords(embed(q)) - q| = %.3g", worst)));
  }

  return out;
}

// ------------------------------------------------------------- dominance --

std::vector<CheckResult> suite_dominance(uint64_t seed, double /*scale*/) {
  std::vector<CheckResult> out;

  double cdf_ell = 0.0, cdf_theta = 0.0, mlr_ell = 0.0, mlr_theta = 0.0;
  for (double r : {1.1, 1.2, 1.3}) {
    MuGrids mb = mu_B_grid(r, 1024);
    MuGrids mi = mu_I_grid(r, 1024, mb.alpha);
    DominanceReport d_ell = stochastic_dominance(mi.ell_arc, mb.ell_arc);
    DominanceReport d_theta = stochastic_dominance(mi.theta_arc, mb.theta_arc);
    cdf_ell = std::max(cdf_ell, d_ell.max_cdf_violation);
    cdf_theta = std::max(cdf_theta, d_theta.max_cdf_violation);
    mlr_ell = std::max(mlr_ell, d_ell.max_mlr_violation);
    mlr_theta = std::max(mlr_theta, d_theta.max_mlr_violation);
  }
  out.push_back(check("ell_arc_cdf_ordering", 1e-8, 1e-8 - cdf_ell,
                      fmt("shell CDF below interior-marginal CDF on {ell=r}; "
                          "max violation %.3g", cdf_ell)));
  out.push_back(check("theta_arc_cdf_ordering", 1e-8, 1e-8 - cdf_theta,
                      fmt("shell CDF below interior-marginal CDF on {d24=r}; "
                          "max violation %.3g", cdf_theta)));
  out.push_back(check("ell_arc_likelihood_ratio", 1e-8, 1e-8 - mlr_ell,
                      fmt("density ratio slope >= -tol; worst %.3g", mlr_ell)));
  out.push_back(check("theta_arc_likelihood_ratio", 1e-8, 1e-8 - mlr_theta,
                      fmt("density ratio slope >= -tol; worst %.3g", mlr_theta)));

  {
    double cdf_dom = 0.0, mlr_dom = 0.0;
    for (double r : {1.5, 1.7}) {
      NuGrids nu = nu_grids(r, 1024);
      DominanceReport d = stochastic_dominance(nu.nu_I, nu.nu_B);
      cdf_dom = std::max(cdf_dom, d.max_cdf_violation);
      mlr_dom = std::max(mlr_dom, d.max_mlr_violation);
    }
    out.push_back(check("dominant_arc_cdf_ordering", 1e-8, 1e-8 - cdf_dom,
                        fmt("uniform shell measure dominates fiber-length "
                            "marginal; max violation %.3g", cdf_dom)));
    out.push_back(check("dominant_arc_likelihood_ratio", 1e-8, 1e-8 - mlr_dom,
                        fmt("worst ratio slope %.3g", mlr_dom)));
  }

  {
    double min_psi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 256; ++i) {
      double ell = 2.0 * i / 256.0;
      for (int j = 0; j < 256; ++j) {
        double r = 2.0 * (j + 1) / 256.0;
        if (ell * ell + r * r > 4.0) continue;
        min_psi = std::min(min_psi, psi1(ell, r));
      }
    }
    out.push_back(check("psi_certificate_nonnegative", 1e-10, min_psi + 1e-10,
                        fmt("min psi1 over 256x256 admissible grid = %.3g", min_psi)));
  }

  {
    CounterRng rng(seed, 101);
    double worst_rise = 0.0;
    long used = 0;
    // mu projections in the low regime.
    double r = 1.25;
    while (used < 2000) {
      QuadCoords q{rng.uniform(0.0, r - 1e-6), rng.uniform(0.0, kPi)};
      if (d24_closed(q) > r - 1e-6) continue;
      ++used;
      double k0 = kappa_at(q.ell, q.theta);
      QuadCoords pe = project_pi_ell(q, r);
      QuadCoords pt = project_pi_theta(q, r);
      worst_rise = std::max(worst_rise, kappa_at(pe.ell, pe.theta) - k0);
      worst_rise = std::max(worst_rise, kappa_at(pt.ell, pt.theta) - k0);
    }
    // nu projection in the diagonal-dominant half, high regime.
    double r2 = 1.7;
    used = 0;
    while (used < 2000) {
      QuadCoords q{rng.uniform(0.0, r2 - 1e-6), rng.uniform(0.0, kPi)};
      if (d24_closed(q) > std::min(q.ell, r2) - 1e-6) continue;
      ++used;
      double k0 = kappa_at(q.ell, q.theta);
      QuadCoords pd = project_pi_dominant(q, r2);
      worst_rise = std::max(worst_rise, kappa_at(pd.ell, pd.theta) - k0);
    }
    out.push_back(check("projections_reduce_curvature", 1e-12, 1e-12 - worst_rise,
                        fmt("max curvature rise under boundary projections %.3g "
                            "over 4000 interior points", worst_rise)));
  }

  {
    CounterRng rng(seed, 103);
    double r = 1.3;
    double worst = 0.0;
    long used = 0;
    bool membership_ok = true;
    while (used < 500) {
      QuadCoords q{rng.uniform(0.0, r - 1e-6), rng.uniform(0.0, kPi)};
      if (d24_closed(q) > r - 1e-6) continue;
      ++used;
      Polygon p = quad_from_coords(q);
      auto v = p.vertices();
      std::vector<Vec3> rolled = {v[1], v[2], v[3], v[0]};
      Polygon p2 = Polygon::from_vertices(rolled);
      QuadCoords q2 = quad_coords_of(p2);
      worst = std::max(worst, std::abs(q2.ell - d24_closed(q)));
      worst = std::max(worst, std::abs(total_curvature(p2) - total_curvature(p)));
      if (!in_region_plus(q2, r)) membership_ok = false;
    }
    double margin = membership_ok ? 1e-9 - worst : -1.0;
    out.push_back(check("relabel_involution_preserves_region", 1e-9, margin,
                        fmt("vertex relabeling swaps the diagonals, fixes "
                            "curvature (max dev %.3g) and region membership (%s)",
                            worst, membership_ok ? "kept" : "violated")));
  }

  return out;
}

// ----------------------------------------------------------------- alpha --

std::vector<CheckResult> suite_alpha(uint64_t /*seed*/, double /*scale*/) {
  std::vector<CheckResult> out;

  {
    double worst = 0.0;
    std::string detail = "alpha at";
    for (double r : {1.1, 1.2, 1.3}) {
      double a = mu_B_grid(r, 2048).alpha;
      worst = std::max(worst, std::abs(a - 0.5));
      detail += fmt(" r=%.2f: %.6f;", r, a);
    }
    out.push_back(check("alpha_near_half", 5e-3, 5e-3 - worst, detail));
  }

  {
    double worst = 0.0;
    for (double r : {1.1, 1.2, 1.3}) {
      MuGrids mb = mu_B_grid(r, 2048);
      MuGrids mi = mu_I_grid(r, 2048, mb.alpha);
      worst = std::max(worst, std::abs(mb.ell_arc.mass_trapezoid() - mb.alpha));
      worst = std::max(worst, std::abs(mb.theta_arc.mass_trapezoid() - (1.0 - mb.alpha)));
      worst = std::max(worst, std::abs(mi.ell_arc.mass_trapezoid() - mb.alpha));
      worst = std::max(worst, std::abs(mi.theta_arc.mass_trapezoid() - (1.0 - mb.alpha)));
      worst = std::max(worst, std::abs(mu_boundary_masses(r).alpha() - mb.alpha));
    }
    out.push_back(check("alpha_grid_consistency", 1e-12, 1e-12 - worst,
                        fmt("trapezoid masses vs normalized shares, worst dev %.3g",
                            worst)));
  }

  {
    double worst = 0.0;
    for (double r : {1.5, 1.7, 1.9}) {
      NuGrids nu = nu_grids(r, 2048);
      worst = std::max(worst, std::abs(nu.nu_B.mass_trapezoid() - 1.0));
      worst = std::max(worst, std::abs(nu.nu_I.mass_trapezoid() - 1.0));
    }
    out.push_back(check("dominant_masses_unit", 1e-12, 1e-12 - worst,
                        fmt("nu grids carry unit mass, worst dev %.3g", worst)));
  }

  return out;
}

// --------------------------------------------------------------- crofton --

std::vector<CheckResult> suite_crofton(uint64_t /*seed*/, double /*scale*/) {
  std::vector<CheckResult> out;

  {
    double dev = std::abs(area_region(2.0) - kTwoPi);
    out.push_back(check("full_disk_area", 1e-12, 1e-12 - dev,
                        fmt("|area(2) - 2*pi| = %.3g", dev)));
  }

  {
    auto grid = curve_grid();
    double min_step = std::numeric_limits<double>::infinity();
    double prev = area_region(grid[0]);
    for (size_t i = 1; i < grid.size(); ++i) {
      double a = area_region(grid[i]);
      min_step = std::min(min_step, a - prev);
      prev = a;
    }
    out.push_back(check("area_increasing", 0.0, min_step,
                        fmt("min area step along the r grid = %.3g", min_step)));
  }

  {
    auto grid = curve_grid();
    ScanResult scan = monotonicity_scan(grid);
    double k_first = scan.curve.kappa_bar.front().value;
    double k_last = scan.curve.kappa_bar.back().value;
    out.push_back(check("mean_curvature_nonincreasing", kCurveTol,
                        kCurveTol - scan.max_violation,
                        fmt("kappa_bar falls %.6f -> %.6f over r in [1,2]; "
                            "max rise beyond refinement deltas %.3g",
                            k_first, k_last, scan.max_violation)));
  }

  {
    double min_margin = std::numeric_limits<double>::infinity();
    std::string detail;
    for (double r : {1.1, 1.2, 1.3}) {
      Estimate b = kappa_boundary(r, BoundaryMeasure::kMuB);
      Estimate i = kappa_boundary(r, BoundaryMeasure::kMuI);
      Estimate m = kappa_bar(r, EstimateMethod::kQuadrature);
      double err = 10.0 * (b.refinement_delta + i.refinement_delta +
                           m.refinement_delta);
      min_margin = std::min(min_margin, (i.value - b.value) - err);
      min_margin = std::min(min_margin, (m.value - i.value) - err);
      if (r == 1.2) {
        detail = fmt("at r=1.2: shell %.6f < marginal %.6f < interior %.6f",
                     b.value, i.value, m.value);
      }
    }
    out.push_back(check("boundary_interior_mean_chain", 0.0, min_margin, detail));
  }

  {
    const double pts[] = {1.05, 1.10, 1.15, 1.20, 1.25, 1.50, 1.60, 1.70, 1.80, 1.90};
    double worst = 0.0;
    double worst_r = pts[0];
    for (double r : pts) {
      double res = crofton_residual(r);
      if (res > worst) {
        worst = res;
        worst_r = r;
      }
    }
    out.push_back(check("growth_identity_residual", 1e-3, 1e-3 - worst,
                        fmt("max |d kappa_bar/dr - gap * area'/area| = %.3g "
                            "at r=%.2f over 10 off-collar points", worst, worst_r)));
  }

  return out;
}

// --------------------------------------------------------------- sampler --

std::vector<CheckResult> suite_sampler(uint64_t seed, double scale) {
  std::vector<CheckResult> out;

  {
    const long n_samples = scaled(100000, scale);
    ConfinedSampler sampler({4, 2.0}, seed, /*stream=*/11);
    std::vector<long> counts(400, 0);
    std::vector<double> ells, thetas;
    ells.reserve(n_samples);
    thetas.reserve(n_samples);
    for (long s = 0; s < n_samples; ++s) {
      sampler.next();
      const ActionAngle& aa = sampler.last_coords();
      double ell = aa.ells[0];
      double theta = aa.thetas[0];
      ells.push_back(ell);
      thetas.push_back(theta);
      int ix = std::min(19, static_cast<int>(ell / 2.0 * 20.0));
      int iy = std::min(19, static_cast<int>(theta / kTwoPi * 20.0));
      ++counts[ix * 20 + iy];
    }
    double stat = chi_square_uniform(counts, n_samples);
    double p = chi_square_pvalue(stat, 399.0);
    out.push_back(check("chart_uniformity_chi_square", 0.01, p - 0.01,
                        fmt("20x20 bins, N=%ld: chi2 = %.2f (df 399), p = %.4f",
                            n_samples, stat, p)));
    double ks = std::max(ks_uniform(ells, 0.0, 2.0),
                         ks_uniform(thetas, 0.0, kTwoPi));
    double crit = 1.63 / std::sqrt(static_cast<double>(n_samples));
    out.push_back(check("chart_uniformity_ks", crit, crit - ks,
                        fmt("max marginal KS distance %.5f vs critical %.5f",
                            ks, crit)));
  }

  {
    const long n_samples = scaled(100000, scale);
    auto grid = curve_grid();
    double worst_z = 0.0;
    double worst_r = grid[0];
    for (size_t i = 0; i < grid.size(); ++i) {
      Estimate quad = kappa_bar(grid[i], EstimateMethod::kQuadrature);
      Estimate mc = kappa_bar(grid[i], EstimateMethod::kMonteCarlo, n_samples,
                              seed + 1000 + i);
      double z = std::abs(mc.value - quad.value) /
                 std::max(mc.std_error, 1e-300);
      if (z > worst_z) {
        worst_z = z;
        worst_r = grid[i];
      }
    }
    out.push_back(check("monte_carlo_matches_quadrature", 3.0, 3.0 - worst_z,
                        fmt("worst |MC - quadrature| = %.2f sigma at r=%.2f, "
                            "N=%ld per point", worst_z, worst_r, n_samples)));
  }

  {
    const long n_samples = scaled(100000, scale);
    ConfinedSampler sampler({4, 1.2}, seed, /*stream=*/13);
    for (long s = 0; s < n_samples; ++s) sampler.next();
    double p_true = area_region(1.2) / kTwoPi;
    double rate = sampler.acceptance_rate();
    double sigma = std::sqrt(p_true * (1.0 - p_true) /
                             static_cast<double>(sampler.proposals()));
    double z = std::abs(rate - p_true) / sigma;
    out.push_back(check("quad_acceptance_matches_area", 3.0, 3.0 - z,
                        fmt("acceptance %.5f vs area share %.5f (%.2f sigma)",
                            rate, p_true, z)));
  }

  {
    const long n_samples = scaled(100000, scale);
    UnconfinedSampler sampler(5, seed, /*stream=*/17);
    for (long s = 0; s < n_samples; ++s) sampler.next();
    double p_true = 0.625;  // pentagon polytope volume 2.5 over box volume 4
    double rate = static_cast<double>(sampler.accepted()) /
                  static_cast<double>(sampler.proposals());
    double sigma = std::sqrt(p_true * (1.0 - p_true) /
                             static_cast<double>(sampler.proposals()));
    double z = std::abs(rate - p_true) / sigma;
    out.push_back(check("pentagon_acceptance_rate", 3.0, 3.0 - z,
                        fmt("acceptance %.5f vs exact 0.625 (%.2f sigma)", rate, z)));
  }

  {
    bool identical = true;
    UnconfinedSampler a(6, seed, 23), b(6, seed, 23);
    for (int s = 0; s < 100 && identical; ++s) {
      ActionAngle x = a.next(), y = b.next();
      for (size_t k = 0; k < x.ells.size(); ++k) {
        if (x.ells[k] != y.ells[k] || x.thetas[k] != y.thetas[k]) identical = false;
      }
    }
    ConfinedSampler c({4, 1.5}, seed, 29), d({4, 1.5}, seed, 29);
    for (int s = 0; s < 50 && identical; ++s) {
      Polygon x = c.next(), y = d.next();
      for (int k = 0; k < x.n(); ++k) {
        if (x.edges()[k].x != y.edges()[k].x || x.edges()[k].y != y.edges()[k].y ||
            x.edges()[k].z != y.edges()[k].z) {
          identical = false;
        }
      }
    }
    out.push_back(check("sampler_determinism", 0.0, identical ? 0.0 : -1.0,
                        "same (n, seed, stream) reproduces identical draws"));
  }

  {
    const long n_samples = scaled(20000, scale);
    UnconfinedSampler rej(8, seed, 31);
    UnconfinedSampler::Options hr_opt;
    hr_opt.method = SamplerMethod::kHitAndRun;
    UnconfinedSampler hr(8, seed, 37, hr_opt);
    RunningStats s_rej, s_hr;
    for (long s = 0; s < n_samples; ++s) {
      s_rej.add(total_curvature(reconstruct(rej.next())));
      s_hr.add(total_curvature(reconstruct(hr.next())));
    }
    double sigma = std::sqrt(s_rej.std_error() * s_rej.std_error() +
                             s_hr.std_error() * s_hr.std_error());
    double z = std::abs(s_rej.mean() - s_hr.mean()) / std::max(sigma, 1e-300);
    out.push_back(check("hit_and_run_matches_rejection", 4.0, 4.0 - z,
                        fmt("n=8 mean curvature: rejection %.4f vs walk %.4f "
                            "(%.2f sigma, N=%ld)", s_rej.mean(), s_hr.mean(), z,
                            n_samples)));
  }

  return out;
}

// ------------------------------------------------------------- knotproxy --

std::vector<CheckResult> suite_knotproxy(uint64_t seed, double scale) {
  std::vector<CheckResult> out;

  {
    double min_margin = std::numeric_limits<double>::infinity();
    std::string detail;
    for (int n : {4, 6}) {
      auto rep = extreme_confinement_check(n, scaled(10000, scale),
                                           seed + static_cast<uint64_t>(n));
      min_margin = std::min(min_margin, rep.min_curvature - (rep.bound - 1e-8));
      detail += fmt("n=%d: min kappa %.6f vs bound %.6f; ", n,
                    rep.min_curvature, rep.bound);
    }
    out.push_back(check("extreme_confinement_bound", 1e-8, min_margin, detail));
  }

  {
    const double eps[] = {0.2, 0.1, 0.05, 0.025};
    auto rep = loose_confinement_check(6, eps, scaled(10000, scale), seed);
    double min_drop = std::numeric_limits<double>::infinity();
    for (size_t k = 1; k < rep.epsilons.size(); ++k) {
      min_drop = std::min(min_drop, rep.max_abs_dev[k - 1] - rep.max_abs_dev[k]);
    }
    out.push_back(check("shell_deviation_decreasing", 0.0, min_drop,
                        fmt("max|kappa - 2*pi| = %.4f, %.4f, %.4f, %.4f over "
                            "eps 0.2 .. 0.025", rep.max_abs_dev[0],
                            rep.max_abs_dev[1], rep.max_abs_dev[2],
                            rep.max_abs_dev[3])));
    double slope_margin = std::min(rep.fitted_exponent - 0.4,
                                   0.6 - rep.fitted_exponent);
    out.push_back(check("shell_scaling_exponent", 0.1, slope_margin,
                        fmt("log-log slope of max deviation vs eps = %.4f, "
                            "target [0.4, 0.6]", rep.fitted_exponent)));
    double kmax = std::max(rep.max_curvature[2], rep.max_curvature[3]);
    out.push_back(check("shell_unknot_certificate", 4.0 * kPi,
                        4.0 * kPi - 1e-9 - kmax,
                        fmt("max kappa %.4f at the two smallest eps, all "
                            "certified unknots below 4*pi", kmax)));
  }

  {
    const int ns[] = {8, 64};
    auto rep = asymptote_check(ns, scaled(100000, scale), seed);
    const auto& a = rep.rows.front();
    const auto& b = rep.rows.back();
    double rel_a = std::abs(a.deviation) / a.target;
    double rel_b = std::abs(b.deviation) / b.target;
    double band = 3.0 * (a.mean_curvature.std_error / a.target +
                         b.mean_curvature.std_error / b.target);
    double margin = rel_a + band - rel_b;
    out.push_back(check("asymptote_approach", band, margin,
                        fmt("deviation from pi*n/2 + pi/4: n=8 %+.4f (rel %.4f), "
                            "n=64 %+.4f (rel %.4f); 3 sigma band %.4f with "
                            "batch-means errors, walk sampler at n=64: %s",
                            a.deviation, rel_a, b.deviation, rel_b, band,
                            b.approximate_sampler ? "yes" : "no")));
  }

  {
    const double rs[] = {2.80, 2.85, 2.90, 2.95, 3.00};
    const long n_samples = scaled(2000, scale);
    std::vector<double> frac, sig;
    for (size_t k = 0; k < 5; ++k) {
      auto rep = proxy_report(6, rs[k], n_samples, seed + 200 + k);
      frac.push_back(rep.frac_possibly_knotted.value);
      sig.push_back(rep.frac_possibly_knotted.std_error);
    }
    double min_margin = std::numeric_limits<double>::infinity();
    for (size_t k = 1; k < 5; ++k) {
      double band = 3.0 * std::sqrt(sig[k - 1] * sig[k - 1] + sig[k] * sig[k]);
      min_margin = std::min(min_margin, frac[k - 1] - frac[k] + band);
    }
    out.push_back(check("knot_fraction_monotone", 0.0, min_margin,
                        fmt("frac at/above 4*pi over r = 2.80..3.00: "
                            "%.4f %.4f %.4f %.4f %.4f (3 sigma slack per step)",
                            frac[0], frac[1], frac[2], frac[3], frac[4])));
  }

  {
    auto rep = proxy_report(6, 1.0, scaled(500, scale), seed + 99);
    out.push_back(check("tight_confinement_defeats_certificate", 0.995,
                        rep.frac_possibly_knotted.value - 0.995,
                        fmt("diameter 1 forces kappa >= 4*pi: flagged share "
                            "%.4f, min kappa %.4f", rep.frac_possibly_knotted.value,
                            rep.min_curvature)));
  }

  {
    double min_margin = std::numeric_limits<double>::infinity();
    for (int n : {4, 6, 8}) {
      UnconfinedSampler sampler(n, seed, 300 + static_cast<uint64_t>(n));
      long n_samples = scaled(2000, scale);
      for (long s = 0; s < n_samples; ++s) {
        double kappa = total_curvature(reconstruct(sampler.next()));
        min_margin = std::min(min_margin, kappa);
        min_margin = std::min(min_margin, n * kPi - kappa);
      }
    }
    out.push_back(check("curvature_range_bounds", 0.0, min_margin,
                        fmt("all sampled curvatures inside [0, n*pi], "
                            "min slack %.4f", min_margin)));
  }

  return out;
}

}  // namespace

bool SuiteResult::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

const std::vector<std::string>& cli_suite_names() {
  static const std::vector<std::string> names = {
      "lemmas", "dominance", "crofton", "alpha", "knotproxy", "all"};
  return names;
}

SuiteResult run_suite(const std::string& suite, uint64_t seed,
                      double sample_scale) {
  SuiteResult result;
  result.suite = suite;
  auto append = [&result](std::vector<CheckResult> checks) {
    for (auto& c : checks) result.checks.push_back(std::move(c));
  };
  if (suite == "lemmas") {
    append(suite_lemmas(seed, sample_scale));
  } else if (suite == "dominance") {
    append(suite_dominance(seed, sample_scale));
  } else if (suite == "alpha") {
    append(suite_alpha(seed, sample_scale));
  } else if (suite == "crofton") {
    append(suite_crofton(seed, sample_scale));
  } else if (suite == "sampler") {
    append(suite_sampler(seed, sample_scale));
  } else if (suite == "knotproxy") {
    append(suite_knotproxy(seed, sample_scale));
  } else if (suite == "all") {
    append(suite_lemmas(seed, sample_scale));
    append(suite_dominance(seed, sample_scale));
    append(suite_alpha(seed, sample_scale));
    append(suite_crofton(seed, sample_scale));
    append(suite_sampler(seed, sample_scale));
    append(suite_knotproxy(seed, sample_scale));
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  return result;
}

}  // namespace confpoly
