#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "confpoly/measures.hpp"

using namespace confpoly;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("fiber limits against independently computed values") {
  CHECK(std::abs(theta_max(1.0, 1.2) - 1.5307856524409077) < 1e-12);
  CHECK(std::abs(ell_min(2.0, 1.2) - 1.4022526821119493) < 1e-12);
  CHECK(std::abs(theta_max_dominant(1.2) - 1.6961241579629620) < 1e-12);
  CHECK(std::abs(ell_min_dominant(2.0) - 1.2877034939251837) < 1e-12);
  CHECK(std::abs(shell_speed_theta_arc(1.0, 1.3) - 1.7474081133220759) < 1e-12);

  CHECK(theta_max(2.0, 1.2) == kPi);      // whole fiber fits once 4 - l^2 <= r^2
  CHECK(theta_max(1.0, 2.0) == kPi);
  CHECK(ell_min(0.0, 1.2) == 0.0);
  CHECK(ell_min(1e-12, 0.5) == 0.0);
  CHECK(theta_max_dominant(std::sqrt(2.0)) == kPi);
  CHECK(theta_max_dominant(1.9) == kPi);
  CHECK(theta_max_dominant(0.0) == 0.0);
  CHECK(std::abs(shell_speed_theta_arc(0.0, 1.0) - 2.0 / std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("fiber limit duality") {
  double r = 1.25;
  for (int i = 1; i < 40; ++i) {
    double theta = theta_max(0.0, r) + (theta_max(r, r) - theta_max(0.0, r)) * i / 40.0;
    double ell = ell_min(theta, r);
    CHECK(std::abs(theta_max(ell, r) - theta) < 1e-9);
  }
  for (int i = 1; i < 40; ++i) {
    double ell = 1.4 * i / 40.0;
    CHECK(std::abs(ell_min_dominant(theta_max_dominant(ell)) - ell) < 1e-9);
  }
}

TEST_CASE("domain guards") {
  CHECK_THROWS_AS(theta_max(2.5, 1.2), std::domain_error);
  CHECK_THROWS_AS(theta_max(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(ell_min(1.0, -0.5), std::domain_error);
  CHECK_THROWS_AS(theta_max_dominant(-0.1), std::domain_error);
  CHECK_THROWS_AS(psi1(2.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(psi1(1.5, 1.5), std::domain_error);  // ell^2 + r^2 > 4
}

TEST_CASE("likelihood-ratio certificate") {
  CHECK(std::abs(psi1(0.5, 1.0) - 0.20084492707119883) < 1e-12);
  CHECK(std::abs(psi1(0.0, 1.0) - (kPi / 3.0 - std::sin(kPi / 3.0))) < 1e-12);
  CHECK(std::abs(psi1(0.0, 1e-8)) < 1e-12);  // vanishes as r -> 0
  for (int i = 0; i < 50; ++i) {
    double ell = 1.999 * i / 49.0;
    double rmax = std::sqrt(4.0 - ell * ell);
    for (int j = 1; j <= 20; ++j) {
      double r = rmax * j / 21.0;
      CHECK(psi1(ell, r) >= -1e-10);
    }
  }
}

TEST_CASE("shell measure grids carry the advertised masses") {
  for (double r : {1.05, 1.2, 1.39}) {
    MuGrids mb = mu_B_grid(r, 256);
    CHECK(std::abs(mb.alpha - 0.5) < 1e-9);  // equal arc masses, exactly 1/2
    CHECK(std::abs(mb.ell_arc.mass_trapezoid() - mb.alpha) < 1e-13);
    CHECK(std::abs(mb.theta_arc.mass_trapezoid() - (1.0 - mb.alpha)) < 1e-13);
    CHECK(mb.ell_arc.arc.kind == ArcKind::kEll);
    CHECK(mb.theta_arc.arc.kind == ArcKind::kTheta);

    MuGrids mi = mu_I_grid(r, 256, mb.alpha);
    CHECK(std::abs(mi.ell_arc.mass_trapezoid() - mb.alpha) < 1e-13);
    CHECK(std::abs(mi.theta_arc.mass_trapezoid() - (1.0 - mb.alpha)) < 1e-13);
    REQUIRE(mi.ell_arc.params.size() == mb.ell_arc.params.size());
    for (size_t k = 0; k < mi.ell_arc.params.size(); ++k) {
      CHECK(mi.ell_arc.params[k] == mb.ell_arc.params[k]);
    }
  }
  MuMasses masses = mu_boundary_masses(1.2);
  CHECK(std::abs(masses.alpha() - 0.5) < 1e-10);
  CHECK(std::abs(masses.ell_mass - theta_max(1.2, 1.2)) < 1e-12);
}

TEST_CASE("density grid calculus") {
  MuGrids mb = mu_B_grid(1.2, 128);
  auto cdf = mb.theta_arc.cdf();
  REQUIRE(cdf.size() == mb.theta_arc.params.size());
  CHECK(cdf.front() == 0.0);
  CHECK(std::abs(cdf.back() - mb.theta_arc.normalized_mass) < 1e-13);
  for (size_t k = 1; k < cdf.size(); ++k) CHECK(cdf[k] >= cdf[k - 1]);
}

TEST_CASE("dominant-half measures") {
  for (double r : {1.5, 1.8}) {
    NuGrids nu = nu_grids(r, 128);
    CHECK(std::abs(nu.nu_B.mass_trapezoid() - 1.0) < 1e-13);
    CHECK(std::abs(nu.nu_I.mass_trapezoid() - 1.0) < 1e-13);
    // uniform shell density: 1 / arc length
    double len = nu.nu_B.arc.param_hi - nu.nu_B.arc.param_lo;
    for (double d : nu.nu_B.density) CHECK(std::abs(d - 1.0 / len) < 1e-13);
    // the fiber-length marginal decreases along theta
    for (size_t k = 1; k < nu.nu_I.density.size(); ++k) {
      CHECK(nu.nu_I.density[k] <= nu.nu_I.density[k - 1] + 1e-13);
    }
  }
}

TEST_CASE("grid refinement leaves densities stable") {
  // raw density values are identical across resolutions; what moves is the
  // trapezoid normalization, whose mass error is quadratic in the spacing
  // (about 1.4e-6 for the 513-point nu_I grid)
  MuGrids a = mu_B_grid(1.2, 513);
  MuGrids b = mu_B_grid(1.2, 1025);
  // uniform theta-arc params: every second fine point lands on a coarse one
  for (size_t k = 0; k < a.theta_arc.params.size(); ++k) {
    REQUIRE(std::abs(a.theta_arc.params[k] - b.theta_arc.params[2 * k]) < 1e-12);
    CHECK(std::abs(a.theta_arc.density[k] - b.theta_arc.density[2 * k]) < 5e-6);
  }
  NuGrids na = nu_grids(1.5, 513);
  NuGrids nb = nu_grids(1.5, 1025);
  for (size_t k = 0; k < na.nu_I.params.size(); ++k) {
    CHECK(std::abs(na.nu_I.density[k] - nb.nu_I.density[2 * k]) < 5e-6);
  }
}

TEST_CASE("stochastic dominance detector") {
  DensityGrid lower, upper;
  lower.arc = {ArcKind::kEll, 1.2, 0.0, 2.0};
  upper.arc = lower.arc;
  lower.params = {0.0, 1.0, 2.0};
  upper.params = lower.params;
  lower.density = {1.0, 1.0, 1.0};
  upper.density = {0.5, 1.0, 1.5};
  lower.normalized_mass = upper.normalized_mass = 2.0;

  DominanceReport rep = stochastic_dominance(lower, upper);
  CHECK(rep.cdf_ok);
  CHECK(rep.mlr_ok);
  CHECK(rep.max_cdf_violation <= 1e-15);

  DominanceReport flipped = stochastic_dominance(upper, lower);
  CHECK_FALSE(flipped.cdf_ok);
  CHECK_FALSE(flipped.mlr_ok);
  CHECK(flipped.max_cdf_violation > 0.1);

  DensityGrid other = upper;
  other.params = {0.0, 0.9, 2.0};
  CHECK_THROWS_AS(stochastic_dominance(lower, other), std::invalid_argument);
  DensityGrid heavier = upper;
  heavier.normalized_mass = 3.0;
  CHECK_THROWS_AS(stochastic_dominance(lower, heavier), std::invalid_argument);
}

TEST_CASE("boundary projections") {
  double r = 1.2;
  QuadCoords q{0.8, 0.9};
  REQUIRE(d24_closed(q) < r);

  QuadCoords pe = project_pi_ell(q, r);
  CHECK(pe.ell == r);
  CHECK(pe.theta == q.theta);

  QuadCoords pt = project_pi_theta(q, r);
  CHECK(pt.ell == q.ell);
  CHECK(std::abs(d24_closed(pt) - r) < 1e-9);

  QuadCoords qd{1.3, 0.4};
  REQUIRE(d24_closed(qd) < qd.ell);
  QuadCoords pd = project_pi_dominant(qd, 1.7);
  CHECK(pd.ell == 1.7);
  CHECK(pd.theta == qd.theta);

  CHECK_THROWS_AS(project_pi_ell(QuadCoords{1.3, 0.2}, 1.2),
                  std::invalid_argument);  // already outside ell <= r
  CHECK_THROWS_AS(project_pi_theta(QuadCoords{0.1, 3.1}, 1.2),
                  std::invalid_argument);  // d24 beyond the fiber end
}

TEST_CASE("regime and grid-size guards") {
  CHECK_THROWS_AS(mu_B_grid(1.45, 64), std::domain_error);
  CHECK_THROWS_AS(mu_B_grid(1.0, 64), std::domain_error);
  CHECK_THROWS_AS(mu_I_grid(1.45, 64, 0.5), std::domain_error);
  CHECK_THROWS_AS(mu_I_grid(1.2, 64, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(nu_grids(0.9, 64), std::domain_error);
  CHECK_THROWS_AS(nu_grids(2.0, 64), std::domain_error);
  CHECK_THROWS_AS(mu_B_grid(1.2, 4), std::invalid_argument);
}
