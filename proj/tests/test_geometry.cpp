#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "confpoly/geometry.hpp"
#include "confpoly/quadrature.hpp"
#include "confpoly/rng.hpp"
#include "confpoly/stats.hpp"

using namespace confpoly;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("clamped and checked arccos") {
  CHECK(acos_clamped(1.5) == 0.0);
  CHECK(acos_clamped(-2.0) == doctest::Approx(kPi));
  CHECK(acos_checked(1.0 + 5e-13) == 0.0);  // inside the 1e-12 slack
  CHECK_THROWS_AS(acos_checked(1.0 + 1e-9), std::domain_error);
  CHECK_THROWS_AS(acos_checked(-1.0 - 1e-9), std::domain_error);
}

TEST_CASE("polygon validation") {
  std::vector<Vec3> square = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
  Polygon p = Polygon::from_edges(square);
  CHECK(p.n() == 4);
  CHECK(total_curvature(p) == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(diameter(p) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(Polygon::from_edges({{1, 0, 0}, {0, 1, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      Polygon::from_edges({{1, 0, 0}, {0, 2, 0}, {-1, 0, 0}, {0, -2, 0}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      Polygon::from_edges({{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -0.5, 0}}),
      std::invalid_argument);

  std::vector<Vec3> verts = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  Polygon q = Polygon::from_vertices(verts);
  CHECK(total_curvature(q) == doctest::Approx(2 * kPi).epsilon(1e-12));
}

TEST_CASE("chart embedding") {
  QuadCoords square{std::sqrt(2.0), kPi};
  Polygon p = quad_from_coords(square);
  auto v = p.vertices();
  CHECK(norm(v[0]) == 0.0);
  CHECK(dist(v[0], v[2]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(total_curvature(p) == doctest::Approx(2 * kPi).epsilon(1e-12));

  CHECK_THROWS_AS(quad_from_coords(QuadCoords{2.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(quad_from_coords(QuadCoords{1.0, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(quad_from_coords(QuadCoords{1.0, 3.2}), std::invalid_argument);
}

TEST_CASE("closed-form curvature against independently computed values") {
  // Frozen from a 30-digit vertex-chain evaluation of the same embedding.
  auto kappa = [](double ell, double theta) {
    return quad_curvature_closed(ell * ell / 4.0, std::cos(theta));
  };
  CHECK(std::abs(kappa(1.0, 1.0) - 8.7593482852259706) < 1e-12);
  CHECK(std::abs(kappa(0.5, 2.0) - 7.7464526679862832) < 1e-12);
  CHECK(std::abs(kappa(1.7, 0.3) - 8.1872176168502178) < 1e-12);
  CHECK(std::abs(d24_closed(QuadCoords{1.3, 2.0}) - 1.2789251722489277) < 1e-12);

  // Degenerate chart corners.
  CHECK(std::abs(quad_curvature_closed(0.0, 1.0) - 4 * kPi) < 1e-12);
  CHECK(std::abs(quad_curvature_closed(0.0, -1.0) - 2 * kPi) < 1e-12);
  CHECK(std::abs(quad_curvature_closed(0.0, 0.0) - 3 * kPi) < 1e-12);
  CHECK(std::abs(quad_curvature_closed(1.0, 0.3) - 2 * kPi) < 1e-12);
}

TEST_CASE("planar fiber is constant 2 pi") {
  for (int i = 0; i < 41; ++i) {
    double ell = 2.0 * i / 40.0;
    double k = quad_curvature_closed(ell * ell / 4.0, -1.0);
    CHECK(std::abs(k - 2 * kPi) < 1e-12);
  }
}

TEST_CASE("curvature t-derivative") {
  double h = 1e-6;
  for (double t : {0.1, 0.35, 0.6, 0.9}) {
    for (double c : {-0.9, -0.3, 0.2, 0.8}) {
      double fd = (quad_curvature_closed(t + h, c) -
                   quad_curvature_closed(t - h, c)) / (2 * h);
      double an = dkappa_dt_closed(t, c);
      CHECK(std::abs(fd - an) / std::max(1.0, std::abs(an)) < 1e-6);
      CHECK(an < 0.0);  // curvature falls as the diagonal grows
    }
  }
  CHECK_THROWS_AS(dkappa_dt_closed(1e-12, 0.5), std::domain_error);
  CHECK_THROWS_AS(dkappa_dt_closed(0.5, 1.0 - 1e-12), std::domain_error);
}

TEST_CASE("vertex-chain curvature matches the closed form on a grid") {
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    double ell = 2.0 * i / 59.0;
    for (int j = 0; j < 60; ++j) {
      double theta = kPi * j / 59.0;
      Polygon p = quad_from_coords(QuadCoords{ell, theta});
      double closed = quad_curvature_closed(ell * ell / 4.0, std::cos(theta));
      worst = std::max(worst, std::abs(total_curvature(p) - closed));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("fixed-order Gauss-Legendre") {
  auto cube = [](double x) { return x * x * x; };
  CHECK(std::abs(gauss_legendre(cube, 0.0, 1.0) - 0.25) < 1e-15);
  CHECK(std::abs(gauss_legendre([](double x) { return std::sin(x); }, 0.0, kPi) -
                 2.0) < 1e-14);
  CHECK(std::abs(gauss_legendre_panels([](double x) { return std::exp(x); }, 0.0,
                                       1.0, 4) -
                 (std::exp(1.0) - 1.0)) < 1e-14);
}

TEST_CASE("adaptive panel doubling") {
  QuadratureResult res =
      integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
  CHECK(std::abs(res.value - 2.0) < 1e-12);
  CHECK(res.delta <= 1e-12);
  CHECK(res.panels >= 1);
}

TEST_CASE("square-root endpoint substitutions") {
  // 1/sqrt(1-x) on [0,1) integrates to 2; the substitution renders it smooth.
  QuadratureResult a = integrate_sqrt_endpoint(
      [](double x) { return 1.0 / std::sqrt(1.0 - x); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(a.value - 2.0) < 1e-10);
  QuadratureResult b = integrate_sqrt_start(
      [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(b.value - 2.0) < 1e-10);
  // smooth integrands survive the substitution unchanged
  QuadratureResult c = integrate_sqrt_endpoint(
      [](double x) { return x * x; }, 0.0, 2.0, 1e-12);
  CHECK(std::abs(c.value - 8.0 / 3.0) < 1e-12);
}

TEST_CASE("running statistics") {
  RunningStats s;
  for (double x : {1.0, 2.0, 3.0, 4.0}) s.add(x);
  CHECK(s.count() == 4);
  CHECK(s.mean() == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(s.variance() == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(s.std_error() ==
        doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)).epsilon(1e-15));
  CHECK(s.min() == 1.0);
  CHECK(s.max() == 4.0);
}

TEST_CASE("upper incomplete gamma and chi-square tail") {
  // Frozen from an independent special-function implementation.
  CHECK(std::abs(gamma_q(3.5, 2.0) - 0.779777408475716) < 1e-12);
  CHECK(std::abs(gamma_q(0.5, 4.5) - 0.0026997960632601884) < 1e-14);
  CHECK(std::abs(chi_square_pvalue(420.5, 399.0) - 0.22025449728944307) < 1e-10);
  CHECK(std::abs(chi_square_pvalue(350.0, 399.0) - 0.9630554676122635) < 1e-10);
  CHECK_THROWS_AS(gamma_q(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("chi-square statistic of equal bins") {
  std::vector<long> counts = {30, 20, 25, 25};
  // expected 25 each: (25 + 25 + 0 + 0) / 25 = 2
  CHECK(chi_square_uniform(counts, 100) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("Kolmogorov-Smirnov distance") {
  std::vector<double> s = {0.8, 0.1, 0.4};  // sorts internally
  CHECK(ks_uniform(s, 0.0, 1.0) == doctest::Approx(4.0 / 15.0).epsilon(1e-12));
  std::vector<double> t = {0.5};
  CHECK(ks_uniform(t, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("least-squares slope") {
  std::vector<double> x = {0.0, 1.0, 2.0};
  std::vector<double> y = {1.0, 3.0, 5.0};
  CHECK(fit_slope(x, y) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(fit_slope(x, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("counter rng determinism and streams") {
  CounterRng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool same = true, stream_differs = false, seed_differs = false;
  for (int i = 0; i < 100; ++i) {
    uint64_t x = a.next_u64();
    same = same && (x == b.next_u64());
    stream_differs = stream_differs || (x != c.next_u64());
    seed_differs = seed_differs || (x != d.next_u64());
  }
  CHECK(same);
  CHECK(stream_differs);
  CHECK(seed_differs);
  CHECK(a.counter() == 100);
}

TEST_CASE("counter rng marginals") {
  CounterRng rng(7, 0);
  RunningStats u, n;
  for (int i = 0; i < 20000; ++i) u.add(rng.next_double());
  for (int i = 0; i < 20000; ++i) n.add(rng.normal());
  CHECK(u.min() >= 0.0);
  CHECK(u.max() < 1.0);
  CHECK(std::abs(u.mean() - 0.5) < 0.01);
  CHECK(std::abs(u.variance() - 1.0 / 12.0) < 0.005);
  CHECK(std::abs(n.mean()) < 0.03);
  CHECK(std::abs(n.variance() - 1.0) < 0.05);
}
