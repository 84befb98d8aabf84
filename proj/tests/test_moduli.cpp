#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "confpoly/moduli.hpp"
#include "confpoly/stats.hpp"

using namespace confpoly;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("diagonal bounds from the two edge paths") {
  CHECK(diagonal_bound(4, 3) == 2.0);
  CHECK(diagonal_bound(6, 3) == 2.0);
  CHECK(diagonal_bound(6, 4) == 3.0);
  CHECK(diagonal_bound(6, 5) == 2.0);
  CHECK(diagonal_bound(8, 5) == 4.0);
  CHECK(diagonal_bound(9, 5) == 4.0);
  CHECK(diagonal_bound(9, 6) == 4.0);
  CHECK_THROWS_AS(diagonal_bound(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(diagonal_bound(4, 4), std::invalid_argument);
}

TEST_CASE("fan polytope membership") {
  CHECK(polytope_contains(4, std::vector<double>{1.0}));
  CHECK(polytope_contains(4, std::vector<double>{0.0}));   // virtual pair 0+1 >= 1
  CHECK(polytope_contains(4, std::vector<double>{2.0}));
  CHECK_FALSE(polytope_contains(4, std::vector<double>{2.1}));
  CHECK_FALSE(polytope_contains(4, std::vector<double>{-0.1}));

  CHECK(polytope_contains(5, std::vector<double>{0.5, 0.5}));
  CHECK_FALSE(polytope_contains(5, std::vector<double>{0.4, 0.4}));  // sum < 1
  CHECK_FALSE(polytope_contains(5, std::vector<double>{2.0, 0.5}));  // gap > 1
  CHECK(polytope_contains(6, std::vector<double>{2.0, 3.0, 2.0}));
  CHECK_FALSE(polytope_contains(6, std::vector<double>{1.0, 2.5, 1.0}));

  // membership slack keeps exact boundary points inside
  CHECK(polytope_contains(5, std::vector<double>{1.0, 2.0}));
}

TEST_CASE("quad reconstruction agrees with the direct embedding") {
  for (double ell : {0.3, 1.0, 1.7}) {
    for (double theta : {0.2, 1.5, 2.9}) {
      Polygon direct = quad_from_coords(QuadCoords{ell, theta});
      Polygon fan = reconstruct(ActionAngle{4, {ell}, {theta}});
      auto dv = direct.vertices();
      auto fv = fan.vertices();
      for (int i = 0; i < 4; ++i) CHECK(dist(dv[i], fv[i]) < 1e-12);
    }
  }
}

TEST_CASE("regular planar polygons reconstruct with curvature 2 pi") {
  double s3 = std::sqrt(3.0);
  ActionAngle hex{6, {s3, 2.0, s3}, {kPi, kPi, kPi}};
  Polygon p = reconstruct(hex);
  CHECK(std::abs(total_curvature(p) - kTwoPi) < 1e-9);
  CHECK(std::abs(diameter(p) - 2.0) < 1e-12);

  ActionAngle square{4, {std::sqrt(2.0)}, {kPi}};
  CHECK(std::abs(total_curvature(reconstruct(square)) - kTwoPi) < 1e-12);

  CHECK_THROWS_AS(reconstruct(ActionAngle{6, {0.1, 3.0, 0.1}, {0, 0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("coordinate round trip across sizes") {
  double worst = 0.0;
  for (int n : {4, 5, 6, 7, 8, 9}) {
    UnconfinedSampler sampler(n, 11, static_cast<uint64_t>(n));
    for (int s = 0; s < 300; ++s) {
      ActionAngle aa = sampler.next();
      Polygon p = reconstruct(aa);
      for (const Vec3& e : p.edges()) CHECK(std::abs(norm(e) - 1.0) < 1e-9);
      ActionAngle back = recover_action_angles(p);
      REQUIRE(back.ells.size() == aa.ells.size());
      for (size_t k = 0; k < aa.ells.size(); ++k) {
        worst = std::max(worst, std::abs(aa.ells[k] - back.ells[k]));
        double dt = std::abs(aa.thetas[k] - back.thetas[k]);
        worst = std::max(worst, std::min(dt, kTwoPi - dt));
      }
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("chart coordinates fold the dihedral into [0, pi]") {
  Polygon p = reconstruct(ActionAngle{4, {1.2}, {5.0}});
  QuadCoords q = quad_coords_of(p);
  CHECK(std::abs(q.ell - 1.2) < 1e-12);
  CHECK(std::abs(q.theta - (kTwoPi - 5.0)) < 1e-12);
  CHECK(std::abs(total_curvature(p) -
                 total_curvature(quad_from_coords(q))) < 1e-12);
}

TEST_CASE("region membership routes agree") {
  for (double r : {1.1, 1.3, 1.7}) {
    for (int i = 0; i <= 80; ++i) {
      for (int j = 0; j <= 80; ++j) {
        QuadCoords q{2.0 * i / 80.0, kPi * j / 80.0};
        bool in_plus = in_region_plus(q, r);
        bool in_half = in_region_plus_ell(q, r);  // cross-checks internally
        if (in_half) CHECK(in_plus);
        if (!in_plus) CHECK_FALSE(in_half);
      }
    }
  }
}

TEST_CASE("unconfined sampler is uniform on the quad chart") {
  UnconfinedSampler sampler(4, 19, 0);
  std::vector<double> ells, thetas;
  for (int s = 0; s < 20000; ++s) {
    ActionAngle aa = sampler.next();
    ells.push_back(aa.ells[0]);
    thetas.push_back(aa.thetas[0]);
  }
  CHECK(sampler.accepted() == sampler.proposals());  // no cut at n = 4
  CHECK(ks_uniform(ells, 0.0, 2.0) < 0.012);         // 1% critical at N = 2e4
  CHECK(ks_uniform(thetas, 0.0, kTwoPi) < 0.012);
  CHECK_FALSE(sampler.approximate());
  CHECK(std::string(sampler.method_name()) == "rejection");
}

TEST_CASE("pentagon acceptance matches the exact polytope area") {
  UnconfinedSampler sampler(5, 23, 0);
  for (int s = 0; s < 40000; ++s) sampler.next();
  double rate = static_cast<double>(sampler.accepted()) /
                static_cast<double>(sampler.proposals());
  double sigma = std::sqrt(0.625 * 0.375 / static_cast<double>(sampler.proposals()));
  CHECK(std::abs(rate - 0.625) < 3.5 * sigma);  // area 2.5 of the [0,2]^2 box
}

TEST_CASE("confined sampler respects the diameter bound") {
  ConfinedSampler sampler({5, 1.4}, 3);
  for (int s = 0; s < 300; ++s) {
    Polygon p = sampler.next();
    CHECK(diameter(p) <= 1.4 + 1e-12);
    CHECK(polytope_contains(sampler.last_coords()));
  }
  CHECK(sampler.acceptance_rate() > 0.0);
  CHECK(sampler.acceptance_rate() <= 1.0);
}

TEST_CASE("confined sampler exhausts on an impossible diameter") {
  // adjacent vertices are unit distance apart, so diameter < 1 is empty
  ConfinedSampler sampler({5, 0.8}, 3, 0, /*probe_budget=*/2000);
  CHECK_THROWS_AS(sampler.next(), SamplerExhausted);
}

TEST_CASE("sampler determinism and stream separation") {
  UnconfinedSampler a(6, 5, 2), b(6, 5, 2), c(6, 5, 3);
  bool differs = false;
  for (int s = 0; s < 50; ++s) {
    ActionAngle x = a.next(), y = b.next(), z = c.next();
    for (size_t k = 0; k < x.ells.size(); ++k) {
      CHECK(x.ells[k] == y.ells[k]);
      CHECK(x.thetas[k] == y.thetas[k]);
      differs = differs || x.ells[k] != z.ells[k];
    }
  }
  CHECK(differs);
}

TEST_CASE("hit-and-run walk stays in the polytope and is deterministic") {
  UnconfinedSampler::Options opt;
  opt.method = SamplerMethod::kHitAndRun;
  UnconfinedSampler a(12, 31, 1, opt), b(12, 31, 1, opt);
  CHECK(a.approximate());
  CHECK(std::string(a.method_name()) == "hit_and_run");
  for (int s = 0; s < 500; ++s) {
    ActionAngle x = a.next(), y = b.next();
    CHECK(polytope_contains(x));
    for (size_t k = 0; k < x.ells.size(); ++k) {
      CHECK(x.ells[k] == y.ells[k]);
      CHECK(x.ells[k] >= 0.0);
      CHECK(x.ells[k] <= diagonal_bound(12, static_cast<int>(k) + 3) + 1e-12);
    }
  }
}

TEST_CASE("large n defaults to the walk, small n to rejection") {
  UnconfinedSampler small(10, 1, 0);
  CHECK_FALSE(small.approximate());
  UnconfinedSampler large(11, 1, 0);
  CHECK(large.approximate());
}

TEST_CASE("shell sampler covers the thin near-maximal band") {
  ShellSampler sampler(6, 0.1, 13);
  for (int s = 0; s < 400; ++s) {
    Polygon p = sampler.next();
    const ActionAngle& aa = sampler.last_coords();
    CHECK(polytope_contains(aa));
    for (int k = 0; k < 3; ++k) {
      double bound = diagonal_bound(6, k + 3);
      CHECK(aa.ells[k] <= bound + 1e-12);
      CHECK(aa.ells[k] >= bound - 0.1 - 1e-12);
    }
    double d = diameter(p);
    CHECK(d >= 3.0 - 0.1 - 1e-9);
    CHECK(d <= 3.0 + 1e-9);
  }
  CHECK_THROWS_AS(ShellSampler(5, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ShellSampler(6, 0.3, 1), std::invalid_argument);
  CHECK_THROWS_AS(ShellSampler(6, 0.0, 1), std::invalid_argument);
}

TEST_CASE("confined curvature stays within the global bounds") {
  ConfinedSampler sampler({6, 2.5}, 17);
  for (int s = 0; s < 300; ++s) {
    double kappa = total_curvature(sampler.next());
    CHECK(kappa >= kTwoPi - 1e-9);  // closed space curves
    CHECK(kappa <= 6.0 * kPi + 1e-9);
  }
}
