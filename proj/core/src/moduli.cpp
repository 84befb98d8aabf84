#include "confpoly/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace confpoly {
namespace {

constexpr double kTwoPi = 6.283185307179586477;
constexpr int kRejectionMaxN = 10;  // box rejection stays practical up to here

Vec3 normalized_or(const Vec3& v, const Vec3& fallback) {
  const double len = norm(v);
  if (len < 1e-12) return fallback;
  return v * (1.0 / len);
}

// Unit vector perpendicular to u, deterministic for degenerate inputs.
Vec3 any_perp(const Vec3& u) {
  const Vec3 trial = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 p = trial - u * dot(trial, u);
  return normalized_or(p, Vec3{0, 1, 0});
}

}  // namespace

double diagonal_bound(int n, int i) {
  if (n < 4 || i < 3 || i > n - 1) throw std::invalid_argument("diagonal index");
  return static_cast<double>(std::min(i - 1, n - i + 1));
}

bool polytope_contains(int n, std::span<const double> ells) {
  if (n < 4 || static_cast<int>(ells.size()) != n - 3) {
    throw std::invalid_argument("action-angle dimension mismatch");
  }
  // Virtual end diagonals ell_2 = ell_n = 1 make the end triangles
  // (1,1,ell_3) and (ell_{n-1},1,1) instances of the generic pair rule.
  double prev = 1.0;
  for (int k = 0; k <= n - 3; ++k) {
    const double cur = k < n - 3 ? ells[k] : 1.0;
    if (!(cur >= -kFeasSlack)) return false;
    if (std::abs(cur - prev) > 1.0 + kFeasSlack) return false;
    if (cur + prev < 1.0 - kFeasSlack) return false;
    prev = cur;
  }
  return true;
}

bool polytope_contains(const ActionAngle& aa) {
  return polytope_contains(aa.n, aa.ells);
}

Polygon reconstruct(const ActionAngle& aa) {
  const int n = aa.n;
  if (static_cast<int>(aa.thetas.size()) != n - 3) {
    throw std::invalid_argument("action-angle dimension mismatch");
  }
  if (!polytope_contains(aa)) {
    throw std::invalid_argument("ells violate the fan triangle inequalities");
  }

  std::vector<Vec3> v(n);
  v[0] = {0, 0, 0};
  const double l3 = aa.ells[0];
  v[2] = {l3, 0, 0};
  // Apex of the first fan triangle (v1, v2, v3) with two unit sides.
  v[1] = {l3 / 2.0, std::sqrt(std::max(0.0, 1.0 - l3 * l3 / 4.0)), 0.0};

  Vec3 u_prev{1, 0, 0};
  Vec3 p_prev{0, 1, 0};
  for (int i = 3; i <= n - 1; ++i) {
    const double li = aa.ells[i - 3];
    const double lnext = i + 1 <= n - 1 ? aa.ells[i - 2] : 1.0;
    const double theta = aa.thetas[i - 3];

    Vec3 u = normalized_or(v[i - 1], u_prev);
    Vec3 apex = v[i - 2];  // previous fan apex relative to this diagonal
    Vec3 p = normalized_or(apex - u * dot(apex, u), p_prev);

    double a, rho;
    if (li < 1e-12) {
      a = 0.0;
      rho = lnext;
    } else {
      a = (li * li + lnext * lnext - 1.0) / (2.0 * li);
      rho = std::sqrt(std::max(0.0, lnext * lnext - a * a));
    }
    const Vec3 w = p * std::cos(theta) + cross(u, p) * std::sin(theta);
    v[i] = u * a + w * rho;

    u_prev = u;
    p_prev = p;
  }
  return Polygon::from_vertices(v);
}

ActionAngle recover_action_angles(const Polygon& p) {
  const int n = p.n();
  const auto v = p.vertices();
  ActionAngle aa;
  aa.n = n;
  aa.ells.resize(n - 3);
  aa.thetas.resize(n - 3);
  for (int i = 3; i <= n - 1; ++i) {
    aa.ells[i - 3] = norm(v[i - 1]);

    const Vec3 u = normalized_or(v[i - 1], Vec3{1, 0, 0});
    const Vec3 prev = v[i - 2];
    const Vec3 next = v[i % n];  // v_{i+1}, wrapping to v_n
    const Vec3 pperp = prev - u * dot(prev, u);
    const Vec3 wperp = next - u * dot(next, u);
    if (norm(pperp) < 1e-12 || norm(wperp) < 1e-12) {
      aa.thetas[i - 3] = 0.0;
      continue;
    }
    const Vec3 ph = pperp * (1.0 / norm(pperp));
    double theta = std::atan2(dot(wperp, cross(u, ph)), dot(wperp, ph));
    if (theta < 0.0) theta += kTwoPi;
    aa.thetas[i - 3] = theta;
  }
  return aa;
}

QuadCoords quad_coords_of(const Polygon& p) {
  if (p.n() != 4) throw std::invalid_argument("quad_coords_of needs n = 4");
  const ActionAngle aa = recover_action_angles(p);
  double theta = aa.thetas[0];
  if (theta > std::acos(-1.0)) theta = kTwoPi - theta;
  return {aa.ells[0], theta};
}

bool in_region_plus(const QuadCoords& q, double r) {
  return q.ell <= r + kFeasSlack && d24_closed(q) <= r + kFeasSlack;
}

bool in_region_plus_ell(const QuadCoords& q, double r) {
  if (!in_region_plus(q, r)) return false;
  const bool by_distance = d24_closed(q) <= q.ell + kFeasSlack;
  // Equivalent angular form: theta <= arccos((4 - 3 ell^2)/(4 - ell^2)).
  bool by_angle = by_distance;
  if (q.ell > 1e-9 && q.ell < 2.0 - 1e-9) {
    const double cos_bound = (4.0 - 3.0 * q.ell * q.ell) / (4.0 - q.ell * q.ell);
    by_angle = q.theta <= acos_clamped(cos_bound) + 1e-9;
    if (by_angle != by_distance &&
        std::abs(d24_closed(q) - q.ell) > 1e-7) {
      throw std::logic_error("region membership routes disagree");
    }
  }
  return by_distance;
}

UnconfinedSampler::UnconfinedSampler(int n, uint64_t seed, uint64_t stream,
                                     Options opt)
    : n_(n), rng_(seed, stream) {
  if (n < 4) throw std::invalid_argument("need n >= 4");
  bounds_.resize(n - 3);
  for (int i = 3; i <= n - 1; ++i) bounds_[i - 3] = diagonal_bound(n, i);

  hit_and_run_ = opt.method == SamplerMethod::kHitAndRun ||
                 (opt.method == SamplerMethod::kAuto && n > kRejectionMaxN);
  if (hit_and_run_) {
    const long d = n - 3;
    thinning_ = opt.thinning >= 1 ? opt.thinning
                                  : static_cast<int>(std::max<long>(10, d));
    const long burn = opt.burn_in >= 0 ? opt.burn_in : 1000 + 100 * d * d;
    // warm start at the mean chord profile of a closed unit-step walk,
    // sqrt((i-1)(n-i+1)/n); the all-ones corner is far from typical states
    // and would need a much longer burn-in to forget
    state_.resize(d);
    for (int i = 3; i <= n - 1; ++i) {
      state_[i - 3] = std::sqrt((i - 1.0) * (n - i + 1.0) / n);
    }
    for (long i = 0; i < burn; ++i) hit_and_run_step();
  } else {
    thinning_ = 1;
  }
}

void UnconfinedSampler::hit_and_run_step() {
  const int d = static_cast<int>(state_.size());
  std::vector<double> dir(d);
  double len = 0.0;
  for (int i = 0; i < d; ++i) {
    dir[i] = rng_.normal();
    len += dir[i] * dir[i];
  }
  len = std::sqrt(len);
  if (len < 1e-300) return;
  for (double& x : dir) x /= len;

  // Chord of the feasible polytope through state_ along dir.
  double tlo = -1e300, thi = 1e300;
  auto cut = [&tlo, &thi](double slope, double slack) {
    // constraint: slope * t <= slack, slack >= 0 at the current point
    if (slope > 1e-300) {
      thi = std::min(thi, slack / slope);
    } else if (slope < -1e-300) {
      tlo = std::max(tlo, slack / slope);
    }
  };
  for (int i = 0; i < d; ++i) {
    cut(-dir[i], state_[i]);                 // x_i >= 0
    cut(dir[i], bounds_[i] - state_[i]);     // x_i <= bound_i
  }
  auto pair_cuts = [&](double xa, double da, double xb, double db) {
    cut(da - db, 1.0 - (xa - xb));   // x_a - x_b <= 1
    cut(db - da, 1.0 - (xb - xa));   // x_b - x_a <= 1
    cut(-(da + db), (xa + xb) - 1.0);  // x_a + x_b >= 1
  };
  pair_cuts(1.0, 0.0, state_[0], dir[0]);  // virtual ell_2 = 1
  for (int i = 0; i + 1 < d; ++i) {
    pair_cuts(state_[i], dir[i], state_[i + 1], dir[i + 1]);
  }
  pair_cuts(state_[d - 1], dir[d - 1], 1.0, 0.0);  // virtual ell_n = 1

  if (!(thi > tlo)) return;
  const double t = rng_.uniform(tlo, thi);
  for (int i = 0; i < d; ++i) state_[i] += t * dir[i];
}

ActionAngle UnconfinedSampler::next() {
  ActionAngle aa;
  aa.n = n_;
  aa.ells.resize(n_ - 3);
  aa.thetas.resize(n_ - 3);
  if (hit_and_run_) {
    for (int s = 0; s < thinning_; ++s) hit_and_run_step();
    aa.ells = state_;
    ++proposals_;
  } else {
    for (;;) {
      ++proposals_;
      for (size_t i = 0; i < aa.ells.size(); ++i) {
        aa.ells[i] = rng_.uniform(0.0, bounds_[i]);
      }
      if (polytope_contains(n_, aa.ells)) break;
    }
  }
  for (double& th : aa.thetas) th = rng_.uniform(0.0, kTwoPi);
  ++accepted_;
  return aa;
}

ConfinedSampler::ConfinedSampler(ConfinedRegionSpec spec, uint64_t seed,
                                 uint64_t stream, long probe_budget,
                                 UnconfinedSampler::Options opt)
    : spec_(spec), inner_(spec.n, seed, stream, opt), probe_budget_(probe_budget) {
  if (!(spec.r > 0.0)) throw std::invalid_argument("confinement radius must be positive");
}

Polygon ConfinedSampler::next() {
  long tried = 0;
  for (;;) {
    if (tried >= probe_budget_) {
      throw SamplerExhausted(
          "no acceptance in " + std::to_string(probe_budget_) +
          " probes at r = " + std::to_string(spec_.r) +
          "; the confined region is too small for rejection sampling");
    }
    ++tried;
    ActionAngle aa = inner_.next();
    Polygon p = reconstruct(aa);
    if (diameter(p) <= spec_.r) {
      ++accepted_;
      last_ = std::move(aa);
      return p;
    }
  }
}

double ConfinedSampler::acceptance_rate() const {
  return proposals() > 0 ? static_cast<double>(accepted_) / proposals() : 0.0;
}

ShellSampler::ShellSampler(int n, double eps, uint64_t seed, uint64_t stream,
                           long probe_budget)
    : n_(n), eps_(eps), rng_(seed, stream), probe_budget_(probe_budget) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("shell sampler needs even n");
  if (!(eps > 0.0) || eps > 0.25) {
    throw std::invalid_argument("shell width must lie in (0, 0.25]");
  }
  bounds_.resize(n - 3);
  for (int i = 3; i <= n - 1; ++i) bounds_[i - 3] = diagonal_bound(n, i);
}

Polygon ShellSampler::next() {
  ActionAngle aa;
  aa.n = n_;
  aa.ells.resize(n_ - 3);
  aa.thetas.resize(n_ - 3);
  for (long tried = 0; tried < probe_budget_; ++tried) {
    for (size_t i = 0; i < aa.ells.size(); ++i) {
      aa.ells[i] = bounds_[i] - rng_.uniform(0.0, eps_);
    }
    if (!polytope_contains(n_, aa.ells)) continue;
    for (double& th : aa.thetas) th = rng_.uniform(0.0, kTwoPi);
    last_ = aa;
    return reconstruct(aa);
  }
  throw SamplerExhausted("no feasible shell draw within the probe budget");
}

}  // namespace confpoly
