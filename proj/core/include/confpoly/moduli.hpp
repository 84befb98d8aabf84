#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "confpoly/geometry.hpp"
#include "confpoly/rng.hpp"

namespace confpoly {

inline constexpr double kFeasSlack = 1e-12;  // polytope membership slack

/// Action-angle coordinates of an equilateral n-gon under the fan
/// triangulation from v1: diagonal lengths ell_i = d(v1, v_i) and dihedral
/// angles theta_i about those diagonals, for i = 3..n-1.
struct ActionAngle {
  int n = 4;
  std::vector<double> ells;    // size n-3
  std::vector<double> thetas;  // size n-3, values in [0, 2*pi)
};

/// Diameter-confined subset selector: polygons with n edges and
/// diameter <= r. For quadrilateral chart analyses r lies in [1,2].
struct ConfinedRegionSpec {
  int n = 4;
  double r = 2.0;
};

/// Upper bound of ell_i implied by the two edge paths from v1 to v_i.
double diagonal_bound(int n, int i);

/// Fan triangle inequalities: 0 <= ell_3 <= 2, |ell_i - ell_{i+1}| <= 1,
/// ell_i + ell_{i+1} >= 1, 0 <= ell_{n-1} <= 2, with kFeasSlack slack.
bool polytope_contains(int n, std::span<const double> ells);
bool polytope_contains(const ActionAngle& aa);

/// Rebuilds vertices by attaching fan triangles along successive diagonals,
/// rotating triangle i about diagonal v1-v_i by theta_i. For n = 4 this
/// reproduces quad_from_coords exactly. Throws std::invalid_argument if the
/// ells are infeasible.
Polygon reconstruct(const ActionAngle& aa);

/// Inverse of reconstruct for polygons in the canonical frame; dihedrals are
/// measured with the same orientation convention, so
/// recover_action_angles(reconstruct(aa)) == aa up to rounding.
ActionAngle recover_action_angles(const Polygon& p);

/// n = 4 chart coordinates with theta folded into [0, pi].
QuadCoords quad_coords_of(const Polygon& p);

/// Membership in the confined chart region: ell <= r and d24 <= r.
bool in_region_plus(const QuadCoords& q, double r);

/// Membership in the half where the v1v3 diagonal dominates: additionally
/// d24 <= ell, equivalently theta <= arccos((4-3 ell^2)/(4 - ell^2)).
/// Both routes are computed and cross-checked.
bool in_region_plus_ell(const QuadCoords& q, double r);

enum class SamplerMethod { kAuto, kRejection, kHitAndRun };

class SamplerExhausted : public std::runtime_error {
 public:
  explicit SamplerExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Uniform sampler on the moduli space: ells uniform on the moment polytope,
/// thetas iid uniform on [0, 2*pi). Exact via box rejection for small n;
/// for large n a hit-and-run walk over the polytope is used instead and the
/// stream is flagged approximate. Output is a pure function of
/// (n, seed, stream, options), independent of how work is sharded.
class UnconfinedSampler {
 public:
  struct Options {
    SamplerMethod method = SamplerMethod::kAuto;
    // Hit-and-run chain controls; negative means automatic scaling with the
    // polytope dimension d = n - 3 (burn-in 1000 + 100 d^2, thinning
    // max(10, d)), which keeps the walk unbiased at large n.
    long burn_in = -1;
    int thinning = -1;
  };

  UnconfinedSampler(int n, uint64_t seed, uint64_t stream, Options opt);
  UnconfinedSampler(int n, uint64_t seed, uint64_t stream = 0)
      : UnconfinedSampler(n, seed, stream, Options()) {}

  ActionAngle next();

  bool approximate() const { return hit_and_run_; }
  const char* method_name() const { return hit_and_run_ ? "hit_and_run" : "rejection"; }
  long proposals() const { return proposals_; }
  long accepted() const { return accepted_; }

 private:
  void hit_and_run_step();

  int n_;
  std::vector<double> bounds_;
  CounterRng rng_;
  bool hit_and_run_ = false;
  int thinning_ = 10;
  std::vector<double> state_;  // hit-and-run chain position
  long proposals_ = 0;
  long accepted_ = 0;
};

/// Rejection sampler for diameter-confined polygons. Proposals come from
/// UnconfinedSampler on the same (seed, stream); a proposal is accepted when
/// the reconstructed polygon has diameter <= r. Throws SamplerExhausted if a
/// full probe budget passes with no acceptance.
class ConfinedSampler {
 public:
  ConfinedSampler(ConfinedRegionSpec spec, uint64_t seed, uint64_t stream = 0,
                  long probe_budget = 1'000'000,
                  UnconfinedSampler::Options opt = UnconfinedSampler::Options());

  Polygon next();

  const ActionAngle& last_coords() const { return last_; }
  long proposals() const { return inner_.proposals(); }
  long accepted() const { return accepted_; }
  double acceptance_rate() const;
  bool approximate() const { return inner_.approximate(); }
  const char* method_name() const { return inner_.method_name(); }

 private:
  ConfinedRegionSpec spec_;
  UnconfinedSampler inner_;
  ActionAngle last_;
  long probe_budget_;
  long accepted_ = 0;
};

/// Sampler for the thin shell of nearly maximal diameter: even n,
/// diameter in [n/2 - eps, n/2]. Only the canonical corner of the shell is
/// sampled (the one where d(v1, v_{n/2+1}) is the realizing pair); the other
/// corners are vertex relabelings of it, so curvature and diameter statistics
/// are unaffected. In that corner every diagonal satisfies
/// ell_i in [bound_i - eps, bound_i], and the diameter condition follows from
/// the box, so only the fan inequalities are rejected on.
class ShellSampler {
 public:
  ShellSampler(int n, double eps, uint64_t seed, uint64_t stream = 0,
               long probe_budget = 1'000'000);

  Polygon next();
  const ActionAngle& last_coords() const { return last_; }

 private:
  int n_;
  double eps_;
  std::vector<double> bounds_;
  CounterRng rng_;
  ActionAngle last_;
  long probe_budget_;
};

}  // namespace confpoly
