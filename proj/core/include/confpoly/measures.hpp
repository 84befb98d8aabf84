#pragma once

#include <vector>

#include "confpoly/geometry.hpp"

namespace confpoly {

/// Largest dihedral angle keeping d24 <= r at a given ell:
/// min(pi, arccos(1 - r^2/(2 - ell^2/2))); returns pi when the whole fiber
/// fits (4 - ell^2 <= r^2) and handles the degenerate ell = 2 denominator.
double theta_max(double ell, double r);

/// Smallest ell keeping d24 <= r at a given theta:
/// 2 sqrt(max(0, 1 - r^2/(2 - 2 cos theta))); 0 at theta = 0. May exceed r,
/// which signals an empty fiber.
double ell_min(double theta, double r);

/// Dihedral bound of the diagonal-dominant half: arccos((4-3l^2)/(4-l^2)),
/// clamped to pi once l >= sqrt(2).
double theta_max_dominant(double ell);

/// Inverse of theta_max_dominant: 2 sqrt((1-cos theta)/(3-cos theta)).
double ell_min_dominant(double theta);

/// Unnormalized boundary shell speed on the d24 = r side, as a function of
/// ell: d(theta_max)/dr = 2r / ((2 - ell^2/2) sqrt(1 - (1 - r^2/(2-ell^2/2))^2)).
double shell_speed_theta_arc(double ell, double r);

enum class ArcKind { kEll, kTheta, kEllDominant };

/// One side of the region boundary together with its parameter interval:
/// kEll is {ell = r} parametrized by theta, kTheta is {d24 = r} parametrized
/// by ell, kEllDominant is the single segment bounding the diagonal-dominant
/// half, parametrized by theta.
struct BoundaryArc {
  ArcKind kind = ArcKind::kEll;
  double r = 0.0;
  double param_lo = 0.0;
  double param_hi = 0.0;
};

/// Tabulated density on a boundary arc. The params grid is strictly
/// increasing; on kEll arcs it is graded around the kink where ell_min
/// leaves zero so the trapezoid rule converges there. Densities are scaled
/// so that the trapezoid integral over params equals normalized_mass exactly.
struct DensityGrid {
  BoundaryArc arc;
  std::vector<double> params;
  std::vector<double> density;
  double normalized_mass = 0.0;

  double mass_trapezoid() const;
  /// CDF values at params, by cumulative trapezoid.
  std::vector<double> cdf() const;
};

struct MuGrids {
  DensityGrid ell_arc;
  DensityGrid theta_arc;
  double alpha = 0.0;
};

/// Shell-limit boundary measure of the confined chart region for
/// 1 < r < sqrt(2): constant speed 1 on the ell arc, shell_speed_theta_arc on
/// the theta arc, jointly normalized to total mass 1. alpha is the ell-arc
/// share of the mass.
MuGrids mu_B_grid(double r, int grid_size);

/// Interior-marginal boundary measure: the ell arc carries the fiber length
/// r - ell_min(theta, r) scaled to mass alpha, the theta arc carries
/// theta_max(ell, r) scaled to mass 1 - alpha.
MuGrids mu_I_grid(double r, int grid_size, double alpha);

struct NuGrids {
  DensityGrid nu_B;
  DensityGrid nu_I;
};

/// Boundary measures of the diagonal-dominant half for sqrt(2) < r < 2 (the
/// construction also works down to r > 1): its boundary is the single
/// segment {ell = r, theta in [0, theta_max_dominant(r)]}; nu_B is uniform
/// there and nu_I is the theta-marginal fiber length r - ell_min_dominant.
NuGrids nu_grids(double r, int grid_size);

/// Projections onto the boundary used by the transport comparisons; each
/// fixes one coordinate and can only decrease total curvature.
QuadCoords project_pi_ell(const QuadCoords& q, double r);
QuadCoords project_pi_theta(const QuadCoords& q, double r);
QuadCoords project_pi_dominant(const QuadCoords& q, double r);

/// Monotonicity certificate for the theta-arc likelihood ratio:
/// psi1(ell, r) = -2 sqrt(r^2 (4 - ell^2 - r^2)) / (4 - ell^2)
///              + arccos((ell^2 + 2 r^2 - 4)/(ell^2 - 4)), nonnegative on
/// ell >= 0, r > 0, ell^2 + r^2 <= 4.
double psi1(double ell, double r);

struct DominanceReport {
  bool cdf_ok = false;       // F_upper <= F_lower + 1e-8 at every grid point
  bool mlr_ok = false;       // slope of density ratio upper/lower >= -1e-8
  double max_cdf_violation = 0.0;
  double max_mlr_violation = 0.0;  // most negative ratio slope, as a positive number
};

/// First-order stochastic dominance of `upper` over `lower` plus a monotone
/// likelihood ratio check. Grids must live on the same arc and parameter
/// grid and carry equal mass.
DominanceReport stochastic_dominance(const DensityGrid& lower,
                                     const DensityGrid& upper);

/// Accurate masses behind mu_B_grid's normalization: the ell-arc mass is
/// theta_max(r,r), the theta-arc mass integrates shell_speed_theta_arc.
struct MuMasses {
  double ell_mass = 0.0;
  double theta_mass = 0.0;
  double alpha() const { return ell_mass / (ell_mass + theta_mass); }
};
MuMasses mu_boundary_masses(double r);

}  // namespace confpoly
