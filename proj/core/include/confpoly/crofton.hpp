#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "confpoly/measures.hpp"

namespace confpoly {

enum class EstimateMethod { kQuadrature, kMonteCarlo };

struct Estimate {
  double value = 0.0;
  EstimateMethod method = EstimateMethod::kQuadrature;
  double std_error = 0.0;        // Monte Carlo only
  double refinement_delta = 0.0;  // quadrature only: last panel-doubling change
  long samples = 0;
  std::optional<uint64_t> seed;
};

enum class BoundaryMeasure { kMuB, kMuI, kNuB, kNuI };

/// Chart area of the confined region: integral of theta_max(ell, r) over
/// ell in [0, min(r, 2)]. Equals 2*pi at r = 2.
double area_region(double r);

/// Mean total curvature over the confined region, 1 <= r <= 2. Quadrature
/// nests Gauss-Legendre panels with the exact theta_max inner limit and
/// splits/substitutes at ell = sqrt(4 - r^2) where the limit reaches pi;
/// panel counts double until the value moves by less than 1e-7. Monte Carlo
/// averages vertex-chain curvature over rejection samples (budget = sample
/// count) and reports a standard error.
Estimate kappa_bar(double r, EstimateMethod method, long budget = 100000,
                   std::optional<uint64_t> seed = std::nullopt);

/// Mean curvature against a normalized boundary measure. Mu measures need
/// 1 < r < sqrt(2); nu measures accept 1 < r < 2.
Estimate kappa_boundary(double r, BoundaryMeasure measure);

/// Absolute residual of the confinement-growth identity
///   d/dr kappa_bar = (kappa_boundary - kappa_bar) * area'(r)/area(r)
/// with central differences of step h on both derivative estimates and the
/// boundary measure picked per regime (mu_B below sqrt(2), nu_B above).
double crofton_residual(double r, double h = 1e-3);

struct CurvatureCurve {
  std::vector<double> r_values;
  std::vector<Estimate> kappa_bar;
  std::vector<double> area;
  std::vector<double> kappa_boundary;
  std::vector<double> crofton_residual;  // NaN where the stencil is invalid
};

struct ScanResult {
  CurvatureCurve curve;
  bool monotone = false;    // kappa_bar non-increasing within tolerance
  double max_violation = 0.0;
};

/// Evaluates the curve on an increasing r grid by quadrature and checks that
/// kappa_bar never increases by more than 1e-6 plus the refinement deltas of
/// the two estimates involved. Residuals inside the sqrt(2) +- 0.02 collar
/// and where the difference stencil leaves [1,2] are reported as NaN.
ScanResult monotonicity_scan(std::span<const double> r_grid);

inline constexpr double kRegimeSplit = 1.414213562373095049;  // sqrt(2)
inline constexpr double kRegimeCollar = 0.02;
inline constexpr double kCurveTol = 1e-6;

}  // namespace confpoly
