#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "confpoly/crofton.hpp"
#include "confpoly/geometry.hpp"

namespace confpoly {

/// One-sided certificate: total curvature below 4*pi (minus a guard of 1e-9)
/// rules out knotting; curvature at or above 4*pi certifies nothing.
bool unknot_certified(const Polygon& p);

struct ProxyReport {
  int n = 0;
  double r = 0.0;
  long samples = 0;
  Estimate mean_curvature;
  double min_curvature = 0.0;
  Estimate frac_possibly_knotted;  // share with curvature >= 4*pi
  uint64_t seed = 0;
};

/// Curvature statistics of diameter-confined samples at radius r.
ProxyReport proxy_report(int n, double r, long samples, uint64_t seed);

struct ExtremeConfinementReport {
  int n = 0;
  long samples = 0;
  double bound = 0.0;          // 2*pi*n/3
  double min_curvature = 0.0;
  Estimate mean_curvature;
  bool all_above_bound = false;  // min >= bound - 1e-8
};

/// Diameter-1 confinement: every sampled curvature must reach 2*pi*n/3.
ExtremeConfinementReport extreme_confinement_check(int n, long samples,
                                                   uint64_t seed);

struct LooseConfinementReport {
  int n = 0;
  long samples_per_eps = 0;
  std::vector<double> epsilons;
  std::vector<double> max_abs_dev;   // max |kappa - 2*pi| per epsilon
  std::vector<double> max_curvature;
  double fitted_exponent = 0.0;      // slope of log max_abs_dev vs log eps
  bool deviations_decreasing = false;
  bool all_unknot_smallest_two = false;  // kappa < 4*pi at the two smallest eps
};

/// Diameter in [n/2 - eps, n/2]: curvature collapses to 2*pi like sqrt(eps).
LooseConfinementReport loose_confinement_check(int n,
                                               std::span<const double> epsilons,
                                               long samples, uint64_t seed);

struct AsymptoteRow {
  int n = 0;
  Estimate mean_curvature;
  double target = 0.0;     // pi*n/2 + pi/4
  double deviation = 0.0;  // mean - target
  bool approximate_sampler = false;
};

struct AsymptoteReport {
  std::vector<AsymptoteRow> rows;
  // |dev/target| at the last n stays within 3 sigma of the first; errors for
  // walk-sampled rows come from batch means, since the thinned chain's draws
  // remain correlated and the iid formula would understate them.
  bool deviation_shrinks = false;
};

/// Unconfined mean curvature against the large-n target pi*n/2 + pi/4.
AsymptoteReport asymptote_check(std::span<const int> n_list, long samples,
                                uint64_t seed);

}  // namespace confpoly
