#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace confpoly {

/// Streaming mean / variance (Welford).
class RunningStats {
 public:
  void add(double x);
  long count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  // sample variance, n-1 denominator
  double std_error() const;
  double min() const { return min_; }
  double max() const { return max_; }

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// Regularized upper incomplete gamma Q(a,x).
double gamma_q(double a, double x);

/// Upper-tail p-value of a chi-square statistic with df degrees of freedom.
double chi_square_pvalue(double statistic, double df);

/// Chi-square statistic of observed bin counts against equal expected counts.
double chi_square_uniform(std::span<const long> counts, long total);

/// One-sample Kolmogorov-Smirnov distance of sorted samples against the
/// uniform CDF on [lo,hi]. Sorts a copy.
double ks_uniform(std::span<const double> samples, double lo, double hi);

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

/// Standard error of the mean of a serially correlated sequence, by batch
/// means: the draws are split in order into 20 batches and the spread of the
/// batch means replaces the iid formula, which understates the error when
/// consecutive draws are correlated. Falls back to the iid estimate below 40
/// draws.
double batch_means_std_error(std::span<const double> ordered_draws);

}  // namespace confpoly
