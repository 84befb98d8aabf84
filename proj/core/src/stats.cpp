#include "confpoly/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace confpoly {

void RunningStats::add(double x) {
  if (n_ == 0) {
    min_ = max_ = x;
  } else {
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }
  ++n_;
  const double d = x - mean_;
  mean_ += d / n_;
  m2_ += d * (x - mean_);
}

double RunningStats::variance() const {
  return n_ > 1 ? m2_ / (n_ - 1) : 0.0;
}

double RunningStats::std_error() const {
  return n_ > 1 ? std::sqrt(variance() / n_) : 0.0;
}

namespace {

// Series expansion of P(a,x), valid for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x) (modified Lentz), valid for x >= a+1.
double gamma_q_cf(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_pvalue(double statistic, double df) {
  return gamma_q(0.5 * df, 0.5 * statistic);
}

double chi_square_uniform(std::span<const long> counts, long total) {
  const double expected = static_cast<double>(total) / counts.size();
  double stat = 0.0;
  for (long c : counts) {
    const double d = c - expected;
    stat += d * d / expected;
  }
  return stat;
}

double ks_uniform(std::span<const double> samples, double lo, double hi) {
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double dmax = 0.0;
  for (size_t i = 0; i < s.size(); ++i) {
    const double cdf = (s[i] - lo) / (hi - lo);
    dmax = std::max(dmax, std::abs((i + 1) / n - cdf));
    dmax = std::max(dmax, std::abs(cdf - i / n));
  }
  return dmax;
}

double batch_means_std_error(std::span<const double> ordered_draws) {
  const size_t n = ordered_draws.size();
  if (n < 40) {
    RunningStats s;
    for (double v : ordered_draws) s.add(v);
    return s.std_error();
  }
  const size_t batches = 20;
  const size_t len = n / batches;  // the tail remainder is dropped
  RunningStats over_batches;
  for (size_t b = 0; b < batches; ++b) {
    double sum = 0.0;
    for (size_t i = b * len; i < (b + 1) * len; ++i) sum += ordered_draws[i];
    over_batches.add(sum / static_cast<double>(len));
  }
  return std::sqrt(over_batches.variance() / static_cast<double>(batches));
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_slope needs matched samples");
  }
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

}  // namespace confpoly
