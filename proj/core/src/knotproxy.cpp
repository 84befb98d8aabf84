#include "confpoly/knotproxy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "confpoly/moduli.hpp"
#include "confpoly/stats.hpp"

namespace confpoly {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kCertGuard = 1e-9;

Estimate monte_carlo_estimate(const RunningStats& s, uint64_t seed) {
  Estimate e;
  e.value = s.mean();
  e.method = EstimateMethod::kMonteCarlo;
  e.std_error = s.std_error();
  e.refinement_delta = 0.0;
  e.samples = s.count();
  e.seed = seed;
  return e;
}

}  // namespace

bool unknot_certified(const Polygon& p) {
  return total_curvature(p) < kFourPi - kCertGuard;
}

ProxyReport proxy_report(int n, double r, long samples, uint64_t seed) {
  if (samples <= 0) throw std::invalid_argument("proxy_report: samples must be positive");
  ConfinedSampler sampler({n, r}, seed);
  RunningStats stats;
  double min_curv = std::numeric_limits<double>::infinity();
  long not_certified = 0;
  for (long i = 0; i < samples; ++i) {
    Polygon p = sampler.next();
    double kappa = total_curvature(p);
    stats.add(kappa);
    min_curv = std::min(min_curv, kappa);
    if (!(kappa < kFourPi - kCertGuard)) ++not_certified;
  }
  ProxyReport rep;
  rep.n = n;
  rep.r = r;
  rep.samples = samples;
  rep.mean_curvature = monte_carlo_estimate(stats, seed);
  rep.min_curvature = min_curv;
  double frac = static_cast<double>(not_certified) / static_cast<double>(samples);
  rep.frac_possibly_knotted.value = frac;
  rep.frac_possibly_knotted.method = EstimateMethod::kMonteCarlo;
  rep.frac_possibly_knotted.std_error =
      std::sqrt(std::max(0.0, frac * (1.0 - frac) / static_cast<double>(samples)));
  rep.frac_possibly_knotted.samples = samples;
  rep.frac_possibly_knotted.seed = seed;
  rep.seed = seed;
  return rep;
}

ExtremeConfinementReport extreme_confinement_check(int n, long samples,
                                                   uint64_t seed) {
  if (samples <= 0) throw std::invalid_argument("extreme_confinement_check: samples must be positive");
  ConfinedSampler sampler({n, 1.0}, seed);
  RunningStats stats;
  double min_curv = std::numeric_limits<double>::infinity();
  for (long i = 0; i < samples; ++i) {
    double kappa = total_curvature(sampler.next());
    stats.add(kappa);
    min_curv = std::min(min_curv, kappa);
  }
  ExtremeConfinementReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.bound = kTwoPi * static_cast<double>(n) / 3.0;
  rep.min_curvature = min_curv;
  rep.mean_curvature = monte_carlo_estimate(stats, seed);
  rep.all_above_bound = min_curv >= rep.bound - 1e-8;
  return rep;
}

LooseConfinementReport loose_confinement_check(int n,
                                               std::span<const double> epsilons,
                                               long samples, uint64_t seed) {
  if (epsilons.size() < 2) {
    throw std::invalid_argument("loose_confinement_check: need at least two epsilons");
  }
  if (samples <= 0) throw std::invalid_argument("loose_confinement_check: samples must be positive");
  LooseConfinementReport rep;
  rep.n = n;
  rep.samples_per_eps = samples;
  rep.epsilons.assign(epsilons.begin(), epsilons.end());
  for (size_t k = 0; k < rep.epsilons.size(); ++k) {
    ShellSampler sampler(n, rep.epsilons[k], seed, /*stream=*/k);
    double max_dev = 0.0;
    double max_kappa = 0.0;
    for (long i = 0; i < samples; ++i) {
      double kappa = total_curvature(sampler.next());
      max_dev = std::max(max_dev, std::abs(kappa - kTwoPi));
      max_kappa = std::max(max_kappa, kappa);
    }
    rep.max_abs_dev.push_back(max_dev);
    rep.max_curvature.push_back(max_kappa);
  }

  // Walk epsilons from large to small; the worst-case deviation must shrink.
  std::vector<size_t> order(rep.epsilons.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return rep.epsilons[a] > rep.epsilons[b];
  });
  rep.deviations_decreasing = true;
  for (size_t k = 1; k < order.size(); ++k) {
    if (rep.max_abs_dev[order[k]] > rep.max_abs_dev[order[k - 1]]) {
      rep.deviations_decreasing = false;
    }
  }
  std::vector<double> lx, ly;
  for (size_t k = 0; k < rep.epsilons.size(); ++k) {
    lx.push_back(std::log(rep.epsilons[k]));
    ly.push_back(std::log(std::max(rep.max_abs_dev[k], 1e-300)));
  }
  rep.fitted_exponent = fit_slope(lx, ly);
  rep.all_unknot_smallest_two =
      rep.max_curvature[order[order.size() - 1]] < kFourPi - kCertGuard &&
      rep.max_curvature[order[order.size() - 2]] < kFourPi - kCertGuard;
  return rep;
}

AsymptoteReport asymptote_check(std::span<const int> n_list, long samples,
                                uint64_t seed) {
  if (n_list.empty()) throw std::invalid_argument("asymptote_check: empty n list");
  if (samples <= 0) throw std::invalid_argument("asymptote_check: samples must be positive");
  AsymptoteReport rep;
  std::vector<double> draws;
  for (int n : n_list) {
    UnconfinedSampler sampler(n, seed, /*stream=*/static_cast<uint64_t>(n));
    RunningStats stats;
    draws.clear();
    draws.reserve(static_cast<size_t>(samples));
    for (long i = 0; i < samples; ++i) {
      const double kappa = total_curvature(reconstruct(sampler.next()));
      stats.add(kappa);
      draws.push_back(kappa);
    }
    AsymptoteRow row;
    row.n = n;
    row.mean_curvature = monte_carlo_estimate(stats, seed);
    if (sampler.approximate()) {
      // Thinning does not fully decorrelate the walk in high dimension, so
      // the iid error badly understates the true one; batch means does not.
      row.mean_curvature.std_error = batch_means_std_error(draws);
    }
    row.target = std::numbers::pi * static_cast<double>(n) / 2.0 +
                 std::numbers::pi / 4.0;
    row.deviation = row.mean_curvature.value - row.target;
    row.approximate_sampler = sampler.approximate();
    rep.rows.push_back(row);
  }
  const AsymptoteRow& first = rep.rows.front();
  const AsymptoteRow& last = rep.rows.back();
  const double band = 3.0 * (first.mean_curvature.std_error / first.target +
                             last.mean_curvature.std_error / last.target);
  rep.deviation_shrinks = std::abs(last.deviation) / last.target <=
                          std::abs(first.deviation) / first.target + band;
  return rep;
}

}  // namespace confpoly
