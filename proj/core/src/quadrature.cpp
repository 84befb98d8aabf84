#include "confpoly/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>

namespace confpoly {
namespace {

constexpr int kNodes = 64;

struct GaussRule {
  std::array<double, kNodes> x{};  // nodes on [-1,1]
  std::array<double, kNodes> w{};
};

// Newton iteration on the Legendre polynomial recurrence.
GaussRule build_rule() {
  GaussRule rule;
  const int n = kNodes;
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

const GaussRule& rule() {
  static const GaussRule r = build_rule();
  return r;
}

}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b) {
  const GaussRule& r = rule();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < kNodes; ++i) acc += r.w[i] * f(mid + half * r.x[i]);
  return acc * half;
}

double gauss_legendre_panels(const std::function<double(double)>& f, double a,
                             double b, int panels) {
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    acc += gauss_legendre(f, a + p * h, a + (p + 1) * h);
  }
  return acc;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double tol,
                                    int max_panels) {
  if (a == b) return {0.0, 0.0, 0};
  int panels = 1;
  double prev = gauss_legendre_panels(f, a, b, panels);
  QuadratureResult out{prev, 0.0, panels};
  while (panels < max_panels) {
    panels *= 2;
    const double cur = gauss_legendre_panels(f, a, b, panels);
    out = {cur, std::abs(cur - prev), panels};
    if (out.delta < tol) return out;
    prev = cur;
  }
  return out;
}

QuadratureResult integrate_sqrt_endpoint(const std::function<double(double)>& f,
                                         double a, double b, double tol,
                                         int max_panels) {
  if (a == b) return {0.0, 0.0, 0};
  const double umax = std::sqrt(b - a);
  return integrate_adaptive(
      [&f, b](double u) { return 2.0 * u * f(b - u * u); }, 0.0, umax, tol,
      max_panels);
}

QuadratureResult integrate_sqrt_start(const std::function<double(double)>& f,
                                      double a, double b, double tol,
                                      int max_panels) {
  if (a == b) return {0.0, 0.0, 0};
  const double umax = std::sqrt(b - a);
  return integrate_adaptive(
      [&f, a](double u) { return 2.0 * u * f(a + u * u); }, 0.0, umax, tol,
      max_panels);
}

}  // namespace confpoly
