#pragma once

#include <functional>

namespace confpoly {

/// 64-node Gauss-Legendre rule on [a,b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

/// Composite 64-node Gauss-Legendre over `panels` equal subintervals.
double gauss_legendre_panels(const std::function<double(double)>& f, double a,
                             double b, int panels);

struct QuadratureResult {
  double value = 0.0;
  double delta = 0.0;  // change produced by the final panel doubling
  int panels = 0;
};

/// Doubles the panel count (1,2,4,...) until successive values differ by
/// less than tol or max_panels is reached.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double tol = 1e-9,
                                    int max_panels = 4096);

/// Integrates f over [a,b] after the substitution x = b - u^2, which removes
/// an integrable inverse-square-root singularity of f at the right endpoint b.
QuadratureResult integrate_sqrt_endpoint(const std::function<double(double)>& f,
                                         double a, double b, double tol = 1e-9,
                                         int max_panels = 4096);

/// Same with x = a + u^2, for a square-root singularity at the left endpoint.
QuadratureResult integrate_sqrt_start(const std::function<double(double)>& f,
                                      double a, double b, double tol = 1e-9,
                                      int max_panels = 4096);

}  // namespace confpoly
