#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <span>

namespace rflight::quad {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 21-point Gauss-Kronrod on [a, b] with relative tolerance `tol`.
template <class F>
Estimate adaptive(F&& f, double a, double b, double tol = 1e-12, unsigned max_depth = 20) {
  Estimate e;
  e.value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, max_depth, tol,
                                                                          &e.error);
  return e;
}

/// Sum of adaptive integrals over consecutive pieces of `cuts`. Splitting at
/// the zeros or half-periods of an oscillating integrand keeps every piece
/// single-signed, so a shallow recursion per piece is enough and stops
/// round-off in tiny far-field pieces from driving the bisection.
template <class F>
Estimate piecewise(F&& f, std::span<const double> cuts, double tol = 1e-12, unsigned max_depth = 6) {
  Estimate total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Estimate piece = adaptive(f, cuts[i], cuts[i + 1], tol, max_depth);
    total.value += piece.value;
    total.error += piece.error;
  }
  return total;
}

/// Double-exponential rule for integrands with algebraic endpoint
/// singularities on a finite interval.
template <class F>
Estimate endpoint_singular(F&& f, double a, double b, double tol = 1e-12) {
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  Estimate e;
  e.value = rule.integrate(f, a, b, tol, &e.error);
  return e;
}

}  // namespace rflight::quad
