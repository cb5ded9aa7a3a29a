#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace specquant::detail {

// Adaptive 31-point Gauss-Kronrod. The Boost tolerance is relative to the L1
// norm of the integrand; 1e-12 keeps the absolute error well under 1e-10 for
// the O(1..100) masses integrated here.
// The interval is mapped onto [0, 1] first: on very short intervals Boost's
// error estimate carries a floor tied to the abscissae and the recursion never
// terminates early.
template <class F>
double integrate(F&& f, double a, double b) {
  if (a == b) return 0.0;
  const double width = b - a;
  auto mapped = [&](double t) { return f(a + width * t) * width; };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(mapped, 0.0, 1.0, 20, 1e-12, &error);
}

}  // namespace specquant::detail
