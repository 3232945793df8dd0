#pragma once

#include <functional>

#include "beltlab/common.hpp"

namespace beltlab::linalg {

// Brent's method with a bisection fallback. Requires f(a) * f(b) < 0.
// xtol bounds the final bracket width; the result is refined until the
// bracket collapses to floating-point resolution or |f| underflows.
double find_root_bracketed(const std::function<double(double)>& f, double a, double b,
                           double xtol = 1e-14);

// Bessel functions of the first kind by ascending power series. Accurate for
// |x| <= 12, which covers every root used as an oracle here.
double bessel_j0(double x);
double bessel_j1(double x);
double bessel_j1_prime(double x);

// Spherical Bessel j1 and helpers, series-stabilized near x = 0:
//   sph_j1_over_x  = j1(x)/x
//   sph_j1_over_x_d / _dd = first and second derivatives of j1(x)/x
double sph_j1(double x);
double sph_j1_over_x(double x);
double sph_j1_over_x_d(double x);
double sph_j1_over_x_dd(double x);

} // namespace beltlab::linalg
