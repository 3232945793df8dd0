#include "beltlab/linalg/roots.hpp"

#include <cmath>
#include <limits>

namespace beltlab::linalg {

double find_root_bracketed(const std::function<double(double)>& f, double a, double b,
                           double xtol) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw Error("find_root_bracketed: f(a) and f(b) have the same sign");

    const double eps = std::numeric_limits<double>::epsilon();
    double c = a, fc = fa;
    double d = b - a, e = b - a;
    for (int iter = 0; iter < 200; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * eps * std::abs(b) + 0.5 * xtol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic interpolation, secant when only two points
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

namespace {

// sum_{k>=0} (-1)^k t^k / (k!)^2 with t = x^2/4  -> J0
// sum_{k>=0} (-1)^k t^k / (k! (k+1)!)           -> 2 J1 / x
double alternating_series(double t, bool j1_variant) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= -t / (double(k) * double(j1_variant ? k + 1 : k));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

} // namespace

double bessel_j0(double x) { return alternating_series(x * x / 4.0, false); }

double bessel_j1(double x) { return 0.5 * x * alternating_series(x * x / 4.0, true); }

double bessel_j1_prime(double x) {
    if (std::abs(x) < 1e-8) return 0.5 - 3.0 * x * x / 16.0;
    return bessel_j0(x) - bessel_j1(x) / x;
}

// f0(x) = j1(x)/x = sum_k (-1)^k (x^2/2)^k / (k! (2k+3)!!)
// Closed forms take over away from 0 where cancellation is harmless.

double sph_j1_over_x(double x) {
    double ax = std::abs(x);
    if (ax > 0.5) return (std::sin(x) - x * std::cos(x)) / (x * x * x);
    double t = x * x / 2.0;
    double term = 1.0 / 3.0, sum = term;
    for (int k = 1; k < 30; ++k) {
        term *= -t / (double(k) * double(2 * k + 3));
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    return sum;
}

double sph_j1(double x) { return x * sph_j1_over_x(x); }

double sph_j1_over_x_d(double x) {
    double ax = std::abs(x);
    if (ax > 0.5) {
        double x2 = x * x;
        return (x2 * std::sin(x) - 3.0 * std::sin(x) + 3.0 * x * std::cos(x)) / (x2 * x2);
    }
    // d/dx of the series: x * sum_k (-1)^k k=1.. coefficients
    double t = x * x / 2.0;
    double term = -1.0 / 15.0, sum = term; // k=1 coefficient of x^1
    for (int k = 2; k < 30; ++k) {
        term *= -t / (double(k - 1) * double(2 * k + 3));
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    return x * sum;
}

double sph_j1_over_x_dd(double x) {
    double ax = std::abs(x);
    if (ax > 0.5) {
        double x2 = x * x;
        return (x * x2 * std::cos(x) - 5.0 * x2 * std::sin(x) + 12.0 * std::sin(x) -
                12.0 * x * std::cos(x)) /
               (x2 * x2 * x);
    }
    // f0'' = sum_k (2k)(2k-1) c_k x^{2k-2}; series assembled term by term
    double sum = 0.0;
    double c = 1.0 / 3.0; // c_0
    for (int k = 1; k < 30; ++k) {
        c *= -1.0 / (2.0 * double(k) * double(2 * k + 3));
        double p = 2.0 * k;
        sum += p * (p - 1.0) * c * std::pow(x, p - 2.0);
        if (std::abs(c) < 1e-20) break;
    }
    return sum;
}

} // namespace beltlab::linalg
