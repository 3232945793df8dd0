#include "beltlab/fields/field.hpp"

#include <cmath>

#include "beltlab/linalg/roots.hpp"

namespace beltlab::fields {

Vec3 fd_curl(const VectorField& u, const Vec3& x, double h) {
    if (h <= 0.0) throw Error("fd_curl: step must be positive");
    std::array<Vec3, 3> dp, dm;
    for (int a = 0; a < 3; ++a) {
        Vec3 e = Vec3::Zero();
        e[a] = h;
        dp[a] = u.eval(x + e);
        dm[a] = u.eval(x - e);
    }
    auto d = [&](int a, int comp) { return (dp[a][comp] - dm[a][comp]) / (2.0 * h); };
    return Vec3(d(1, 2) - d(2, 1), d(2, 0) - d(0, 2), d(0, 1) - d(1, 0));
}

double fd_div(const VectorField& u, const Vec3& x, double h) {
    if (h <= 0.0) throw Error("fd_div: step must be positive");
    double s = 0.0;
    for (int a = 0; a < 3; ++a) {
        Vec3 e = Vec3::Zero();
        e[a] = h;
        s += (u.eval(x + e)[a] - u.eval(x - e)[a]) / (2.0 * h);
    }
    return s;
}

namespace {

class TrigBeltrami final : public VectorField {
public:
    explicit TrigBeltrami(double lambda)
        : VectorField(3, "trig:" + std::to_string(lambda)), lambda_(lambda) {
        if (lambda == 0.0) throw Error("trig beltrami: lambda must be nonzero");
    }
    Vec3 eval(const Vec3& x) const override {
        return Vec3(std::sin(lambda_ * x.z()), std::cos(lambda_ * x.z()), 0.0);
    }
    bool has_analytic_curl() const override { return true; }
    bool has_analytic_div() const override { return true; }
    Vec3 curl(const Vec3& x) const override { return lambda_ * eval(x); }
    double divergence(const Vec3&) const override { return 0.0; }

private:
    double lambda_;
};

class PolynomialField final : public VectorField {
public:
    PolynomialField(Polynomial3 ux, Polynomial3 uy, Polynomial3 uz, int dim)
        : VectorField(dim, "poly"), u_{std::move(ux), std::move(uy), std::move(uz)} {
        if (dim != 2 && dim != 3) throw Error("polynomial field: dim must be 2 or 3");
        if (dim == 2 && (!u_[2].empty() || u_[0].max_exponent(2) > 0 || u_[1].max_exponent(2) > 0))
            throw Error("polynomial field: planar (dim 2) fields cannot involve x3");
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) du_[a][b] = u_[a].derivative(b);
    }
    Vec3 eval(const Vec3& x) const override {
        return Vec3(u_[0].eval(x), u_[1].eval(x), u_[2].eval(x));
    }
    bool has_analytic_curl() const override { return true; }
    bool has_analytic_div() const override { return true; }
    Vec3 curl(const Vec3& x) const override {
        return Vec3(du_[2][1].eval(x) - du_[1][2].eval(x), du_[0][2].eval(x) - du_[2][0].eval(x),
                    du_[1][0].eval(x) - du_[0][1].eval(x));
    }
    double divergence(const Vec3& x) const override {
        return du_[0][0].eval(x) + du_[1][1].eval(x) + du_[2][2].eval(x);
    }

private:
    Polynomial3 u_[3];
    Polynomial3 du_[3][3]; // du_[component][axis]
};

// u = lambda grad(g) x x + 2 grad(g) + lambda^2 g x + Hess(g) x with
// g = lambda f0(lambda r) x3, f0(s) = j1(s)/s. g solves the Helmholtz
// equation, which makes u a curl eigenfield: curl u = lambda u.
class Spheromak final : public VectorField {
public:
    explicit Spheromak(double lambda)
        : VectorField(3, "spheromak:" + std::to_string(lambda)), lambda_(lambda) {
        if (lambda <= 0.0) throw Error("spheromak: lambda must be positive");
        scale_ = 1.0;
        double peak = 0.0;
        const int n = 20; // fixed sample lattice over the ball
        for (int i = -n; i <= n; ++i)
            for (int j = -n; j <= n; ++j)
                for (int k = -n; k <= n; ++k) {
                    Vec3 x(double(i) / n, double(j) / n, double(k) / n);
                    if (x.norm() > 1.0) continue;
                    peak = std::max(peak, raw(x).norm());
                }
        scale_ = 1.0 / peak;
    }
    Vec3 eval(const Vec3& x) const override { return scale_ * raw(x); }
    bool has_analytic_curl() const override { return true; }
    bool has_analytic_div() const override { return true; }
    Vec3 curl(const Vec3& x) const override { return lambda_ * eval(x); }
    double divergence(const Vec3&) const override { return 0.0; }

private:
    Vec3 raw(const Vec3& x) const {
        using linalg::sph_j1_over_x;
        using linalg::sph_j1_over_x_d;
        using linalg::sph_j1_over_x_dd;
        const double r = x.norm();
        const double lam = lambda_;
        if (r < 1e-14) return Vec3(0.0, 0.0, 2.0 * lam / 3.0);
        const double s = lam * r;
        const double f = lam * sph_j1_over_x(s);            // f(r) = j1(lam r)/r
        const double a = lam * lam * lam * f0d_over_s(s);   // f'(r)/r
        const double b = lam * lam * lam * sph_j1_over_x_dd(s); // f''(r)
        const Vec3 e = x / r;
        const double g = f * x.z();
        Vec3 grad = a * x.z() * x + f * Vec3::UnitZ();
        Mat3 hess;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double v = x.z() * (b * e[i] * e[j] + a * ((i == j ? 1.0 : 0.0) - e[i] * e[j]));
                if (j == 2) v += a * x[i];
                if (i == 2) v += a * x[j];
                hess(i, j) = v;
            }
        return lam * grad.cross(x) + 2.0 * grad + lam * lam * g * x + hess * x;
    }

    static double f0d_over_s(double s) {
        if (s > 0.5) return linalg::sph_j1_over_x_d(s) / s;
        // series of f0'(s)/s around 0
        double t = s * s / 2.0;
        double term = -1.0 / 15.0, sum = term;
        for (int k = 2; k < 30; ++k) {
            term *= -t / (double(k - 1) * double(2 * k + 3));
            sum += term;
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }

    double lambda_;
    double scale_;
};

} // namespace

std::shared_ptr<VectorField> make_trig_beltrami(double lambda) {
    return std::make_shared<TrigBeltrami>(lambda);
}

std::shared_ptr<VectorField> make_polynomial_field(Polynomial3 ux, Polynomial3 uy, Polynomial3 uz,
                                                   int dim) {
    return std::make_shared<PolynomialField>(std::move(ux), std::move(uy), std::move(uz), dim);
}

std::shared_ptr<VectorField> make_spheromak(double lambda) {
    return std::make_shared<Spheromak>(lambda);
}

} // namespace beltlab::fields
