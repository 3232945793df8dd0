#include "beltlab/geometry/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace beltlab::geometry {

namespace {

struct Rule1d {
    std::vector<double> x; // nodes in [0,1]
    std::vector<double> w;
};

// Gauss rule for weight (1-x)^jacobi_alpha on [0,1] by Golub-Welsch on the
// Jacobi matrix of the (alpha, 0) Jacobi polynomials.
Rule1d gauss_jacobi_01(int npts, int jacobi_alpha) {
    const double al = jacobi_alpha, be = 0.0;
    MatX j = MatX::Zero(npts, npts);
    for (int n = 0; n < npts; ++n) {
        double denom = (2 * n + al + be) * (2 * n + al + be + 2);
        j(n, n) = (n == 0 && al + be == 0.0) ? 0.0
                                             : (be * be - al * al) / ((denom == 0.0) ? 1.0 : denom);
    }
    for (int n = 1; n < npts; ++n) {
        double s = 2 * n + al + be;
        double b2;
        if (n == 1)
            b2 = 4.0 * (1 + al) * (1 + be) / ((2 + al + be) * (2 + al + be) * (3 + al + be));
        else
            b2 = 4.0 * n * (n + al) * (n + be) * (n + al + be) / (s * s * (s + 1) * (s - 1));
        j(n, n - 1) = j(n - 1, n) = std::sqrt(b2);
    }
    Eigen::SelfAdjointEigenSolver<MatX> es(j);
    double mu0 = std::pow(2.0, al + be + 1.0) * std::tgamma(al + 1.0) * std::tgamma(be + 1.0) /
                 std::tgamma(al + be + 2.0);
    Rule1d r;
    for (int i = 0; i < npts; ++i) {
        double xi = es.eigenvalues()[i];             // node in [-1, 1]
        double wi = mu0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        r.x.push_back(0.5 * (1.0 + xi));             // map to [0, 1]
        r.w.push_back(wi / std::pow(2.0, al + 1.0)); // weight for (1-t)^al dt
    }
    return r;
}

QuadratureRule conical_product(int dim, int order) {
    int m = (order + 2) / 2; // m-point Gauss exact to degree 2m-1 >= order
    Rule1d gl = gauss_jacobi_01(m, 0);
    QuadratureRule q;
    q.simplex_dim = dim;
    q.order = order;
    if (dim == 1) {
        for (int i = 0; i < m; ++i) {
            q.points.push_back({1.0 - gl.x[i], gl.x[i], 0.0, 0.0});
            q.weights.push_back(gl.w[i]);
        }
        return q;
    }
    Rule1d gj1 = gauss_jacobi_01(m, 1);
    if (dim == 2) {
        // x = xi (1 - eta), y = eta
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double x = gl.x[i] * (1.0 - gj1.x[j]);
                double y = gj1.x[j];
                q.points.push_back({1.0 - x - y, x, y, 0.0});
                q.weights.push_back(gl.w[i] * gj1.w[j]);
            }
        return q;
    }
    Rule1d gj2 = gauss_jacobi_01(m, 2);
    // x = xi (1 - eta)(1 - zeta), y = eta (1 - zeta), z = zeta
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                double z = gj2.x[k];
                double y = gj1.x[j] * (1.0 - z);
                double x = gl.x[i] * (1.0 - gj1.x[j]) * (1.0 - z);
                q.points.push_back({1.0 - x - y - z, x, y, z});
                q.weights.push_back(gl.w[i] * gj1.w[j] * gj2.w[k]);
            }
    return q;
}

} // namespace

QuadratureRule quad_rule(int simplex_dim, int order) {
    if (simplex_dim < 1 || simplex_dim > 3) throw Error("quad_rule: simplex_dim must be 1..3");
    if (order < 1 || order > 8) throw Error("quad_rule: unsupported order " + std::to_string(order));

    QuadratureRule q;
    q.simplex_dim = simplex_dim;
    q.order = order;
    if (simplex_dim == 2 && order == 1) {
        q.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0});
        q.weights.push_back(0.5);
        return q;
    }
    if (simplex_dim == 2 && order == 2) {
        // edge midpoints
        q.points.push_back({0.5, 0.5, 0.0, 0.0});
        q.points.push_back({0.0, 0.5, 0.5, 0.0});
        q.points.push_back({0.5, 0.0, 0.5, 0.0});
        q.weights.assign(3, 1.0 / 6.0);
        return q;
    }
    if (simplex_dim == 3 && order == 1) {
        q.points.push_back({0.25, 0.25, 0.25, 0.25});
        q.weights.push_back(1.0 / 6.0);
        return q;
    }
    if (simplex_dim == 3 && order == 2) {
        const double a = 0.5854101966249685; // (5 + 3 sqrt 5) / 20
        const double b = 0.1381966011250105; // (5 - sqrt 5) / 20
        for (int i = 0; i < 4; ++i) {
            std::array<double, 4> p{b, b, b, b};
            p[i] = a;
            q.points.push_back(p);
            q.weights.push_back(1.0 / 24.0);
        }
        return q;
    }
    return conical_product(simplex_dim, order);
}

double reference_monomial_integral(int simplex_dim, int a, int b, int c) {
    auto fact = [](int n) {
        double f = 1.0;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    if (simplex_dim == 1) return 1.0 / (a + 1.0);
    if (simplex_dim == 2) return fact(a) * fact(b) / fact(a + b + 2);
    return fact(a) * fact(b) * fact(c) / fact(a + b + c + 3);
}

} // namespace beltlab::geometry
