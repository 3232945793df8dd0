#include "beltlab/linalg/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace beltlab::linalg {

namespace {

struct Constraint {
    VecX a;
    double b;
};

bool violated(const Constraint& c, const VecX& x) {
    double lhs = c.a.dot(x);
    return lhs > c.b + 1e-12 * (1.0 + std::abs(lhs) + std::abs(c.b));
}

// Seidel's incremental LP inside the box [-bound, bound]^dim. Returns nullopt
// if the constraint set is empty (infeasible at the working tolerance).
std::optional<VecX> seidel_rec(const std::vector<Constraint>& cons, const VecX& c, double bound,
                               std::mt19937_64& rng) {
    const int dim = static_cast<int>(c.size());
    if (dim == 1) {
        double lo = -bound, hi = bound;
        for (const auto& k : cons) {
            double a = k.a[0];
            if (std::abs(a) < 1e-14) {
                if (k.b < -1e-12 * (1.0 + std::abs(k.b))) return std::nullopt;
                continue;
            }
            if (a > 0.0) hi = std::min(hi, k.b / a);
            else lo = std::max(lo, k.b / a);
        }
        if (lo > hi + 1e-11 * (1.0 + std::abs(lo) + std::abs(hi))) return std::nullopt;
        VecX x(1);
        x[0] = (c[0] >= 0.0) ? hi : lo;
        return x;
    }

    std::vector<int> order(cons.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    VecX x(dim);
    for (int j = 0; j < dim; ++j) x[j] = (c[j] >= 0.0) ? bound : -bound;

    for (std::size_t i = 0; i < order.size(); ++i) {
        const Constraint& k = cons[order[i]];
        if (!violated(k, x)) continue;

        // The optimum moves onto the hyperplane k.a . x = k.b. Eliminate the
        // coordinate with the largest |a_j| and recurse on the prefix.
        int piv = 0;
        for (int j = 1; j < dim; ++j)
            if (std::abs(k.a[j]) > std::abs(k.a[piv])) piv = j;
        double apiv = k.a[piv];
        if (std::abs(apiv) < 1e-14) return std::nullopt;

        auto reduce_vec = [&](const VecX& v) {
            VecX r(dim - 1);
            for (int j = 0, t = 0; j < dim; ++j)
                if (j != piv) r[t++] = v[j];
            return r;
        };
        VecX an = reduce_vec(k.a);

        std::vector<Constraint> sub;
        sub.reserve(i + 2);
        auto push_projected = [&](const VecX& alpha, double beta) {
            VecX ar = reduce_vec(alpha);
            double f = alpha[piv] / apiv;
            sub.push_back({ar - f * an, beta - f * k.b});
        };
        for (std::size_t q = 0; q < i; ++q) push_projected(cons[order[q]].a, cons[order[q]].b);
        // box faces of the eliminated coordinate
        VecX epiv = VecX::Zero(dim);
        epiv[piv] = 1.0;
        push_projected(epiv, bound);
        push_projected(-epiv, bound);

        VecX csub = reduce_vec(c) - (c[piv] / apiv) * an;
        auto y = seidel_rec(sub, csub, bound, rng);
        if (!y) return std::nullopt;
        for (int j = 0, t = 0; j < dim; ++j)
            if (j != piv) x[j] = (*y)[t++];
        x[piv] = (k.b - an.dot(*y)) / apiv;
    }
    return x;
}

} // namespace

VecX seidel_lp(const std::vector<VecX>& rows, const std::vector<double>& rhs, const VecX& c,
               double bound, std::uint64_t seed) {
    if (rows.size() != rhs.size()) throw Error("seidel_lp: rows/rhs size mismatch");
    std::vector<Constraint> cons(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) cons[i] = {rows[i], rhs[i]};
    std::mt19937_64 rng(seed);
    auto x = seidel_rec(cons, c, bound, rng);
    if (!x) throw Error("seidel_lp: infeasible");
    for (int j = 0; j < x->size(); ++j)
        if (std::abs((*x)[j]) >= bound * (1.0 - 1e-9))
            throw Error("seidel_lp: unbounded (optimum escaped to the bounding box)");
    return *x;
}

std::optional<LpPoint> lp_max_margin(const LpProblem& p, double tol, std::uint64_t seed) {
    const int d = p.dimension;
    if (d != 2 && d != 3) throw Error("lp_max_margin: dimension must be 2 or 3");
    if (p.normals.size() != p.offsets.size()) throw Error("lp_max_margin: size mismatch");
    if (static_cast<int>(p.normals.size()) < d + 1)
        throw Error("lp_max_margin: need at least dimension+1 constraints");

    double scale = 1.0;
    for (double b : p.offsets) scale = std::max(scale, std::abs(b));
    double bound = 10.0 * (scale + 1.0);

    // variables z = (x0, t); maximize t subject to n.x0 + t <= n.c
    std::vector<VecX> rows(p.normals.size());
    for (std::size_t i = 0; i < p.normals.size(); ++i) {
        if (p.normals[i].size() != d) throw Error("lp_max_margin: normal dimension mismatch");
        VecX r(d + 1);
        r.head(d) = p.normals[i];
        r[d] = 1.0;
        rows[i] = r;
    }
    VecX c = VecX::Zero(d + 1);
    c[d] = 1.0;
    VecX z = seidel_lp(rows, p.offsets, c, bound, seed);

    LpPoint out;
    out.point = z.head(d);
    out.margin = z[d];
    if (out.margin < -tol) return std::nullopt;
    return out;
}

} // namespace beltlab::linalg
