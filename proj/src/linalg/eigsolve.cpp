#include "beltlab/linalg/eigsolve.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "beltlab/linalg/factor.hpp"

namespace beltlab::linalg {

namespace {

// Uniform in (-1, 1) from raw mt19937_64 output; independent of the standard
// library's distribution implementation so runs are reproducible everywhere.
double unit_uniform(std::mt19937_64& rng) {
    return 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
}

VecX random_vector(int n, std::mt19937_64& rng) {
    VecX v(n);
    for (int i = 0; i < n; ++i) v[i] = unit_uniform(rng);
    return v;
}

struct RitzPair {
    double theta;
    VecX s;
};

} // namespace

EigenResult gen_eig_smallest(const SparseMat& a, const SparseMat& m, int k, double shift,
                             double tol, std::uint64_t seed) {
    if (a.rows() != a.cols() || m.rows() != m.cols() || a.rows() != m.rows())
        throw Error("gen_eig_smallest: pencil dimensions mismatch");
    const int n = a.rows();
    if (n == 0 || k <= 0) return {};
    k = std::min(k, n);

    Eigen::SparseMatrix<double> ae = a.to_eigen();
    Eigen::SparseMatrix<double> me = m.to_eigen();

    EigenResult result;
    double sigma = shift;
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::unique_ptr<SymmetricFactor> factor;
        try {
            Eigen::SparseMatrix<double> c = ae - sigma * me;
            c.prune(0.0);
            factor = std::make_unique<SymmetricFactor>(c);
        } catch (const SingularPivotError&) {
            sigma += (std::abs(sigma) + 1.0) * 1e-3 * (attempt + 1);
            continue;
        }

        auto op = [&](const VecX& x) { return factor->solve(me * x); };

        std::mt19937_64 rng(seed);
        const int max_dim = std::min(n, std::max(6 * k + 60, 80));

        std::vector<VecX> basis, mbasis; // mbasis[i] = M * basis[i]
        std::vector<double> alpha, beta; // beta[j] links v_j and v_{j+1}
        VecX v = op(random_vector(n, rng)); // purification into range(Op)
        VecX mv = me * v;
        double nrm = std::sqrt(std::max(0.0, v.dot(mv)));
        for (int tries = 0; nrm < 1e-300 && tries < 5; ++tries) {
            v = op(random_vector(n, rng));
            mv = me * v;
            nrm = std::sqrt(std::max(0.0, v.dot(mv)));
        }
        if (nrm < 1e-300) throw Error("gen_eig_smallest: M-seminorm of start vector vanished");
        basis.push_back(v / nrm);
        mbasis.push_back(mv / nrm);

        std::vector<RitzPair> ritz;
        int j = 0;
        while (j < max_dim) {
            VecX w = factor->solve(mbasis[j]);
            if (j > 0) w -= beta[j - 1] * basis[j - 1];
            double aj = w.dot(mbasis[j]);
            w -= aj * basis[j];
            // full reorthogonalization against cached M-products, two passes
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t q = 0; q < basis.size(); ++q) w -= w.dot(mbasis[q]) * basis[q];
            alpha.push_back(aj);
            VecX mw = me * w;
            double bj = std::sqrt(std::max(0.0, w.dot(mw)));
            ++j;
            bool breakdown = bj < 1e-13 * (std::abs(aj) + 1.0);

            // Ritz values of the (block-)tridiagonal section
            MatX t = MatX::Zero(j, j);
            for (int i = 0; i < j; ++i) {
                t(i, i) = alpha[i];
                if (i + 1 < j) t(i, i + 1) = t(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<MatX> es(t);
            ritz.clear();
            for (int i = j - 1; i >= 0; --i) { // descending theta
                if (es.eigenvalues()[i] > 0.0)
                    ritz.push_back({es.eigenvalues()[i], es.eigenvectors().col(i)});
            }
            int want = std::min<int>(k, static_cast<int>(ritz.size()));
            bool conv = static_cast<int>(ritz.size()) >= std::min(k, j);
            for (int i = 0; i < want && conv; ++i) {
                double bound = breakdown ? 0.0 : bj * std::abs(ritz[i].s[j - 1]);
                if (bound > 0.1 * tol * std::abs(ritz[i].theta)) conv = false;
            }
            if (conv && j >= std::min(n, 2 * k + 2)) break;
            if (j >= max_dim) break;

            if (!breakdown) {
                beta.push_back(bj);
                basis.push_back(w / bj);
                mbasis.push_back(mw / bj);
            } else {
                // Invariant subspace found before k pairs converged: start a
                // fresh Lanczos sequence in the M-orthogonal complement. The
                // junction coefficient is zero, so T stays tridiagonal.
                VecX nv;
                VecX mnv;
                double nn = 0.0;
                for (int tries = 0; tries < 5 && nn < 1e-12; ++tries) {
                    nv = factor->solve(me * random_vector(n, rng));
                    for (int pass = 0; pass < 2; ++pass)
                        for (std::size_t q = 0; q < basis.size(); ++q)
                            nv -= nv.dot(mbasis[q]) * basis[q];
                    mnv = me * nv;
                    nn = std::sqrt(std::max(0.0, nv.dot(mnv)));
                }
                if (nn < 1e-12) break; // range of the operator exhausted
                beta.push_back(0.0);
                basis.push_back(nv / nn);
                mbasis.push_back(mnv / nn);
            }
        }

        // Assemble Ritz vectors, purify, compute residuals.
        int avail = std::min<int>(k, static_cast<int>(ritz.size()));
        result = {};
        result.stats.iterations = j;
        result.stats.factor_backend = factor->backend();
        result.stats.shift_used = sigma;
        result.stats.converged = true;
        for (int i = 0; i < avail; ++i) {
            VecX x = VecX::Zero(n);
            for (int q = 0; q < static_cast<int>(ritz[i].s.size()) && q < static_cast<int>(basis.size()); ++q)
                x += ritz[i].s[q] * basis[q];
            // Ericsson-Ruhe purification step
            VecX xp = op(x) * (1.0 / ritz[i].theta);
            double mn = std::sqrt(std::max(0.0, xp.dot(me * xp)));
            if (mn > 1e-300) x = xp / mn;
            else {
                double mx = std::sqrt(std::max(0.0, x.dot(me * x)));
                if (mx > 1e-300) x /= mx;
            }
            double lambda = sigma + 1.0 / ritz[i].theta;
            // one Rayleigh-quotient refinement in the pencil
            double xmx = x.dot(me * x);
            if (xmx > 1e-300) lambda = x.dot(ae * x) / xmx;
            double res = (ae * x - lambda * (me * x)).norm();
            result.eigenvalues.push_back(lambda);
            result.eigenvectors.push_back(x);
            result.stats.residuals.push_back(res);
            if (res > tol) result.stats.converged = false;
        }
        if (avail < k) result.stats.converged = false;

        // ascending order
        std::vector<int> order(result.eigenvalues.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            return result.eigenvalues[x] < result.eigenvalues[y];
        });
        EigenResult sorted;
        sorted.stats = result.stats;
        sorted.stats.residuals.clear();
        for (int idx : order) {
            sorted.eigenvalues.push_back(result.eigenvalues[idx]);
            sorted.eigenvectors.push_back(result.eigenvectors[idx]);
            sorted.stats.residuals.push_back(result.stats.residuals[idx]);
        }
        result = sorted;

        if (result.stats.converged || attempt == 3) return result;
        sigma += (std::abs(sigma) + 1.0) * 1e-3 * (attempt + 1);
    }
    return result;
}

std::vector<double> dense_gen_eigenvalues(const MatX& a, const MatX& m) {
    Eigen::GeneralizedSelfAdjointEigenSolver<MatX> es(a, m);
    if (es.info() != Eigen::Success) throw Error("dense_gen_eigenvalues: solver failed");
    std::vector<double> vals(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
    return vals;
}

} // namespace beltlab::linalg
