#include "beltlab/linalg/factor.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <functional>

namespace beltlab::linalg {

struct SymmetricFactor::Impl {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    std::string backend;
    int n = 0;
};

namespace {

// A factorization is trusted only if it reproduces a known solution. The probe
// uses x = ones so the check costs one matvec and one solve.
bool probe_ok(const Eigen::SparseMatrix<double>& a,
              const std::function<VecX(const VecX&)>& solve) {
    VecX x = VecX::Ones(a.rows());
    VecX b = a * x;
    VecX y = solve(b);
    if (!y.allFinite()) return false;
    double scale = x.norm();
    return (y - x).norm() <= 1e-8 * scale;
}

} // namespace

SymmetricFactor::SymmetricFactor(const SparseMat& a) : SymmetricFactor(a.to_eigen()) {}

SymmetricFactor::SymmetricFactor(const Eigen::SparseMatrix<double>& a)
    : impl_(std::make_unique<Impl>()) {
    if (a.rows() != a.cols()) throw Error("SymmetricFactor: matrix not square");
    impl_->n = static_cast<int>(a.rows());

    impl_->ldlt.compute(a);
    bool ldlt_good = impl_->ldlt.info() == Eigen::Success;
    int bad_pivot = -1;
    double bad_value = 0.0;
    if (ldlt_good) {
        const auto& d = impl_->ldlt.vectorD();
        double dmax = d.cwiseAbs().maxCoeff();
        for (int i = 0; i < d.size(); ++i) {
            if (std::abs(d[i]) <= 1e-14 * dmax) {
                ldlt_good = false;
                bad_pivot = i;
                bad_value = d[i];
                break;
            }
        }
    }
    if (ldlt_good &&
        probe_ok(a, [this](const VecX& b) { return VecX(impl_->ldlt.solve(b)); })) {
        impl_->backend = "ldlt";
        return;
    }

    impl_->lu.isSymmetric(true);
    impl_->lu.compute(a);
    if (impl_->lu.info() != Eigen::Success ||
        !probe_ok(a, [this](const VecX& b) { return VecX(impl_->lu.solve(b)); })) {
        if (bad_pivot >= 0) throw SingularPivotError(bad_pivot, std::abs(bad_value));
        throw SingularPivotError(impl_->n - 1, 0.0);
    }
    impl_->backend = "lu";
}

SymmetricFactor::~SymmetricFactor() = default;
SymmetricFactor::SymmetricFactor(SymmetricFactor&&) noexcept = default;
SymmetricFactor& SymmetricFactor::operator=(SymmetricFactor&&) noexcept = default;

VecX SymmetricFactor::solve(const VecX& b) const {
    if (b.size() != impl_->n) throw Error("SymmetricFactor::solve: size mismatch");
    if (impl_->backend == "ldlt") return impl_->ldlt.solve(b);
    return impl_->lu.solve(b);
}

const std::string& SymmetricFactor::backend() const { return impl_->backend; }

VecX factor_solve(const SparseMat& a, const VecX& b) {
    SymmetricFactor f(a);
    return f.solve(b);
}

} // namespace beltlab::linalg
