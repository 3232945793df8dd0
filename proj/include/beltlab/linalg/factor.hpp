#pragma once

#include <memory>
#include <string>

#include "beltlab/linalg/sparse.hpp"

namespace beltlab::linalg {

class SingularPivotError : public Error {
public:
    SingularPivotError(int index, double value)
        : Error("factorization hit a singular pivot at index " + std::to_string(index) +
                " (|d| = " + std::to_string(value) + ")"),
          pivot_index(index) {}
    int pivot_index;
};

// Direct factorization of a sparse symmetric matrix. SPD and quasi-definite
// systems go through LDLT with AMD ordering; indefinite saddle pencils (zero
// diagonal blocks) fall back to LU with partial pivoting, selected by a probe
// solve when the LDLT pivots degrade.
class SymmetricFactor {
public:
    explicit SymmetricFactor(const SparseMat& a);
    explicit SymmetricFactor(const Eigen::SparseMatrix<double>& a);
    ~SymmetricFactor();
    SymmetricFactor(SymmetricFactor&&) noexcept;
    SymmetricFactor& operator=(SymmetricFactor&&) noexcept;

    VecX solve(const VecX& b) const;
    const std::string& backend() const; // "ldlt" or "lu"

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot solve of A x = b for symmetric A.
VecX factor_solve(const SparseMat& a, const VecX& b);

} // namespace beltlab::linalg
