#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <vector>

#include "beltlab/common.hpp"

namespace beltlab::linalg {

struct Triplet {
    int row;
    int col;
    double value;
};

// Compressed-sparse-row symmetric-capable matrix. Assembly is deterministic:
// triplets are sorted by (row, col, value bits) before accumulation, so any
// permutation of the same triplet list produces a bit-identical matrix.
class SparseMat {
public:
    SparseMat() = default;
    SparseMat(int rows, int cols) : n_rows_(rows), n_cols_(cols), row_offsets_(rows + 1, 0) {}

    int rows() const { return n_rows_; }
    int cols() const { return n_cols_; }
    std::size_t nnz() const { return values_.size(); }

    const std::vector<int>& row_offsets() const { return row_offsets_; }
    const std::vector<int>& col_indices() const { return col_indices_; }
    const std::vector<double>& values() const { return values_; }

    VecX multiply(const VecX& x) const;

    // Entry lookup (binary search within the row); zero if not stored.
    double coeff(int i, int j) const;

    Eigen::SparseMatrix<double> to_eigen() const;
    MatX to_dense() const;

    bool is_symmetric(double tol = 0.0) const;

    friend SparseMat assemble_csr(int rows, int cols, std::vector<Triplet> triplets);

private:
    int n_rows_ = 0;
    int n_cols_ = 0;
    std::vector<int> row_offsets_;
    std::vector<int> col_indices_;
    std::vector<double> values_;
};

// Sums duplicate entries in deterministic sorted order. Out-of-range indices
// raise Error.
SparseMat assemble_csr(int rows, int cols, std::vector<Triplet> triplets);

} // namespace beltlab::linalg
