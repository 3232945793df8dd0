#include "beltlab/linalg/sparse.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace beltlab::linalg {

namespace {

// Total order on doubles via the sign-magnitude-to-two's-complement trick.
// Only used as a sort tiebreaker so that equal (row, col) duplicates are
// accumulated in an input-permutation-independent order.
std::int64_t bit_key(double v) {
    auto bits = std::bit_cast<std::int64_t>(v);
    return bits < 0 ? std::int64_t(0x8000000000000000ULL) - bits : bits;
}

} // namespace

SparseMat assemble_csr(int rows, int cols, std::vector<Triplet> triplets) {
    for (const auto& t : triplets) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw Error("assemble_csr: triplet (" + std::to_string(t.row) + "," +
                        std::to_string(t.col) + ") out of bounds for " + std::to_string(rows) +
                        "x" + std::to_string(cols) + " matrix");
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        if (a.row != b.row) return a.row < b.row;
        if (a.col != b.col) return a.col < b.col;
        return bit_key(a.value) < bit_key(b.value);
    });

    SparseMat m(rows, cols);
    m.col_indices_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    std::size_t i = 0;
    for (int r = 0; r < rows; ++r) {
        m.row_offsets_[r] = static_cast<int>(m.values_.size());
        while (i < triplets.size() && triplets[i].row == r) {
            int c = triplets[i].col;
            double sum = 0.0;
            while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
                sum += triplets[i].value;
                ++i;
            }
            m.col_indices_.push_back(c);
            m.values_.push_back(sum);
        }
    }
    m.row_offsets_[rows] = static_cast<int>(m.values_.size());
    return m;
}

VecX SparseMat::multiply(const VecX& x) const {
    if (x.size() != n_cols_) throw Error("SparseMat::multiply: size mismatch");
    VecX y = VecX::Zero(n_rows_);
    for (int r = 0; r < n_rows_; ++r) {
        double acc = 0.0;
        for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
            acc += values_[k] * x[col_indices_[k]];
        y[r] = acc;
    }
    return y;
}

double SparseMat::coeff(int i, int j) const {
    auto begin = col_indices_.begin() + row_offsets_[i];
    auto end = col_indices_.begin() + row_offsets_[i + 1];
    auto it = std::lower_bound(begin, end, j);
    if (it != end && *it == j) return values_[it - col_indices_.begin()];
    return 0.0;
}

Eigen::SparseMatrix<double> SparseMat::to_eigen() const {
    Eigen::SparseMatrix<double> m(n_rows_, n_cols_);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(values_.size());
    for (int r = 0; r < n_rows_; ++r)
        for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
            trip.emplace_back(r, col_indices_[k], values_[k]);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

MatX SparseMat::to_dense() const {
    MatX m = MatX::Zero(n_rows_, n_cols_);
    for (int r = 0; r < n_rows_; ++r)
        for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
            m(r, col_indices_[k]) = values_[k];
    return m;
}

bool SparseMat::is_symmetric(double tol) const {
    if (n_rows_ != n_cols_) return false;
    for (int r = 0; r < n_rows_; ++r)
        for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
            if (std::abs(values_[k] - coeff(col_indices_[k], r)) > tol) return false;
    return true;
}

} // namespace beltlab::linalg
