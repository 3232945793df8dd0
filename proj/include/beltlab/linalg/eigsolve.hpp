#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beltlab/linalg/sparse.hpp"

namespace beltlab::linalg {

struct SolverStats {
    int iterations = 0;
    std::vector<double> residuals;
    std::string factor_backend;
    bool converged = true;
    double shift_used = 0.0;
};

struct EigenResult {
    std::vector<double> eigenvalues; // ascending
    std::vector<VecX> eigenvectors;  // matching order, ||x||_M = 1
    std::string pencil_kind;
    std::string mesh_id;
    SolverStats stats;
};

// k smallest eigenvalues of A x = lambda M x above `shift`, by shift-invert
// Lanczos with full reorthogonalization in the M inner product. M may be
// positive semidefinite (saddle pencils); the start vector is purified into
// range(inv(A - shift M) M). Deterministic for a fixed seed. On factorization
// breakdown the shift is perturbed and the solve retried.
EigenResult gen_eig_smallest(const SparseMat& a, const SparseMat& m, int k, double shift,
                             double tol, std::uint64_t seed = kDefaultSeed);

// Dense reference path for small pencils (test oracle; M must be SPD).
std::vector<double> dense_gen_eigenvalues(const MatX& a, const MatX& m);

} // namespace beltlab::linalg
