#pragma once

#include <memory>

#include "beltlab/fem/spaces.hpp"
#include "beltlab/geometry/quadrature.hpp"
#include "beltlab/linalg/eigsolve.hpp"

namespace beltlab::eig_detail {

// Index map for eliminating essential-BC dofs.
struct Reduction {
    std::vector<int> full_to_red;
    std::vector<int> red_to_full;

    static Reduction keep(const std::vector<char>& keep_mask);
    int reduced() const { return static_cast<int>(red_to_full.size()); }
    int full() const { return static_cast<int>(full_to_red.size()); }
    std::vector<linalg::Triplet> reduce(const std::vector<linalg::Triplet>& t) const;
    VecX expand(const VecX& red) const;
    VecX restrict_vec(const VecX& full_vec) const;
};

// P2 vector velocity / P1 pressure Stokes pencil blocks (full, no BC):
//   a: vector Laplacian, m: vector mass, b: pressure-divergence coupling
struct StokesBlocks {
    std::vector<linalg::Triplet> a, m, b; // b is (npressure x nvel)
    int nvel = 0;
    int npressure = 0;
    std::shared_ptr<const fem::EdgeTable> edges;
    std::vector<char> velocity_boundary_node; // per scalar node
};
StokesBlocks assemble_stokes(const geometry::SimplicialMesh& mesh);

// Lowest-order edge-element curl-curl pencil with the scalar multiplier
// coupling (Kikuchi):
//   s: curl-curl, m: edge mass, b: (nvertex x nedge) with int W_e . grad psi_j
struct MaxwellBlocks {
    std::vector<linalg::Triplet> s, m, b;
    int nedge = 0;
    int nvertex = 0;
    std::shared_ptr<const fem::EdgeTable> edges;
};
MaxwellBlocks assemble_maxwell(const geometry::SimplicialMesh& mesh);

// Saddle pencil [[A, B^T],[B, 0]] x = lambda [[M, 0],[0, 0]] x on the reduced
// dofs; returns eigenpairs with primary/multiplier components expanded to the
// full layout, plus the constraint residual ||B u|| per pair.
struct SaddleEigs {
    linalg::EigenResult info;
    std::vector<VecX> primary;    // full primary-space coefficients
    std::vector<VecX> multiplier; // full multiplier coefficients
    std::vector<double> constraint_residual;
};
SaddleEigs solve_saddle(const std::vector<linalg::Triplet>& a,
                        const std::vector<linalg::Triplet>& b,
                        const std::vector<linalg::Triplet>& m, const Reduction& primary_red,
                        const Reduction& multiplier_red, int k, double shift, double tol,
                        std::uint64_t seed);

} // namespace beltlab::eig_detail
