#pragma once

#include "beltlab/eig/eig2d.hpp"

namespace beltlab::eig3d {

// 3D counterparts on tetrahedra. Layouts and evaluator binders are shared
// with the 2D module.
eig2d::MaxwellEigs maxwell_eigs_3d(const geometry::SimplicialMesh& mesh, int k, double tol = 1e-9,
                                   std::uint64_t seed = kDefaultSeed);
eig2d::StokesEigs stokes_eigs_3d(const geometry::SimplicialMesh& mesh, int k, double tol = 1e-9,
                                 std::uint64_t seed = kDefaultSeed);

// Boundary L2 norms of the four traces of an eigenfield, each normalized by
// ||u||_L2(domain). Traces are evaluated from the facet's own cell.
struct TraceReport {
    double norm_u_dot_nu = 0.0;
    double norm_curlu_cross_nu = 0.0;
    double norm_u_cross_nu = 0.0;
    double norm_curlu_dot_nu = 0.0;
};
TraceReport boundary_trace_report(const identity::CellField& value,
                                  const identity::CellField& curl,
                                  const geometry::SimplicialMesh& mesh, int order = 3);

// Numerical witness of the equality of the two first Maxwell eigenvalues:
// v = curl u of a tangent-trace eigenfield is (weakly) a normal-trace
// eigenfield. v is mapped onto the unconstrained edge space by a smoothed
// projection (L2 projection with an h^2-weighted curl penalty) and its curl
// Rayleigh quotient compared against alpha.
struct BetaDualityReport {
    double alpha = 0.0;
    double rayleigh = 0.0;       // I(P v)
    double rel_gap = 0.0;        // |rayleigh - alpha| / alpha
    double vdotnu_rel = 0.0;     // ||v.nu||_bnd / ||v||_domain
};
BetaDualityReport beta_duality_check(const geometry::SimplicialMesh& mesh,
                                     std::shared_ptr<const fem::EdgeTable> edges,
                                     const VecX& edge_dofs, double alpha);

} // namespace beltlab::eig3d
