#pragma once

#include <memory>

#include "beltlab/fem/spaces.hpp"
#include "beltlab/geometry/mesh.hpp"
#include "beltlab/identity/checks.hpp"
#include "beltlab/linalg/eigsolve.hpp"

namespace beltlab::eig2d {

// P1 Laplacian, Dirichlet rows eliminated. Eigenvectors come back on the full
// vertex layout with zeros at boundary vertices.
struct ScalarEigs {
    linalg::EigenResult info;
    std::vector<VecX> vertex_values;
};
ScalarEigs laplace_dirichlet_eigs(const geometry::SimplicialMesh& mesh, int k, double tol = 1e-9,
                                  std::uint64_t seed = kDefaultSeed);

// No essential conditions; the zero eigenvalue (constants) is reported first.
ScalarEigs laplace_neumann_eigs(const geometry::SimplicialMesh& mesh, int k, double tol = 1e-9,
                                std::uint64_t seed = kDefaultSeed);

// Taylor-Hood (P2 velocity, P1 pressure) Stokes eigenproblem with full
// velocity Dirichlet conditions; one pressure dof is pinned.
struct StokesEigs {
    linalg::EigenResult info;
    std::shared_ptr<const fem::EdgeTable> edges;
    std::vector<VecX> velocity; // node-major interleaved (node * dim + comp)
    std::vector<VecX> pressure;
    std::vector<double> div_residual; // ||B u|| per unit-M-norm eigenvector
};
StokesEigs stokes_eigs_2d(const geometry::SimplicialMesh& mesh, int k, double tol = 1e-9,
                          std::uint64_t seed = kDefaultSeed);

// Lowest-order edge elements with zero tangential trace, Kikuchi multiplier
// (P1, zero trace) excluding the gradient kernel.
struct MaxwellEigs {
    linalg::EigenResult info;
    std::shared_ptr<const fem::EdgeTable> edges;
    std::vector<VecX> edge_dofs;
    std::vector<VecX> multiplier;
    std::vector<double> multiplier_norm;  // multiplier size relative to ||u||_M
    std::vector<double> divfree_residual; // ||B^T u|| per pair
};
MaxwellEigs maxwell_eigs_2d(const geometry::SimplicialMesh& mesh, int k, double tol = 1e-9,
                            std::uint64_t seed = kDefaultSeed);

// Field evaluators bound to eigenvector coefficients (valid while mesh and
// edge table outlive them).
identity::CellField p2_vector_value(const geometry::SimplicialMesh& mesh,
                                    std::shared_ptr<const fem::EdgeTable> edges, VecX dofs);
identity::CellField p2_vector_curl(const geometry::SimplicialMesh& mesh,
                                   std::shared_ptr<const fem::EdgeTable> edges, VecX dofs);
identity::CellField edge_value(const geometry::SimplicialMesh& mesh,
                               std::shared_ptr<const fem::EdgeTable> edges, VecX dofs);
identity::CellField edge_curl(const geometry::SimplicialMesh& mesh,
                              std::shared_ptr<const fem::EdgeTable> edges, VecX dofs);

} // namespace beltlab::eig2d
