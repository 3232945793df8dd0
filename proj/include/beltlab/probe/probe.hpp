#pragma once

#include <optional>

#include "beltlab/fields/field.hpp"
#include "beltlab/geometry/mesh.hpp"
#include "beltlab/linalg/eigsolve.hpp"

namespace beltlab::probe {

enum class ProbeBc { TangentZero, NormalZero };

const char* bc_name(ProbeBc bc);

// Projected-gradient minimization of the Beltrami defect
//   J(u) = int |curl_h u x u|^2 + |div_h u|^2
// over the unit-L2 sphere of the boundary-constrained P1 vector space.
// Boundary conditions are imposed exactly through per-node reduced frames
// built from averaged nodal normals.
struct ProbeResult {
    double j_final = 0.0;
    VecX nodal_field;              // full 3 x vertex layout, best restart
    std::vector<double> trajectory; // J per accepted iterate of the best restart
    std::string bc;
    std::string mesh_id;
    std::uint64_t seed = 0;
    int restarts = 0;
    bool line_search_stalled = false;
};

ProbeResult beltrami_defect_min(const geometry::SimplicialMesh& mesh, ProbeBc bc, int iters,
                                std::uint64_t seed = kDefaultSeed, int restarts = 5,
                                const fields::VectorField* init = nullptr);

// Smallest eigenvalue of the least-squares form
//   Q_lambda(u) = ||curl_h u - lambda u||^2 + ||div_h u||^2
// against the mass matrix, on the constrained P1 space, per lambda.
struct VainshteinReport {
    std::vector<double> lambdas;
    std::vector<double> smallest_eigenvalue;
    std::string bc;
    std::string mesh_id;
};
VainshteinReport vainshtein_check(const std::vector<double>& lambda_grid,
                                  const geometry::SimplicialMesh& mesh,
                                  ProbeBc bc = ProbeBc::TangentZero, double tol = 1e-8,
                                  std::uint64_t seed = kDefaultSeed);

// Quadrature residuals of the analytic spheromak on a ball mesh. The trace
// uses the radial normal (the sphere the mesh approximates); the curl is the
// finite-difference oracle. eigen_residual measures curl u - lambda* u
// against the first root of tan x = x regardless of the lambda used to build
// the field, so detuned fields show a jump.
// Area-weighted averaged facet normals at boundary vertices (zero at interior
// vertices); the frames imposing both boundary conditions derive from these.
std::vector<Vec3> averaged_nodal_normals(const geometry::SimplicialMesh& mesh);

// Unconstrained value of Q_lambda at a P1 nodal field (oracle hook for
// interpolation-error checks), and the L2 norm of such a field.
double vainshtein_form_value(const geometry::SimplicialMesh& mesh, double lambda,
                             const VecX& nodal_field);
double p1_vector_l2(const geometry::SimplicialMesh& mesh, const VecX& nodal_field);

struct SpheromakReport {
    double lambda = 0.0;
    double lambda_star = 0.0;   // first positive root of tan x = x
    double field_l2 = 0.0;      // ||u||_L2(ball)
    double cross_residual = 0.0; // ||curl u x u|| / ||u||
    double div_residual = 0.0;   // ||div u|| / ||u||
    double trace_residual = 0.0; // ||u . x/|x| ||_bnd / ||u||
    double eigen_residual = 0.0; // ||curl u - lambda* u|| / (lambda* ||u||)
};
SpheromakReport spheromak_verify(const geometry::SimplicialMesh& mesh, double lambda,
                                 double fd_step = 1e-4, int order = 3);

} // namespace beltlab::probe
