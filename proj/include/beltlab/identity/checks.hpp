#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "beltlab/fields/field.hpp"
#include "beltlab/fields/weight.hpp"
#include "beltlab/geometry/integrate.hpp"

namespace beltlab::identity {

// Every volume / surface term of one integral identity, evaluated separately
// with a shared quadrature, plus the residuals between the identity's sides.
struct IdentityReport {
    std::string check;
    std::string field_tag;
    std::string weight_tag;
    std::string mesh_tag;
    int quadrature_order = 0;
    std::vector<std::pair<std::string, double>> terms;
    double lhs_total = 0.0;
    double rhs_total = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    std::map<std::string, double> extras;
    bool used_fd_curl = false;
    bool used_fd_div = false;

    double term(const std::string& name) const;
};

// Green-type identity for div/curl against a smooth weight:
//   int curl u x u . grad(phi) + (div u)(u . grad phi)
//     = int |u|^2/2 lap(phi) - u_i u_j d_ij phi
//     + bnd |u|^2/2 grad(phi).nu - (u x grad phi).(u x nu)
// Works for 2D meshes with planar weights and embedded fields.
IdentityReport check_green_curl(const fields::VectorField& u, const fields::WeightFunction& phi,
                                const geometry::SimplicialMesh& mesh, int order,
                                double fd_step = 1e-4);

// Power-weight identity on domains excluding the origin (any alpha >= 0; the
// origin test is skipped at alpha = 0). Reports all three expressions: E1
// (left side), E2 (u.x / u.nu surface form), E3 (cross-product surface form),
// with |E1-E2| as the primary residual and |E2-E3| in extras["e2_e3"].
IdentityReport check_weighted(const fields::VectorField& u, double alpha,
                              const geometry::SimplicialMesh& mesh, int order,
                              double fd_step = 1e-4);

// (u x x).(u x nu) = |u|^2 (x.nu) - (u.x)(u.nu); returns |lhs - rhs|.
double check_lagrange_pointwise(const Vec3& u, const Vec3& x, const Vec3& nu);

// curl(a x b) = (div b) a - (div a) b + (b.grad) a - (a.grad) b, both sides by
// central differences; returns the residual norm.
double check_curl_cross_pointwise(const fields::VectorField& a, const fields::VectorField& b,
                                  const Vec3& x, double h = 1e-4);

struct Theorem1Terms {
    double volume_term = 0.0;            // int |u|^2 / 2
    double boundary_term = 0.0;          // bnd |u|^2/2 (x.nu)
    double tangential_trace_norm = 0.0;  // L2 norm of u x nu on the boundary
};

// The two terms whose sum vanishes for a Beltrami field with zero tangential
// trace on a star-shaped domain (centered at the origin), plus the measured
// obstruction ||u x nu||.
Theorem1Terms theorem1_functional(const fields::VectorField& u,
                                  const geometry::SimplicialMesh& mesh, int order);

// Discrete fields sampled per cell (FEM eigenfields).
struct CellField {
    std::function<Vec3(int cell, const Vec3& x)> value;
};

struct EigenIdentityReport {
    double volume_term = 0.0;       // int |curl u|^2 + beta |u|^2
    double curl_boundary_term = 0.0; // bnd |curl u|^2 (x.nu)
    double field_boundary_term = 0.0; // beta bnd |u|^2 (x.nu)
    double residual = 0.0;          // volume + curl_boundary - field_boundary
};

// Residual of the eigenfield identity; vanishes only when the eigenfield
// also satisfies curl u x nu = 0 on the boundary.
EigenIdentityReport eigen_identity_check(const CellField& u, const CellField& curl_u, double beta,
                                         const geometry::SimplicialMesh& mesh, int order);

} // namespace beltlab::identity
