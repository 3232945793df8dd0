#pragma once

#include <functional>

#include "beltlab/geometry/mesh.hpp"
#include "beltlab/geometry/quadrature.hpp"

namespace beltlab::geometry {

// Integral of f over the meshed domain, exact for piecewise polynomials of
// total degree <= order on straight cells. Deterministic cell order with
// compensated accumulation.
double integrate_volume(const SimplicialMesh& mesh, const std::function<double(const Vec3&)>& f,
                        int order);

// Same, with the evaluation told which cell it is in (discrete FEM fields).
double integrate_volume_cells(const SimplicialMesh& mesh,
                              const std::function<double(int, const Vec3&)>& f, int order);

// Integral of g(x, nu) over the mesh boundary; nu is the outward unit normal
// of the facet. Traces of cell-based data are taken from the facet's own cell.
double integrate_boundary(const SimplicialMesh& mesh,
                          const std::function<double(const Vec3&, const Vec3&)>& g, int order);

double integrate_boundary_cells(const SimplicialMesh& mesh,
                                const std::function<double(int, const Vec3&, const Vec3&)>& g,
                                int order);

} // namespace beltlab::geometry
