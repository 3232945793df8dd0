#pragma once

#include <optional>

#include "beltlab/geometry/mesh.hpp"
#include "beltlab/linalg/lp.hpp"

namespace beltlab::geometry {

struct StarCenter {
    Vec3 center = Vec3::Zero();
    double margin = 0.0;
};

// Kernel of the meshed domain at facet resolution: one half-space constraint
// per boundary facet (centroid and outward normal), maximized worst-case
// margin. After translating the mesh so the center is the origin, every facet
// satisfies centroid . normal >= -tol. Absent result means no star center
// exists at this resolution.
std::optional<StarCenter> star_kernel(const SimplicialMesh& mesh, double tol = 1e-9);

// The facet half-space problem itself (exposed for oracle cross-checks).
linalg::LpProblem star_constraints(const SimplicialMesh& mesh);

} // namespace beltlab::geometry
