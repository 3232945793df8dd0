#include "beltlab/geometry/star.hpp"

namespace beltlab::geometry {

linalg::LpProblem star_constraints(const SimplicialMesh& mesh) {
    linalg::LpProblem p;
    p.dimension = mesh.dim;
    p.normals.reserve(mesh.facet_count());
    p.offsets.reserve(mesh.facet_count());
    for (int f = 0; f < mesh.facet_count(); ++f) {
        VecX n(mesh.dim);
        for (int d = 0; d < mesh.dim; ++d) n[d] = mesh.facets[f].normal[d];
        p.normals.push_back(n);
        Vec3 c = mesh.facet_centroid(f);
        p.offsets.push_back(mesh.facets[f].normal.dot(c));
    }
    return p;
}

std::optional<StarCenter> star_kernel(const SimplicialMesh& mesh, double tol) {
    auto r = linalg::lp_max_margin(star_constraints(mesh), tol);
    if (!r) return std::nullopt;
    StarCenter s;
    for (int d = 0; d < mesh.dim; ++d) s.center[d] = r->point[d];
    s.margin = r->margin;
    return s;
}

} // namespace beltlab::geometry
