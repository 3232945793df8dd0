#include "beltlab/geometry/integrate.hpp"

namespace beltlab::geometry {

double integrate_volume_cells(const SimplicialMesh& mesh,
                              const std::function<double(int, const Vec3&)>& f, int order) {
    QuadratureRule q = quad_rule(mesh.dim, order);
    const double ref_measure = (mesh.dim == 2) ? 0.5 : 1.0 / 6.0;
    KahanSum acc;
    for (int c = 0; c < mesh.cell_count(); ++c) {
        double scale = mesh.cell_volume(c) / ref_measure;
        for (std::size_t k = 0; k < q.size(); ++k) {
            Vec3 x = Vec3::Zero();
            for (int i = 0; i <= mesh.dim; ++i) x += q.points[k][i] * mesh.vertices[mesh.cells[c][i]];
            acc.add(q.weights[k] * scale * f(c, x));
        }
    }
    return acc.value();
}

double integrate_volume(const SimplicialMesh& mesh, const std::function<double(const Vec3&)>& f,
                        int order) {
    return integrate_volume_cells(mesh, [&](int, const Vec3& x) { return f(x); }, order);
}

double integrate_boundary_cells(const SimplicialMesh& mesh,
                                const std::function<double(int, const Vec3&, const Vec3&)>& g,
                                int order) {
    QuadratureRule q = quad_rule(mesh.dim - 1, order);
    const double ref_measure = (mesh.dim == 2) ? 1.0 : 0.5;
    KahanSum acc;
    for (int fi = 0; fi < mesh.facet_count(); ++fi) {
        const BoundaryFacet& f = mesh.facets[fi];
        double scale = f.measure / ref_measure;
        for (std::size_t k = 0; k < q.size(); ++k) {
            Vec3 x = Vec3::Zero();
            for (int i = 0; i < mesh.dim; ++i) x += q.points[k][i] * mesh.vertices[f.v[i]];
            acc.add(q.weights[k] * scale * g(f.cell, x, f.normal));
        }
    }
    return acc.value();
}

double integrate_boundary(const SimplicialMesh& mesh,
                          const std::function<double(const Vec3&, const Vec3&)>& g, int order) {
    return integrate_boundary_cells(
        mesh, [&](int, const Vec3& x, const Vec3& nu) { return g(x, nu); }, order);
}

} // namespace beltlab::geometry
