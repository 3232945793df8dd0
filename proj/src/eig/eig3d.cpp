#include "beltlab/eig/eig3d.hpp"

#include <cmath>

#include "assemble.hpp"
#include "beltlab/geometry/integrate.hpp"
#include "beltlab/linalg/factor.hpp"

namespace beltlab::eig3d {

using geometry::SimplicialMesh;

eig2d::MaxwellEigs maxwell_eigs_3d(const SimplicialMesh& mesh, int k, double tol,
                                   std::uint64_t seed) {
    if (mesh.dim != 3) throw Error("maxwell_eigs_3d: 3D meshes only");
    return eig2d::maxwell_eigs_2d(mesh, k, tol, seed); // dimension-generic assembly
}

eig2d::StokesEigs stokes_eigs_3d(const SimplicialMesh& mesh, int k, double tol,
                                 std::uint64_t seed) {
    if (mesh.dim != 3) throw Error("stokes_eigs_3d: 3D meshes only");
    return eig2d::stokes_eigs_2d(mesh, k, tol, seed);
}

TraceReport boundary_trace_report(const identity::CellField& value,
                                  const identity::CellField& curl, const SimplicialMesh& mesh,
                                  int order) {
    if (mesh.dim != 3) throw Error("boundary_trace_report: 3D meshes only");
    double l2 = std::sqrt(geometry::integrate_volume_cells(
        mesh, [&](int c, const Vec3& x) { return value.value(c, x).squaredNorm(); }, order));
    if (l2 <= 0.0) throw Error("boundary_trace_report: zero field");

    auto bnd = [&](const std::function<double(int, const Vec3&, const Vec3&)>& f) {
        return std::sqrt(std::max(0.0, geometry::integrate_boundary_cells(mesh, f, order))) / l2;
    };
    TraceReport t;
    t.norm_u_dot_nu = bnd([&](int c, const Vec3& x, const Vec3& nu) {
        double d = value.value(c, x).dot(nu);
        return d * d;
    });
    t.norm_u_cross_nu = bnd([&](int c, const Vec3& x, const Vec3& nu) {
        return value.value(c, x).cross(nu).squaredNorm();
    });
    t.norm_curlu_dot_nu = bnd([&](int c, const Vec3& x, const Vec3& nu) {
        double d = curl.value(c, x).dot(nu);
        return d * d;
    });
    t.norm_curlu_cross_nu = bnd([&](int c, const Vec3& x, const Vec3& nu) {
        return curl.value(c, x).cross(nu).squaredNorm();
    });
    return t;
}

BetaDualityReport beta_duality_check(const SimplicialMesh& mesh,
                                     std::shared_ptr<const fem::EdgeTable> edges,
                                     const VecX& edge_dofs, double alpha) {
    if (mesh.dim != 3) throw Error("beta_duality_check: 3D meshes only");
    if (edge_dofs.norm() <= 0.0) throw Error("beta_duality_check: zero eigenfield");

    // v = curl u_h, constant per cell
    std::vector<Vec3> v(mesh.cell_count());
    double v_l2_sq = 0.0;
    for (int c = 0; c < mesh.cell_count(); ++c) {
        fem::CellGeom g = fem::cell_geometry(mesh, c);
        fem::EdgeBasis b = fem::edge_eval(mesh, g, c, *edges, {0.25, 0.25, 0.25, 0.25});
        Vec3 w = Vec3::Zero();
        for (int e = 0; e < b.count; ++e) w += edge_dofs[edges->cell_edges[c][e]] * b.curl[e];
        v[c] = w;
        v_l2_sq += g.volume * w.squaredNorm();
    }

    // Smoothed projection of v onto the unconstrained edge space: the plain
    // L2 projection of a tangentially discontinuous field does not control
    // the curl seminorm, so the projector carries a fixed h^2 curl penalty.
    geometry::QuadratureRule q = geometry::quad_rule(3, 2);
    std::vector<linalg::Triplet> mt, st, regt;
    const double tau = mesh.mesh_size() * mesh.mesh_size();
    VecX rhs = VecX::Zero(edges->count());
    for (int c = 0; c < mesh.cell_count(); ++c) {
        fem::CellGeom g = fem::cell_geometry(mesh, c);
        double scale = g.volume / (1.0 / 6.0);
        fem::EdgeBasis b0 = fem::edge_eval(mesh, g, c, *edges, {0.25, 0.25, 0.25, 0.25});
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                st.push_back({edges->cell_edges[c][i], edges->cell_edges[c][j],
                              g.volume * b0.curl[i].dot(b0.curl[j])});
        for (std::size_t kq = 0; kq < q.size(); ++kq) {
            fem::EdgeBasis b = fem::edge_eval(mesh, g, c, *edges, q.points[kq]);
            double w = q.weights[kq] * scale;
            for (int i = 0; i < 6; ++i) {
                rhs[edges->cell_edges[c][i]] += w * b.value[i].dot(v[c]);
                for (int j = 0; j < 6; ++j)
                    mt.push_back({edges->cell_edges[c][i], edges->cell_edges[c][j],
                                  w * b.value[i].dot(b.value[j])});
            }
        }
    }
    auto m = linalg::assemble_csr(edges->count(), edges->count(), mt);
    auto s = linalg::assemble_csr(edges->count(), edges->count(), st);
    regt = mt;
    for (const auto& t : st) regt.push_back({t.row, t.col, tau * t.value});
    auto reg = linalg::assemble_csr(edges->count(), edges->count(), regt);
    VecX z = linalg::factor_solve(reg, rhs);

    BetaDualityReport r;
    r.alpha = alpha;
    r.rayleigh = z.dot(s.multiply(z)) / z.dot(m.multiply(z));
    r.rel_gap = std::abs(r.rayleigh - alpha) / alpha;
    double vdotnu_sq = 0.0;
    for (int f = 0; f < mesh.facet_count(); ++f) {
        double d = v[mesh.facets[f].cell].dot(mesh.facets[f].normal);
        vdotnu_sq += mesh.facets[f].measure * d * d;
    }
    r.vdotnu_rel = std::sqrt(vdotnu_sq) / std::sqrt(v_l2_sq);
    return r;
}

} // namespace beltlab::eig3d
