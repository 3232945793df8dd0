#include "beltlab/eig/eig2d.hpp"

#include <cmath>

#include "assemble.hpp"

namespace beltlab::eig2d {

using eig_detail::Reduction;
using geometry::SimplicialMesh;

namespace {

ScalarEigs laplace_eigs(const SimplicialMesh& mesh, int k, bool dirichlet, double tol,
                        std::uint64_t seed, const char* kind) {
    auto a = fem::p1_stiffness(mesh);
    auto m = fem::p1_mass(mesh);
    auto table = fem::EdgeTable::build(mesh);

    std::vector<char> keep(mesh.vertex_count(), 1);
    if (dirichlet)
        for (int v = 0; v < mesh.vertex_count(); ++v)
            if (table.boundary_vertex[v]) keep[v] = 0;
    Reduction red = Reduction::keep(keep);

    std::vector<linalg::Triplet> at, mt;
    for (int r = 0; r < a.rows(); ++r)
        for (int idx = a.row_offsets()[r]; idx < a.row_offsets()[r + 1]; ++idx) {
            int rr = red.full_to_red[r], cc = red.full_to_red[a.col_indices()[idx]];
            if (rr >= 0 && cc >= 0) at.push_back({rr, cc, a.values()[idx]});
        }
    for (int r = 0; r < m.rows(); ++r)
        for (int idx = m.row_offsets()[r]; idx < m.row_offsets()[r + 1]; ++idx) {
            int rr = red.full_to_red[r], cc = red.full_to_red[m.col_indices()[idx]];
            if (rr >= 0 && cc >= 0) mt.push_back({rr, cc, m.values()[idx]});
        }
    auto ar = linalg::assemble_csr(red.reduced(), red.reduced(), at);
    auto mr = linalg::assemble_csr(red.reduced(), red.reduced(), mt);

    double shift = 0.0;
    if (!dirichlet) {
        // negative shift keeps the constant mode (eigenvalue 0) above it; the
        // scale comes from a Rayleigh quotient of the x-coordinate probe
        VecX probe(red.reduced());
        double mean = 0.0;
        for (int i = 0; i < red.reduced(); ++i) mean += mesh.vertices[red.red_to_full[i]].x();
        mean /= std::max(1, red.reduced());
        for (int i = 0; i < red.reduced(); ++i)
            probe[i] = mesh.vertices[red.red_to_full[i]].x() - mean;
        double num = probe.dot(ar.multiply(probe));
        double den = probe.dot(mr.multiply(probe));
        shift = -0.25 * std::max(num / std::max(den, 1e-300), 1e-3);
    }

    auto eg = linalg::gen_eig_smallest(ar, mr, k, shift, tol, seed);
    ScalarEigs out;
    out.info = eg;
    out.info.pencil_kind = kind;
    out.info.mesh_id = mesh.domain_tag;
    for (const auto& v : eg.eigenvectors) out.vertex_values.push_back(red.expand(v));
    return out;
}

} // namespace

ScalarEigs laplace_dirichlet_eigs(const SimplicialMesh& mesh, int k, double tol,
                                  std::uint64_t seed) {
    return laplace_eigs(mesh, k, true, tol, seed, "laplace-dirichlet");
}

ScalarEigs laplace_neumann_eigs(const SimplicialMesh& mesh, int k, double tol,
                                std::uint64_t seed) {
    return laplace_eigs(mesh, k, false, tol, seed, "laplace-neumann");
}

StokesEigs stokes_eigs_2d(const SimplicialMesh& mesh, int k, double tol, std::uint64_t seed) {
    auto blocks = eig_detail::assemble_stokes(mesh);
    const int dim = mesh.dim;

    std::vector<char> keep_vel(blocks.nvel, 1);
    for (int nidx = 0; nidx < static_cast<int>(blocks.velocity_boundary_node.size()); ++nidx)
        if (blocks.velocity_boundary_node[nidx])
            for (int c = 0; c < dim; ++c) keep_vel[nidx * dim + c] = 0;
    std::vector<char> keep_p(blocks.npressure, 1);
    keep_p[0] = 0; // pin the constant pressure mode

    Reduction vred = Reduction::keep(keep_vel);
    Reduction pred = Reduction::keep(keep_p);
    auto saddle = eig_detail::solve_saddle(blocks.a, blocks.b, blocks.m, vred, pred, k,
                                           /*shift=*/0.0, tol, seed);

    StokesEigs out;
    out.info = saddle.info;
    out.info.pencil_kind = "stokes";
    out.info.mesh_id = mesh.domain_tag;
    out.edges = blocks.edges;
    out.velocity = std::move(saddle.primary);
    out.pressure = std::move(saddle.multiplier);
    out.div_residual = std::move(saddle.constraint_residual);
    return out;
}

MaxwellEigs maxwell_eigs_2d(const SimplicialMesh& mesh, int k, double tol, std::uint64_t seed) {
    auto blocks = eig_detail::assemble_maxwell(mesh);

    std::vector<char> keep_edge(blocks.nedge, 1);
    for (int e = 0; e < blocks.nedge; ++e)
        if (blocks.edges->boundary_edge[e]) keep_edge[e] = 0; // tangential trace zero
    std::vector<char> keep_mult(blocks.nvertex, 1);
    for (int v = 0; v < blocks.nvertex; ++v)
        if (blocks.edges->boundary_vertex[v]) keep_mult[v] = 0;

    Reduction ered = Reduction::keep(keep_edge);
    Reduction mred = Reduction::keep(keep_mult);
    auto saddle = eig_detail::solve_saddle(blocks.s, blocks.b, blocks.m, ered, mred, k,
                                           /*shift=*/0.0, tol, seed);

    MaxwellEigs out;
    out.info = saddle.info;
    out.info.pencil_kind = "maxwell";
    out.info.mesh_id = mesh.domain_tag;
    out.edges = blocks.edges;
    out.edge_dofs = std::move(saddle.primary);
    out.multiplier = std::move(saddle.multiplier);
    out.divfree_residual = std::move(saddle.constraint_residual);
    for (const auto& p : out.multiplier) out.multiplier_norm.push_back(p.norm());
    return out;
}

namespace {

// shared binder for the P2 vector space in any dimension
identity::CellField bind_p2(const SimplicialMesh& mesh,
                            std::shared_ptr<const fem::EdgeTable> edges, VecX dofs, bool want_curl) {
    auto dofs_ptr = std::make_shared<VecX>(std::move(dofs));
    const SimplicialMesh* mp = &mesh;
    auto table = std::move(edges);
    return identity::CellField{[mp, table, dofs_ptr, want_curl](int c, const Vec3& x) {
        const int dim = mp->dim;
        const int nv = dim + 1;
        fem::CellGeom g = fem::cell_geometry(*mp, c);
        // barycentric coordinates of x in cell c
        std::array<double, 4> bary{};
        const Vec3& v0 = mp->vertices[mp->cells[c][0]];
        double rest = 1.0;
        for (int i = 1; i <= dim; ++i) {
            bary[i] = g.grad[i].dot(x - v0);
            rest -= bary[i];
        }
        bary[0] = rest;
        fem::P2Basis b = fem::p2_eval(*mp, g, dim, bary);
        const int nb = nv + (dim == 2 ? 3 : 6);
        std::array<int, 10> node{};
        for (int i = 0; i < nv; ++i) node[i] = mp->cells[c][i];
        for (int e = 0; e < (dim == 2 ? 3 : 6); ++e)
            node[nv + e] = mp->vertex_count() + table->cell_edges[c][e];
        Vec3 out = Vec3::Zero();
        if (!want_curl) {
            for (int i = 0; i < nb; ++i)
                for (int comp = 0; comp < dim; ++comp)
                    out[comp] += (*dofs_ptr)[node[i] * dim + comp] * b.value[i];
        } else {
            // curl of the vector field; z component only in 2D
            Vec3 d[3] = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()}; // grad of each component
            for (int i = 0; i < nb; ++i)
                for (int comp = 0; comp < dim; ++comp)
                    d[comp] += (*dofs_ptr)[node[i] * dim + comp] * b.grad[i];
            out = Vec3(d[2].y() - d[1].z(), d[0].z() - d[2].x(), d[1].x() - d[0].y());
        }
        return out;
    }};
}

identity::CellField bind_edge(const SimplicialMesh& mesh,
                              std::shared_ptr<const fem::EdgeTable> edges, VecX dofs,
                              bool want_curl) {
    auto dofs_ptr = std::make_shared<VecX>(std::move(dofs));
    const SimplicialMesh* mp = &mesh;
    auto table = std::move(edges);
    return identity::CellField{[mp, table, dofs_ptr, want_curl](int c, const Vec3& x) {
        const int dim = mp->dim;
        fem::CellGeom g = fem::cell_geometry(*mp, c);
        std::array<double, 4> bary{};
        const Vec3& v0 = mp->vertices[mp->cells[c][0]];
        double rest = 1.0;
        for (int i = 1; i <= dim; ++i) {
            bary[i] = g.grad[i].dot(x - v0);
            rest -= bary[i];
        }
        bary[0] = rest;
        fem::EdgeBasis b = fem::edge_eval(*mp, g, c, *table, bary);
        Vec3 out = Vec3::Zero();
        for (int e = 0; e < b.count; ++e) {
            double coef = (*dofs_ptr)[table->cell_edges[c][e]];
            out += coef * (want_curl ? b.curl[e] : b.value[e]);
        }
        return out;
    }};
}

} // namespace

identity::CellField p2_vector_value(const SimplicialMesh& mesh,
                                    std::shared_ptr<const fem::EdgeTable> edges, VecX dofs) {
    return bind_p2(mesh, std::move(edges), std::move(dofs), false);
}
identity::CellField p2_vector_curl(const SimplicialMesh& mesh,
                                   std::shared_ptr<const fem::EdgeTable> edges, VecX dofs) {
    return bind_p2(mesh, std::move(edges), std::move(dofs), true);
}
identity::CellField edge_value(const SimplicialMesh& mesh,
                               std::shared_ptr<const fem::EdgeTable> edges, VecX dofs) {
    return bind_edge(mesh, std::move(edges), std::move(dofs), false);
}
identity::CellField edge_curl(const SimplicialMesh& mesh,
                              std::shared_ptr<const fem::EdgeTable> edges, VecX dofs) {
    return bind_edge(mesh, std::move(edges), std::move(dofs), true);
}

} // namespace beltlab::eig2d
