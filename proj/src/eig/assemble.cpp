#include "assemble.hpp"

namespace beltlab::eig_detail {

using geometry::SimplicialMesh;

Reduction Reduction::keep(const std::vector<char>& keep_mask) {
    Reduction r;
    r.full_to_red.assign(keep_mask.size(), -1);
    for (std::size_t i = 0; i < keep_mask.size(); ++i)
        if (keep_mask[i]) {
            r.full_to_red[i] = static_cast<int>(r.red_to_full.size());
            r.red_to_full.push_back(static_cast<int>(i));
        }
    return r;
}

std::vector<linalg::Triplet> Reduction::reduce(const std::vector<linalg::Triplet>& t) const {
    std::vector<linalg::Triplet> out;
    out.reserve(t.size());
    for (const auto& e : t) {
        int r = full_to_red[e.row], c = full_to_red[e.col];
        if (r >= 0 && c >= 0) out.push_back({r, c, e.value});
    }
    return out;
}

VecX Reduction::expand(const VecX& red) const {
    VecX f = VecX::Zero(full());
    for (int i = 0; i < reduced(); ++i) f[red_to_full[i]] = red[i];
    return f;
}

VecX Reduction::restrict_vec(const VecX& full_vec) const {
    VecX r(reduced());
    for (int i = 0; i < reduced(); ++i) r[i] = full_vec[red_to_full[i]];
    return r;
}

StokesBlocks assemble_stokes(const SimplicialMesh& mesh) {
    StokesBlocks out;
    const int dim = mesh.dim;
    const int nv = dim + 1;
    auto edges = std::make_shared<fem::EdgeTable>(fem::EdgeTable::build(mesh));
    const int nodes = mesh.vertex_count() + edges->count();
    out.nvel = nodes * dim;
    out.npressure = mesh.vertex_count();
    out.edges = edges;

    geometry::QuadratureRule q = geometry::quad_rule(dim, 4);
    const double ref = dim == 2 ? 0.5 : 1.0 / 6.0;

    out.velocity_boundary_node.assign(nodes, 0);
    for (int v = 0; v < mesh.vertex_count(); ++v)
        if (edges->boundary_vertex[v]) out.velocity_boundary_node[v] = 1;
    for (int e = 0; e < edges->count(); ++e)
        if (edges->boundary_edge[e]) out.velocity_boundary_node[mesh.vertex_count() + e] = 1;

    for (int c = 0; c < mesh.cell_count(); ++c) {
        fem::CellGeom g = fem::cell_geometry(mesh, c);
        const int nb = nv + edges->edges_per_cell;
        std::array<int, 10> node{};
        for (int i = 0; i < nv; ++i) node[i] = mesh.cells[c][i];
        for (int e = 0; e < edges->edges_per_cell; ++e)
            node[nv + e] = mesh.vertex_count() + edges->cell_edges[c][e];

        double scale = g.volume / ref;
        for (std::size_t k = 0; k < q.size(); ++k) {
            fem::P2Basis b = fem::p2_eval(mesh, g, dim, q.points[k]);
            double w = q.weights[k] * scale;
            for (int i = 0; i < nb; ++i) {
                for (int j = 0; j < nb; ++j) {
                    double stiff = w * b.grad[i].dot(b.grad[j]);
                    double mass = w * b.value[i] * b.value[j];
                    for (int comp = 0; comp < dim; ++comp) {
                        out.a.push_back({node[i] * dim + comp, node[j] * dim + comp, stiff});
                        out.m.push_back({node[i] * dim + comp, node[j] * dim + comp, mass});
                    }
                }
                // pressure coupling: int psi_p div(u); pressure basis = P1
                for (int p = 0; p < nv; ++p) {
                    double pv = q.points[k][p];
                    for (int comp = 0; comp < dim; ++comp)
                        out.b.push_back(
                            {mesh.cells[c][p], node[i] * dim + comp, w * pv * b.grad[i][comp]});
                }
            }
        }
    }
    return out;
}

MaxwellBlocks assemble_maxwell(const SimplicialMesh& mesh) {
    MaxwellBlocks out;
    const int dim = mesh.dim;
    const int nv = dim + 1;
    auto edges = std::make_shared<fem::EdgeTable>(fem::EdgeTable::build(mesh));
    out.nedge = edges->count();
    out.nvertex = mesh.vertex_count();
    out.edges = edges;

    geometry::QuadratureRule q = geometry::quad_rule(dim, 2);
    const double ref = dim == 2 ? 0.5 : 1.0 / 6.0;

    for (int c = 0; c < mesh.cell_count(); ++c) {
        fem::CellGeom g = fem::cell_geometry(mesh, c);
        const int ne = edges->edges_per_cell;
        double scale = g.volume / ref;

        // curls are constant per cell
        fem::EdgeBasis b0 = fem::edge_eval(mesh, g, c, *edges, {0.25, 0.25, 0.25, 0.25});
        for (int i = 0; i < ne; ++i)
            for (int j = 0; j < ne; ++j)
                out.s.push_back({edges->cell_edges[c][i], edges->cell_edges[c][j],
                                 g.volume * b0.curl[i].dot(b0.curl[j])});

        for (std::size_t k = 0; k < q.size(); ++k) {
            fem::EdgeBasis b = fem::edge_eval(mesh, g, c, *edges, q.points[k]);
            double w = q.weights[k] * scale;
            for (int i = 0; i < ne; ++i) {
                for (int j = 0; j < ne; ++j)
                    out.m.push_back({edges->cell_edges[c][i], edges->cell_edges[c][j],
                                     w * b.value[i].dot(b.value[j])});
                for (int p = 0; p < nv; ++p)
                    out.b.push_back(
                        {mesh.cells[c][p], edges->cell_edges[c][i], w * b.value[i].dot(g.grad[p])});
            }
        }
    }
    return out;
}

SaddleEigs solve_saddle(const std::vector<linalg::Triplet>& a,
                        const std::vector<linalg::Triplet>& b,
                        const std::vector<linalg::Triplet>& m, const Reduction& primary_red,
                        const Reduction& multiplier_red, int k, double shift, double tol,
                        std::uint64_t seed) {
    const int np = primary_red.reduced();
    const int nm = multiplier_red.reduced();
    const int n = np + nm;

    std::vector<linalg::Triplet> kt, nt;
    for (const auto& e : a) {
        int r = primary_red.full_to_red[e.row], c = primary_red.full_to_red[e.col];
        if (r >= 0 && c >= 0) kt.push_back({r, c, e.value});
    }
    for (const auto& e : b) { // e.row multiplier, e.col primary
        int r = multiplier_red.full_to_red[e.row], c = primary_red.full_to_red[e.col];
        if (r >= 0 && c >= 0) {
            kt.push_back({np + r, c, e.value});
            kt.push_back({c, np + r, e.value});
        }
    }
    for (const auto& e : m) {
        int r = primary_red.full_to_red[e.row], c = primary_red.full_to_red[e.col];
        if (r >= 0 && c >= 0) nt.push_back({r, c, e.value});
    }
    auto ks = linalg::assemble_csr(n, n, kt);
    auto ns = linalg::assemble_csr(n, n, nt);

    auto eg = linalg::gen_eig_smallest(ks, ns, k, shift, tol, seed);

    // constraint residual ||B u|| per pair, on the reduced system
    std::vector<linalg::Triplet> bt;
    for (const auto& e : b) {
        int r = multiplier_red.full_to_red[e.row], c = primary_red.full_to_red[e.col];
        if (r >= 0 && c >= 0) bt.push_back({r, c, e.value});
    }
    auto bs = linalg::assemble_csr(std::max(nm, 1), std::max(np, 1), bt);

    SaddleEigs out;
    out.info = eg;
    for (std::size_t i = 0; i < eg.eigenvalues.size(); ++i) {
        VecX up = eg.eigenvectors[i].head(np);
        VecX pp = eg.eigenvectors[i].tail(nm);
        out.constraint_residual.push_back(nm > 0 ? bs.multiply(up).norm() : 0.0);
        out.primary.push_back(primary_red.expand(up));
        out.multiplier.push_back(multiplier_red.expand(pp));
    }
    return out;
}

} // namespace beltlab::eig_detail
