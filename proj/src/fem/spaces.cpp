#include "beltlab/fem/spaces.hpp"

#include <algorithm>
#include <map>

namespace beltlab::fem {

using geometry::SimplicialMesh;

CellGeom cell_geometry(const SimplicialMesh& mesh, int c) {
    CellGeom g;
    const auto& cell = mesh.cells[c];
    const Vec3& v0 = mesh.vertices[cell[0]];
    if (mesh.dim == 2) {
        Eigen::Matrix2d j;
        j.col(0) = (mesh.vertices[cell[1]] - v0).head<2>();
        j.col(1) = (mesh.vertices[cell[2]] - v0).head<2>();
        Eigen::Matrix2d inv = j.inverse();
        for (int i = 1; i <= 2; ++i) g.grad[i] = Vec3(inv(i - 1, 0), inv(i - 1, 1), 0.0);
        g.grad[0] = -g.grad[1] - g.grad[2];
        g.volume = 0.5 * j.determinant();
    } else {
        Mat3 j;
        for (int i = 1; i <= 3; ++i) j.col(i - 1) = mesh.vertices[cell[i]] - v0;
        Mat3 inv = j.inverse();
        for (int i = 1; i <= 3; ++i) g.grad[i] = inv.row(i - 1);
        g.grad[0] = -g.grad[1] - g.grad[2] - g.grad[3];
        g.volume = j.determinant() / 6.0;
    }
    return g;
}

EdgeTable EdgeTable::build(const SimplicialMesh& mesh) {
    EdgeTable t;
    t.edges_per_cell = mesh.dim == 2 ? 3 : 6;
    std::map<std::array<int, 2>, int> index;
    t.cell_edges.resize(mesh.cell_count());
    for (int c = 0; c < mesh.cell_count(); ++c) {
        t.cell_edges[c].fill(-1);
        for (int e = 0; e < t.edges_per_cell; ++e) {
            int a = mesh.dim == 2 ? kLocalPairs2d[e][0] : kLocalPairs[e][0];
            int b = mesh.dim == 2 ? kLocalPairs2d[e][1] : kLocalPairs[e][1];
            std::array<int, 2> key{mesh.cells[c][a], mesh.cells[c][b]};
            if (key[0] > key[1]) std::swap(key[0], key[1]);
            auto [it, fresh] = index.try_emplace(key, static_cast<int>(t.edges.size()));
            if (fresh) t.edges.push_back(key);
            t.cell_edges[c][e] = it->second;
        }
    }
    t.boundary_edge.assign(t.edges.size(), 0);
    t.boundary_vertex.assign(mesh.vertex_count(), 0);
    for (const auto& f : mesh.facets) {
        for (int i = 0; i < mesh.dim; ++i) t.boundary_vertex[f.v[i]] = 1;
        for (int i = 0; i < mesh.dim; ++i)
            for (int j = i + 1; j < mesh.dim; ++j) {
                std::array<int, 2> key{f.v[i], f.v[j]};
                if (key[0] > key[1]) std::swap(key[0], key[1]);
                auto it = index.find(key);
                if (it != index.end()) t.boundary_edge[it->second] = 1;
            }
    }
    return t;
}

namespace {

std::vector<linalg::Triplet> p1_triplets(const SimplicialMesh& mesh, bool stiffness) {
    std::vector<linalg::Triplet> trip;
    const int nv = mesh.dim + 1;
    for (int c = 0; c < mesh.cell_count(); ++c) {
        CellGeom g = cell_geometry(mesh, c);
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j) {
                double v;
                if (stiffness) v = g.volume * g.grad[i].dot(g.grad[j]);
                else v = g.volume * (i == j ? 2.0 : 1.0) / double((nv) * (nv + 1));
                trip.push_back({mesh.cells[c][i], mesh.cells[c][j], v});
            }
    }
    return trip;
}

} // namespace

linalg::SparseMat p1_stiffness(const SimplicialMesh& mesh) {
    return linalg::assemble_csr(mesh.vertex_count(), mesh.vertex_count(),
                                p1_triplets(mesh, true));
}

linalg::SparseMat p1_mass(const SimplicialMesh& mesh) {
    return linalg::assemble_csr(mesh.vertex_count(), mesh.vertex_count(),
                                p1_triplets(mesh, false));
}

P2Basis p2_eval(const SimplicialMesh& mesh, const CellGeom& geom, int dim,
                const std::array<double, 4>& bary) {
    P2Basis b;
    const int nv = dim + 1;
    const int ne = dim == 2 ? 3 : 6;
    b.count = nv + ne;
    for (int i = 0; i < nv; ++i) {
        b.value[i] = bary[i] * (2.0 * bary[i] - 1.0);
        b.grad[i] = (4.0 * bary[i] - 1.0) * geom.grad[i];
    }
    for (int e = 0; e < ne; ++e) {
        int i = dim == 2 ? kLocalPairs2d[e][0] : kLocalPairs[e][0];
        int j = dim == 2 ? kLocalPairs2d[e][1] : kLocalPairs[e][1];
        b.value[nv + e] = 4.0 * bary[i] * bary[j];
        b.grad[nv + e] = 4.0 * (bary[i] * geom.grad[j] + bary[j] * geom.grad[i]);
    }
    (void)mesh;
    return b;
}

EdgeBasis edge_eval(const SimplicialMesh& mesh, const CellGeom& geom, int c,
                    const EdgeTable& table, const std::array<double, 4>& bary) {
    EdgeBasis b;
    b.count = table.edges_per_cell;
    for (int e = 0; e < b.count; ++e) {
        int li = mesh.dim == 2 ? kLocalPairs2d[e][0] : kLocalPairs[e][0];
        int lj = mesh.dim == 2 ? kLocalPairs2d[e][1] : kLocalPairs[e][1];
        // orient by ascending global vertex id
        if (mesh.cells[c][li] > mesh.cells[c][lj]) std::swap(li, lj);
        b.value[e] = bary[li] * geom.grad[lj] - bary[lj] * geom.grad[li];
        b.curl[e] = 2.0 * geom.grad[li].cross(geom.grad[lj]);
    }
    return b;
}

} // namespace beltlab::fem
