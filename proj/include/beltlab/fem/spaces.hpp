#pragma once

#include <vector>

#include "beltlab/geometry/mesh.hpp"
#include "beltlab/linalg/sparse.hpp"

namespace beltlab::fem {

// Per-cell affine geometry: barycentric gradients and measure.
struct CellGeom {
    std::array<Vec3, 4> grad; // grad lambda_i, i = 0..dim
    double volume = 0.0;
};

CellGeom cell_geometry(const geometry::SimplicialMesh& mesh, int c);

// Global edge enumeration (vertex pairs sorted ascending). Shared by the P2
// and edge-element spaces.
struct EdgeTable {
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 6>> cell_edges; // per cell, local pair order
    std::vector<char> boundary_edge;
    std::vector<char> boundary_vertex;
    int edges_per_cell = 0;

    static EdgeTable build(const geometry::SimplicialMesh& mesh);

    int count() const { return static_cast<int>(edges.size()); }
};

// local vertex pairs in lexicographic order: 2D (0,1)(0,2)(1,2),
// 3D adds (0,3)(1,3)(2,3) interleaved as below
inline constexpr int kLocalPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
inline constexpr int kLocalPairs2d[3][2] = {{0, 1}, {0, 2}, {1, 2}};

// P1 scalar matrices over vertices.
linalg::SparseMat p1_stiffness(const geometry::SimplicialMesh& mesh);
linalg::SparseMat p1_mass(const geometry::SimplicialMesh& mesh);

// P2 scalar basis on one cell: values/gradients of the dim+1 vertex functions
// followed by the edge bump functions (local pair order).
struct P2Basis {
    int count = 0; // 6 in 2D, 10 in 3D
    std::array<double, 10> value{};
    std::array<Vec3, 10> grad{};
};
P2Basis p2_eval(const geometry::SimplicialMesh& mesh, const CellGeom& geom, int dim,
                const std::array<double, 4>& bary);

// Lowest-order edge element basis on one cell, one function per local pair,
// oriented by ascending global vertex index.
struct EdgeBasis {
    int count = 0;             // 3 in 2D, 6 in 3D
    std::array<Vec3, 6> value{};
    std::array<Vec3, 6> curl{}; // constant per cell; z component only in 2D
};
EdgeBasis edge_eval(const geometry::SimplicialMesh& mesh, const CellGeom& geom, int c,
                    const EdgeTable& table, const std::array<double, 4>& bary);

} // namespace beltlab::fem
