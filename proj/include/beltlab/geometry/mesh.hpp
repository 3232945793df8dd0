#pragma once

#include <array>
#include <string>
#include <vector>

#include "beltlab/common.hpp"

namespace beltlab::geometry {

// One boundary facet: a segment (2D) or triangle (3D) of exactly one cell,
// with outward unit normal and measure (length / area).
struct BoundaryFacet {
    std::array<int, 3> v{-1, -1, -1}; // v[2] unused in 2D
    int cell = -1;
    Vec3 normal = Vec3::Zero();
    double measure = 0.0;
};

// Simplicial mesh of a planar or spatial domain. Vertices live in R^3 with
// x3 = 0 for 2D meshes. Cells are triangles (v[3] = -1) or tetrahedra,
// oriented to positive signed volume.
struct SimplicialMesh {
    int dim = 0;
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 4>> cells;
    std::vector<BoundaryFacet> facets;
    std::string domain_tag;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int cell_count() const { return static_cast<int>(cells.size()); }
    int facet_count() const { return static_cast<int>(facets.size()); }
    int verts_per_cell() const { return dim + 1; }

    double cell_volume(int c) const;
    Vec3 cell_centroid(int c) const;
    Vec3 facet_centroid(int f) const;
    double total_volume() const;

    // Longest edge over all cells.
    double mesh_size() const;

    bool contains(const Vec3& x, double tol = 1e-12) const;
};

SimplicialMesh translate(const SimplicialMesh& mesh, const Vec3& offset);

// Orients cells positively, derives boundary facets (faces incident to one
// cell) with outward normals, and validates every mesh invariant. All
// generators and the reader funnel through this.
SimplicialMesh finalize_mesh(int dim, std::vector<Vec3> vertices,
                             std::vector<std::array<int, 4>> cells, std::string tag);

// Throws Error naming the failed invariant: nonpositive cell volume, facet not
// on the boundary, non-watertight boundary, non-unit or inward normal, or a
// nonzero sum of measure-weighted normals.
void validate_mesh(const SimplicialMesh& mesh);

} // namespace beltlab::geometry
