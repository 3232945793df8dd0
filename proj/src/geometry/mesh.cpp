#include "beltlab/geometry/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace beltlab::geometry {

namespace {

double signed_volume(const SimplicialMesh& m, const std::array<int, 4>& cell, int dim) {
    const Vec3& a = m.vertices[cell[0]];
    const Vec3& b = m.vertices[cell[1]];
    const Vec3& c = m.vertices[cell[2]];
    if (dim == 2) {
        Vec3 u = b - a, v = c - a;
        return 0.5 * (u.x() * v.y() - u.y() * v.x());
    }
    const Vec3& d = m.vertices[cell[3]];
    return (b - a).cross(c - a).dot(d - a) / 6.0;
}

} // namespace

double SimplicialMesh::cell_volume(int c) const { return signed_volume(*this, cells[c], dim); }

Vec3 SimplicialMesh::cell_centroid(int c) const {
    Vec3 s = Vec3::Zero();
    for (int i = 0; i <= dim; ++i) s += vertices[cells[c][i]];
    return s / double(dim + 1);
}

Vec3 SimplicialMesh::facet_centroid(int f) const {
    Vec3 s = Vec3::Zero();
    for (int i = 0; i < dim; ++i) s += vertices[facets[f].v[i]];
    return s / double(dim);
}

double SimplicialMesh::total_volume() const {
    KahanSum s;
    for (int c = 0; c < cell_count(); ++c) s.add(cell_volume(c));
    return s.value();
}

double SimplicialMesh::mesh_size() const {
    double h = 0.0;
    for (const auto& cell : cells)
        for (int i = 0; i <= dim; ++i)
            for (int j = i + 1; j <= dim; ++j)
                h = std::max(h, (vertices[cell[i]] - vertices[cell[j]]).norm());
    return h;
}

bool SimplicialMesh::contains(const Vec3& x, double tol) const {
    auto simplex_vol = [&](const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
        if (dim == 2) {
            Vec3 u = b - a, v = c - a;
            return 0.5 * (u.x() * v.y() - u.y() * v.x());
        }
        return (b - a).cross(c - a).dot(d - a) / 6.0;
    };
    for (int c = 0; c < cell_count(); ++c) {
        const auto& cell = cells[c];
        double vol = cell_volume(c);
        bool inside = true;
        // all barycentric coordinates nonnegative (sub-simplex volume signs)
        for (int i = 0; i <= dim && inside; ++i) {
            std::array<Vec3, 4> p;
            for (int q = 0; q <= dim; ++q) p[q] = vertices[cell[q]];
            if (dim == 2) p[3] = Vec3::Zero();
            p[i] = x;
            if (simplex_vol(p[0], p[1], p[2], p[3]) < -tol * std::abs(vol)) inside = false;
        }
        if (inside) return true;
    }
    return false;
}

SimplicialMesh translate(const SimplicialMesh& mesh, const Vec3& offset) {
    SimplicialMesh out = mesh;
    for (auto& v : out.vertices) v += offset;
    out.domain_tag = mesh.domain_tag + " translated";
    return out;
}

namespace {

std::array<int, 3> cell_face(const std::array<int, 4>& cell, int opposite, int dim) {
    if (dim == 2) {
        // edge opposite vertex i, ordered
        static const int idx[3][2] = {{1, 2}, {2, 0}, {0, 1}};
        return {cell[idx[opposite][0]], cell[idx[opposite][1]], -1};
    }
    static const int idx[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
    return {cell[idx[opposite][0]], cell[idx[opposite][1]], cell[idx[opposite][2]]};
}

std::array<int, 3> face_key(std::array<int, 3> f) {
    if (f[2] < 0) { // 2D edge: keep the sentinel in the last slot
        if (f[0] > f[1]) std::swap(f[0], f[1]);
        return f;
    }
    std::sort(f.begin(), f.end());
    return f;
}

void facet_geometry(SimplicialMesh& m, int fi) {
    BoundaryFacet& f = m.facets[fi];
    const Vec3& a = m.vertices[f.v[0]];
    const Vec3& b = m.vertices[f.v[1]];
    Vec3 n;
    if (m.dim == 2) {
        Vec3 t = b - a;
        f.measure = t.norm();
        n = Vec3(t.y(), -t.x(), 0.0);
    } else {
        const Vec3& c = m.vertices[f.v[2]];
        Vec3 cr = (b - a).cross(c - a);
        f.measure = 0.5 * cr.norm();
        n = cr;
    }
    if (n.norm() == 0.0) throw Error("mesh: degenerate boundary facet");
    n.normalize();
    Vec3 toward = m.facet_centroid(fi) - m.cell_centroid(f.cell);
    if (n.dot(toward) < 0.0) n = -n;
    f.normal = n;
}

} // namespace

SimplicialMesh finalize_mesh(int dim, std::vector<Vec3> vertices,
                             std::vector<std::array<int, 4>> cells, std::string tag) {
    if (dim != 2 && dim != 3) throw Error("finalize_mesh: dim must be 2 or 3");
    SimplicialMesh m;
    m.dim = dim;
    m.vertices = std::move(vertices);
    m.cells = std::move(cells);
    m.domain_tag = std::move(tag);

    for (std::size_t c = 0; c < m.cells.size(); ++c) {
        double vol = signed_volume(m, m.cells[c], dim);
        if (vol < 0.0) {
            std::swap(m.cells[c][dim - 1], m.cells[c][dim]);
            vol = -vol;
        }
        if (!(vol > 0.0))
            throw Error("finalize_mesh: cell " + std::to_string(c) + " has zero volume");
    }

    // faces incident to exactly one cell form the boundary
    std::map<std::array<int, 3>, std::pair<int, int>> count; // key -> (count, cell)
    for (int c = 0; c < m.cell_count(); ++c)
        for (int i = 0; i <= dim; ++i) {
            auto key = face_key(cell_face(m.cells[c], i, dim));
            auto [it, fresh] = count.try_emplace(key, std::pair<int, int>{0, c});
            it->second.first += 1;
            if (fresh) it->second.second = c;
        }
    for (const auto& [key, cc] : count) {
        if (cc.first == 1) {
            BoundaryFacet f;
            f.v = key;
            f.cell = cc.second;
            m.facets.push_back(f);
        } else if (cc.first != 2) {
            throw Error("finalize_mesh: face shared by " + std::to_string(cc.first) + " cells");
        }
    }
    for (int f = 0; f < m.facet_count(); ++f) facet_geometry(m, f);
    validate_mesh(m);
    return m;
}

void validate_mesh(const SimplicialMesh& m) {
    if (m.dim != 2 && m.dim != 3) throw Error("mesh: dim must be 2 or 3");
    for (int c = 0; c < m.cell_count(); ++c) {
        for (int i = 0; i <= m.dim; ++i)
            if (m.cells[c][i] < 0 || m.cells[c][i] >= m.vertex_count())
                throw Error("mesh: cell " + std::to_string(c) + " vertex index out of range");
        if (!(m.cell_volume(c) > 0.0))
            throw Error("mesh: cell " + std::to_string(c) + " has nonpositive volume");
    }

    // boundary = faces incident to exactly one cell, and nothing else
    std::map<std::array<int, 3>, int> count;
    for (int c = 0; c < m.cell_count(); ++c)
        for (int i = 0; i <= m.dim; ++i) count[face_key(cell_face(m.cells[c], i, m.dim))] += 1;
    std::map<std::array<int, 3>, int> boundary;
    for (const auto& [key, n] : count) {
        if (n == 1) boundary[key] = 1;
        if (n > 2) throw Error("mesh: non-manifold face");
    }
    if (static_cast<int>(boundary.size()) != m.facet_count())
        throw Error("mesh: boundary facet list does not match cell faces (non-watertight)");
    for (int f = 0; f < m.facet_count(); ++f) {
        auto key = face_key(m.facets[f].v);
        if (!boundary.count(key)) throw Error("mesh: facet " + std::to_string(f) +
                                              " is not a boundary face (non-watertight)");
        if (std::abs(m.facets[f].normal.norm() - 1.0) > 1e-12)
            throw Error("mesh: facet " + std::to_string(f) + " normal not unit length");
        Vec3 toward = m.facet_centroid(f) - m.cell_centroid(m.facets[f].cell);
        if (m.facets[f].normal.dot(toward) <= 0.0)
            throw Error("mesh: facet " + std::to_string(f) + " normal points inward");
    }

    // divergence theorem on a constant field
    Vec3 flux = Vec3::Zero();
    double area = 0.0;
    for (const auto& f : m.facets) {
        flux += f.measure * f.normal;
        area += f.measure;
    }
    if (flux.norm() > 1e-10 * std::max(1.0, area))
        throw Error("mesh: sum of measure-weighted normals is " + std::to_string(flux.norm()));
}

} // namespace beltlab::geometry
