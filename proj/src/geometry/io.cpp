#include "beltlab/geometry/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace beltlab::geometry {

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double parse_double(const std::string& tok, int line) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw MeshFormatError("bad floating point token '" + tok + "'", line);
    return v;
}

int parse_int(const std::string& tok, int line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw MeshFormatError("bad integer token '" + tok + "'", line);
    return v;
}

std::array<int, 3> face_key(std::array<int, 3> f) {
    if (f[2] < 0) { // 2D edge: keep the sentinel in the last slot
        if (f[0] > f[1]) std::swap(f[0], f[1]);
        return f;
    }
    std::sort(f.begin(), f.end());
    return f;
}

std::array<int, 3> tet_face(const std::array<int, 4>& cell, int opposite) {
    static const int idx[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
    return {cell[idx[opposite][0]], cell[idx[opposite][1]], cell[idx[opposite][2]]};
}

std::array<int, 3> tri_face(const std::array<int, 4>& cell, int opposite) {
    static const int idx[3][2] = {{1, 2}, {2, 0}, {0, 1}};
    return {cell[idx[opposite][0]], cell[idx[opposite][1]], -1};
}

} // namespace

void write_mesh(const SimplicialMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("write_mesh: cannot open '" + path + "'");
    if (!mesh.domain_tag.empty()) out << "# tag " << mesh.domain_tag << "\n";
    out << "mesh " << mesh.dim << " " << mesh.vertex_count() << " " << mesh.cell_count() << " "
        << mesh.facet_count() << "\n";
    for (const auto& v : mesh.vertices) {
        out << format_double(v.x()) << " " << format_double(v.y());
        if (mesh.dim == 3) out << " " << format_double(v.z());
        out << "\n";
    }
    for (const auto& c : mesh.cells) {
        out << c[0] << " " << c[1] << " " << c[2];
        if (mesh.dim == 3) out << " " << c[3];
        out << "\n";
    }
    for (const auto& f : mesh.facets) {
        out << f.v[0] << " " << f.v[1];
        if (mesh.dim == 3) out << " " << f.v[2];
        out << "\n";
    }
    if (!out) throw Error("write_mesh: write to '" + path + "' failed");
}

SimplicialMesh read_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("read_mesh: cannot open '" + path + "'");

    SimplicialMesh mesh;
    std::string line;
    int lineno = 0;
    int nv = -1, nc = -1, nbf = -1;
    std::string tag;

    auto next_tokens = [&](std::vector<std::string>& toks) {
        toks.clear();
        while (std::getline(in, line)) {
            ++lineno;
            if (line.rfind("# tag ", 0) == 0) {
                tag = line.substr(6);
                continue;
            }
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ss(line);
            std::string t;
            while (ss >> t) toks.push_back(t);
            if (!toks.empty()) return true;
        }
        return false;
    };

    std::vector<std::string> toks;
    if (!next_tokens(toks) || toks.size() != 5 || toks[0] != "mesh")
        throw MeshFormatError("expected header 'mesh <dim> <nv> <nc> <nbf>'", lineno);
    mesh.dim = parse_int(toks[1], lineno);
    nv = parse_int(toks[2], lineno);
    nc = parse_int(toks[3], lineno);
    nbf = parse_int(toks[4], lineno);
    if (mesh.dim != 2 && mesh.dim != 3) throw MeshFormatError("dim must be 2 or 3", lineno);
    if (nv < mesh.dim + 1 || nc < 1 || nbf < mesh.dim + 1)
        throw MeshFormatError("implausible entity counts", lineno);

    for (int i = 0; i < nv; ++i) {
        if (!next_tokens(toks) || static_cast<int>(toks.size()) != mesh.dim)
            throw MeshFormatError("expected " + std::to_string(mesh.dim) + " coordinates", lineno);
        Vec3 v = Vec3::Zero();
        for (int d = 0; d < mesh.dim; ++d) v[d] = parse_double(toks[d], lineno);
        mesh.vertices.push_back(v);
    }
    for (int i = 0; i < nc; ++i) {
        if (!next_tokens(toks) || static_cast<int>(toks.size()) != mesh.dim + 1)
            throw MeshFormatError("expected " + std::to_string(mesh.dim + 1) + " vertex indices",
                                  lineno);
        std::array<int, 4> c{-1, -1, -1, -1};
        for (int d = 0; d <= mesh.dim; ++d) {
            c[d] = parse_int(toks[d], lineno);
            if (c[d] < 0 || c[d] >= nv) throw MeshFormatError("vertex index out of range", lineno);
        }
        mesh.cells.push_back(c);
        double vol = mesh.cell_volume(i);
        if (!(vol > 0.0))
            throw MeshFormatError("cell " + std::to_string(i) + " has nonpositive volume", lineno);
    }

    // boundary faces implied by the cells
    std::map<std::array<int, 3>, std::pair<int, int>> counts;
    for (int c = 0; c < nc; ++c)
        for (int i = 0; i <= mesh.dim; ++i) {
            auto key = face_key(mesh.dim == 2 ? tri_face(mesh.cells[c], i)
                                              : tet_face(mesh.cells[c], i));
            auto [it, fresh] = counts.try_emplace(key, std::pair<int, int>{0, c});
            it->second.first += 1;
            if (fresh) it->second.second = c;
        }
    int boundary_faces = 0;
    for (const auto& [key, cc] : counts) {
        if (cc.first == 1) ++boundary_faces;
        else if (cc.first != 2)
            throw MeshFormatError("non-manifold interior face", lineno);
    }
    if (boundary_faces != nbf)
        throw MeshFormatError("boundary facet count " + std::to_string(nbf) +
                                  " does not match the " + std::to_string(boundary_faces) +
                                  " boundary faces of the cells (non-watertight)",
                              lineno);

    std::map<std::array<int, 3>, int> seen;
    for (int i = 0; i < nbf; ++i) {
        if (!next_tokens(toks) || static_cast<int>(toks.size()) != mesh.dim)
            throw MeshFormatError("expected " + std::to_string(mesh.dim) + " facet indices",
                                  lineno);
        BoundaryFacet f;
        for (int d = 0; d < mesh.dim; ++d) {
            f.v[d] = parse_int(toks[d], lineno);
            if (f.v[d] < 0 || f.v[d] >= nv) throw MeshFormatError("facet index out of range", lineno);
        }
        auto key = face_key(f.v);
        auto it = counts.find(key);
        if (it == counts.end() || it->second.first != 1)
            throw MeshFormatError("facet " + std::to_string(i) +
                                      " is not a boundary face of any cell (non-watertight)",
                                  lineno);
        if (seen.count(key))
            throw MeshFormatError("facet " + std::to_string(i) + " listed twice", lineno);
        seen[key] = 1;
        f.cell = it->second.second;
        mesh.facets.push_back(f);
    }
    if (next_tokens(toks)) throw MeshFormatError("trailing content", lineno);

    mesh.domain_tag = tag;
    for (int f = 0; f < mesh.facet_count(); ++f) {
        // recompute geometry; normals are never stored
        BoundaryFacet& bf = mesh.facets[f];
        const Vec3& a = mesh.vertices[bf.v[0]];
        const Vec3& b = mesh.vertices[bf.v[1]];
        Vec3 n;
        if (mesh.dim == 2) {
            Vec3 t = b - a;
            bf.measure = t.norm();
            n = Vec3(t.y(), -t.x(), 0.0);
        } else {
            const Vec3& c = mesh.vertices[bf.v[2]];
            Vec3 cr = (b - a).cross(c - a);
            bf.measure = 0.5 * cr.norm();
            n = cr;
        }
        if (n.norm() == 0.0) throw MeshFormatError("degenerate facet " + std::to_string(f), lineno);
        n.normalize();
        if (n.dot(mesh.facet_centroid(f) - mesh.cell_centroid(bf.cell)) < 0.0) n = -n;
        bf.normal = n;
    }
    validate_mesh(mesh);
    return mesh;
}

} // namespace beltlab::geometry
