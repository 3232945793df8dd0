#include "beltlab/geometry/generate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace beltlab::geometry {

DomainSpec DomainSpec::parse(const std::string& name, double r0, double r1) {
    DomainSpec s;
    if (name == "square") s.kind = Domain::Square;
    else if (name == "disk") s.kind = Domain::Disk;
    else if (name == "lshape") s.kind = Domain::Lshape;
    else if (name == "annulus") s.kind = Domain::Annulus;
    else if (name == "cube") s.kind = Domain::Cube;
    else if (name == "ball") s.kind = Domain::Ball;
    else if (name == "shell") s.kind = Domain::Shell;
    else throw Error("unknown domain descriptor '" + name + "'");
    if (s.kind == Domain::Annulus || s.kind == Domain::Shell) {
        if (!(r0 > 0.0) || !(r0 < r1))
            throw Error("domain " + name + ": 0 < r0 < r1 required");
        s.r0 = r0;
        s.r1 = r1;
    }
    return s;
}

std::string DomainSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
    case Domain::Square: return "square";
    case Domain::Disk: return "disk";
    case Domain::Lshape: return "lshape";
    case Domain::Cube: return "cube";
    case Domain::Ball: return "ball";
    case Domain::Annulus: os << "annulus(" << r0 << "," << r1 << ")"; return os.str();
    case Domain::Shell: os << "shell(" << r0 << "," << r1 << ")"; return os.str();
    }
    return "?";
}

int DomainSpec::dimension() const {
    switch (kind) {
    case Domain::Square:
    case Domain::Disk:
    case Domain::Lshape:
    case Domain::Annulus: return 2;
    default: return 3;
    }
}

namespace {

// maps the square/cube [-1,1]^d onto the unit disk/ball: direction preserved,
// radius replaced by the sup-norm, so grid boundary vertices land exactly on
// the sphere
Vec3 round_to_ball(const Vec3& p, int dim) {
    double sup = std::max({std::abs(p.x()), std::abs(p.y()), dim == 3 ? std::abs(p.z()) : 0.0});
    double nrm = p.norm();
    if (nrm < 1e-15) return Vec3::Zero();
    return p * (sup / nrm);
}

SimplicialMesh grid_2d(int nx, int ny, double x0, double y0, double hx, double hy,
                       const std::function<bool(double, double)>& keep,
                       const std::function<Vec3(const Vec3&)>& map, std::string tag) {
    std::vector<Vec3> verts;
    std::vector<int> vid(static_cast<std::size_t>((nx + 1) * (ny + 1)), -1);
    auto idx = [&](int i, int j) { return i * (ny + 1) + j; };
    std::vector<std::array<int, 4>> cells;
    auto ensure = [&](int i, int j) {
        int& id = vid[idx(i, j)];
        if (id < 0) {
            id = static_cast<int>(verts.size());
            verts.push_back(map(Vec3(x0 + i * hx, y0 + j * hy, 0.0)));
        }
        return id;
    };
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            if (!keep(x0 + (i + 0.5) * hx, y0 + (j + 0.5) * hy)) continue;
            int v00 = ensure(i, j), v10 = ensure(i + 1, j);
            int v11 = ensure(i + 1, j + 1), v01 = ensure(i, j + 1);
            cells.push_back({v00, v10, v11, -1});
            cells.push_back({v00, v11, v01, -1});
        }
    return finalize_mesh(2, std::move(verts), std::move(cells), std::move(tag));
}

SimplicialMesh grid_3d(int n, double x0, double h, const std::function<Vec3(const Vec3&)>& map,
                       std::string tag) {
    std::vector<Vec3> verts;
    verts.reserve(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1));
    auto idx = [&](int i, int j, int k) { return (i * (n + 1) + j) * (n + 1) + k; };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k)
                verts.push_back(map(Vec3(x0 + i * h, x0 + j * h, x0 + k * h)));

    // Kuhn decomposition: six tetrahedra per hex, one per axis permutation,
    // face-compatible across neighboring hexes
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<std::array<int, 4>> cells;
    cells.reserve(static_cast<std::size_t>(6) * n * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (const auto& p : perms) {
                    std::array<int, 3> at{i, j, k};
                    std::array<int, 4> tet;
                    tet[0] = idx(at[0], at[1], at[2]);
                    for (int s = 0; s < 3; ++s) {
                        at[p[s]] += 1;
                        tet[s + 1] = idx(at[0], at[1], at[2]);
                    }
                    cells.push_back(tet);
                }
    return finalize_mesh(3, std::move(verts), std::move(cells), std::move(tag));
}

SimplicialMesh annulus_mesh(double r0, double r1, int n) {
    const int nr = n;
    const int nt = 8 * n;
    std::vector<Vec3> verts;
    for (int i = 0; i <= nr; ++i) {
        double r = r0 + (r1 - r0) * i / nr;
        for (int j = 0; j < nt; ++j) {
            double th = 2.0 * M_PI * j / nt;
            verts.emplace_back(r * std::cos(th), r * std::sin(th), 0.0);
        }
    }
    auto idx = [&](int i, int j) { return i * nt + (j % nt); };
    std::vector<std::array<int, 4>> cells;
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j) {
            int v00 = idx(i, j), v10 = idx(i + 1, j);
            int v11 = idx(i + 1, j + 1), v01 = idx(i, j + 1);
            cells.push_back({v00, v10, v11, -1});
            cells.push_back({v00, v11, v01, -1});
        }
    std::ostringstream tag;
    tag << "annulus(" << r0 << "," << r1 << ") n=" << n;
    return finalize_mesh(2, std::move(verts), std::move(cells), tag.str());
}

// Geodesic sphere from octahedron subdivision. Vertices are welded through a
// canonical corner-combination key so shared edges agree bit-for-bit.
struct SphereSurface {
    std::vector<Vec3> verts;
    std::vector<std::array<int, 3>> tris;
};

SphereSurface octa_sphere(int n) {
    const Vec3 corners[6] = {Vec3(1, 0, 0),  Vec3(-1, 0, 0), Vec3(0, 1, 0),
                             Vec3(0, -1, 0), Vec3(0, 0, 1),  Vec3(0, 0, -1)};
    static const int faces[8][3] = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                                    {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
    SphereSurface s;
    std::map<std::vector<std::pair<int, int>>, int> weld;
    auto vertex_id = [&](const std::array<int, 3>& f, int i, int j, int k) {
        std::vector<std::pair<int, int>> key;
        if (i > 0) key.emplace_back(f[0], i);
        if (j > 0) key.emplace_back(f[1], j);
        if (k > 0) key.emplace_back(f[2], k);
        std::sort(key.begin(), key.end());
        auto it = weld.find(key);
        if (it != weld.end()) return it->second;
        Vec3 p = Vec3::Zero();
        for (auto [c, w] : key) p += double(w) / n * corners[c];
        p.normalize();
        int id = static_cast<int>(s.verts.size());
        s.verts.push_back(p);
        weld.emplace(std::move(key), id);
        return id;
    };
    for (const auto& fc : faces) {
        std::array<int, 3> f{fc[0], fc[1], fc[2]};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j + i < n; ++j) {
                int k = n - i - j;
                int a = vertex_id(f, i, j, k);
                int b = vertex_id(f, i + 1, j, k - 1);
                int c = vertex_id(f, i, j + 1, k - 1);
                s.tris.push_back({a, b, c});
                if (j + i < n - 1) {
                    int d = vertex_id(f, i + 1, j + 1, k - 2);
                    s.tris.push_back({b, d, c});
                }
            }
    }
    return s;
}

SimplicialMesh shell_mesh(double r0, double r1, int n) {
    SphereSurface s = octa_sphere(n);
    const int layers = n;
    const int snv = static_cast<int>(s.verts.size());
    std::vector<Vec3> verts;
    verts.reserve(static_cast<std::size_t>(snv) * (layers + 1));
    for (int l = 0; l <= layers; ++l) {
        double r = r0 + (r1 - r0) * l / layers;
        for (const auto& v : s.verts) verts.push_back(r * v);
    }
    std::vector<std::array<int, 4>> cells;
    cells.reserve(s.tris.size() * layers * 3);
    for (int l = 0; l < layers; ++l) {
        for (const auto& t : s.tris) {
            // prism between layers l and l+1; per-quad diagonals through the
            // globally smallest corner keep neighboring prisms conforming
            std::array<int, 3> bot{t[0] + l * snv, t[1] + l * snv, t[2] + l * snv};
            std::array<int, 3> top{bot[0] + snv, bot[1] + snv, bot[2] + snv};
            int r = 0;
            for (int q = 1; q < 3; ++q)
                if (bot[q] < bot[r]) r = q;
            std::array<int, 3> a{bot[r], bot[(r + 1) % 3], bot[(r + 2) % 3]};
            std::array<int, 3> b{top[r], top[(r + 1) % 3], top[(r + 2) % 3]};
            if (a[1] < a[2]) {
                cells.push_back({a[0], a[1], a[2], b[2]});
                cells.push_back({a[0], a[1], b[2], b[1]});
                cells.push_back({a[0], b[1], b[2], b[0]});
            } else {
                cells.push_back({a[0], a[1], a[2], b[1]});
                cells.push_back({a[0], b[1], a[2], b[2]});
                cells.push_back({a[0], b[1], b[2], b[0]});
            }
        }
    }
    std::ostringstream tag;
    tag << "shell(" << r0 << "," << r1 << ") n=" << n;
    return finalize_mesh(3, std::move(verts), std::move(cells), tag.str());
}

} // namespace

SimplicialMesh generate_mesh(const DomainSpec& spec, int n) {
    if (n < 1) throw Error("generate_mesh: refinement level must be >= 1");
    auto ident = [](const Vec3& p) { return p; };
    std::string tag = spec.describe() + " n=" + std::to_string(n);
    switch (spec.kind) {
    case Domain::Square:
        return grid_2d(n, n, 0.0, 0.0, 1.0 / n, 1.0 / n, [](double, double) { return true; },
                       ident, tag);
    case Domain::Lshape:
        return grid_2d(2 * n, 2 * n, 0.0, 0.0, 1.0 / n, 1.0 / n,
                       [](double x, double y) { return !(x > 1.0 && y > 1.0); }, ident, tag);
    case Domain::Disk:
        return grid_2d(2 * n, 2 * n, -1.0, -1.0, 1.0 / n, 1.0 / n,
                       [](double, double) { return true; },
                       [](const Vec3& p) { return round_to_ball(p, 2); }, tag);
    case Domain::Cube:
        return grid_3d(n, 0.0, 1.0 / n, ident, tag);
    case Domain::Ball:
        return grid_3d(2 * n, -1.0, 1.0 / n,
                       [](const Vec3& p) { return round_to_ball(p, 3); }, tag);
    case Domain::Annulus:
        return annulus_mesh(spec.r0, spec.r1, n);
    case Domain::Shell:
        return shell_mesh(spec.r0, spec.r1, n);
    }
    throw Error("generate_mesh: unreachable");
}

} // namespace beltlab::geometry
