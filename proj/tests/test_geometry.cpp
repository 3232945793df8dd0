#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "beltlab/geometry/generate.hpp"
#include "beltlab/geometry/integrate.hpp"
#include "beltlab/geometry/io.hpp"
#include "beltlab/geometry/quadrature.hpp"
#include "beltlab/geometry/star.hpp"

using namespace beltlab;
using namespace beltlab::geometry;

namespace {

std::vector<SimplicialMesh> fixture_meshes() {
    std::vector<SimplicialMesh> ms;
    ms.push_back(generate_mesh(DomainSpec::parse("square"), 4));
    ms.push_back(generate_mesh(DomainSpec::parse("disk"), 4));
    ms.push_back(generate_mesh(DomainSpec::parse("lshape"), 3));
    ms.push_back(generate_mesh(DomainSpec::parse("annulus", 1.0, 2.0), 3));
    ms.push_back(generate_mesh(DomainSpec::parse("cube"), 3));
    ms.push_back(generate_mesh(DomainSpec::parse("ball"), 2));
    ms.push_back(generate_mesh(DomainSpec::parse("shell", 1.0, 2.0), 2));
    return ms;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("square n=2 entity counts") {
    auto m = generate_mesh(DomainSpec::parse("square"), 2);
    CHECK(m.vertex_count() == 9);
    CHECK(m.cell_count() == 8);
    CHECK(m.facet_count() == 8);
    CHECK(m.total_volume() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cube n=2 entity counts") {
    auto m = generate_mesh(DomainSpec::parse("cube"), 2);
    CHECK(m.vertex_count() == 27);
    CHECK(m.cell_count() == 48);
    CHECK(m.facet_count() == 48);
    CHECK(m.total_volume() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("disk area converges to pi at second order") {
    double prev_err = -1.0;
    for (int n : {4, 8, 16}) {
        auto m = generate_mesh(DomainSpec::parse("disk"), n);
        double err = std::abs(m.total_volume() - M_PI);
        if (prev_err > 0.0) {
            double order = std::log2(prev_err / err);
            CHECK(order > 1.7);
        }
        prev_err = err;
    }
}

TEST_CASE("ball volume converges to 4pi/3") {
    double prev_err = -1.0;
    for (int n : {2, 4}) {
        auto m = generate_mesh(DomainSpec::parse("ball"), n);
        double err = std::abs(m.total_volume() - 4.0 * M_PI / 3.0);
        if (prev_err > 0.0) CHECK(err < 0.4 * prev_err);
        prev_err = err;
    }
}

TEST_CASE("generated meshes satisfy every mesh invariant") {
    for (const auto& m : fixture_meshes()) {
        CAPTURE(m.domain_tag);
        CHECK_NOTHROW(validate_mesh(m));
        Vec3 flux = Vec3::Zero();
        for (const auto& f : m.facets) flux += f.measure * f.normal;
        CHECK(flux.norm() <= 1e-10);
        for (const auto& f : m.facets)
            CHECK(std::abs(f.normal.norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("unknown domain and bad radii rejected") {
    CHECK_THROWS_AS(DomainSpec::parse("torus"), Error);
    CHECK_THROWS_AS(DomainSpec::parse("annulus", 2.0, 1.0), Error);
    CHECK_THROWS_AS(generate_mesh(DomainSpec::parse("square"), 0), Error);
}

TEST_CASE("quadrature: spec-pinned small rules") {
    auto q21 = quad_rule(2, 1);
    REQUIRE(q21.size() == 1);
    CHECK(q21.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q21.points[0][0] == doctest::Approx(1.0 / 3).epsilon(1e-14));

    auto q22 = quad_rule(2, 2);
    REQUIRE(q22.size() == 3);

    auto q32 = quad_rule(3, 2);
    REQUIRE(q32.size() == 4);

    CHECK_THROWS_AS(quad_rule(2, 99), Error);
    CHECK_THROWS_AS(quad_rule(4, 2), Error);
}

TEST_CASE("quadrature integrates all monomials up to declared order") {
    for (int dim = 1; dim <= 3; ++dim) {
        for (int order = 1; order <= 6; ++order) {
            auto q = quad_rule(dim, order);
            for (double w : q.weights) CHECK(w > 0.0);
            double wsum = 0.0;
            for (double w : q.weights) wsum += w;
            double ref = dim == 1 ? 1.0 : (dim == 2 ? 0.5 : 1.0 / 6.0);
            CHECK(wsum == doctest::Approx(ref).epsilon(1e-13));

            for (int a = 0; a <= order; ++a)
                for (int b = 0; a + b <= order && (dim >= 2 || b == 0); ++b)
                    for (int c = 0; a + b + c <= order && (dim >= 3 || c == 0); ++c) {
                        double acc = 0.0;
                        for (std::size_t k = 0; k < q.size(); ++k) {
                            // cartesian from barycentric on the unit simplex
                            double x = q.points[k][1];
                            double y = dim >= 2 ? q.points[k][2] : 0.0;
                            double z = dim >= 3 ? q.points[k][3] : 0.0;
                            acc += q.weights[k] * std::pow(x, a) * std::pow(y, b) *
                                   std::pow(z, c);
                        }
                        double exact = reference_monomial_integral(dim, a, b, c);
                        CAPTURE(dim);
                        CAPTURE(order);
                        CAPTURE(a);
                        CAPTURE(b);
                        CAPTURE(c);
                        CHECK(std::abs(acc - exact) <= 1e-14 * std::max(1.0, std::abs(exact)));
                    }
        }
    }
}

TEST_CASE("integrate_volume basics") {
    auto sq = generate_mesh(DomainSpec::parse("square"), 4);
    CHECK(integrate_volume(sq, [](const Vec3&) { return 1.0; }, 1) ==
          doctest::Approx(1.0).epsilon(1e-14));

    auto cube = generate_mesh(DomainSpec::parse("cube"), 3);
    CHECK(integrate_volume(cube, [](const Vec3& x) { return x.x(); }, 1) ==
          doctest::Approx(0.5).epsilon(1e-12));

    // |x|^2 over the disk -> pi/2, O(n^-2) geometric error
    double prev = -1.0;
    for (int n : {8, 16}) {
        auto disk = generate_mesh(DomainSpec::parse("disk"), n);
        double v = integrate_volume(disk, [](const Vec3& x) { return x.squaredNorm(); }, 4);
        double err = std::abs(v - M_PI / 2.0);
        if (prev > 0.0) CHECK(err < 0.35 * prev);
        prev = err;
    }
}

TEST_CASE("integrate_boundary basics") {
    auto cube = generate_mesh(DomainSpec::parse("cube"), 2);
    CHECK(integrate_boundary(cube, [](const Vec3& x, const Vec3& nu) { return x.dot(nu); }, 2) ==
          doctest::Approx(3.0).epsilon(1e-12));

    auto sq = generate_mesh(DomainSpec::parse("square"), 3);
    CHECK(integrate_boundary(sq, [](const Vec3&, const Vec3&) { return 1.0; }, 1) ==
          doctest::Approx(4.0).epsilon(1e-13));

    // divergence theorem on the polygonal disk: integral x.nu = 2 area(polygon)
    auto disk = generate_mesh(DomainSpec::parse("disk"), 8);
    double flux = integrate_boundary(disk, [](const Vec3& x, const Vec3& nu) { return x.dot(nu); }, 2);
    CHECK(flux == doctest::Approx(2.0 * disk.total_volume()).epsilon(1e-12));
    CHECK(std::abs(flux - 2.0 * M_PI) < 0.05);
}

TEST_CASE("star kernel found on star-shaped fixtures, absent on annulus/shell") {
    auto sq = generate_mesh(DomainSpec::parse("square"), 4);
    auto rs = star_kernel(sq);
    REQUIRE(rs.has_value());
    CHECK(rs->center.x() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rs->center.y() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rs->margin == doctest::Approx(0.5).epsilon(1e-9));

    for (const auto& m : fixture_meshes()) {
        CAPTURE(m.domain_tag);
        auto r = star_kernel(m);
        bool starred = !(m.domain_tag.rfind("annulus", 0) == 0 ||
                         m.domain_tag.rfind("shell", 0) == 0);
        CHECK(r.has_value() == starred);
        if (r) {
            // translating the center to the origin makes x.nu >= -tol facet-wise
            auto t = translate(m, -r->center);
            double worst = 1e300;
            for (int f = 0; f < t.facet_count(); ++f)
                worst = std::min(worst, t.facet_centroid(f).dot(t.facets[f].normal));
            CHECK(worst >= r->margin - 1e-12);
        }
    }
}

TEST_CASE("lshape kernel agrees with grid oracle") {
    auto m = generate_mesh(DomainSpec::parse("lshape"), 4);
    auto r = star_kernel(m);
    REQUIRE(r.has_value());
    CHECK(r->margin == doctest::Approx(0.5).epsilon(1e-9));

    auto p = star_constraints(m);
    double best = -1e300;
    Vec3 arg = Vec3::Zero();
    for (int i = 0; i <= 80; ++i)
        for (int j = 0; j <= 80; ++j) {
            VecX x(2);
            x << 2.0 * i / 80, 2.0 * j / 80;
            double s = 1e300;
            for (std::size_t f = 0; f < p.normals.size(); ++f)
                s = std::min(s, p.offsets[f] - p.normals[f].dot(x));
            if (s > best) {
                best = s;
                arg = Vec3(x[0], x[1], 0);
            }
        }
    CHECK(best <= r->margin + 1e-9);
    CHECK((arg.head<2>() - r->center.head<2>()).norm() < 0.08);
}

TEST_CASE("mesh write/read round-trip is bit exact") {
    for (const auto& m : {generate_mesh(DomainSpec::parse("square"), 2),
                          generate_mesh(DomainSpec::parse("disk"), 3),
                          generate_mesh(DomainSpec::parse("shell", 1.0, 2.0), 1)}) {
        std::string path = temp_path("roundtrip.mesh");
        write_mesh(m, path);
        auto r = read_mesh(path);
        CHECK(r.dim == m.dim);
        CHECK(r.domain_tag == m.domain_tag);
        REQUIRE(r.vertex_count() == m.vertex_count());
        REQUIRE(r.cell_count() == m.cell_count());
        REQUIRE(r.facet_count() == m.facet_count());
        for (int i = 0; i < m.vertex_count(); ++i)
            CHECK(r.vertices[i] == m.vertices[i]); // bitwise
        for (int i = 0; i < m.cell_count(); ++i) CHECK(r.cells[i] == m.cells[i]);
        for (int i = 0; i < m.facet_count(); ++i) {
            CHECK(r.facets[i].v == m.facets[i].v);
            CHECK(r.facets[i].cell == m.facets[i].cell);
            CHECK(r.facets[i].normal == m.facets[i].normal);
            CHECK(r.facets[i].measure == m.facets[i].measure);
        }
        std::filesystem::remove(path);
    }
}

TEST_CASE("reader rejects negative volume cell with its index") {
    std::string path = temp_path("badvol.mesh");
    {
        std::ofstream f(path);
        f << "mesh 2 4 2 4\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 3 2\n0 1\n1 2\n2 3\n3 0\n";
    }
    // cell 1 = (0,3,2) is clockwise -> negative volume
    try {
        read_mesh(path);
        CHECK(false);
    } catch (const MeshFormatError& e) {
        CHECK(std::string(e.what()).find("cell 1") != std::string::npos);
        CHECK(e.line_number > 0);
    }
    std::filesystem::remove(path);
}

TEST_CASE("reader rejects non-watertight boundary") {
    std::string path = temp_path("leaky.mesh");
    {
        std::ofstream f(path);
        // boundary facet list misses one edge (3 instead of 4)
        f << "mesh 2 4 2 3\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 2 3\n0 1\n1 2\n2 3\n";
    }
    CHECK_THROWS_AS(read_mesh(path), MeshFormatError);
    std::filesystem::remove(path);

    std::string path2 = temp_path("interior.mesh");
    {
        std::ofstream f(path2);
        // lists the interior diagonal as a boundary facet
        f << "mesh 2 4 2 4\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 2 3\n0 1\n1 2\n2 3\n0 2\n";
    }
    CHECK_THROWS_AS(read_mesh(path2), MeshFormatError);
    std::filesystem::remove(path2);
}

TEST_CASE("reader reports malformed tokens with line numbers") {
    std::string path = temp_path("badtok.mesh");
    {
        std::ofstream f(path);
        f << "mesh 2 4 2 4\n0 0\n1 zap\n1 1\n0 1\n0 1 2\n0 2 3\n0 1\n1 2\n2 3\n3 0\n";
    }
    try {
        read_mesh(path);
        CHECK(false);
    } catch (const MeshFormatError& e) {
        CHECK(e.line_number == 3);
    }
    std::filesystem::remove(path);
}

TEST_CASE("origin containment test") {
    auto shell = generate_mesh(DomainSpec::parse("shell", 1.0, 2.0), 1);
    CHECK(!shell.contains(Vec3::Zero()));
    CHECK(shell.contains(Vec3(1.5, 0, 0)));
    auto cube = generate_mesh(DomainSpec::parse("cube"), 2);
    CHECK(cube.contains(Vec3(0.5, 0.5, 0.5)));
    CHECK(!cube.contains(Vec3(1.5, 0.5, 0.5)));
}
