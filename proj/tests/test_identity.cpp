#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "beltlab/fields/field.hpp"
#include "beltlab/fields/weight.hpp"
#include "beltlab/geometry/generate.hpp"
#include "beltlab/identity/checks.hpp"
#include "beltlab/linalg/roots.hpp"

using namespace beltlab;
using namespace beltlab::identity;
using geometry::DomainSpec;
using geometry::generate_mesh;

namespace {

class Scaled final : public fields::VectorField {
public:
    Scaled(std::shared_ptr<fields::VectorField> base, double s)
        : VectorField(base->dimension(), "scaled"), base_(std::move(base)), s_(s) {}
    Vec3 eval(const Vec3& x) const override { return s_ * base_->eval(x); }
    bool has_analytic_curl() const override { return base_->has_analytic_curl(); }
    bool has_analytic_div() const override { return base_->has_analytic_div(); }
    Vec3 curl(const Vec3& x) const override { return s_ * base_->curl(x); }
    double divergence(const Vec3& x) const override { return s_ * base_->divergence(x); }

private:
    std::shared_ptr<fields::VectorField> base_;
    double s_;
};

double rnd(std::mt19937_64& rng) { return 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0; }

} // namespace

TEST_CASE("green identity: constant field, quadratic weight, unit cube") {
    auto u = fields::make_polynomial_field({{0, 0, 0, 1.0}}, {}, {});
    auto phi = fields::make_power_weight(0.0);
    auto cube = generate_mesh(DomainSpec::parse("cube"), 3);
    auto r = check_green_curl(*u, *phi, cube, 3);
    CHECK(std::abs(r.lhs_total) <= 1e-13);
    CHECK(std::abs(r.rhs_total) <= 1e-12);
    double vol = r.term("vol_laplacian") + r.term("vol_hessian");
    double sur = r.term("sur_grad_nu") + r.term("sur_cross");
    CHECK(vol == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sur == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(r.term("sur_grad_nu") == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(!r.used_fd_curl);
}

TEST_CASE("green identity: zero field gives all-zero terms") {
    auto u = fields::make_polynomial_field({}, {}, {}, 2);
    auto phi = fields::make_power_weight(0.0, 2);
    auto sq = generate_mesh(DomainSpec::parse("square"), 3);
    auto r = check_green_curl(*u, *phi, sq, 2);
    for (const auto& [k, v] : r.terms) CHECK(v == 0.0);
    CHECK(r.abs_residual == 0.0);
}

TEST_CASE("green identity: exactness for polynomial data at order 5") {
    // cube: deg-2 field, deg-3 weight with full 3D coupling
    auto u3 = fields::make_polynomial_field({{2, 0, 0, 1.0}, {0, 1, 1, -2.0}, {0, 0, 0, 0.5}},
                                            {{1, 1, 0, 3.0}, {0, 0, 2, 1.0}},
                                            {{1, 0, 1, -1.0}, {0, 2, 0, 2.0}});
    fields::Polynomial3 p3{{3, 0, 0, 1.0}, {1, 1, 1, -2.0}, {0, 2, 0, 1.5},
                           {0, 0, 1, 1.0}, {2, 0, 1, 0.7}};
    auto phi3 = fields::make_polynomial_weight(p3);
    auto cube = generate_mesh(DomainSpec::parse("cube"), 3);
    CHECK(check_green_curl(*u3, *phi3, cube, 5).rel_residual <= 1e-10);

    // square: planar field and weight (the 2D identity requires both)
    auto u2 = fields::make_polynomial_field({{2, 0, 0, 1.0}, {0, 1, 0, -2.0}, {0, 0, 0, 0.5}},
                                            {{1, 1, 0, 3.0}, {0, 2, 0, 1.0}}, {}, 2);
    fields::Polynomial3 p2{{3, 0, 0, 1.0}, {1, 1, 0, -2.0}, {0, 2, 0, 1.5}, {1, 0, 0, 1.0}};
    auto phi2 = fields::make_polynomial_weight(p2, 2);
    auto sq = generate_mesh(DomainSpec::parse("square"), 3);
    CHECK(check_green_curl(*u2, *phi2, sq, 5).rel_residual <= 1e-10);
}

TEST_CASE("green identity: quadrature-only residual converges at order >= 2") {
    auto u = fields::make_trig_beltrami(1.0);
    auto phi = fields::make_power_weight(0.0);
    std::vector<double> errs;
    for (int n : {2, 4, 8}) {
        auto cube = generate_mesh(DomainSpec::parse("cube"), n);
        auto r = check_green_curl(*u, *phi, cube, 2);
        errs.push_back(r.rel_residual);
    }
    // order >= 2 until the residual sits at the rounding floor
    for (int i = 0; i + 1 < 3; ++i) {
        CAPTURE(i);
        CHECK(errs[i + 1] <= std::max(errs[i] / 4.0, 1e-13));
    }
}

TEST_CASE("green identity: 2d mesh with planar weight") {
    auto u = fields::make_polynomial_field({{0, 1, 0, 1.0}, {2, 0, 0, 0.5}},
                                           {{1, 0, 0, -1.0}, {0, 2, 0, 1.0}}, {}, 2);
    fields::Polynomial3 p{{2, 0, 0, 0.5}, {0, 2, 0, 0.5}, {1, 1, 0, 1.0}, {3, 0, 0, 0.2}};
    auto phi = fields::make_polynomial_weight(p, 2);
    auto disk = generate_mesh(DomainSpec::parse("disk"), 6);
    auto r = check_green_curl(*u, *phi, disk, 5);
    CHECK(r.rel_residual <= 1e-10);
}

TEST_CASE("weighted identity: alpha=0 constant field on cube") {
    auto u = fields::make_polynomial_field({{0, 0, 0, 1.0}}, {}, {});
    auto cube = generate_mesh(DomainSpec::parse("cube"), 3);
    auto r = check_weighted(*u, 0.0, cube, 3);
    CHECK(std::abs(r.term("e1")) <= 1e-13);
    CHECK(std::abs(r.term("e2")) <= 1e-12);
    CHECK(std::abs(r.term("e3")) <= 1e-12);
    CHECK(r.extras.at("e2_e3") <= 1e-12);
}

TEST_CASE("weighted identity: trig field on shells, alpha in {1,2}") {
    // asymptotic window n >= 4 (the acceptance study runs {4, 8, 16})
    auto u = fields::make_trig_beltrami(1.0);
    for (double alpha : {1.0, 2.0}) {
        std::vector<double> e12;
        for (int n : {4, 8}) {
            auto shell = generate_mesh(DomainSpec::parse("shell", 1.0, 2.0), n);
            auto r = check_weighted(*u, alpha, shell, 2);
            e12.push_back(r.extras.at("e1_e2"));
            CHECK(r.extras.at("e2_e3") <= 1e-12);
        }
        CAPTURE(alpha);
        CHECK(std::log2(e12[0] / e12[1]) >= 1.8);
    }
}

TEST_CASE("weighted identity: alpha=2 identity field, brute-force oracle") {
    auto u = fields::make_polynomial_field({{1, 0, 0, 1.0}}, {{0, 1, 0, 1.0}}, {{0, 0, 1, 1.0}});
    auto shell = generate_mesh(DomainSpec::parse("shell", 1.0, 2.0), 3);
    auto r = check_weighted(*u, 2.0, shell, 2);
    double volume = shell.total_volume();
    // hand computation: E1 = 3 V (div u = 3, radial projection is 1),
    // E2 = 1.5 V + 0.5 * flux(x) = 3 V
    CHECK(r.term("e1") == doctest::Approx(3.0 * volume).epsilon(1e-12));
    CHECK(r.term("e2") == doctest::Approx(3.0 * volume).epsilon(1e-11));
    CHECK(r.term("e3") == doctest::Approx(3.0 * volume).epsilon(1e-11));
    CHECK(r.rel_residual <= 1e-12);
}

TEST_CASE("weighted identity: origin inside domain rejected for alpha > 0") {
    auto u = fields::make_trig_beltrami(1.0);
    auto cube = generate_mesh(DomainSpec::parse("cube"), 2); // contains the origin corner region?
    // cube is [0,1]^3: origin on the closed boundary -> still excluded
    auto ball = geometry::translate(generate_mesh(DomainSpec::parse("ball"), 2),
                                    Vec3(0.2, 0.0, 0.0));
    CHECK_THROWS_AS(check_weighted(*u, 1.0, ball, 2), Error);
    // shifted cube strictly away from the origin is fine
    auto shifted = geometry::translate(cube, Vec3(2.0, 2.0, 2.0));
    CHECK_NOTHROW(check_weighted(*u, 1.0, shifted, 2));
}

TEST_CASE("lagrange pointwise: axis triple and spec arithmetic case") {
    CHECK(check_lagrange_pointwise(Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)) <= 1e-15);
    CHECK(check_lagrange_pointwise(Vec3(1, 1, 0), Vec3(2, 0, 0), Vec3(0, 0, 1)) <= 1e-15);
}

TEST_CASE("lagrange pointwise: 1e6 random triples below 1e-13 relative") {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 1000000; ++i) {
        Vec3 u(rnd(rng), rnd(rng), rnd(rng));
        Vec3 x(rnd(rng), rnd(rng), rnd(rng));
        Vec3 nu(rnd(rng), rnd(rng), rnd(rng));
        if (nu.norm() < 1e-6) continue;
        nu.normalize();
        double scale = std::max(1e-30, u.squaredNorm() * x.norm());
        worst = std::max(worst, check_lagrange_pointwise(u, x, nu) / scale);
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("curl of cross product: pointwise identity") {
    auto xfield =
        fields::make_polynomial_field({{1, 0, 0, 1.0}}, {{0, 1, 0, 1.0}}, {{0, 0, 1, 1.0}});
    auto e1 = fields::make_polynomial_field({{0, 0, 0, 1.0}}, {}, {});

    // a = b: both sides vanish identically
    CHECK(check_curl_cross_pointwise(*xfield, *xfield, Vec3(0.3, 0.1, -0.4)) == 0.0);

    // linear fields: FD exact to rounding
    CHECK(check_curl_cross_pointwise(*xfield, *e1, Vec3(0.7, -0.2, 0.5)) <= 1e-9);

    auto trig = fields::make_trig_beltrami(1.0);
    auto poly = fields::make_polynomial_field({{2, 0, 0, 1.0}}, {{0, 1, 1, 1.0}}, {{1, 0, 1, 1.0}});
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        Vec3 x(rnd(rng), rnd(rng), rnd(rng));
        CHECK(check_curl_cross_pointwise(*trig, *poly, x, 1e-4) <= 1e-6);
    }
}

TEST_CASE("theorem-1 functional on origin-centered star domains") {
    auto zero = fields::make_polynomial_field({}, {}, {});
    auto cube = geometry::translate(generate_mesh(DomainSpec::parse("cube"), 3),
                                    Vec3(-0.5, -0.5, -0.5));
    auto t0 = theorem1_functional(*zero, cube, 3);
    CHECK(t0.volume_term == 0.0);
    CHECK(t0.boundary_term == 0.0);
    CHECK(t0.tangential_trace_norm == 0.0);

    // trig Beltrami violates the tangential condition: both obstructions show
    auto trig = fields::make_trig_beltrami(1.0);
    auto t1 = theorem1_functional(*trig, cube, 4);
    CHECK(t1.volume_term > 0.1);
    CHECK(t1.tangential_trace_norm > 0.1);

    // spheromak is normal-tangent (u.nu = 0) but u x nu stays away from zero
    double lam = linalg::find_root_bracketed([](double x) { return std::tan(x) - x; },
                                             M_PI + 0.01, 1.5 * M_PI - 0.01);
    auto sph = fields::make_spheromak(lam);
    auto ball = generate_mesh(DomainSpec::parse("ball"), 3);
    auto t2 = theorem1_functional(*sph, ball, 4);
    CHECK(t2.tangential_trace_norm > 0.1);
}

TEST_CASE("eigen identity: zero field and analytic spheromak") {
    auto ball = generate_mesh(DomainSpec::parse("ball"), 3);
    CellField zero{[](int, const Vec3&) { return Vec3::Zero(); }};
    auto r0 = eigen_identity_check(zero, zero, 5.0, ball, 2);
    CHECK(r0.residual == 0.0);

    double lam = linalg::find_root_bracketed([](double x) { return std::tan(x) - x; },
                                             M_PI + 0.01, 1.5 * M_PI - 0.01);
    auto sph = fields::make_spheromak(lam);
    CellField u{[&](int, const Vec3& x) { return sph->eval(x); }};
    CellField cu{[&](int, const Vec3& x) { return sph->curl(x); }};
    auto r = eigen_identity_check(u, cu, lam * lam, ball, 3);
    // curl u = lambda u is tangent but nonzero on the sphere: the curl
    // boundary term is strictly positive and the residual equals
    // 2 lambda^2 int |u|^2 plus discretization error
    CHECK(r.curl_boundary_term > 0.0);
    double l2 = geometry::integrate_volume(
        ball, [&](const Vec3& x) { return sph->eval(x).squaredNorm(); }, 3);
    CHECK(r.residual == doctest::Approx(2.0 * lam * lam * l2).epsilon(1e-6));
}

TEST_CASE("scaling covariance: every green term scales by s^2") {
    auto base = fields::make_trig_beltrami(1.0);
    auto phi = fields::make_power_weight(0.0);
    auto cube = generate_mesh(DomainSpec::parse("cube"), 2);
    auto r1 = check_green_curl(*base, *phi, cube, 3);
    for (double s : {2.0, 10.0}) {
        Scaled scaled(base, s);
        auto rs = check_green_curl(scaled, *phi, cube, 3);
        for (std::size_t i = 0; i < r1.terms.size(); ++i) {
            CAPTURE(r1.terms[i].first);
            CHECK(rs.terms[i].second ==
                  doctest::Approx(s * s * r1.terms[i].second).epsilon(1e-12));
        }
    }
}
