#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "beltlab/eig/eig2d.hpp"
#include "beltlab/geometry/generate.hpp"
#include "beltlab/linalg/roots.hpp"

using namespace beltlab;
using namespace beltlab::eig2d;
using geometry::DomainSpec;
using geometry::generate_mesh;

namespace {

double bessel_j0_first_root() {
    return linalg::find_root_bracketed([](double x) { return linalg::bessel_j0(x); }, 2.0, 3.0);
}
double bessel_j1_first_root() {
    return linalg::find_root_bracketed([](double x) { return linalg::bessel_j1(x); }, 3.0, 4.5);
}
double bessel_j1p_first_root() {
    return linalg::find_root_bracketed([](double x) { return linalg::bessel_j1_prime(x); }, 1.0,
                                       2.5);
}

} // namespace

TEST_CASE("dirichlet laplacian: square and disk against oracles") {
    auto sq = generate_mesh(DomainSpec::parse("square"), 32);
    auto r = laplace_dirichlet_eigs(sq, 1);
    REQUIRE(r.info.eigenvalues.size() == 1);
    double oracle = 2.0 * M_PI * M_PI;
    CHECK(std::abs(r.info.eigenvalues[0] - oracle) / oracle < 0.01);
    CHECK(r.info.eigenvalues[0] > 0.0);

    auto disk = generate_mesh(DomainSpec::parse("disk"), 16);
    auto rd = laplace_dirichlet_eigs(disk, 1);
    double j0 = bessel_j0_first_root();
    CHECK(std::abs(rd.info.eigenvalues[0] - j0 * j0) / (j0 * j0) < 0.01);
}

TEST_CASE("neumann laplacian: zero mode plus second eigenvalue oracles") {
    auto sq = generate_mesh(DomainSpec::parse("square"), 32);
    auto r = laplace_neumann_eigs(sq, 2);
    REQUIRE(r.info.eigenvalues.size() == 2);
    CHECK(std::abs(r.info.eigenvalues[0]) <= 1e-8);
    double oracle = M_PI * M_PI;
    CHECK(std::abs(r.info.eigenvalues[1] - oracle) / oracle < 0.01);

    auto disk = generate_mesh(DomainSpec::parse("disk"), 16);
    auto rd = laplace_neumann_eigs(disk, 2);
    double jp = bessel_j1p_first_root();
    CHECK(std::abs(rd.info.eigenvalues[1] - jp * jp) / (jp * jp) < 0.01);
}

TEST_CASE("neumann: constant vector is a discrete zero mode") {
    auto sq = generate_mesh(DomainSpec::parse("square"), 8);
    auto a = fem::p1_stiffness(sq);
    VecX ones = VecX::Ones(sq.vertex_count());
    CHECK(a.multiply(ones).norm() <= 1e-10 * std::max(1.0, ones.norm()));
}

TEST_CASE("dirichlet eigenvalues decrease monotonically under refinement") {
    double prev = 1e300;
    for (int n : {8, 16, 32}) {
        auto sq = generate_mesh(DomainSpec::parse("square"), n);
        auto r = laplace_dirichlet_eigs(sq, 1);
        CHECK(r.info.eigenvalues[0] <= prev + 1e-10);
        prev = r.info.eigenvalues[0];
    }
}

TEST_CASE("stokes 2d: disk gamma_1 against the Bessel oracle") {
    auto disk = generate_mesh(DomainSpec::parse("disk"), 16);
    auto r = stokes_eigs_2d(disk, 1);
    REQUIRE(r.info.eigenvalues.size() == 1);
    double j1 = bessel_j1_first_root();
    double oracle = j1 * j1; // 14.68197
    CHECK(std::abs(r.info.eigenvalues[0] - oracle) / oracle < 0.02);
    REQUIRE(!r.div_residual.empty());
    CHECK(r.div_residual[0] <= 1e-8);
}

TEST_CASE("stokes 2d: square self-convergence at order >= 2") {
    std::vector<double> vals;
    for (int n : {8, 16, 32}) {
        auto sq = generate_mesh(DomainSpec::parse("square"), n);
        vals.push_back(stokes_eigs_2d(sq, 1).info.eigenvalues[0]);
    }
    double d1 = std::abs(vals[0] - vals[1]);
    double d2 = std::abs(vals[1] - vals[2]);
    CHECK(std::log2(d1 / d2) >= 2.0);
    // Richardson limit, p = 2 conservative estimate
    double extrap = vals[2] + (vals[2] - vals[1]) / 3.0;
    CHECK(std::abs(vals[2] - extrap) / extrap < 0.01);
}

TEST_CASE("maxwell 2d: alpha_1 equals the second Neumann eigenvalue") {
    double jp = bessel_j1p_first_root();
    struct Case {
        const char* domain;
        int n;
        double oracle;
    } cases[] = {{"square", 24, M_PI * M_PI}, {"disk", 12, jp * jp}};
    for (const auto& cs : cases) {
        CAPTURE(cs.domain);
        auto mesh = generate_mesh(DomainSpec::parse(cs.domain), cs.n);
        auto r = maxwell_eigs_2d(mesh, 1);
        REQUIRE(!r.info.eigenvalues.empty());
        double a1 = r.info.eigenvalues[0];
        CHECK(std::abs(a1 - cs.oracle) / cs.oracle < 0.02);
        CHECK(a1 > 0.0);
        CHECK(r.divfree_residual[0] <= 1e-8);
        CHECK(r.multiplier_norm[0] <= 1e-8);

        // remark check: alpha_1 matches mu_2 computed on the same mesh within
        // 3x the combined discretization error estimate
        auto neu = laplace_neumann_eigs(mesh, 2);
        double mu2 = neu.info.eigenvalues[1];
        double err_est = std::abs(mu2 - cs.oracle) + std::abs(a1 - cs.oracle) + 1e-12;
        CHECK(std::abs(a1 - mu2) <= 3.0 * err_est);
    }
}

TEST_CASE("spectral ordering alpha_1 = mu_2 < lambda_1 < gamma_1") {
    for (const char* dom : {"square", "disk"}) {
        CAPTURE(dom);
        auto mesh = generate_mesh(DomainSpec::parse(dom), 12);
        double a1 = maxwell_eigs_2d(mesh, 1).info.eigenvalues[0];
        double mu2 = laplace_neumann_eigs(mesh, 2).info.eigenvalues[1];
        double l1 = laplace_dirichlet_eigs(mesh, 1).info.eigenvalues[0];
        double g1 = stokes_eigs_2d(mesh, 1).info.eigenvalues[0];
        CHECK(std::abs(a1 - mu2) / mu2 < 0.05);
        CHECK(mu2 < l1);
        CHECK(l1 < g1);
    }
}

TEST_CASE("edge interpolation of a P1 gradient lies in the curl kernel") {
    auto mesh = generate_mesh(DomainSpec::parse("square"), 6);
    auto table = std::make_shared<fem::EdgeTable>(fem::EdgeTable::build(mesh));
    // hat function at an interior vertex
    int hat = -1;
    for (int v = 0; v < mesh.vertex_count() && hat < 0; ++v)
        if (!table->boundary_vertex[v]) hat = v;
    REQUIRE(hat >= 0);
    VecX dofs = VecX::Zero(table->count());
    for (int e = 0; e < table->count(); ++e) {
        double pa = table->edges[e][0] == hat ? 1.0 : 0.0;
        double pb = table->edges[e][1] == hat ? 1.0 : 0.0;
        dofs[e] = pb - pa; // psi(end) - psi(start)
    }
    auto curl = edge_curl(mesh, table, dofs);
    double energy = 0.0;
    for (int c = 0; c < mesh.cell_count(); ++c)
        energy += mesh.cell_volume(c) * curl.value(c, mesh.cell_centroid(c)).squaredNorm();
    CHECK(energy <= 1e-12);
}
