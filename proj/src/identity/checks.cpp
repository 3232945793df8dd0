#include "beltlab/identity/checks.hpp"

#include <cmath>

namespace beltlab::identity {

using fields::fd_curl;
using fields::fd_div;
using geometry::integrate_boundary;
using geometry::integrate_volume;

double IdentityReport::term(const std::string& name) const {
    for (const auto& [k, v] : terms)
        if (k == name) return v;
    throw Error("IdentityReport: no term named '" + name + "'");
}

namespace {

void finish(IdentityReport& r) {
    double biggest = 0.0;
    for (const auto& [k, v] : r.terms) {
        if (!std::isfinite(v)) throw Error("identity check: term '" + k + "' is not finite");
        biggest = std::max(biggest, std::abs(v));
    }
    r.abs_residual = std::abs(r.lhs_total - r.rhs_total);
    r.rel_residual = r.abs_residual / std::max(1e-30, biggest);
}

} // namespace

IdentityReport check_green_curl(const fields::VectorField& u, const fields::WeightFunction& phi,
                                const geometry::SimplicialMesh& mesh, int order, double fd_step) {
    if (u.dimension() != mesh.dim)
        throw Error("check_green_curl: field dimension " + std::to_string(u.dimension()) +
                    " does not match mesh dimension " + std::to_string(mesh.dim));
    if (phi.dimension() != mesh.dim)
        throw Error("check_green_curl: weight dimension " + std::to_string(phi.dimension()) +
                    " does not match mesh dimension " + std::to_string(mesh.dim));
    IdentityReport r;
    r.check = "green_curl";
    r.field_tag = u.tag();
    r.weight_tag = phi.tag();
    r.mesh_tag = mesh.domain_tag;
    r.quadrature_order = order;
    r.used_fd_curl = !u.has_analytic_curl();
    r.used_fd_div = !u.has_analytic_div();

    auto curl_of = [&](const Vec3& x) { return r.used_fd_curl ? fd_curl(u, x, fd_step) : u.curl(x); };
    auto div_of = [&](const Vec3& x) { return r.used_fd_div ? fd_div(u, x, fd_step) : u.divergence(x); };

    double vol_curl_cross = integrate_volume(
        mesh, [&](const Vec3& x) { return curl_of(x).cross(u.eval(x)).dot(phi.grad(x)); }, order);
    double vol_div = integrate_volume(
        mesh, [&](const Vec3& x) { return div_of(x) * u.eval(x).dot(phi.grad(x)); }, order);
    double vol_lap = integrate_volume(
        mesh, [&](const Vec3& x) { return 0.5 * u.eval(x).squaredNorm() * phi.laplacian(x); },
        order);
    double vol_hess = integrate_volume(
        mesh,
        [&](const Vec3& x) {
            Vec3 v = u.eval(x);
            return -v.dot(phi.hessian(x) * v);
        },
        order);
    double sur_grad = integrate_boundary(
        mesh,
        [&](const Vec3& x, const Vec3& nu) {
            return 0.5 * u.eval(x).squaredNorm() * phi.grad(x).dot(nu);
        },
        order);
    double sur_cross = integrate_boundary(
        mesh,
        [&](const Vec3& x, const Vec3& nu) {
            Vec3 v = u.eval(x);
            return -v.cross(phi.grad(x)).dot(v.cross(nu));
        },
        order);

    r.terms = {{"vol_curl_cross", vol_curl_cross}, {"vol_div", vol_div},
               {"vol_laplacian", vol_lap},         {"vol_hessian", vol_hess},
               {"sur_grad_nu", sur_grad},          {"sur_cross", sur_cross}};
    r.lhs_total = vol_curl_cross + vol_div;
    r.rhs_total = vol_lap + vol_hess + sur_grad + sur_cross;
    finish(r);
    return r;
}

IdentityReport check_weighted(const fields::VectorField& u, double alpha,
                              const geometry::SimplicialMesh& mesh, int order, double fd_step) {
    if (alpha < 0.0) throw Error("check_weighted: alpha must be >= 0");
    if (mesh.dim != 3) throw Error("check_weighted: 3D meshes only");
    if (u.dimension() != 3) throw Error("check_weighted: 3D fields only");
    if (alpha > 0.0) {
        // hypothesis of the weighted lemma: the origin avoids the closed domain
        Vec3 lo = mesh.vertices[0], hi = mesh.vertices[0];
        for (const auto& v : mesh.vertices) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
        bool box_clear = false;
        for (int d = 0; d < 3; ++d)
            if (lo[d] > 1e-12 || hi[d] < -1e-12) box_clear = true;
        if (!box_clear && mesh.contains(Vec3::Zero(), 1e-12))
            throw Error("check_weighted: alpha > 0 requires the origin outside the closed "
                        "domain (0 not in D closure)");
    }

    IdentityReport r;
    r.check = "weighted";
    r.field_tag = u.tag();
    r.weight_tag = "power:" + std::to_string(alpha);
    r.mesh_tag = mesh.domain_tag;
    r.quadrature_order = order;
    r.used_fd_curl = !u.has_analytic_curl();
    r.used_fd_div = !u.has_analytic_div();

    auto curl_of = [&](const Vec3& x) { return r.used_fd_curl ? fd_curl(u, x, fd_step) : u.curl(x); };
    auto div_of = [&](const Vec3& x) { return r.used_fd_div ? fd_div(u, x, fd_step) : u.divergence(x); };
    auto wx = [&](const Vec3& x) { return x / std::pow(x.norm(), alpha); }; // x / |x|^alpha

    double e1 = integrate_volume(
        mesh,
        [&](const Vec3& x) {
            Vec3 v = u.eval(x);
            return curl_of(x).cross(v).dot(wx(x)) + v.dot(wx(x)) * div_of(x);
        },
        order);

    double evol = integrate_volume(
        mesh,
        [&](const Vec3& x) {
            Vec3 v = u.eval(x);
            double rn = x.norm();
            double radial = v.dot(x / rn);
            return (0.5 * (1.0 - alpha) * v.squaredNorm() + alpha * radial * radial) /
                   std::pow(rn, alpha);
        },
        order);

    double e2_sur = integrate_boundary(
        mesh,
        [&](const Vec3& x, const Vec3& nu) {
            Vec3 v = u.eval(x);
            return v.dot(wx(x)) * v.dot(nu) - 0.5 * v.squaredNorm() * wx(x).dot(nu);
        },
        order);
    double e3_sur = integrate_boundary(
        mesh,
        [&](const Vec3& x, const Vec3& nu) {
            Vec3 v = u.eval(x);
            return 0.5 * v.squaredNorm() * wx(x).dot(nu) - v.cross(wx(x)).dot(v.cross(nu));
        },
        order);

    double e2 = evol + e2_sur;
    double e3 = evol + e3_sur;
    r.terms = {{"e1", e1},         {"e_volume", evol}, {"e2_surface", e2_sur},
               {"e3_surface", e3_sur}, {"e2", e2},     {"e3", e3}};
    r.lhs_total = e1;
    r.rhs_total = e2;
    r.extras["e1_e2"] = std::abs(e1 - e2);
    r.extras["e2_e3"] = std::abs(e2 - e3);
    finish(r);
    return r;
}

double check_lagrange_pointwise(const Vec3& u, const Vec3& x, const Vec3& nu) {
    double lhs = u.cross(x).dot(u.cross(nu));
    double rhs = u.squaredNorm() * x.dot(nu) - u.dot(x) * u.dot(nu);
    return std::abs(lhs - rhs);
}

double check_curl_cross_pointwise(const fields::VectorField& a, const fields::VectorField& b,
                                  const Vec3& x, double h) {
    // lhs: FD curl of the product field a x b
    Vec3 lhs;
    {
        std::array<Vec3, 3> dp, dm;
        for (int ax = 0; ax < 3; ++ax) {
            Vec3 e = Vec3::Zero();
            e[ax] = h;
            dp[ax] = a.eval(x + e).cross(b.eval(x + e));
            dm[ax] = a.eval(x - e).cross(b.eval(x - e));
        }
        auto d = [&](int ax, int comp) { return (dp[ax][comp] - dm[ax][comp]) / (2.0 * h); };
        lhs = Vec3(d(1, 2) - d(2, 1), d(2, 0) - d(0, 2), d(0, 1) - d(1, 0));
    }
    // rhs: (div b) a - (div a) b + (b.grad) a - (a.grad) b with FD derivatives
    Vec3 av = a.eval(x), bv = b.eval(x);
    double diva = fd_div(a, x, h), divb = fd_div(b, x, h);
    auto dir = [&](const fields::VectorField& f, const Vec3& along) {
        if (along.norm() < 1e-300) return Vec3(Vec3::Zero());
        return Vec3((f.eval(x + h * along) - f.eval(x - h * along)) / (2.0 * h));
    };
    Vec3 rhs = divb * av - diva * bv + dir(a, bv) - dir(b, av);
    return (lhs - rhs).norm();
}

Theorem1Terms theorem1_functional(const fields::VectorField& u,
                                  const geometry::SimplicialMesh& mesh, int order) {
    if (mesh.dim != 3) throw Error("theorem1_functional: 3D meshes only");
    Theorem1Terms t;
    t.volume_term =
        integrate_volume(mesh, [&](const Vec3& x) { return 0.5 * u.eval(x).squaredNorm(); }, order);
    t.boundary_term = integrate_boundary(
        mesh,
        [&](const Vec3& x, const Vec3& nu) { return 0.5 * u.eval(x).squaredNorm() * x.dot(nu); },
        order);
    t.tangential_trace_norm = std::sqrt(integrate_boundary(
        mesh,
        [&](const Vec3& x, const Vec3& nu) { return u.eval(x).cross(nu).squaredNorm(); }, order));
    return t;
}

EigenIdentityReport eigen_identity_check(const CellField& u, const CellField& curl_u, double beta,
                                         const geometry::SimplicialMesh& mesh, int order) {
    EigenIdentityReport r;
    r.volume_term = geometry::integrate_volume_cells(
        mesh,
        [&](int c, const Vec3& x) {
            return curl_u.value(c, x).squaredNorm() + beta * u.value(c, x).squaredNorm();
        },
        order);
    r.curl_boundary_term = geometry::integrate_boundary_cells(
        mesh,
        [&](int c, const Vec3& x, const Vec3& nu) {
            return curl_u.value(c, x).squaredNorm() * x.dot(nu);
        },
        order);
    r.field_boundary_term =
        beta * geometry::integrate_boundary_cells(
                   mesh,
                   [&](int c, const Vec3& x, const Vec3& nu) {
                       return u.value(c, x).squaredNorm() * x.dot(nu);
                   },
                   order);
    r.residual = r.volume_term + r.curl_boundary_term - r.field_boundary_term;
    return r;
}

} // namespace beltlab::identity
