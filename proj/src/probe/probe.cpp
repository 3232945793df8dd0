#include "beltlab/probe/probe.hpp"

#include <cmath>
#include <random>

#include "beltlab/fem/spaces.hpp"
#include "beltlab/geometry/integrate.hpp"
#include "beltlab/geometry/quadrature.hpp"
#include "beltlab/linalg/roots.hpp"
#include "beltlab/linalg/sparse.hpp"

namespace beltlab::probe {

using geometry::SimplicialMesh;

const char* bc_name(ProbeBc bc) { return bc == ProbeBc::TangentZero ? "tangent-zero" : "normal-zero"; }

namespace {

Mat3 skew(const Vec3& g) {
    Mat3 s;
    s << 0, -g.z(), g.y(), g.z(), 0, -g.x(), -g.y(), g.x(), 0;
    return s;
}

// Per-node reduced frames imposing the boundary condition exactly: interior
// nodes keep all three directions, tangent-zero keeps the nodal normal,
// normal-zero keeps the tangent plane.
struct NodalFrames {
    std::vector<Mat3> frame;   // kept directions in the leading columns
    std::vector<int> ndof;     // per node
    std::vector<int> offset;   // reduced offset per node
    int total = 0;

    VecX expand(const VecX& z, int nv) const {
        VecX u = VecX::Zero(3 * nv);
        for (int a = 0; a < nv; ++a)
            for (int d = 0; d < ndof[a]; ++d)
                u.segment<3>(3 * a) += z[offset[a] + d] * frame[a].col(d);
        return u;
    }
    VecX reduce(const VecX& u, int nv) const {
        VecX z = VecX::Zero(total);
        for (int a = 0; a < nv; ++a)
            for (int d = 0; d < ndof[a]; ++d)
                z[offset[a] + d] = frame[a].col(d).dot(u.segment<3>(3 * a));
        return z;
    }
};

NodalFrames build_frames(const SimplicialMesh& mesh, ProbeBc bc) {
    if (mesh.dim != 3) throw Error("probe: 3D meshes only");
    const int nv = mesh.vertex_count();
    std::vector<Vec3> normal(nv, Vec3::Zero());
    std::vector<char> on_boundary(nv, 0);
    for (const auto& f : mesh.facets)
        for (int i = 0; i < 3; ++i) {
            normal[f.v[i]] += f.measure * f.normal; // area-weighted nodal normal
            on_boundary[f.v[i]] = 1;
        }

    NodalFrames fr;
    fr.frame.resize(nv);
    fr.ndof.resize(nv);
    fr.offset.resize(nv);
    for (int a = 0; a < nv; ++a) {
        fr.offset[a] = fr.total;
        if (!on_boundary[a]) {
            fr.frame[a] = Mat3::Identity();
            fr.ndof[a] = 3;
        } else {
            Vec3 n = normal[a].normalized();
            int axis = 0;
            for (int d = 1; d < 3; ++d)
                if (std::abs(n[d]) < std::abs(n[axis])) axis = d;
            Vec3 t1 = n.cross(Vec3::Unit(axis)).normalized();
            Vec3 t2 = n.cross(t1);
            Mat3 f;
            if (bc == ProbeBc::TangentZero) {
                f.col(0) = n;
                f.col(1) = t1;
                f.col(2) = t2;
                fr.ndof[a] = 1;
            } else {
                f.col(0) = t1;
                f.col(1) = t2;
                f.col(2) = n;
                fr.ndof[a] = 2;
            }
            fr.frame[a] = f;
        }
        fr.total += fr.ndof[a];
    }
    return fr;
}

linalg::SparseMat reduced_mass(const SimplicialMesh& mesh, const NodalFrames& fr) {
    std::vector<linalg::Triplet> t;
    for (int c = 0; c < mesh.cell_count(); ++c) {
        double vol = mesh.cell_volume(c);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double m = vol * (i == j ? 2.0 : 1.0) / 20.0;
                int a = mesh.cells[c][i], b = mesh.cells[c][j];
                // frame_a^T (m I) frame_b
                for (int p = 0; p < fr.ndof[a]; ++p)
                    for (int q = 0; q < fr.ndof[b]; ++q)
                        t.push_back({fr.offset[a] + p, fr.offset[b] + q,
                                     m * fr.frame[a].col(p).dot(fr.frame[b].col(q))});
            }
    }
    return linalg::assemble_csr(fr.total, fr.total, t);
}

struct DefectEval {
    const SimplicialMesh* mesh;
    const NodalFrames* frames;
    geometry::QuadratureRule rule = geometry::quad_rule(3, 2);

    double value(const VecX& u_nodal) const {
        KahanSum j;
        for (int c = 0; c < mesh->cell_count(); ++c) {
            fem::CellGeom g = fem::cell_geometry(*mesh, c);
            Vec3 w = Vec3::Zero();
            double d = 0.0;
            std::array<Vec3, 4> un;
            for (int i = 0; i < 4; ++i) {
                un[i] = u_nodal.segment<3>(3 * mesh->cells[c][i]);
                w += g.grad[i].cross(un[i]);
                d += g.grad[i].dot(un[i]);
            }
            double scale = g.volume * 6.0;
            for (std::size_t k = 0; k < rule.size(); ++k) {
                Vec3 uq = Vec3::Zero();
                for (int i = 0; i < 4; ++i) uq += rule.points[k][i] * un[i];
                j.add(rule.weights[k] * scale * w.cross(uq).squaredNorm());
            }
            j.add(g.volume * d * d);
        }
        return j.value();
    }

    VecX gradient(const VecX& u_nodal) const {
        VecX grad = VecX::Zero(u_nodal.size());
        for (int c = 0; c < mesh->cell_count(); ++c) {
            fem::CellGeom g = fem::cell_geometry(*mesh, c);
            Vec3 w = Vec3::Zero();
            double d = 0.0;
            std::array<Vec3, 4> un;
            for (int i = 0; i < 4; ++i) {
                un[i] = u_nodal.segment<3>(3 * mesh->cells[c][i]);
                w += g.grad[i].cross(un[i]);
                d += g.grad[i].dot(un[i]);
            }
            double scale = g.volume * 6.0;
            for (std::size_t k = 0; k < rule.size(); ++k) {
                Vec3 uq = Vec3::Zero();
                for (int i = 0; i < 4; ++i) uq += rule.points[k][i] * un[i];
                Vec3 f = w.cross(uq);
                double wq = rule.weights[k] * scale;
                Vec3 m = uq.cross(f);
                Vec3 fw = f.cross(w);
                for (int b = 0; b < 4; ++b)
                    grad.segment<3>(3 * mesh->cells[c][b]) +=
                        wq * 2.0 * (m.cross(g.grad[b]) + rule.points[k][b] * fw);
            }
            for (int b = 0; b < 4; ++b)
                grad.segment<3>(3 * mesh->cells[c][b]) += 2.0 * g.volume * d * g.grad[b];
        }
        return grad;
    }
};

} // namespace

ProbeResult beltrami_defect_min(const SimplicialMesh& mesh, ProbeBc bc, int iters,
                                std::uint64_t seed, int restarts, const fields::VectorField* init) {
    NodalFrames fr = build_frames(mesh, bc);
    auto mass = reduced_mass(mesh, fr);
    DefectEval eval{&mesh, &fr};
    const int nv = mesh.vertex_count();

    auto m_norm = [&](const VecX& z) { return std::sqrt(std::max(0.0, z.dot(mass.multiply(z)))); };

    ProbeResult best;
    best.j_final = std::numeric_limits<double>::infinity();
    best.bc = bc_name(bc);
    best.mesh_id = mesh.domain_tag;
    best.seed = seed;
    best.restarts = restarts;

    for (int r = 0; r < std::max(1, restarts); ++r) {
        std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (r + 1)));
        VecX z(fr.total);
        if (init && r == 0) {
            VecX u = VecX::Zero(3 * nv);
            for (int a = 0; a < nv; ++a) u.segment<3>(3 * a) = init->eval(mesh.vertices[a]);
            z = fr.reduce(u, nv);
        } else {
            for (int i = 0; i < fr.total; ++i)
                z[i] = 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
        }
        double nz = m_norm(z);
        if (nz <= 0.0) continue;
        z /= nz;

        std::vector<double> traj;
        double j = eval.value(fr.expand(z, nv));
        traj.push_back(j);
        bool stalled = false;

        // projected gradient with a Barzilai-Borwein trial step and Armijo
        // backtracking (factor 0.5, slope 1e-4)
        VecX prev_z, prev_d;
        double step = 1.0;
        for (int it = 0; it < iters && !stalled; ++it) {
            VecX g = fr.reduce(eval.gradient(fr.expand(z, nv)), nv);
            VecX mz = mass.multiply(z);
            double mu = g.dot(mz) / mz.squaredNorm();
            VecX d = -(g - mu * mz); // tangent to the M-sphere
            double dn2 = d.squaredNorm();
            if (dn2 <= 1e-28 * std::max(1.0, j)) break;

            if (it > 0) {
                VecX dz = z - prev_z;
                VecX dg = prev_d - d; // gradient difference along the path
                double num = dz.dot(dg);
                if (num > 1e-300) step = dz.squaredNorm() / num;
                step = std::min(std::max(step, 1e-12), 1e8);
            }
            prev_z = z;
            prev_d = d;

            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                VecX zt = z + step * d;
                double nt = m_norm(zt);
                if (nt > 0.0) {
                    zt /= nt;
                    double jt = eval.value(fr.expand(zt, nv));
                    if (jt <= j - 1e-4 * step * dn2) {
                        z = zt;
                        j = jt;
                        traj.push_back(j);
                        accepted = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if (!accepted) stalled = true;
        }

        if (j < best.j_final) {
            best.j_final = j;
            best.nodal_field = fr.expand(z, nv);
            best.trajectory = std::move(traj);
            best.line_search_stalled = stalled;
        }
    }
    return best;
}

VainshteinReport vainshtein_check(const std::vector<double>& lambda_grid,
                                  const SimplicialMesh& mesh, ProbeBc bc, double tol,
                                  std::uint64_t seed) {
    for (double l : lambda_grid)
        if (l == 0.0) throw Error("vainshtein_check: lambda = 0 rejected (nonzero constants only)");
    NodalFrames fr = build_frames(mesh, bc);
    auto mass = reduced_mass(mesh, fr);
    geometry::QuadratureRule rule = geometry::quad_rule(3, 2);

    VainshteinReport rep;
    rep.bc = bc_name(bc);
    rep.mesh_id = mesh.domain_tag;
    for (double lambda : lambda_grid) {
        std::vector<linalg::Triplet> t;
        for (int c = 0; c < mesh.cell_count(); ++c) {
            fem::CellGeom g = fem::cell_geometry(mesh, c);
            double scale = g.volume * 6.0;
            std::array<Mat3, 4> sk;
            for (int i = 0; i < 4; ++i) sk[i] = skew(g.grad[i]);
            std::array<std::array<Mat3, 4>, 4> block;
            for (auto& row : block)
                for (auto& b : row) b.setZero();
            for (std::size_t k = 0; k < rule.size(); ++k) {
                double wq = rule.weights[k] * scale;
                std::array<Mat3, 4> a;
                for (int i = 0; i < 4; ++i)
                    a[i] = sk[i] - lambda * rule.points[k][i] * Mat3::Identity();
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) block[i][j] += wq * (a[i].transpose() * a[j]);
            }
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    block[i][j] += g.volume * (g.grad[i] * g.grad[j].transpose());
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    int na = mesh.cells[c][i], nb = mesh.cells[c][j];
                    for (int p = 0; p < fr.ndof[na]; ++p)
                        for (int q = 0; q < fr.ndof[nb]; ++q)
                            t.push_back({fr.offset[na] + p, fr.offset[nb] + q,
                                         fr.frame[na].col(p).dot(block[i][j] *
                                                                 fr.frame[nb].col(q))});
                }
        }
        auto q = linalg::assemble_csr(fr.total, fr.total, t);
        double shift = -0.01 * (1.0 + lambda * lambda);
        auto eg = linalg::gen_eig_smallest(q, mass, 1, shift, tol, seed);
        rep.lambdas.push_back(lambda);
        rep.smallest_eigenvalue.push_back(eg.eigenvalues.empty() ? -1.0 : eg.eigenvalues[0]);
    }
    return rep;
}

std::vector<Vec3> averaged_nodal_normals(const SimplicialMesh& mesh) {
    std::vector<Vec3> normal(mesh.vertex_count(), Vec3::Zero());
    for (const auto& f : mesh.facets)
        for (int i = 0; i < mesh.dim; ++i) normal[f.v[i]] += f.measure * f.normal;
    for (auto& n : normal)
        if (n.norm() > 0.0) n.normalize();
    return normal;
}

double vainshtein_form_value(const SimplicialMesh& mesh, double lambda, const VecX& nodal_field) {
    if (mesh.dim != 3) throw Error("vainshtein_form_value: 3D meshes only");
    geometry::QuadratureRule rule = geometry::quad_rule(3, 2);
    KahanSum acc;
    for (int c = 0; c < mesh.cell_count(); ++c) {
        fem::CellGeom g = fem::cell_geometry(mesh, c);
        Vec3 w = Vec3::Zero();
        double d = 0.0;
        std::array<Vec3, 4> un;
        for (int i = 0; i < 4; ++i) {
            un[i] = nodal_field.segment<3>(3 * mesh.cells[c][i]);
            w += g.grad[i].cross(un[i]);
            d += g.grad[i].dot(un[i]);
        }
        double scale = g.volume * 6.0;
        for (std::size_t k = 0; k < rule.size(); ++k) {
            Vec3 uq = Vec3::Zero();
            for (int i = 0; i < 4; ++i) uq += rule.points[k][i] * un[i];
            acc.add(rule.weights[k] * scale * (w - lambda * uq).squaredNorm());
        }
        acc.add(g.volume * d * d);
    }
    return acc.value();
}

double p1_vector_l2(const SimplicialMesh& mesh, const VecX& nodal_field) {
    geometry::QuadratureRule rule = geometry::quad_rule(mesh.dim, 2);
    const double ref = mesh.dim == 2 ? 0.5 : 1.0 / 6.0;
    KahanSum acc;
    for (int c = 0; c < mesh.cell_count(); ++c) {
        double vol = mesh.cell_volume(c);
        for (std::size_t k = 0; k < rule.size(); ++k) {
            Vec3 uq = Vec3::Zero();
            for (int i = 0; i <= mesh.dim; ++i)
                uq += rule.points[k][i] * nodal_field.segment<3>(3 * mesh.cells[c][i]);
            acc.add(rule.weights[k] * (vol / ref) * uq.squaredNorm());
        }
    }
    return std::sqrt(std::max(0.0, acc.value()));
}

SpheromakReport spheromak_verify(const SimplicialMesh& mesh, double lambda, double fd_step,
                                 int order) {
    if (mesh.dim != 3) throw Error("spheromak_verify: ball meshes only");
    auto u = fields::make_spheromak(lambda);
    SpheromakReport r;
    r.lambda = lambda;
    r.lambda_star = linalg::find_root_bracketed(
        [](double x) { return std::tan(x) - x; }, M_PI + 0.01, 1.5 * M_PI - 0.01);

    double l2sq = geometry::integrate_volume(
        mesh, [&](const Vec3& x) { return u->eval(x).squaredNorm(); }, order);
    r.field_l2 = std::sqrt(l2sq);

    double cross = geometry::integrate_volume(
        mesh,
        [&](const Vec3& x) {
            return fields::fd_curl(*u, x, fd_step).cross(u->eval(x)).squaredNorm();
        },
        order);
    double divr = geometry::integrate_volume(
        mesh,
        [&](const Vec3& x) {
            double d = fields::fd_div(*u, x, fd_step);
            return d * d;
        },
        order);
    double eig = geometry::integrate_volume(
        mesh,
        [&](const Vec3& x) {
            return (fields::fd_curl(*u, x, fd_step) - r.lambda_star * u->eval(x)).squaredNorm();
        },
        order);
    // trace on the sphere itself: quadrature points projected radially onto
    // the boundary sphere (the facet quadrature points sit O(h^2) inside it,
    // where the radial component of the field is nonzero)
    double radius = 0.0;
    for (const auto& f : mesh.facets)
        for (int i = 0; i < 3; ++i) radius = std::max(radius, mesh.vertices[f.v[i]].norm());
    double trace = geometry::integrate_boundary(
        mesh,
        [&](const Vec3& x, const Vec3&) {
            Vec3 xs = x.normalized() * radius;
            double d = u->eval(xs).dot(x.normalized());
            return d * d;
        },
        order);

    r.cross_residual = std::sqrt(cross) / r.field_l2;
    r.div_residual = std::sqrt(divr) / r.field_l2;
    r.eigen_residual = std::sqrt(eig) / (r.lambda_star * r.field_l2);
    r.trace_residual = std::sqrt(trace) / r.field_l2;
    return r;
}

} // namespace beltlab::probe
