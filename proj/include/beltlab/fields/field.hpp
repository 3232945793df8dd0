#pragma once

#include <memory>
#include <string>

#include "beltlab/common.hpp"
#include "beltlab/fields/polynomial.hpp"

namespace beltlab::fields {

// Analytic vector field sampler. 2D fields are embedded with third component
// zero; their curl is the scalar d1 u2 - d2 u1 reported in the z slot.
class VectorField {
public:
    virtual ~VectorField() = default;
    virtual Vec3 eval(const Vec3& x) const = 0;
    virtual bool has_analytic_curl() const { return false; }
    virtual bool has_analytic_div() const { return false; }
    virtual Vec3 curl(const Vec3&) const { throw Error("field '" + tag_ + "': no analytic curl"); }
    virtual double divergence(const Vec3&) const {
        throw Error("field '" + tag_ + "': no analytic div");
    }

    int dimension() const { return dim_; }
    const std::string& tag() const { return tag_; }

protected:
    VectorField(int dim, std::string tag) : dim_(dim), tag_(std::move(tag)) {}
    int dim_;
    std::string tag_;
};

// Central finite differences, O(h^2); the derivative oracle every analytic
// field is checked against.
Vec3 fd_curl(const VectorField& u, const Vec3& x, double h = 1e-4);
double fd_div(const VectorField& u, const Vec3& x, double h = 1e-4);

// u(x) = (sin(lambda x3), cos(lambda x3), 0): circularly polarized Trkalian
// field with curl u = lambda u and div u = 0.
std::shared_ptr<VectorField> make_trig_beltrami(double lambda);

// Components given by trivariate polynomials; curl/div by symbolic
// differentiation.
std::shared_ptr<VectorField> make_polynomial_field(Polynomial3 ux, Polynomial3 uy, Polynomial3 uz,
                                                   int dim = 3);

// Axisymmetric force-free eigenfield of the unit ball (poloidal-toroidal form
// built on the spherical Bessel j1), normalized to unit maximum amplitude.
// For u tangent to the sphere, lambda must be a root of tan x = x.
std::shared_ptr<VectorField> make_spheromak(double lambda);

} // namespace beltlab::fields
