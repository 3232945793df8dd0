#pragma once

#include <memory>
#include <string>

#include "beltlab/common.hpp"
#include "beltlab/fields/polynomial.hpp"

namespace beltlab::fields {

// Scalar weight with first and second derivatives.
class WeightFunction {
public:
    virtual ~WeightFunction() = default;
    virtual double eval(const Vec3& x) const = 0;
    virtual Vec3 grad(const Vec3& x) const = 0;
    virtual Mat3 hessian(const Vec3& x) const = 0;
    virtual double laplacian(const Vec3& x) const = 0;

    int dimension() const { return dim_; }
    const std::string& tag() const { return tag_; }

protected:
    WeightFunction(int dim, std::string tag) : dim_(dim), tag_(std::move(tag)) {}
    int dim_;
    std::string tag_;
};

// phi = |x|^(2-alpha)/(2-alpha)  (ln|x| at alpha = 2), so grad = x/|x|^alpha,
// hessian_ij = delta_ij/|x|^alpha - alpha x_i x_j / |x|^(alpha+2), and
// laplacian = (dim-alpha)/|x|^alpha. Evaluation at the origin is an error for
// alpha > 0. dim = 2 restricts |x| and the derivatives to the plane.
std::shared_ptr<WeightFunction> make_power_weight(double alpha, int dim = 3);

std::shared_ptr<WeightFunction> make_polynomial_weight(Polynomial3 p, int dim = 3);

} // namespace beltlab::fields
