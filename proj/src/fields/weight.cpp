#include "beltlab/fields/weight.hpp"

#include <cmath>

namespace beltlab::fields {

namespace {

class PowerWeight final : public WeightFunction {
public:
    PowerWeight(double alpha, int dim)
        : WeightFunction(dim, "power:" + std::to_string(alpha)), alpha_(alpha) {
        if (alpha < 0.0) throw Error("power weight: alpha must be >= 0");
        if (dim != 2 && dim != 3) throw Error("power weight: dim must be 2 or 3");
    }

    double eval(const Vec3& x) const override {
        double r = radius(x);
        if (alpha_ == 2.0) return std::log(r);
        return std::pow(r, 2.0 - alpha_) / (2.0 - alpha_);
    }
    Vec3 grad(const Vec3& x) const override {
        double r = radius(x);
        Vec3 p = planar(x);
        return p / std::pow(r, alpha_);
    }
    Mat3 hessian(const Vec3& x) const override {
        double r = radius(x);
        Vec3 p = planar(x);
        double ra = std::pow(r, alpha_);
        Mat3 h = Mat3::Zero();
        for (int i = 0; i < dim_; ++i) h(i, i) = 1.0 / ra;
        h -= (alpha_ / (ra * r * r)) * (p * p.transpose());
        return h;
    }
    double laplacian(const Vec3& x) const override {
        return (double(dim_) - alpha_) / std::pow(radius(x), alpha_);
    }

private:
    Vec3 planar(const Vec3& x) const { return dim_ == 2 ? Vec3(x.x(), x.y(), 0.0) : x; }
    double radius(const Vec3& x) const {
        double r = planar(x).norm();
        if (alpha_ > 0.0 && r < 1e-14)
            throw Error("power weight with alpha > 0 evaluated at the origin");
        return r;
    }
    double alpha_;
};

class PolynomialWeight final : public WeightFunction {
public:
    PolynomialWeight(Polynomial3 p, int dim) : WeightFunction(dim, "polyweight"), p_(std::move(p)) {
        if (dim == 2 && p_.max_exponent(2) > 0)
            throw Error("polynomial weight: planar (dim 2) weights cannot involve x3");
        for (int a = 0; a < 3; ++a) {
            d_[a] = p_.derivative(a);
            for (int b = 0; b < 3; ++b) dd_[a][b] = d_[a].derivative(b);
        }
    }
    double eval(const Vec3& x) const override { return p_.eval(x); }
    Vec3 grad(const Vec3& x) const override {
        return Vec3(d_[0].eval(x), d_[1].eval(x), d_[2].eval(x));
    }
    Mat3 hessian(const Vec3& x) const override {
        Mat3 h;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) h(a, b) = dd_[a][b].eval(x);
        return h;
    }
    double laplacian(const Vec3& x) const override {
        return dd_[0][0].eval(x) + dd_[1][1].eval(x) + dd_[2][2].eval(x);
    }

private:
    Polynomial3 p_;
    Polynomial3 d_[3];
    Polynomial3 dd_[3][3];
};

} // namespace

std::shared_ptr<WeightFunction> make_power_weight(double alpha, int dim) {
    return std::make_shared<PowerWeight>(alpha, dim);
}

std::shared_ptr<WeightFunction> make_polynomial_weight(Polynomial3 p, int dim) {
    return std::make_shared<PolynomialWeight>(std::move(p), dim);
}

} // namespace beltlab::fields
