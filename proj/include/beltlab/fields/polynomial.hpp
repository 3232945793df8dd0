#pragma once

#include <initializer_list>
#include <map>

#include "beltlab/common.hpp"

namespace beltlab::fields {

// Trivariate polynomial, sparse exponent map. Supports the manufactured
// fields and weights used by the identity checks.
class Polynomial3 {
public:
    struct Term {
        int i, j, k;
        double c;
    };

    Polynomial3() = default;
    Polynomial3(std::initializer_list<Term> terms) {
        for (const auto& t : terms) add(t.i, t.j, t.k, t.c);
    }

    void add(int i, int j, int k, double c) {
        if (i < 0 || j < 0 || k < 0) throw Error("Polynomial3: negative exponent");
        if (c != 0.0) coeffs_[{i, j, k}] += c;
    }

    double eval(const Vec3& x) const {
        double s = 0.0;
        for (const auto& [e, c] : coeffs_)
            s += c * ipow(x.x(), e[0]) * ipow(x.y(), e[1]) * ipow(x.z(), e[2]);
        return s;
    }

    Polynomial3 derivative(int axis) const {
        Polynomial3 d;
        for (const auto& [e, c] : coeffs_) {
            std::array<int, 3> f = e;
            if (f[axis] == 0) continue;
            double fc = c * f[axis];
            f[axis] -= 1;
            d.coeffs_[f] += fc;
        }
        return d;
    }

    int degree() const {
        int deg = 0;
        for (const auto& [e, c] : coeffs_)
            if (c != 0.0) deg = std::max(deg, e[0] + e[1] + e[2]);
        return deg;
    }

    int max_exponent(int axis) const {
        int deg = 0;
        for (const auto& [e, c] : coeffs_)
            if (c != 0.0) deg = std::max(deg, e[axis]);
        return deg;
    }

    bool empty() const { return coeffs_.empty(); }

private:
    static double ipow(double x, int n) {
        double r = 1.0;
        for (int i = 0; i < n; ++i) r *= x;
        return r;
    }
    std::map<std::array<int, 3>, double> coeffs_;
};

} // namespace beltlab::fields
