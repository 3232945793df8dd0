#pragma once

#include <vector>

#include "beltlab/common.hpp"

namespace beltlab::geometry {

// Quadrature rule on the reference simplex (unit segment, triangle, tet).
// Points are barycentric, weights positive and summing to the reference
// measure (1, 1/2, 1/6).
struct QuadratureRule {
    int simplex_dim = 0;
    int order = 0;
    std::vector<std::array<double, 4>> points; // barycentric, dim+1 entries used
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
};

// Exact for polynomials of total degree <= order. Orders 1..6 supported for
// every simplex dimension; classical compact rules at low order, conical
// product (Gauss x Gauss-Jacobi) rules above.
QuadratureRule quad_rule(int simplex_dim, int order);

// Closed-form reference-simplex monomial integrals (test oracle):
// int x^a y^b z^c over the unit simplex of the given dimension.
double reference_monomial_integral(int simplex_dim, int a, int b, int c);

} // namespace beltlab::geometry
