#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "beltlab/common.hpp"

namespace beltlab::linalg {

// Half-space description of a candidate star kernel: one constraint per
// boundary facet, normal * (centroid - x0) >= margin.
struct LpProblem {
    int dimension = 0;                  // 2 or 3
    std::vector<VecX> normals;          // unit outward normals
    std::vector<double> offsets;        // normal . centroid
};

struct LpPoint {
    VecX point;    // maximizing center x0
    double margin; // optimal worst-case margin t*
};

// Maximizes t subject to normals[f] . x0 + t <= offsets[f] (a dense LP in
// dimension+1 variables, solved by Seidel's randomized incremental algorithm
// with a deterministic shuffle). Returns nullopt when the optimum margin is
// below -tol, i.e. no kernel point exists at this resolution. Throws on
// unbounded problems (constraint normals fail to positively span).
std::optional<LpPoint> lp_max_margin(const LpProblem& p, double tol = 1e-9,
                                     std::uint64_t seed = kDefaultSeed);

// Generic low-dimensional LP: maximize c.x s.t. rows[i].x <= rhs[i] inside the
// box |x_j| <= bound. Throws Error when infeasible ("infeasible") or when the
// optimum escapes to the box ("unbounded").
VecX seidel_lp(const std::vector<VecX>& rows, const std::vector<double>& rhs, const VecX& c,
               double bound, std::uint64_t seed = kDefaultSeed);

} // namespace beltlab::linalg
