#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <cstdint>

namespace beltlab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

// Default seed for every stochastic component (Lanczos starts, LP shuffles,
// probe restarts). CLI --seed overrides it.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Compensated (Neumaier) summation. Integral accumulations go through this so
// that residuals of exactly-cancelling identities stay at the eps scale of the
// largest term instead of growing with the number of quadrature points.
class KahanSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace beltlab
