#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace annulab {

inline constexpr double kPi = 3.14159265358979323846;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Planar annulus B(center, r_outer) \ B(center, r_inner); r_inner == 0 is a disk.
struct AnnulusSpec {
    double r_inner = 0.0;
    double r_outer = 1.0;
    Point center{};

    AnnulusSpec() = default;
    AnnulusSpec(double ri, double ro, Point c = {}) : r_inner(ri), r_outer(ro), center(c) {
        validate();
    }

    void validate() const {
        if (!(r_inner >= 0.0) || !(r_outer > r_inner))
            throw std::invalid_argument("AnnulusSpec: need 0 <= r_inner < r_outer");
        if (!std::isfinite(r_inner) || !std::isfinite(r_outer))
            throw std::invalid_argument("AnnulusSpec: radii must be finite");
    }

    bool is_disk() const { return r_inner == 0.0; }

    /// log(r_outer / r_inner); infinite for a disk.
    double modulus() const {
        return is_disk() ? std::numeric_limits<double>::infinity()
                         : std::log(r_outer / r_inner);
    }

    double area() const { return kPi * (r_outer * r_outer - r_inner * r_inner); }

    /// True if `other` (same center) sits inside this annulus, with slack for rounding.
    bool contains(const AnnulusSpec& other, double tol = 1e-12) const {
        const double s = 1.0 + tol;
        return other.r_inner * s >= r_inner && other.r_outer <= r_outer * s &&
               std::abs(other.center.x - center.x) < tol + 1e-300 &&
               std::abs(other.center.y - center.y) < tol + 1e-300;
    }
};

}  // namespace annulab
