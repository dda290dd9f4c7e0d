#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shield/error.hpp"

namespace shield {

/// A point (or vector) in R^3. Coordinates are dimensionless lengths.
struct Point3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    constexpr Point3& operator+=(const Point3& o) noexcept {
        x1 += o.x1; x2 += o.x2; x3 += o.x3;
        return *this;
    }
    constexpr Point3& operator-=(const Point3& o) noexcept {
        x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
        return *this;
    }
    constexpr Point3& operator*=(double s) noexcept {
        x1 *= s; x2 *= s; x3 *= s;
        return *this;
    }

    friend constexpr Point3 operator+(Point3 a, const Point3& b) noexcept { return a += b; }
    friend constexpr Point3 operator-(Point3 a, const Point3& b) noexcept { return a -= b; }
    friend constexpr Point3 operator*(Point3 a, double s) noexcept { return a *= s; }
    friend constexpr Point3 operator*(double s, Point3 a) noexcept { return a *= s; }
    friend constexpr bool operator==(const Point3&, const Point3&) = default;

    bool finite() const noexcept {
        return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3);
    }
};

constexpr double dot(const Point3& a, const Point3& b) noexcept {
    return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

inline double norm(const Point3& a) noexcept { return std::hypot(a.x1, a.x2, a.x3); }

inline double distance(const Point3& a, const Point3& b) noexcept { return norm(a - b); }

inline Point3 normalized(const Point3& a) {
    const double n = norm(a);
    if (!(n > 0.0)) throw InvalidArgument("cannot normalize a zero vector");
    return a * (1.0 / n);
}

struct BallRegion {
    Point3 center{};
    double radius = 1.0;

    BallRegion() = default;
    BallRegion(Point3 c, double r) : center(c), radius(r) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw InvalidArgument("ball radius must be positive, got " + std::to_string(r));
        }
    }

    double volume() const noexcept {
        return 4.0 * std::numbers::pi / 3.0 * radius * radius * radius;
    }
    /// Distance from `x` to the closed ball (0 inside).
    double distance_to(const Point3& x) const noexcept {
        return std::max(0.0, distance(x, center) - radius);
    }
};

struct ShellRegion {
    Point3 center{};
    double inner_radius = 0.0;
    double outer_radius = 1.0;

    ShellRegion() = default;
    ShellRegion(Point3 c, double r_in, double r_out)
        : center(c), inner_radius(r_in), outer_radius(r_out) {
        if (!(r_in >= 0.0) || !(r_in < r_out) || !std::isfinite(r_out)) {
            throw InvalidArgument("shell radii must satisfy 0 <= inner < outer");
        }
    }

    double volume() const noexcept {
        return 4.0 * std::numbers::pi / 3.0 *
               (outer_radius * outer_radius * outer_radius -
                inner_radius * inner_radius * inner_radius);
    }
    /// Distance from `x` to the closed shell (0 inside).
    double distance_to(const Point3& x) const noexcept {
        const double r = distance(x, center);
        if (r > outer_radius) return r - outer_radius;
        if (r < inner_radius) return inner_radius - r;
        return 0.0;
    }
};

} // namespace shield
