#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shield/error.hpp"
#include "shield/geometry.hpp"

namespace shield {

using Complex = std::complex<double>;

/// Nodes and weights of a one-dimensional rule on an interval.
struct LineRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b]. Nodes ascending.
///
/// Newton iteration on the three-term recurrence, started from the
/// usual cosine initial guess.
inline LineRule gauss_legendre(int n, double a = -1.0, double b = 1.0) {
    if (n < 1) throw InvalidArgument("Gauss-Legendre order must be >= 1");
    LineRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);

    // Legendre P_n(x) and its derivative by the three-term recurrence.
    const auto legendre = [n](double x) {
        double p0 = 1.0;
        double p1 = x;
        for (int j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
    };

    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        if (2 * i + 1 == n) x = 0.0;
        const double dp = legendre(x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = mid - half * x;
        rule.nodes[hi] = mid + half * x;
        rule.weights[lo] = half * w;
        rule.weights[hi] = half * w;
    }
    return rule;
}

/// Composite Gauss-Legendre rule: `n` points on each panel of [a, b] split at
/// `breaks` (entries outside (a, b) are ignored).
inline LineRule composite_gauss_legendre(int n, double a, double b,
                                         std::span<const double> breaks = {}) {
    std::vector<double> edges{a};
    for (double c : breaks) {
        if (c > a && c < b) edges.push_back(c);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    LineRule out;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        auto panel = gauss_legendre(n, edges[p], edges[p + 1]);
        out.nodes.insert(out.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        out.weights.insert(out.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    return out;
}

/// Product rule on a sphere: Gauss-Legendre in cos(theta) times a uniform
/// azimuthal rule. Node index = polar * order_azimuth + azimuth.
struct SurfaceRule {
    Point3 center{};
    double radius = 1.0;
    int order_polar = 0;
    int order_azimuth = 0;
    std::vector<Point3> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
    /// Outward unit normal at node i.
    Point3 normal(std::size_t i) const { return (nodes[i] - center) * (1.0 / radius); }
};

/// Volume product rule (radial panels x polar x azimuth), r^2 folded into
/// the weights. Node index = (radial * order_polar + polar) * order_azimuth + azimuth.
struct VolumeRule {
    int order_radial = 0;
    int order_polar = 0;
    int order_azimuth = 0;
    std::vector<Point3> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

inline void check_orders(std::initializer_list<int> orders) {
    for (int o : orders) {
        if (o < 1) throw InvalidArgument("quadrature orders must be >= 1, got " + std::to_string(o));
    }
}

/// Unit directions and solid-angle weights of the angular product rule
/// restricted to cos(theta) in [mu_lo, mu_hi] about `axis`.
struct AngularRule {
    std::vector<Point3> directions;
    std::vector<double> weights;
};

inline Point3 any_orthogonal(const Point3& a) {
    const Point3 trial = std::abs(a.x1) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
    const Point3 c{a.x2 * trial.x3 - a.x3 * trial.x2, a.x3 * trial.x1 - a.x1 * trial.x3,
                   a.x1 * trial.x2 - a.x2 * trial.x1};
    return normalized(c);
}

inline Point3 cross(const Point3& a, const Point3& b) {
    return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}

inline AngularRule angular_rule(int order_polar, int order_azimuth, Point3 axis = {0, 0, 1},
                                double mu_lo = -1.0, double mu_hi = 1.0) {
    const Point3 e3 = normalized(axis);
    Point3 e1{1, 0, 0};
    Point3 e2{0, 1, 0};
    if (!(axis == Point3{0, 0, 1})) {
        e1 = any_orthogonal(e3);
        e2 = cross(e3, e1);
    }
    const auto polar = gauss_legendre(order_polar, mu_lo, mu_hi);
    const double dphi = 2.0 * std::numbers::pi / order_azimuth;
    AngularRule out;
    out.directions.reserve(static_cast<std::size_t>(order_polar * order_azimuth));
    out.weights.reserve(out.directions.capacity());
    for (int p = 0; p < order_polar; ++p) {
        const double mu = polar.nodes[static_cast<std::size_t>(p)];
        const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int a = 0; a < order_azimuth; ++a) {
            const double phi = dphi * a;
            out.directions.push_back(e1 * (s * std::cos(phi)) + e2 * (s * std::sin(phi)) + e3 * mu);
            out.weights.push_back(polar.weights[static_cast<std::size_t>(p)] * dphi);
        }
    }
    return out;
}

inline VolumeRule radial_product(const Point3& center, const LineRule& radial, int order_radial,
                                 int order_polar, int order_azimuth) {
    const auto ang = angular_rule(order_polar, order_azimuth);
    VolumeRule rule;
    rule.order_radial = order_radial;
    rule.order_polar = order_polar;
    rule.order_azimuth = order_azimuth;
    rule.nodes.reserve(radial.nodes.size() * ang.directions.size());
    rule.weights.reserve(rule.nodes.capacity());
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
        const double r = radial.nodes[i];
        const double wr = radial.weights[i] * r * r;
        for (std::size_t j = 0; j < ang.directions.size(); ++j) {
            rule.nodes.push_back(center + ang.directions[j] * r);
            rule.weights.push_back(wr * ang.weights[j]);
        }
    }
    return rule;
}

} // namespace detail

inline SurfaceRule sphere_rule(const Point3& center, double radius, int order_polar,
                               int order_azimuth) {
    if (!(radius > 0.0)) throw InvalidArgument("sphere radius must be positive");
    detail::check_orders({order_polar, order_azimuth});
    const auto ang = detail::angular_rule(order_polar, order_azimuth);
    SurfaceRule rule;
    rule.center = center;
    rule.radius = radius;
    rule.order_polar = order_polar;
    rule.order_azimuth = order_azimuth;
    rule.nodes.reserve(ang.directions.size());
    rule.weights.reserve(ang.directions.size());
    for (std::size_t j = 0; j < ang.directions.size(); ++j) {
        rule.nodes.push_back(center + ang.directions[j] * radius);
        rule.weights.push_back(ang.weights[j] * radius * radius);
    }
    return rule;
}

/// Ball rule. `radial_breaks` are absolute radii where the integrand's radial
/// profile has kinks; each resulting panel gets `order_radial` nodes.
inline VolumeRule ball_rule(const BallRegion& region, int order_radial, int order_polar,
                            int order_azimuth, std::span<const double> radial_breaks = {}) {
    detail::check_orders({order_radial, order_polar, order_azimuth});
    const auto radial = composite_gauss_legendre(order_radial, 0.0, region.radius, radial_breaks);
    return detail::radial_product(region.center, radial, order_radial, order_polar, order_azimuth);
}

inline VolumeRule shell_rule(const ShellRegion& region, int order_radial, int order_polar,
                             int order_azimuth, std::span<const double> radial_breaks = {}) {
    detail::check_orders({order_radial, order_polar, order_azimuth});
    const auto radial = composite_gauss_legendre(order_radial, region.inner_radius,
                                                 region.outer_radius, radial_breaks);
    return detail::radial_product(region.center, radial, order_radial, order_polar, order_azimuth);
}

/// Sum of term(0) + ... + term(n-1) by a fixed binary-tree reduction over
/// the index. The tree shape depends only on n, so the result is
/// bit-reproducible for a given ordering.
namespace detail {

template <class Term>
Complex pairwise_sum(std::size_t lo, std::size_t hi, const Term& term) {
    constexpr std::size_t leaf = 8;
    if (hi - lo <= leaf) {
        Complex acc{0.0, 0.0};
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        return acc;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

} // namespace detail

template <class Term>
Complex reduce_indexed(std::size_t n, const Term& term) {
    return detail::pairwise_sum(0, n, term);
}

/// Weighted sum sum_i values[i] * weights[i] via reduce_indexed.
inline Complex reduce(std::span<const Complex> values, std::span<const double> weights) {
    if (values.size() != weights.size()) {
        throw InvalidArgument("reduce: values and weights differ in length (" +
                              std::to_string(values.size()) + " vs " +
                              std::to_string(weights.size()) + ")");
    }
    return reduce_indexed(values.size(), [&](std::size_t i) { return values[i] * weights[i]; });
}

} // namespace shield
