#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "shield/error.hpp"
#include "shield/geometry.hpp"
#include "shield/quadrature.hpp"

namespace shield {

/// Piecewise-polynomial radial density f(s), s = |y|, supported in [0, eps].
///
/// Panel j covers [r_j, r_{j+1}] and holds coefficients of f in powers of the
/// absolute radius: f(s) = sum_i c[j][i] * s^i. The profile is zero for s > eps
/// and takes the inner-panel value at s = eps (closed support).
class RadialProfile {
public:
    RadialProfile(std::vector<double> breakpoints, std::vector<std::vector<double>> coefficients)
        : breaks_(std::move(breakpoints)), coeffs_(std::move(coefficients)) {
        if (breaks_.size() < 2) throw InvalidArgument("radial profile needs at least one panel");
        if (breaks_.front() != 0.0) throw InvalidArgument("radial profile must start at r = 0");
        for (std::size_t j = 0; j + 1 < breaks_.size(); ++j) {
            if (!(breaks_[j] < breaks_[j + 1]) || !std::isfinite(breaks_[j + 1])) {
                throw InvalidArgument("radial breakpoints must be finite and strictly increasing");
            }
        }
        if (coeffs_.size() != breaks_.size() - 1) {
            throw InvalidArgument("radial profile needs one coefficient list per panel (" +
                                  std::to_string(breaks_.size() - 1) + " panels, " +
                                  std::to_string(coeffs_.size()) + " lists)");
        }
        for (const auto& c : coeffs_) {
            if (c.empty()) throw InvalidArgument("empty coefficient list in radial profile");
            for (double v : c) {
                if (!std::isfinite(v)) throw InvalidArgument("non-finite radial coefficient");
            }
        }
    }

    /// f = value on [0, eps].
    static RadialProfile constant(double eps, double value = 1.0) {
        return RadialProfile({0.0, eps}, {{value}});
    }
    /// f(s) = eps - s on [0, eps].
    static RadialProfile cone(double eps) { return RadialProfile({0.0, eps}, {{eps, -1.0}}); }

    double support_radius() const noexcept { return breaks_.back(); }
    const std::vector<double>& breakpoints() const noexcept { return breaks_; }
    const std::vector<std::vector<double>>& coefficients() const noexcept { return coeffs_; }
    std::size_t panels() const noexcept { return coeffs_.size(); }

    /// f(s) on the closed support; 0 outside.
    double value(double s) const noexcept { return s < 0.0 ? 0.0 : left_limit(s); }
    /// lim f(s') as s' -> s from above.
    double right_limit(double s) const noexcept {
        if (s >= support_radius()) return 0.0;
        return eval(panel_right(s), s);
    }
    /// lim f(s') as s' -> s from below (f(0) at s = 0).
    double left_limit(double s) const noexcept {
        if (s > support_radius()) return 0.0;
        return eval(panel_left(s), s);
    }
    /// Right-sided derivative f'(s+).
    double right_derivative(double s) const noexcept {
        if (s >= support_radius()) return 0.0;
        const auto& c = coeffs_[panel_right(s)];
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 1;) acc = acc * s + static_cast<double>(i) * c[i];
        return acc;
    }

    /// Exact integral of s * f(s) over [a, b] (clipped to the support).
    double first_moment(double a, double b) const noexcept {
        a = std::max(a, 0.0);
        b = std::min(b, support_radius());
        if (!(a < b)) return 0.0;
        double acc = 0.0;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            const double lo = std::max(a, breaks_[j]);
            const double hi = std::min(b, breaks_[j + 1]);
            if (lo < hi) acc += antiderivative(j, hi, 1) - antiderivative(j, lo, 1);
        }
        return acc;
    }

    /// Total mass 4*pi * integral of s^2 f(s) ds.
    double mass() const noexcept {
        double acc = 0.0;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            acc += antiderivative(j, breaks_[j + 1], 2) - antiderivative(j, breaks_[j], 2);
        }
        return 4.0 * std::numbers::pi * acc;
    }

private:
    double eval(std::size_t j, double s) const noexcept {
        const auto& c = coeffs_[j];
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
        return acc;
    }
    /// integral of s^shift * f_j(s) from 0 to s.
    double antiderivative(std::size_t j, double s, int shift) const noexcept {
        const auto& c = coeffs_[j];
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) {
            acc = acc * s + c[i] / static_cast<double>(static_cast<int>(i) + shift + 1);
        }
        return acc * std::pow(s, shift + 1);
    }
    std::size_t panel_right(double s) const noexcept {
        std::size_t j = 0;
        while (j + 1 < coeffs_.size() && s >= breaks_[j + 1]) ++j;
        return j;
    }
    std::size_t panel_left(double s) const noexcept {
        std::size_t j = 0;
        while (j + 1 < coeffs_.size() && s > breaks_[j + 1]) ++j;
        return j;
    }

    std::vector<double> breaks_;
    std::vector<std::vector<double>> coeffs_;
};

/// User-supplied density with support in the closed ball of radius
/// `support_radius` about the origin. The density must be C^1 inside the
/// ball and vanish continuously on its boundary. Without a gradient callable,
/// central differences with step 1e-5 * support_radius are used.
struct GeneralDensity {
    std::function<double(const Point3&)> density;
    std::function<Point3(const Point3&)> gradient;
    double support_radius = 1.0;
    int mean_order_polar = 32;
    int mean_order_azimuth = 64;
};

/// The unwanted-wave source F, centered at the origin.
class SourceDensity {
public:
    explicit SourceDensity(RadialProfile profile) : kind_(std::move(profile)) {
        if (!(support_radius() > 0.0)) throw InvalidArgument("support radius must be positive");
    }
    explicit SourceDensity(GeneralDensity general) : kind_(std::move(general)) {
        const auto& g = std::get<GeneralDensity>(kind_);
        if (!g.density) throw InvalidArgument("general source needs a density callable");
        if (!(g.support_radius > 0.0)) throw InvalidArgument("support radius must be positive");
        detail::check_orders({g.mean_order_polar, g.mean_order_azimuth});
    }

    bool is_radial() const noexcept { return std::holds_alternative<RadialProfile>(kind_); }
    const RadialProfile& radial() const { return std::get<RadialProfile>(kind_); }
    const GeneralDensity& general() const { return std::get<GeneralDensity>(kind_); }

    double support_radius() const noexcept {
        return is_radial() ? radial().support_radius() : general().support_radius;
    }

    /// Radii where the density's radial profile has kinks (radial sources
    /// only; {0, eps} for general ones).
    std::vector<double> radial_breakpoints() const {
        if (is_radial()) return radial().breakpoints();
        return {0.0, support_radius()};
    }

    double density(const Point3& y) const {
        const double r = norm(y);
        if (r > support_radius()) return 0.0;
        if (is_radial()) return radial().value(r);
        return general().density(y);
    }

    Point3 gradient(const Point3& y) const {
        const double r = norm(y);
        if (r > support_radius()) return {};
        if (is_radial()) {
            if (r == 0.0) return {};
            return y * (radial().right_derivative(r) / r);
        }
        const auto& g = general();
        if (g.gradient) return g.gradient(y);
        const double h = 1e-5 * g.support_radius;
        const auto diff = [&](Point3 e) {
            return (density(y + e * h) - density(y - e * h)) / (2.0 * h);
        };
        return {diff({1, 0, 0}), diff({0, 1, 0}), diff({0, 0, 1})};
    }

private:
    std::variant<RadialProfile, GeneralDensity> kind_;
};

namespace detail {

inline void check_time(double t) {
    if (!(t > 0.0)) throw InvalidArgument("spherical mean needs t > 0, got " + std::to_string(t));
}

/// Radius below which the evaluation point is treated as the center.
inline bool at_center(double r, double t) noexcept { return r <= 1e-12 * t; }

/// Pole-aligned cap rule: directions omega with x + t*omega inside the
/// support ball. Empty when the sphere misses the support.
inline AngularRule support_cap(const GeneralDensity& g, const Point3& x, double t) {
    const double r = norm(x);
    const double eps = g.support_radius;
    if (std::abs(r - t) > eps) return {};
    if (at_center(r, t)) return angular_rule(g.mean_order_polar, g.mean_order_azimuth);
    // |x + t w|^2 = r^2 + t^2 + 2 r t mu with mu = w . x/|x|
    const double mu_star = (eps * eps - r * r - t * t) / (2.0 * r * t);
    const double mu_hi = std::min(1.0, mu_star);
    if (!(mu_hi > -1.0)) return {};
    return angular_rule(g.mean_order_polar, g.mean_order_azimuth, x * (1.0 / r), -1.0, mu_hi);
}

} // namespace detail

/// Average of F over the sphere |y - x| = t.
inline double spherical_mean(const SourceDensity& source, const Point3& x, double t) {
    detail::check_time(t);
    const double r = norm(x);
    if (source.is_radial()) {
        const auto& f = source.radial();
        if (detail::at_center(r, t)) return f.value(t);
        return f.first_moment(std::abs(r - t), r + t) / (2.0 * r * t);
    }
    const auto cap = detail::support_cap(source.general(), x, t);
    double acc = 0.0;
    for (std::size_t i = 0; i < cap.directions.size(); ++i) {
        acc += cap.weights[i] * source.general().density(x + cap.directions[i] * t);
    }
    return acc / (4.0 * std::numbers::pi);
}

/// Time derivative of the spherical mean (right-sided at kinks).
inline double spherical_mean_dt(const SourceDensity& source, const Point3& x, double t) {
    detail::check_time(t);
    const double r = norm(x);
    if (source.is_radial()) {
        const auto& f = source.radial();
        if (detail::at_center(r, t)) return f.right_derivative(t);
        const double mean = f.first_moment(std::abs(r - t), r + t) / (2.0 * r * t);
        const double b = r + t;
        const double a = std::abs(r - t);
        // a decreases in t while t < r, so the relevant limit of f is from below.
        const double lower = t >= r ? -a * f.right_limit(a) : a * f.left_limit(a);
        return -mean / t + (b * f.right_limit(b) + lower) / (2.0 * r * t);
    }
    // d/dt M = (1/4pi) * integral of omega . grad F(x + t omega)
    const auto cap = detail::support_cap(source.general(), x, t);
    double acc = 0.0;
    for (std::size_t i = 0; i < cap.directions.size(); ++i) {
        const Point3& w = cap.directions[i];
        acc += cap.weights[i] * dot(w, source.gradient(x + w * t));
    }
    return acc / (4.0 * std::numbers::pi);
}

/// Spot checks for a general source: density vanishes at random exterior
/// points and the gradient agrees with central differences (h = 1e-5 eps)
/// at random interior points. Returns the first violation, if any.
inline std::optional<std::string> validate_general_source(const SourceDensity& source,
                                                          int samples = 32,
                                                          double rel_tol = 1e-5,
                                                          std::uint64_t seed = 7) {
    if (source.is_radial()) return std::nullopt;
    const auto& g = source.general();
    const double eps = g.support_radius;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto random_direction = [&] {
        return normalized(Point3{gauss(rng), gauss(rng), gauss(rng)});
    };
    for (int i = 0; i < samples; ++i) {
        const Point3 y = random_direction() * (eps * (1.0 + 3.0 * unit(rng)) + 1e-9);
        if (g.density(y) != 0.0) {
            return "density is nonzero outside the support radius at |y| = " +
                   std::to_string(norm(y));
        }
    }
    if (!g.gradient) return std::nullopt;
    const double h = 1e-5 * eps;
    for (int i = 0; i < samples; ++i) {
        const Point3 y = random_direction() * (eps * (0.05 + 0.85 * unit(rng)));
        const Point3 grad = g.gradient(y);
        const auto diff = [&](Point3 e) {
            return (g.density(y + e * h) - g.density(y - e * h)) / (2.0 * h);
        };
        const Point3 fd{diff({1, 0, 0}), diff({0, 1, 0}), diff({0, 0, 1})};
        const double scale = std::max(norm(grad), 1e-300);
        if (norm(grad - fd) > rel_tol * scale + 1e-12) {
            return "gradient disagrees with finite differences at |y| = " + std::to_string(norm(y));
        }
    }
    return std::nullopt;
}

} // namespace shield
