#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shield/error.hpp"
#include "shield/geometry.hpp"
#include "shield/parallel.hpp"
#include "shield/quadrature.hpp"
#include "shield/scenario.hpp"
#include "shield/sources.hpp"
#include "shield/timedomain.hpp"

// Frequency-domain fields with time dependence exp(-ikt): exp(+ik|x|)/|x| is
// outgoing. All potentials use the free-space kernel
// K(y - x) = exp(ik|y-x|) / (4 pi |y-x|).

namespace shield {

inline constexpr double inv_four_pi = 0.25 / std::numbers::pi;

inline Complex kernel_eval(double k, const Point3& x, const Point3& y,
                           double min_distance = 1e-9) {
    const double d = distance(x, y);
    if (d < min_distance) {
        throw SingularEvaluation("kernel evaluated at |x - y| = " + std::to_string(d) +
                                 " below the minimum distance " + std::to_string(min_distance));
    }
    return std::polar(inv_four_pi / d, k * d);
}

enum class FieldLabel { primary_w, secondary_w, surface_w, total, z, G };

inline const char* to_string(FieldLabel label) {
    switch (label) {
    case FieldLabel::primary_w: return "primary_w";
    case FieldLabel::secondary_w: return "secondary_w";
    case FieldLabel::surface_w: return "surface_w";
    case FieldLabel::total: return "total";
    case FieldLabel::z: return "z";
    case FieldLabel::G: return "G";
    }
    return "unknown";
}

struct ComplexField {
    FieldLabel label = FieldLabel::total;
    std::vector<Point3> points;
    std::vector<Complex> values;
};

struct FarFieldPattern {
    std::vector<Point3> directions;
    /// integral of exp(-ik y.omega) rho(y) dy per direction.
    std::vector<Complex> amplitudes;
};

/// A density sampled on a volume rule, ready for repeated potential and
/// far-field evaluation. The supporting region is the shell
/// inner_radius <= |y| <= outer_radius (inner_radius = 0 for a ball);
/// evaluation closer than `standoff` to it is rejected.
class VolumePotential {
public:
    VolumePotential(double k, VolumeRule rule, std::vector<Complex> density, ShellRegion region,
                    double standoff, double kernel_min_distance = 1e-9)
        : k_(k), rule_(std::move(rule)), density_(std::move(density)), region_(region),
          standoff_(standoff), kernel_min_distance_(kernel_min_distance) {
        if (density_.size() != rule_.size()) {
            throw InvalidArgument("density sample count does not match the volume rule");
        }
        weighted_.resize(density_.size());
        for (std::size_t i = 0; i < density_.size(); ++i) {
            weighted_[i] = density_[i] * (rule_.weights[i] * inv_four_pi);
        }
    }

    double k() const noexcept { return k_; }
    const VolumeRule& rule() const noexcept { return rule_; }
    const std::vector<Complex>& density() const noexcept { return density_; }
    const ShellRegion& region() const noexcept { return region_; }
    double standoff() const noexcept { return standoff_; }

    /// (1/4pi) * integral of exp(ik|x-y|)/|x-y| rho(y) dy.
    Complex operator()(const Point3& x) const {
        const double gap = region_.distance_to(x);
        if (gap < standoff_) {
            throw SingularEvaluation("evaluation point at distance " + std::to_string(gap) +
                                     " from the integration region (standoff " +
                                     std::to_string(standoff_) + ")");
        }
        const auto& nodes = rule_.nodes;
        return reduce_indexed(nodes.size(), [&](std::size_t i) {
            const double d = distance(x, nodes[i]);
            if (d < kernel_min_distance_) {
                throw SingularEvaluation("kernel singularity at quadrature node");
            }
            return weighted_[i] * std::polar(1.0 / d, k_ * d);
        });
    }

    ComplexField evaluate(std::span<const Point3> points, FieldLabel label) const {
        ComplexField out;
        out.label = label;
        out.points.assign(points.begin(), points.end());
        out.values.resize(points.size());
        parallel_for(points.size(), [&](std::size_t i) { out.values[i] = (*this)(points[i]); });
        return out;
    }

    /// integral of exp(-ik y.omega) rho(y) dy for unit directions omega.
    FarFieldPattern far_field(std::span<const Point3> directions) const {
        for (const auto& w : directions) {
            if (std::abs(norm(w) - 1.0) > 1e-14) {
                throw InvalidArgument("far-field direction is not a unit vector (|omega| = " +
                                      std::to_string(norm(w)) + ")");
            }
        }
        FarFieldPattern out;
        out.directions.assign(directions.begin(), directions.end());
        out.amplitudes.resize(directions.size());
        const auto& nodes = rule_.nodes;
        parallel_for(directions.size(), [&](std::size_t j) {
            const Point3& w = directions[j];
            out.amplitudes[j] = reduce_indexed(nodes.size(), [&](std::size_t i) {
                return density_[i] * (rule_.weights[i] * std::polar(1.0, -k_ * dot(nodes[i], w)));
            });
        });
        return out;
    }

private:
    double k_;
    VolumeRule rule_;
    std::vector<Complex> density_;
    std::vector<Complex> weighted_;
    ShellRegion region_;
    double standoff_;
    double kernel_min_distance_;
};

/// Potential of the source F over B_eps (radial panels at the profile's
/// breakpoints).
inline VolumePotential primary_potential(const Scenario& scenario, QuadratureOrders orders) {
    scenario.validate();
    const auto breaks = scenario.source.radial_breakpoints();
    auto rule = ball_rule(scenario.support(), orders.radial, orders.polar, orders.azimuth, breaks);
    std::vector<Complex> rho(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) { rho[i] = scenario.source.density(rule.nodes[i]); });
    return {scenario.k, std::move(rule), std::move(rho),
            ShellRegion{Point3{}, 0.0, scenario.epsilon()}, scenario.standoff_distance(),
            scenario.kernel_min_distance};
}

inline VolumePotential primary_potential(const Scenario& scenario) {
    return primary_potential(scenario, scenario.orders);
}

/// Potential of the active source G over the shell T - eps <= |y| <= T + eps.
/// G is sampled once at the shell-rule nodes. With `zero_source` the samples
/// are replaced by zeros (null control).
inline VolumePotential secondary_potential(const Scenario& scenario, QuadratureOrders orders,
                                           bool zero_source = false) {
    scenario.validate();
    const auto breaks = scenario.shell_breakpoints();
    auto rule = shell_rule(scenario.shell(), orders.radial, orders.polar, orders.azimuth, breaks);
    std::vector<Complex> g(rule.size());
    if (!zero_source) {
        parallel_for(rule.size(),
                     [&](std::size_t i) { g[i] = active_source(scenario, rule.nodes[i]); });
    }
    return {scenario.k, std::move(rule), std::move(g), scenario.shell(),
            scenario.standoff_distance(), scenario.kernel_min_distance};
}

inline VolumePotential secondary_potential(const Scenario& scenario) {
    return secondary_potential(scenario, scenario.orders);
}

/// w(x) for a single point. Builds the quadrature each call; use
/// primary_potential() for repeated evaluation.
inline Complex primary_wave(const Scenario& scenario, const Point3& x) {
    return primary_potential(scenario)(x);
}

/// w~(x) for a single point; see secondary_potential() for repeated use.
inline Complex secondary_wave(const Scenario& scenario, const Point3& x) {
    return secondary_potential(scenario)(x);
}

/// w and its outward normal derivative on a sphere about the origin.
struct CauchyData {
    double k = 1.0;
    SurfaceRule rule;
    std::vector<Complex> values;
    std::vector<Complex> normal_derivatives;
};

/// Samples w on `rule` (a sphere of radius omega_radius about the origin).
/// The normal derivative is a central difference along the radial normal
/// with step 1e-5 * omega_radius.
inline CauchyData cauchy_data(const VolumePotential& primary, double omega_radius,
                              const SurfaceRule& rule) {
    const double min_radius = primary.region().outer_radius + primary.standoff();
    const double h = 1e-5 * omega_radius;
    if (!(omega_radius - h > min_radius)) {
        throw InvalidArgument("Omega radius " + std::to_string(omega_radius) +
                              " must exceed support radius plus standoff (" +
                              std::to_string(min_radius) + ")");
    }
    if (std::abs(rule.radius - omega_radius) > 1e-12 * omega_radius || !(rule.center == Point3{})) {
        throw InvalidArgument("surface rule must be the sphere of radius omega_radius about the origin");
    }
    CauchyData data;
    data.k = primary.k();
    data.rule = rule;
    data.values.resize(rule.size());
    data.normal_derivatives.resize(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) {
        const Point3 y = rule.nodes[i];
        const Point3 nu = rule.normal(i);
        data.values[i] = primary(y);
        data.normal_derivatives[i] = (primary(y + nu * h) - primary(y - nu * h)) / (2.0 * h);
    });
    return data;
}

inline CauchyData cauchy_data(const Scenario& scenario, double omega_radius,
                              const SurfaceRule& rule) {
    return cauchy_data(primary_potential(scenario), omega_radius, rule);
}

/// w'(x) = -integral over the sphere of (w dK_x/dnu - K_x dw/dnu) dS(y).
/// Rejects points closer than `standoff` to the sphere (default 0.1 * radius).
inline Complex surface_cancellation_field(const CauchyData& data, const Point3& x,
                                          double standoff = -1.0) {
    const double radius = data.rule.radius;
    if (standoff < 0.0) standoff = 0.1 * radius;
    const double gap = std::abs(distance(x, data.rule.center) - radius);
    if (gap < standoff) {
        throw SingularEvaluation("surface field evaluated at distance " + std::to_string(gap) +
                                 " from the boundary (standoff " + std::to_string(standoff) + ")");
    }
    const double k = data.k;
    return -reduce_indexed(data.rule.size(), [&](std::size_t i) {
        const Point3 diff = data.rule.nodes[i] - x;
        const double d = norm(diff);
        const Complex kern = std::polar(inv_four_pi / d, k * d);
        // grad_y K(y - x) = K (ik - 1/d) (y - x)/d
        const Complex dk_dnu = kern * Complex(-1.0 / d, k) * (dot(diff, data.rule.normal(i)) / d);
        return data.rule.weights[i] *
               (data.values[i] * dk_dnu - kern * data.normal_derivatives[i]);
    });
}

} // namespace shield
