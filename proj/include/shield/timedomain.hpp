#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "shield/error.hpp"
#include "shield/parallel.hpp"
#include "shield/quadrature.hpp"
#include "shield/scenario.hpp"
#include "shield/sources.hpp"

// Wave equation u_tt = Laplace u with u(.,0) = 0, u_t(.,0) = F, solved
// pointwise by the Kirchhoff formula u(x,t) = t * M(x,t), M the spherical
// mean of F. Nothing here time-steps.

namespace shield {

inline double kirchhoff_u(const SourceDensity& source, const Point3& x, double t) {
    if (t < 0.0) throw InvalidArgument("Kirchhoff solution needs t >= 0");
    if (t == 0.0) return 0.0;
    return t * spherical_mean(source, x, t);
}

inline double kirchhoff_ut(const SourceDensity& source, const Point3& x, double t) {
    if (t < 0.0) throw InvalidArgument("Kirchhoff solution needs t >= 0");
    if (t == 0.0) return source.density(x);
    return spherical_mean(source, x, t) + t * spherical_mean_dt(source, x, t);
}

/// u and u_t at a fixed time over a list of points.
struct WaveSnapshot {
    double t = 0.0;
    std::vector<Point3> points;
    std::vector<double> u_values;
    std::vector<double> ut_values;
};

inline WaveSnapshot wave_snapshot(const SourceDensity& source, std::span<const Point3> points,
                                  double t) {
    WaveSnapshot snap;
    snap.t = t;
    snap.points.assign(points.begin(), points.end());
    snap.u_values.resize(points.size());
    snap.ut_values.resize(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        snap.u_values[i] = kirchhoff_u(source, points[i], t);
        snap.ut_values[i] = kirchhoff_ut(source, points[i], t);
    });
    return snap;
}

/// G(x) = -exp(-ikT) (u_t(x,T) + ik u(x,T)).
inline Complex active_source(const Scenario& scenario, const Point3& x) {
    const double u = kirchhoff_u(scenario.source, x, scenario.T);
    const double ut = kirchhoff_ut(scenario.source, x, scenario.T);
    const Complex phase = std::polar(1.0, -scenario.k * scenario.T);
    return -phase * Complex(ut, scenario.k * u);
}

/// Active-source samples at a set of points.
struct ActiveSourceField {
    std::vector<Point3> points;
    std::vector<Complex> values;
};

inline ActiveSourceField sample_active_source(const Scenario& scenario,
                                              std::span<const Point3> points) {
    ActiveSourceField out;
    out.points.assign(points.begin(), points.end());
    out.values.resize(points.size());
    parallel_for(points.size(),
                 [&](std::size_t i) { out.values[i] = active_source(scenario, points[i]); });
    return out;
}

/// Times where t -> u(x,t) has kinks: |r -/+ b| for each radial breakpoint b.
inline std::vector<double> kirchhoff_kink_times(const SourceDensity& source, const Point3& x) {
    const double r = norm(x);
    std::vector<double> out;
    for (double b : source.radial_breakpoints()) {
        out.push_back(std::abs(r - b));
        out.push_back(r + b);
    }
    return out;
}

/// z(x) = integral over [0, T] of exp(-ikt) u(x,t) dt, by Gauss-Legendre with
/// `time_order` nodes on each panel between kink times of u(x, .).
inline Complex z_transform(const Scenario& scenario, const Point3& x, int time_order) {
    if (time_order < 1) throw InvalidArgument("time_order must be >= 1");
    const auto kinks = kirchhoff_kink_times(scenario.source, x);
    const auto rule = composite_gauss_legendre(time_order, 0.0, scenario.T, kinks);
    return reduce_indexed(rule.nodes.size(), [&](std::size_t i) {
        const double t = rule.nodes[i];
        return rule.weights[i] * kirchhoff_u(scenario.source, x, t) *
               std::polar(1.0, -scenario.k * t);
    });
}

inline Complex z_transform(const Scenario& scenario, const Point3& x) {
    return z_transform(scenario, x, scenario.time_order);
}

} // namespace shield
