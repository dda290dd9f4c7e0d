#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "shield/error.hpp"
#include "shield/geometry.hpp"
#include "shield/sources.hpp"

namespace shield {

struct QuadratureOrders {
    int radial = 24;
    int polar = 24;
    int azimuth = 48;

    QuadratureOrders scaled(int factor) const {
        return {radial * factor, polar * factor, azimuth * factor};
    }
    friend bool operator==(const QuadratureOrders&, const QuadratureOrders&) = default;
};

/// One shielding problem: wavenumber k, source F in B_eps, horizon T.
/// The active source lives on the shell T - eps <= |x| <= T + eps and the
/// shielded region is the exterior of Omega = B_{T+eps}.
struct Scenario {
    double k = 1.0;
    SourceDensity source;
    double T = 1.0;
    QuadratureOrders orders{};
    int time_order = 64;
    /// Minimum distance from an evaluation point to an integration region.
    /// Negative means the default 0.05 * eps.
    double standoff = -1.0;
    /// Minimum |x - y| accepted by the kernel.
    double kernel_min_distance = 1e-9;

    Scenario(double wavenumber, SourceDensity src, double horizon, QuadratureOrders q = {})
        : k(wavenumber), source(std::move(src)), T(horizon), orders(q) {
        validate();
    }

    double epsilon() const noexcept { return source.support_radius(); }
    double standoff_distance() const noexcept { return standoff < 0.0 ? 0.05 * epsilon() : standoff; }

    BallRegion support() const { return {Point3{}, epsilon()}; }
    ShellRegion shell() const { return {Point3{}, T - epsilon(), T + epsilon()}; }
    BallRegion omega() const { return {Point3{}, T + epsilon()}; }

    /// Radii inside the shell where G has radial kinks: T -/+ each source
    /// breakpoint.
    std::vector<double> shell_breakpoints() const {
        std::vector<double> out;
        for (double r : source.radial_breakpoints()) {
            out.push_back(T - r);
            out.push_back(T + r);
        }
        return out;
    }

    void validate() const {
        if (!(k > 0.0) || !std::isfinite(k)) {
            throw InvalidArgument("wavenumber k must be positive and finite");
        }
        if (!(T > 2.0 * epsilon()) || !std::isfinite(T)) {
            throw InvalidArgument("horizon T must exceed 2*epsilon so the active-source shell "
                                  "stays disjoint from the source support (T = " +
                                  std::to_string(T) + ", epsilon = " + std::to_string(epsilon()) +
                                  ")");
        }
        detail::check_orders({orders.radial, orders.polar, orders.azimuth, time_order});
        if (!(kernel_min_distance > 0.0)) throw InvalidArgument("kernel_min_distance must be > 0");
    }
};

} // namespace shield
