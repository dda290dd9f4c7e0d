#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "shield/error.hpp"
#include "shield/geometry.hpp"
#include "shield/quadrature.hpp"

// Closed-form potentials of uniform and cone-shaped balls and of uniform
// shells, and the radius equation for a uniform cancelling shell.
//
// Normalization: every field below is (1/4pi) * integral of
// exp(ik|x-y|)/|x-y| rho(y) dy. The uniform shell B_R2 \ B_R1 is therefore
// the difference of two uniform-ball fields with no extra 1/(4pi); that is
// what direct shell quadrature reproduces.

namespace shield {

inline Complex phi(Complex s) { return s * std::cosh(s) - std::sinh(s); }

inline Complex P_fn(Complex s) { return -2.0 * std::cosh(s) + s * std::sinh(s) + 2.0; }

namespace detail {

// Below this |s| the power series replace the elementary forms, which lose
// relative accuracy like eps/s^2 (Q) and eps/s^4 (P).
inline constexpr double series_threshold = 0.5;

/// Q(s) = sum_{n>=1} (-1)^n 2n s^{2n+1} / (2n+1)!
inline double q_series(double s) {
    const double s2 = s * s;
    double term = s;  // s^{2n+1} / (2n+1)! at n = 0
    double acc = 0.0;
    for (int n = 1; n < 20; ++n) {
        term *= -s2 / ((2.0 * n) * (2.0 * n + 1.0));
        const double add = 2.0 * n * term;
        acc += add;
        if (std::abs(add) <= 1e-18 * std::abs(acc)) break;
    }
    return acc;
}

/// P(-is) = sum_{m>=2} (-1)^m (2m-2) s^{2m} / (2m)!
inline double p_series(double s) {
    const double s2 = s * s;
    double term = -s2 / 2.0;  // (-1)^m s^{2m} / (2m)! at m = 1
    double acc = 0.0;
    for (int m = 2; m < 20; ++m) {
        term *= -s2 / ((2.0 * m - 1.0) * (2.0 * m));
        const double add = (2.0 * m - 2.0) * term;
        acc += add;
        if (std::abs(add) <= 1e-18 * std::abs(acc)) break;
    }
    return acc;
}

} // namespace detail

/// Q(xi) = xi cos xi - sin xi.
inline double Q_fn(double xi) {
    if (std::abs(xi) < detail::series_threshold) return detail::q_series(xi);
    return xi * std::cos(xi) - std::sin(xi);
}

/// phi(-is) = -i Q(s) for real s.
inline Complex phi_imag(double s) { return {0.0, -Q_fn(s)}; }

/// P(-is) = 2 - 2 cos s - s sin s for real s.
inline double P_imag(double s) {
    if (std::abs(s) < detail::series_threshold) return detail::p_series(s);
    return 2.0 - 2.0 * std::cos(s) - s * std::sin(s);
}

namespace detail {

inline Complex outgoing(double k, const Point3& x) {
    const double r = norm(x);
    return std::polar(1.0 / r, k * r);
}

inline void check_outside(const Point3& x, double radius, const char* what) {
    if (!(norm(x) > radius)) {
        throw DomainError(std::string(what) + ": closed form holds only for |x| > " +
                          std::to_string(radius));
    }
}

} // namespace detail

/// Field of the unit density on B_eta: -i phi(-ik eta)/k^3 exp(ik|x|)/|x|.
inline Complex exact_constant_ball_field(double k, double eta, const Point3& x) {
    detail::check_outside(x, eta, "constant ball field");
    const double s = k * eta;
    return (-Q_fn(s) / (k * k * k)) * detail::outgoing(k, x);
}

/// Field of the density (eta - |y|) on B_eta: P(-ik eta)/k^4 exp(ik|x|)/|x|.
inline Complex exact_cone_ball_field(double k, double eta, const Point3& x) {
    detail::check_outside(x, eta, "cone ball field");
    const double s = k * eta;
    return (P_imag(s) / (k * k * k * k)) * detail::outgoing(k, x);
}

/// Field of the unit density on B_R2 \ B_R1:
/// -i (phi(-ik R2) - phi(-ik R1))/k^3 exp(ik|x|)/|x|.
inline Complex exact_shell_field(double k, double r1, double r2, const Point3& x) {
    if (!(r1 >= 0.0) || !(r2 >= r1)) {
        throw DomainError("shell field needs 0 <= R1 <= R2");
    }
    detail::check_outside(x, r2, "shell field");
    const double k3 = k * k * k;
    return (-(Q_fn(k * r2) - Q_fn(k * r1)) / k3) * detail::outgoing(k, x);
}

/// Result of the uniform-shell radius search.
struct NaiveShieldDesign {
    double k = 0.0;
    double epsilon = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    /// |Q(k R2) - Q(k R1) - (2(1 - cos k eps) - k eps sin k eps)/k|
    double residual = 0.0;
};

/// Right-hand side of the radius equation Q(k R2) = Q(k R1) + P(-ik eps)/k.
inline double naive_shield_rhs(double k, double eps, double r1) {
    return Q_fn(k * r1) + P_imag(k * eps) / k;
}

/// Smallest R2 > max(R1, search_from) solving Q(k R2) = rhs. Scans k R2 in
/// steps of `scan_step` for a sign change, then bisects to |residual| <= tol.
inline NaiveShieldDesign design_naive_shield(double k, double eps, double r1,
                                             double scan_step = std::numbers::pi / 8.0,
                                             double tol = 1e-12, double search_from = 0.0) {
    if (!(k > 0.0) || !(eps > 0.0) || !(r1 > eps)) {
        throw InvalidArgument("naive shield needs k > 0 and R1 > eps > 0");
    }
    if (!(tol > 0.0) || !(scan_step > 0.0)) {
        throw InvalidArgument("naive shield needs positive tolerance and scan step");
    }
    const double rhs = naive_shield_rhs(k, eps, r1);
    const auto residual = [&](double xi) { return Q_fn(xi) - rhs; };

    const double xi_start = k * std::max(r1, search_from);
    const double xi_limit = xi_start + 100.0 * std::numbers::pi;
    double lo = xi_start;
    double f_lo = residual(lo);
    bool bracketed = false;
    double hi = lo;
    double f_hi = f_lo;
    // The first sample sits on the window start; a root exactly there is not
    // admissible (R2 must exceed the start), so it only seeds the scan.
    while (lo < xi_limit) {
        hi = std::min(lo + scan_step, xi_limit);
        f_hi = residual(hi);
        if (f_hi == 0.0 || (f_lo != 0.0 && (f_lo < 0.0) != (f_hi < 0.0))) {
            bracketed = true;
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    if (!bracketed) {
        throw NoRootFound("no sign change of the shell radius equation for k R2 up to " +
                          std::to_string(xi_limit));
    }
    double root = hi;
    if (f_hi != 0.0) {
        for (int iter = 0; iter < 400; ++iter) {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = residual(mid);
            root = mid;
            if (std::abs(f_mid) <= tol || mid == lo || mid == hi) break;
            if ((f_mid < 0.0) == (f_lo < 0.0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
    }
    NaiveShieldDesign design{k, eps, r1, root / k, std::abs(residual(root))};
    if (!(design.residual <= tol)) {
        throw NoRootFound("bisection stalled at residual " + std::to_string(design.residual));
    }
    return design;
}

/// Residuals of the three equivalent forms of the uniform-shell condition.
struct NaiveResiduals {
    /// P(-ik eps) - ik (phi(-ik R2) - phi(-ik R1)), via complex hyperbolics.
    Complex complex_form;
    /// The same condition with cos/sin expanded by hand.
    double trig_form;
    /// Q(k R2) - Q(k R1) - P(-ik eps)/k.
    double q_form;
};

inline NaiveResiduals naive_residuals(double k, double eps, double r1, double r2) {
    const Complex ik{0.0, k};
    NaiveResiduals out;
    out.complex_form = P_fn(-ik * eps) - ik * (phi(-ik * r2) - phi(-ik * r1));
    const double ke = k * eps;
    const double a2 = k * r2;
    const double a1 = k * r1;
    out.trig_form = -2.0 * std::cos(ke) - ke * std::sin(ke) + 2.0 -
                    k * (a2 * std::cos(a2) - std::sin(a2) - a1 * std::cos(a1) + std::sin(a1));
    out.q_form = Q_fn(a2) - naive_shield_rhs(k, eps, r1);
    return out;
}

} // namespace shield
