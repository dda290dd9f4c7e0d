#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "shield/harness/config.hpp"
#include "shield/harness/report.hpp"
#include "shield/helmholtz.hpp"
#include "shield/scenario.hpp"
#include "shield/shellform.hpp"
#include "shield/timedomain.hpp"

// Verification runs behind the CLI subcommands. Each returns a report plus
// plot-ready tables; writing them to disk is left to output.hpp.

namespace shield::harness {

/// n roughly uniform points on the sphere of given radius (golden-angle
/// spiral). No quadrature weights; used for max-residual probes only.
inline std::vector<Point3> fibonacci_sphere(int n, double radius) {
    std::vector<Point3> out;
    out.reserve(static_cast<std::size_t>(n));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (i + 0.5) * 2.0 / n;
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        out.push_back(Point3{s * std::cos(golden * i), s * std::sin(golden * i), z} * radius);
    }
    return out;
}

/// The 26 directions toward the neighbours of a cube cell, normalized.
inline std::vector<Point3> cube_directions() {
    std::vector<Point3> out;
    for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) {
            for (int c = -1; c <= 1; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                out.push_back(normalized(Point3{double(a), double(b), double(c)}));
            }
        }
    }
    return out;
}

struct FieldRow {
    Point3 x;
    Complex primary;
    Complex secondary;
};

struct FarFieldRow {
    Point3 direction;
    Complex primary;
    Complex secondary;
};

struct RunResult {
    VerificationReport report;
    std::vector<FieldRow> field;
    std::vector<FarFieldRow> farfield;
};

namespace detail {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::vector<Point3> test_points(const RunConfig& cfg) {
    std::vector<Point3> pts;
    for (double r : cfg.test_radii) {
        const auto sphere = fibonacci_sphere(cfg.directions, r);
        pts.insert(pts.end(), sphere.begin(), sphere.end());
    }
    return pts;
}

struct CancellationResult {
    std::vector<double> relative;  // |w + w~| / max|w| per point
    std::vector<FieldRow> rows;
};

inline CancellationResult cancellation(const VolumePotential& primary,
                                       const VolumePotential& secondary,
                                       const std::vector<Point3>& pts) {
    const auto w = primary.evaluate(pts, FieldLabel::primary_w);
    const auto ws = secondary.evaluate(pts, FieldLabel::secondary_w);
    double max_w = 0.0;
    for (const auto& v : w.values) max_w = std::max(max_w, std::abs(v));
    CancellationResult out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.relative.push_back(std::abs(w.values[i] + ws.values[i]) / max_w);
        out.rows.push_back({pts[i], w.values[i], ws.values[i]});
    }
    return out;
}

struct FarFieldResult {
    std::vector<double> relative;  // |F^ + G^| / max|F^| per direction
    std::vector<FarFieldRow> rows;
};

inline FarFieldResult farfield(const VolumePotential& primary, const VolumePotential& secondary) {
    const auto dirs = cube_directions();
    const auto f = primary.far_field(dirs);
    const auto g = secondary.far_field(dirs);
    double max_f = 0.0;
    for (const auto& v : f.amplitudes) max_f = std::max(max_f, std::abs(v));
    FarFieldResult out;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        out.relative.push_back(std::abs(f.amplitudes[i] + g.amplitudes[i]) / max_f);
        out.rows.push_back({dirs[i], f.amplitudes[i], g.amplitudes[i]});
    }
    return out;
}

inline double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::isnan(x) ? x : std::max(m, x);
    return m;
}

/// |G| at 50 points inside B_{T-eps-0.05} and 50 outside B_{T+eps+0.05},
/// relative to max |G| over probes filling the shell.
inline std::vector<double> g_support_probe(const Scenario& s) {
    const double eps = s.epsilon();
    std::vector<Point3> shell_pts;
    for (int j = 0; j < 16; ++j) {
        const double r = s.T - eps + (j + 0.5) * 2.0 * eps / 16.0;
        const auto sphere = fibonacci_sphere(32, r);
        shell_pts.insert(shell_pts.end(), sphere.begin(), sphere.end());
    }
    const auto shell_g = sample_active_source(s, shell_pts);
    double max_g = 0.0;
    for (const auto& v : shell_g.values) max_g = std::max(max_g, std::abs(v));

    std::vector<Point3> probes;
    const double inner = s.T - eps - 0.05;
    const double outer = s.T + eps + 0.05;
    const auto dirs = fibonacci_sphere(50, 1.0);
    for (int i = 0; i < 50; ++i) {
        if (inner > 0.0) probes.push_back(dirs[static_cast<std::size_t>(i)] * (inner * (i + 1) / 50.0));
        probes.push_back(dirs[static_cast<std::size_t>(49 - i)] * (outer + i * outer / 50.0));
    }
    const auto g = sample_active_source(s, probes);
    std::vector<double> rel;
    for (const auto& v : g.values) rel.push_back(std::abs(v) / max_g);
    return rel;
}

/// |z| at 20 points outside B_{T+eps} relative to max |z| at 20 points inside.
inline std::vector<double> z_support_probe(const Scenario& s) {
    const double omega = s.T + s.epsilon();
    const auto dirs = fibonacci_sphere(20, 1.0);
    std::vector<Point3> inside;
    std::vector<Point3> outside;
    for (int i = 0; i < 20; ++i) {
        inside.push_back(dirs[static_cast<std::size_t>(i)] * (omega * (i + 0.5) / 20.0));
        outside.push_back(dirs[static_cast<std::size_t>(19 - i)] * (omega * (1.02 + 0.1 * i)));
    }
    std::vector<Complex> z_in(20);
    std::vector<Complex> z_out(20);
    parallel_for(20, [&](std::size_t i) {
        z_in[i] = z_transform(s, inside[i]);
        z_out[i] = z_transform(s, outside[i]);
    });
    double max_in = 0.0;
    for (const auto& v : z_in) max_in = std::max(max_in, std::abs(v));
    std::vector<double> rel;
    for (const auto& v : z_out) rel.push_back(std::abs(v) / max_in);
    return rel;
}

/// Residual contraction factors between consecutive rows.
/// Relative residuals at or below this are rounding noise.
inline constexpr double rounding_floor = 1e-12;

/// Step ratios series[i] / series[i-1]. A step that lands at the rounding
/// floor counts as converged (ratio 0): its ratio is noise.
inline std::vector<double> contractions(const std::vector<double>& series) {
    std::vector<double> out;
    for (std::size_t i = 1; i < series.size(); ++i) {
        out.push_back(series[i] <= rounding_floor ? 0.0 : series[i] / series[i - 1]);
    }
    return out;
}

inline std::string orders_label(const QuadratureOrders& q) {
    return std::to_string(q.radial) + "," + std::to_string(q.polar) + "," + std::to_string(q.azimuth);
}

} // namespace detail

/// Builds G on the shell, evaluates w and w~ on the test spheres, and checks
/// exterior cancellation, far-field cancellation, and the supports of G and z.
inline RunResult run_shield(const RunConfig& cfg) {
    cfg.validate();
    detail::Stopwatch clock;
    const Scenario s = cfg.make_scenario();
    const auto primary = primary_potential(s);
    const auto secondary = secondary_potential(s, s.orders, cfg.controls.disable_active_source);

    RunResult out;
    out.report.subcommand = "shield";
    out.report.config = to_json(cfg);

    auto cancel = detail::cancellation(primary, secondary, detail::test_points(cfg));
    auto ff = detail::farfield(primary, secondary);
    out.report.add_check("cancellation", cancel.relative, cfg.tolerances.cancellation);
    out.report.add_check("farfield", ff.relative, cfg.tolerances.farfield);
    out.report.add_check("g_support", detail::g_support_probe(s), cfg.tolerances.g_support);
    out.report.add_check("z_support", detail::z_support_probe(s), cfg.tolerances.z_support);
    out.report.convergence.push_back({"shield", s.orders, detail::max_of(cancel.relative),
                                      detail::max_of(ff.relative)});
    out.field = std::move(cancel.rows);
    out.farfield = std::move(ff.rows);
    out.report.seconds = clock.seconds();
    return out;
}

/// Far-field check only: |F^(k w) + G^(k w)| over the 26-direction grid.
inline RunResult run_farfield(const RunConfig& cfg) {
    cfg.validate();
    detail::Stopwatch clock;
    const Scenario s = cfg.make_scenario();
    const auto primary = primary_potential(s);
    const auto secondary = secondary_potential(s, s.orders, cfg.controls.disable_active_source);
    RunResult out;
    out.report.subcommand = "farfield";
    out.report.config = to_json(cfg);
    auto ff = detail::farfield(primary, secondary);
    out.report.add_check("farfield", ff.relative, cfg.tolerances.farfield);
    out.report.convergence.push_back({"farfield", s.orders, 0.0, detail::max_of(ff.relative)});
    out.farfield = std::move(ff.rows);
    out.report.seconds = clock.seconds();
    return out;
}

/// run_shield's cancellation and far-field residuals at every sweep level.
/// With two or more levels, also checks monotone decrease and the required
/// drop per level.
inline RunResult run_sweep(const RunConfig& cfg) {
    cfg.validate();
    detail::Stopwatch clock;
    RunResult out;
    out.report.subcommand = "sweep";
    out.report.config = to_json(cfg);
    const auto pts = detail::test_points(cfg);
    std::vector<double> near;
    std::vector<double> far;
    for (const auto& level : cfg.sweep_levels) {
        const Scenario s = cfg.make_scenario(level);
        const auto primary = primary_potential(s);
        const auto secondary = secondary_potential(s, level, cfg.controls.disable_active_source);
        auto cancel = detail::cancellation(primary, secondary, pts);
        const auto ff = detail::farfield(primary, secondary);
        near.push_back(detail::max_of(cancel.relative));
        far.push_back(detail::max_of(ff.relative));
        out.report.add_check("cancellation[" + detail::orders_label(level) + "]", cancel.relative,
                             cfg.tolerances.cancellation);
        out.report.convergence.push_back({detail::orders_label(level), level, near.back(), far.back()});
        out.field = std::move(cancel.rows);
    }
    if (near.size() >= 2) {
        const auto c_near = detail::contractions(near);
        const auto c_far = detail::contractions(far);
        out.report.add_check("sweep_monotone", c_near, 1.0);
        out.report.add_check("sweep_contraction", c_near, 1.0 / cfg.tolerances.refinement_ratio);
        out.report.add_check("farfield_monotone", c_far, 1.0);
    }
    out.report.seconds = clock.seconds();
    return out;
}

/// Cancellation by layer potentials built from the Cauchy data of w on
/// spheres |y| = R for each configured R, at the configured orders and at
/// doubled orders.
inline RunResult run_surface(const RunConfig& cfg) {
    cfg.validate();
    detail::Stopwatch clock;
    const Scenario s = cfg.make_scenario();
    const auto primary = primary_potential(s);
    RunResult out;
    out.report.subcommand = "surface";
    out.report.config = to_json(cfg);
    for (double radius : cfg.surface.omega_radii) {
        const auto pts = fibonacci_sphere(cfg.surface.eval_points, cfg.surface.eval_radius_factor * radius);
        const auto w = primary.evaluate(pts, FieldLabel::primary_w);
        double max_w = 0.0;
        for (const auto& v : w.values) max_w = std::max(max_w, std::abs(v));
        std::vector<double> per_level;
        for (int factor : {1, 2}) {
            const auto rule = sphere_rule(Point3{}, radius, cfg.surface.order_polar * factor,
                                          cfg.surface.order_azimuth * factor);
            auto data = cauchy_data(primary, radius, rule);
            if (cfg.controls.zero_cauchy_data) {
                std::fill(data.values.begin(), data.values.end(), Complex{});
                std::fill(data.normal_derivatives.begin(), data.normal_derivatives.end(), Complex{});
            }
            std::vector<Complex> wp(pts.size());
            parallel_for(pts.size(), [&](std::size_t i) { wp[i] = surface_cancellation_field(data, pts[i]); });
            std::vector<double> rel;
            for (std::size_t i = 0; i < pts.size(); ++i) rel.push_back(std::abs(w.values[i] + wp[i]) / max_w);
            per_level.push_back(detail::max_of(rel));
            char label[64];
            std::snprintf(label, sizeof label, "R=%g", radius);
            if (factor == 1) {
                out.report.add_check(std::string("surface[") + label + "]", rel, cfg.tolerances.surface);
                if (radius == cfg.surface.omega_radii.front()) {
                    for (std::size_t i = 0; i < pts.size(); ++i) out.field.push_back({pts[i], w.values[i], wp[i]});
                }
            }
            out.report.convergence.push_back(
                {std::string(label) + " surface " + std::to_string(rule.order_polar) + "x" +
                     std::to_string(rule.order_azimuth),
                 {0, rule.order_polar, rule.order_azimuth}, per_level.back(), 0.0});
        }
        char name[64];
        std::snprintf(name, sizeof name, "surface_refinement[R=%g]", radius);
        out.report.add_check(name, detail::contractions(per_level), 1.0 / cfg.tolerances.refinement_ratio);
    }
    out.report.seconds = clock.seconds();
    return out;
}

/// Uniform-shell design for the cone source: solves for R2, then checks the
/// equivalent residual forms and exterior cancellation by closed forms and
/// by quadrature.
inline RunResult run_naive(const RunConfig& cfg) {
    cfg.validate();
    detail::Stopwatch clock;
    RunResult out;
    out.report.subcommand = "naive";
    out.report.config = to_json(cfg);
    const double k = cfg.k;
    const double eps = cfg.epsilon;
    const auto design = design_naive_shield(k, eps, cfg.naive.r1, cfg.naive.scan_step,
                                            cfg.tolerances.naive_root);
    const auto res = naive_residuals(k, eps, design.r1, design.r2);
    out.report.results = {{"R1", design.r1}, {"R2", design.r2}};
    out.report.add_check("naive_root_residual", design.residual, design.residual,
                         cfg.tolerances.naive_root);
    out.report.add_check("naive_complex_residual", std::abs(res.complex_form),
                         std::abs(res.complex_form), cfg.tolerances.naive_complex);
    out.report.add_check("naive_trig_residual", std::abs(res.trig_form), std::abs(res.trig_form),
                         cfg.tolerances.naive_complex);

    std::vector<Point3> pts;
    const auto dirs = fibonacci_sphere(cfg.naive.eval_points, 1.0);
    for (int i = 0; i < cfg.naive.eval_points; ++i) {
        const double r = design.r2 * (2.0 + 2.0 * i / std::max(1, cfg.naive.eval_points - 1));
        pts.push_back(dirs[static_cast<std::size_t>(i)] * r);
    }

    std::vector<double> closed;
    double max_w = 0.0;
    for (const auto& x : pts) max_w = std::max(max_w, std::abs(exact_cone_ball_field(k, eps, x)));
    for (const auto& x : pts) {
        const Complex w = exact_cone_ball_field(k, eps, x);
        const Complex wp = exact_shell_field(k, design.r1, design.r2, x);
        closed.push_back(std::abs(w + wp) / max_w);
        out.field.push_back({x, w, wp});
    }
    out.report.add_check("naive_closed_form_cancellation", closed, cfg.tolerances.naive_cancellation);

    // Quadrature: cone density on B_eps, unit density on B_R2 \ B_R1.
    const auto& q = cfg.orders;
    const double delta = cfg.standoff < 0.0 ? 0.05 * eps : cfg.standoff;
    auto ball = ball_rule(BallRegion{Point3{}, eps}, q.radial, q.polar, q.azimuth);
    std::vector<Complex> cone(ball.size());
    for (std::size_t i = 0; i < ball.size(); ++i) cone[i] = eps - norm(ball.nodes[i]);
    const VolumePotential w_quad(k, std::move(ball), std::move(cone), ShellRegion{Point3{}, 0.0, eps}, delta);
    const ShellRegion shell{Point3{}, design.r1, design.r2};
    auto shell_nodes = shell_rule(shell, q.radial, q.polar, q.azimuth);
    std::vector<Complex> unit(shell_nodes.size(), Complex{1.0, 0.0});
    const VolumePotential wp_quad(k, std::move(shell_nodes), std::move(unit), shell, delta);
    const auto w_vals = w_quad.evaluate(pts, FieldLabel::primary_w);
    const auto wp_vals = wp_quad.evaluate(pts, FieldLabel::secondary_w);
    std::vector<double> quad;
    for (std::size_t i = 0; i < pts.size(); ++i) quad.push_back(std::abs(w_vals.values[i] + wp_vals.values[i]) / max_w);
    out.report.add_check("naive_quadrature_cancellation", quad, cfg.tolerances.naive_cancellation);
    out.report.seconds = clock.seconds();
    return out;
}

} // namespace shield::harness
