#pragma once

#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "shield/error.hpp"
#include "shield/scenario.hpp"
#include "shield/sources.hpp"

namespace shield::harness {

using nlohmann::json;

inline constexpr int config_schema_version = 1;

struct ProfileConfig {
    /// "constant", "cone" or "piecewise".
    std::string kind = "constant";
    double value = 1.0;
    std::vector<double> breakpoints;
    std::vector<std::vector<double>> coefficients;

    friend bool operator==(const ProfileConfig&, const ProfileConfig&) = default;
};

struct Tolerances {
    double cancellation = 1e-3;
    double farfield = 1e-3;
    double g_support = 1e-12;
    double z_support = 1e-3;
    double surface = 1e-5;
    double naive_root = 1e-12;
    double naive_complex = 1e-10;
    double naive_cancellation = 1e-8;
    /// Required residual ratio per refinement step (10 = tenfold drop).
    double refinement_ratio = 10.0;

    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct SurfaceConfig {
    std::vector<double> omega_radii{1.0, 2.0};
    int order_polar = 32;
    int order_azimuth = 64;
    int eval_points = 20;
    /// Evaluation points sit on |x| = factor * omega radius.
    double eval_radius_factor = 1.3;

    friend bool operator==(const SurfaceConfig&, const SurfaceConfig&) = default;
};

struct NaiveConfig {
    double r1 = 1.0;
    double scan_step = std::numbers::pi / 8.0;
    int eval_points = 20;

    friend bool operator==(const NaiveConfig&, const NaiveConfig&) = default;
};

struct Controls {
    bool disable_active_source = false;
    bool zero_cauchy_data = false;

    friend bool operator==(const Controls&, const Controls&) = default;
};

struct RunConfig {
    int spec_version = config_schema_version;
    double k = 2.0;
    double epsilon = 0.5;
    double T = 1.25;
    ProfileConfig profile{};
    QuadratureOrders orders{};
    int time_order = 64;
    /// Negative: 0.05 * epsilon.
    double standoff = -1.0;
    std::vector<double> test_radii{2.5, 4.0, 8.0};
    int directions = 64;
    Tolerances tolerances{};
    SurfaceConfig surface{};
    NaiveConfig naive{};
    std::vector<QuadratureOrders> sweep_levels{{12, 12, 24}, {24, 24, 48}, {48, 48, 96}};
    Controls controls{};
    std::string output_dir = "out";

    friend bool operator==(const RunConfig&, const RunConfig&) = default;

    SourceDensity make_source() const {
        if (profile.kind == "constant") return SourceDensity(RadialProfile::constant(epsilon, profile.value));
        if (profile.kind == "cone") return SourceDensity(RadialProfile::cone(epsilon));
        return SourceDensity(RadialProfile(profile.breakpoints, profile.coefficients));
    }

    Scenario make_scenario(QuadratureOrders q) const {
        Scenario s(k, make_source(), T, q);
        s.time_order = time_order;
        s.standoff = standoff;
        s.validate();
        return s;
    }
    Scenario make_scenario() const { return make_scenario(orders); }

    /// Throws ConfigError naming the first offending field.
    void validate() const {
        if (spec_version != config_schema_version) {
            throw ConfigError("spec_version", "unsupported schema version " + std::to_string(spec_version));
        }
        if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("scenario.k", "must be positive");
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
            throw ConfigError("scenario.epsilon", "must be positive");
        }
        if (!(T > 2.0 * epsilon) || !std::isfinite(T)) {
            throw ConfigError("scenario.T", "must exceed 2*epsilon so the active-source shell "
                                            "does not meet the source support");
        }
        if (profile.kind != "constant" && profile.kind != "cone" && profile.kind != "piecewise") {
            throw ConfigError("scenario.profile.kind", "expected constant, cone or piecewise");
        }
        if (profile.kind == "piecewise") {
            try {
                RadialProfile p(profile.breakpoints, profile.coefficients);
                if (std::abs(p.support_radius() - epsilon) > 1e-14 * epsilon) {
                    throw ConfigError("scenario.profile.breakpoints", "last breakpoint must equal epsilon");
                }
            } catch (const InvalidArgument& e) {
                throw ConfigError("scenario.profile", e.what());
            }
        }
        const auto check_orders = [](const QuadratureOrders& q, const std::string& field) {
            if (q.radial < 1 || q.polar < 1 || q.azimuth < 1) {
                throw ConfigError(field, "quadrature orders must be >= 1");
            }
        };
        check_orders(orders, "quadrature");
        if (time_order < 1) throw ConfigError("quadrature.time_order", "must be >= 1");
        if (!std::isfinite(standoff)) throw ConfigError("evaluation.standoff", "must be finite");
        const double delta = standoff < 0.0 ? 0.05 * epsilon : standoff;
        if (test_radii.empty()) throw ConfigError("evaluation.test_radii", "need at least one radius");
        for (double r : test_radii) {
            if (!(r >= T + epsilon + delta)) {
                throw ConfigError("evaluation.test_radii",
                                  "test sphere radius " + std::to_string(r) +
                                      " must lie outside Omega = B_{T+eps} plus the standoff (" +
                                      std::to_string(T + epsilon + delta) + ")");
            }
        }
        if (directions < 1) throw ConfigError("evaluation.directions", "must be >= 1");
        const Tolerances& t = tolerances;
        for (double v : {t.cancellation, t.farfield, t.g_support, t.z_support, t.surface, t.naive_root,
                         t.naive_complex, t.naive_cancellation}) {
            if (!(v > 0.0)) throw ConfigError("tolerances", "tolerances must be positive");
        }
        if (!(t.refinement_ratio >= 1.0)) {
            throw ConfigError("tolerances.refinement_ratio", "must be >= 1");
        }
        for (double r : surface.omega_radii) {
            if (!(r > epsilon + delta)) {
                throw ConfigError("surface.omega_radii", "Omega radius " + std::to_string(r) +
                                                             " must exceed epsilon plus standoff");
            }
        }
        if (surface.order_polar < 1 || surface.order_azimuth < 1) {
            throw ConfigError("surface", "orders must be >= 1");
        }
        if (surface.eval_points < 1) throw ConfigError("surface.eval_points", "must be >= 1");
        if (!(surface.eval_radius_factor >= 1.1)) {
            throw ConfigError("surface.eval_radius_factor",
                              "must be >= 1.1 (points must clear the boundary standoff)");
        }
        if (!(naive.r1 > epsilon)) throw ConfigError("naive.R1", "must exceed epsilon");
        if (!(naive.scan_step > 0.0)) throw ConfigError("naive.scan_step", "must be positive");
        if (naive.eval_points < 1) throw ConfigError("naive.eval_points", "must be >= 1");
        if (sweep_levels.empty()) throw ConfigError("sweep.levels", "need at least one level");
        for (const auto& q : sweep_levels) check_orders(q, "sweep.levels");
        if (output_dir.empty()) throw ConfigError("output.dir", "must not be empty");
    }
};

namespace detail {

/// Reads keys from one JSON object and rejects any it did not consume.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    template <class T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(field(key), std::string("wrong type: ") + e.what());
        }
    }

    bool has(const char* key) {
        seen_.insert(key);
        return j_.contains(key);
    }
    const json& at(const char* key) const { return j_.at(key); }
    std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            if (!seen_.count(key)) throw ConfigError(field(key.c_str()), "unknown key");
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

inline QuadratureOrders orders_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3) {
        throw ConfigError(field, "expected [radial, polar, azimuth]");
    }
    try {
        return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
    } catch (const json::exception& e) {
        throw ConfigError(field, e.what());
    }
}

inline json orders_to_json(const QuadratureOrders& q) { return json::array({q.radial, q.polar, q.azimuth}); }

} // namespace detail

inline json to_json(const RunConfig& c) {
    json profile{{"kind", c.profile.kind}};
    if (c.profile.kind == "constant") profile["value"] = c.profile.value;
    if (c.profile.kind == "piecewise") {
        profile["breakpoints"] = c.profile.breakpoints;
        profile["coefficients"] = c.profile.coefficients;
    }
    json levels = json::array();
    for (const auto& q : c.sweep_levels) levels.push_back(detail::orders_to_json(q));
    const Tolerances& t = c.tolerances;
    return json{
        {"spec_version", c.spec_version},
        {"scenario", {{"k", c.k}, {"epsilon", c.epsilon}, {"T", c.T}, {"profile", profile}}},
        {"quadrature",
         {{"radial", c.orders.radial},
          {"polar", c.orders.polar},
          {"azimuth", c.orders.azimuth},
          {"time_order", c.time_order}}},
        {"evaluation",
         {{"test_radii", c.test_radii}, {"directions", c.directions}, {"standoff", c.standoff}}},
        {"tolerances",
         {{"cancellation", t.cancellation},
          {"farfield", t.farfield},
          {"g_support", t.g_support},
          {"z_support", t.z_support},
          {"surface", t.surface},
          {"naive_root", t.naive_root},
          {"naive_complex", t.naive_complex},
          {"naive_cancellation", t.naive_cancellation},
          {"refinement_ratio", t.refinement_ratio}}},
        {"surface",
         {{"omega_radii", c.surface.omega_radii},
          {"order_polar", c.surface.order_polar},
          {"order_azimuth", c.surface.order_azimuth},
          {"eval_points", c.surface.eval_points},
          {"eval_radius_factor", c.surface.eval_radius_factor}}},
        {"naive",
         {{"R1", c.naive.r1}, {"scan_step", c.naive.scan_step}, {"eval_points", c.naive.eval_points}}},
        {"sweep", {{"levels", levels}}},
        {"controls",
         {{"disable_active_source", c.controls.disable_active_source},
          {"zero_cauchy_data", c.controls.zero_cauchy_data}}},
        {"output", {{"dir", c.output_dir}}},
    };
}

/// Parses and validates a config document. Missing keys keep their
/// defaults; unknown keys are errors.
inline RunConfig config_from_json(const json& j) {
    RunConfig c;
    detail::ObjectReader root(j, "");
    if (!root.has("spec_version")) throw ConfigError("spec_version", "required");
    root.get("spec_version", c.spec_version);

    if (root.has("scenario")) {
        detail::ObjectReader s(root.at("scenario"), "scenario");
        s.get("k", c.k);
        s.get("epsilon", c.epsilon);
        s.get("T", c.T);
        if (s.has("profile")) {
            detail::ObjectReader p(s.at("profile"), "scenario.profile");
            p.get("kind", c.profile.kind);
            p.get("value", c.profile.value);
            p.get("breakpoints", c.profile.breakpoints);
            p.get("coefficients", c.profile.coefficients);
            p.finish();
        }
        s.finish();
    }
    if (root.has("quadrature")) {
        detail::ObjectReader q(root.at("quadrature"), "quadrature");
        q.get("radial", c.orders.radial);
        q.get("polar", c.orders.polar);
        q.get("azimuth", c.orders.azimuth);
        q.get("time_order", c.time_order);
        q.finish();
    }
    if (root.has("evaluation")) {
        detail::ObjectReader e(root.at("evaluation"), "evaluation");
        e.get("test_radii", c.test_radii);
        e.get("directions", c.directions);
        e.get("standoff", c.standoff);
        e.finish();
    }
    if (root.has("tolerances")) {
        detail::ObjectReader t(root.at("tolerances"), "tolerances");
        auto& tol = c.tolerances;
        t.get("cancellation", tol.cancellation);
        t.get("farfield", tol.farfield);
        t.get("g_support", tol.g_support);
        t.get("z_support", tol.z_support);
        t.get("surface", tol.surface);
        t.get("naive_root", tol.naive_root);
        t.get("naive_complex", tol.naive_complex);
        t.get("naive_cancellation", tol.naive_cancellation);
        t.get("refinement_ratio", tol.refinement_ratio);
        t.finish();
    }
    if (root.has("surface")) {
        detail::ObjectReader s(root.at("surface"), "surface");
        s.get("omega_radii", c.surface.omega_radii);
        s.get("order_polar", c.surface.order_polar);
        s.get("order_azimuth", c.surface.order_azimuth);
        s.get("eval_points", c.surface.eval_points);
        s.get("eval_radius_factor", c.surface.eval_radius_factor);
        s.finish();
    }
    if (root.has("naive")) {
        detail::ObjectReader n(root.at("naive"), "naive");
        n.get("R1", c.naive.r1);
        n.get("scan_step", c.naive.scan_step);
        n.get("eval_points", c.naive.eval_points);
        n.finish();
    }
    if (root.has("sweep")) {
        detail::ObjectReader s(root.at("sweep"), "sweep");
        if (s.has("levels")) {
            const json& levels = s.at("levels");
            if (!levels.is_array()) throw ConfigError("sweep.levels", "expected an array");
            c.sweep_levels.clear();
            for (std::size_t i = 0; i < levels.size(); ++i) {
                c.sweep_levels.push_back(
                    detail::orders_from_json(levels[i], "sweep.levels[" + std::to_string(i) + "]"));
            }
        }
        s.finish();
    }
    if (root.has("controls")) {
        detail::ObjectReader ctl(root.at("controls"), "controls");
        ctl.get("disable_active_source", c.controls.disable_active_source);
        ctl.get("zero_cauchy_data", c.controls.zero_cauchy_data);
        ctl.finish();
    }
    if (root.has("output")) {
        detail::ObjectReader o(root.at("output"), "output");
        o.get("dir", c.output_dir);
        o.finish();
    }
    root.finish();
    c.validate();
    return c;
}

inline RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
    }
    return config_from_json(j);
}

} // namespace shield::harness
