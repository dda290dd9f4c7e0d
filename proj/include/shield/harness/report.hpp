#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "shield/scenario.hpp"

namespace shield::harness {

using nlohmann::json;

/// One acceptance check. `pass` holds exactly when max_residual <= tolerance
/// (NaN never passes).
struct CheckRecord {
    std::string name;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct ConvergenceRow {
    std::string label;
    QuadratureOrders orders{};
    double residual = 0.0;
    double farfield_residual = 0.0;

    friend bool operator==(const ConvergenceRow&, const ConvergenceRow&) = default;
};

struct VerificationReport {
    std::string subcommand;
    json config;
    std::vector<CheckRecord> checks;
    std::vector<ConvergenceRow> convergence;
    /// Named scalar results (e.g. a designed radius).
    json results = json::object();
    double seconds = 0.0;

    bool all_pass() const {
        return !checks.empty() &&
               std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    }

    const CheckRecord* find(const std::string& name) const {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }

    const CheckRecord& add_check(std::string name, double max_residual, double mean_residual,
                                 double tolerance) {
        checks.push_back({std::move(name), max_residual, mean_residual, tolerance,
                          max_residual <= tolerance});
        return checks.back();
    }

    /// Adds a check over a list of residual samples.
    const CheckRecord& add_check(std::string name, const std::vector<double>& samples,
                                 double tolerance) {
        double worst = samples.empty() ? std::numeric_limits<double>::quiet_NaN() : 0.0;
        double sum = 0.0;
        for (double v : samples) {
            worst = std::isnan(v) || std::isnan(worst) ? std::numeric_limits<double>::quiet_NaN()
                                                       : std::max(worst, v);
            sum += v;
        }
        const double mean = samples.empty() ? worst : sum / static_cast<double>(samples.size());
        return add_check(std::move(name), worst, mean, tolerance);
    }

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

namespace detail {

// JSON has no NaN/inf; they are written as strings and restored on read.
inline json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline double number_from(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    return j.get<double>();
}

} // namespace detail

/// Everything except "timing" is a pure function of the config.
inline json to_json(const VerificationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"max_residual", detail::number(c.max_residual)},
                          {"mean_residual", detail::number(c.mean_residual)},
                          {"tolerance", detail::number(c.tolerance)},
                          {"pass", c.pass}});
    }
    json rows = json::array();
    for (const auto& row : r.convergence) {
        rows.push_back({{"label", row.label},
                        {"orders", {row.orders.radial, row.orders.polar, row.orders.azimuth}},
                        {"residual", detail::number(row.residual)},
                        {"farfield_residual", detail::number(row.farfield_residual)}});
    }
    return json{{"subcommand", r.subcommand},
                {"pass", r.all_pass()},
                {"checks", checks},
                {"convergence", rows},
                {"results", r.results},
                {"config", r.config},
                {"timing", {{"seconds", r.seconds}}}};
}

inline VerificationReport report_from_json(const json& j) {
    VerificationReport r;
    r.subcommand = j.at("subcommand").get<std::string>();
    r.config = j.at("config");
    for (const auto& c : j.at("checks")) {
        r.checks.push_back({c.at("name").get<std::string>(), detail::number_from(c.at("max_residual")),
                            detail::number_from(c.at("mean_residual")),
                            detail::number_from(c.at("tolerance")), c.at("pass").get<bool>()});
    }
    for (const auto& row : j.at("convergence")) {
        const auto& o = row.at("orders");
        r.convergence.push_back({row.at("label").get<std::string>(),
                                 {o.at(0).get<int>(), o.at(1).get<int>(), o.at(2).get<int>()},
                                 detail::number_from(row.at("residual")),
                                 detail::number_from(row.at("farfield_residual"))});
    }
    r.results = j.at("results");
    r.seconds = j.at("timing").at("seconds").get<double>();
    return r;
}

} // namespace shield::harness
