#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "shield/harness/pipeline.hpp"
#include "shield/harness/report.hpp"

namespace shield::harness {

/// Writes `content` to `path` via a sibling temp file and a rename, so
/// readers never observe a partial file.
inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline std::string field_csv(const std::vector<FieldRow>& rows) {
    std::ostringstream os;
    os << "x1,x2,x3,re_w,im_w,re_w_secondary,im_w_secondary,re_total,im_total\n";
    for (const auto& r : rows) {
        const Complex total = r.primary + r.secondary;
        os << detail::fmt(r.x.x1) << ',' << detail::fmt(r.x.x2) << ',' << detail::fmt(r.x.x3) << ','
           << detail::fmt(r.primary.real()) << ',' << detail::fmt(r.primary.imag()) << ','
           << detail::fmt(r.secondary.real()) << ',' << detail::fmt(r.secondary.imag()) << ','
           << detail::fmt(total.real()) << ',' << detail::fmt(total.imag()) << '\n';
    }
    return os.str();
}

inline std::string farfield_csv(const std::vector<FarFieldRow>& rows) {
    std::ostringstream os;
    os << "index,omega1,omega2,omega3,re_primary,im_primary,re_secondary,im_secondary,re_sum,im_sum\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const Complex sum = r.primary + r.secondary;
        os << i << ',' << detail::fmt(r.direction.x1) << ',' << detail::fmt(r.direction.x2) << ','
           << detail::fmt(r.direction.x3) << ',' << detail::fmt(r.primary.real()) << ','
           << detail::fmt(r.primary.imag()) << ',' << detail::fmt(r.secondary.real()) << ','
           << detail::fmt(r.secondary.imag()) << ',' << detail::fmt(sum.real()) << ','
           << detail::fmt(sum.imag()) << '\n';
    }
    return os.str();
}

inline std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    os << "label,order_radial,order_polar,order_azimuth,residual,farfield_residual\n";
    for (const auto& r : rows) {
        os << '"' << r.label << '"' << ',' << r.orders.radial << ',' << r.orders.polar << ','
           << r.orders.azimuth << ',' << detail::fmt(r.residual) << ','
           << detail::fmt(r.farfield_residual) << '\n';
    }
    return os.str();
}

/// report.json always; field.csv, farfield.csv and convergence.csv when the
/// run produced those tables.
inline void write_outputs(const RunResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_atomically(dir / "report.json", to_json(result.report).dump(2) + "\n");
    if (!result.field.empty()) write_atomically(dir / "field.csv", field_csv(result.field));
    if (!result.farfield.empty()) write_atomically(dir / "farfield.csv", farfield_csv(result.farfield));
    if (!result.report.convergence.empty()) {
        write_atomically(dir / "convergence.csv", convergence_csv(result.report.convergence));
    }
}

} // namespace shield::harness
