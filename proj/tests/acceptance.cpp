// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// all pass. Each criterion runs the library or the harness end to end and
// compares against tolerances fixed here.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "shield/harness/config.hpp"
#include "shield/harness/pipeline.hpp"
#include "shield/shield.hpp"

using namespace shield;
using namespace shield::harness;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

RunConfig with_profile(const char* kind) {
    RunConfig c;
    c.profile.kind = kind;
    return c;
}

const CheckRecord& check(const VerificationReport& r, const std::string& name) {
    const auto* c = r.find(name);
    if (!c) throw std::runtime_error("report has no check " + name);
    return *c;
}

Point3 random_point(std::mt19937_64& rng, double r) {
    std::normal_distribution<double> gauss;
    return normalized(Point3{gauss(rng), gauss(rng), gauss(rng)}) * r;
}

// Shield runs for both profiles, shared by criteria 2 and 3.
std::vector<RunResult>& shield_runs() {
    static std::vector<RunResult> runs = [] {
        std::vector<RunResult> out;
        for (const char* kind : {"constant", "cone"}) out.push_back(run_shield(with_profile(kind)));
        return out;
    }();
    return runs;
}

Outcome cancellation_and_refinement() {
    Outcome o{true, ""};
    for (const char* kind : {"constant", "cone"}) {
        const auto r = run_sweep(with_profile(kind)).report;
        const auto& at24 = check(r, "cancellation[24,24,48]");
        const auto& ratio = check(r, "sweep_contraction");
        o.pass = o.pass && at24.pass && ratio.pass && check(r, "sweep_monotone").pass;
        o.detail += fmt("%s %.2e at (24,24,48), worst step ratio %.2e; ", kind, at24.max_residual,
                        ratio.max_residual);
    }
    return o;
}

Outcome support_properties() {
    Outcome o{true, ""};
    for (const auto& run : shield_runs()) {
        const auto& g = check(run.report, "g_support");
        const auto& z = check(run.report, "z_support");
        o.pass = o.pass && g.pass && z.pass;
        o.detail += fmt("|G| ratio %.1e, |z| ratio %.1e; ", g.max_residual, z.max_residual);
    }
    return o;
}

Outcome farfield_vanishing() {
    Outcome o{true, ""};
    for (const auto& run : shield_runs()) {
        const auto& f = check(run.report, "farfield");
        o.pass = o.pass && f.pass;
        o.detail += fmt("max %.1e; ", f.max_residual);
    }
    return o;
}

Outcome closed_form_oracles() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_ball = 0.0;
    double worst_shell = 0.0;
    for (double k : {0.5, 1.0, 2.0, 5.0}) {
        for (double eps : {0.25, 0.5, 1.0}) {
            for (bool cone : {false, true}) {
                const auto profile = cone ? RadialProfile::cone(eps) : RadialProfile::constant(eps);
                const Scenario s(k, SourceDensity(profile), 2.5 * eps);
                const auto w = primary_potential(s);
                for (int i = 0; i < 20; ++i) {
                    const Point3 x = random_point(rng, eps * (2.0 + 2.0 * u(rng)));
                    const Complex ref = cone ? exact_cone_ball_field(k, eps, x) : exact_constant_ball_field(k, eps, x);
                    worst_ball = std::max(worst_ball, std::abs(w(x) - ref) / std::abs(ref));
                }
            }
            // unit density on eps <= |y| <= 2 eps
            const ShellRegion shell{{}, eps, 2.0 * eps};
            const auto rule = shell_rule(shell, 24, 24, 48);
            const VolumePotential ws(k, rule, std::vector<Complex>(rule.size(), 1.0), shell, 0.05 * eps);
            for (int i = 0; i < 20; ++i) {
                const Point3 x = random_point(rng, eps * (4.0 + 4.0 * u(rng)));
                const Complex ref = exact_shell_field(k, eps, 2.0 * eps, x);
                worst_shell = std::max(worst_shell, std::abs(ws(x) - ref) / std::abs(ref));
            }
        }
    }
    const Point3 x{0.0, 0.0, 1.5};
    const double eps = 0.5;
    const auto stat = [&](const RadialProfile& p) {
        return primary_wave(Scenario(1e-6, SourceDensity(p), 2.5 * eps), x).real();
    };
    const double static_const = std::abs(stat(RadialProfile::constant(eps)) / (eps * eps * eps / (3 * 1.5)) - 1.0);
    const double static_cone = std::abs(stat(RadialProfile::cone(eps)) / (std::pow(eps, 4) / (12 * 1.5)) - 1.0);
    const bool pass = worst_ball <= 1e-8 && worst_shell <= 1e-8 && static_const <= 1e-5 && static_cone <= 1e-5;
    return {pass, fmt("ball %.1e, shell %.1e, static limits %.1e", worst_ball, worst_shell,
                      std::max(static_const, static_cone))};
}

Outcome naive_design() {
    RunConfig c;
    c.k = 1.0;
    c.epsilon = 0.5;
    c.naive.r1 = 1.0;
    const auto r = run_naive(c).report;
    const double r2 = r.results.at("R2").get<double>();
    const long double rhs = naive_shield_rhs(1.0, 0.5, 1.0);
    const double oracle_r2 = static_cast<double>(oracle::dense_scan_root(rhs, 1.0L));
    const double oracle_gap = std::abs(r2 - oracle_r2);
    const bool pass = r.all_pass() && oracle_gap <= 1e-10;
    return {pass, fmt("R2 = %.15f, |R2 - oracle| %.1e, cancellation %.1e", r2, oracle_gap,
                      check(r, "naive_closed_form_cancellation").max_residual)};
}

Outcome surface_method() {
    const auto r = run_surface(RunConfig{}).report;
    std::string detail;
    for (const auto& c : r.checks) detail += fmt("%s %.1e; ", c.name.c_str(), c.max_residual);
    return {r.all_pass(), detail};
}

Outcome kirchhoff_solver() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool initial = true;
    bool huygens = true;
    double worst_fd = 0.0;
    for (const auto& src : {SourceDensity(RadialProfile::cone(0.5)), SourceDensity(RadialProfile::constant(0.5))}) {
        for (int i = 0; i < 100; ++i) {
            const Point3 x = random_point(rng, 0.7 * u(rng));
            initial = initial && kirchhoff_ut(src, x, 0.0) == src.density(x) && kirchhoff_u(src, x, 0.0) == 0.0;
            const double r = 3.0 * u(rng);
            const double t = 0.01 + 3.0 * u(rng);
            if (std::abs(r - t) > 0.5) {
                const Point3 y = random_point(rng, r);
                huygens = huygens && kirchhoff_u(src, y, t) == 0.0 && kirchhoff_ut(src, y, t) == 0.0;
            }
        }
        int checked = 0;
        while (checked < 50) {
            const double r = 2.0 * u(rng);
            const double t = 0.05 + 2.0 * u(rng);
            bool near_kink = false;
            for (double kt : kirchhoff_kink_times(src, {r, 0, 0})) near_kink |= std::abs(kt - t) < 1e-3;
            if (near_kink) continue;
            const Point3 x = random_point(rng, r);
            const double h = 1e-6;
            const double fd = (kirchhoff_u(src, x, t + h) - kirchhoff_u(src, x, t - h)) / (2 * h);
            worst_fd = std::max(worst_fd, std::abs(kirchhoff_ut(src, x, t) - fd) / std::max(1.0, std::abs(fd)));
            ++checked;
        }
    }
    return {initial && huygens && worst_fd <= 1e-6,
            std::string(initial ? "u_t(x,0) = F exact" : "u_t(x,0) != F") +
                (huygens ? ", Huygens exact" : ", Huygens violated") + fmt(", FD gap %.1e", worst_fd)};
}

Outcome null_controls() {
    RunConfig no_g;
    no_g.controls.disable_active_source = true;
    const double g_res = check(run_shield(no_g).report, "cancellation").max_residual;

    RunConfig no_cauchy;
    no_cauchy.controls.zero_cauchy_data = true;
    no_cauchy.surface.order_polar = 8;
    no_cauchy.surface.order_azimuth = 16;
    double c_res = 0.0;
    const auto r = run_surface(no_cauchy).report;
    for (const auto& c : r.checks) {
        if (c.name.rfind("surface[", 0) == 0) c_res = std::max(c_res, c.max_residual);
    }
    const bool pass = std::abs(g_res - 1.0) <= 0.1 && std::abs(c_res - 1.0) <= 0.1 && !r.all_pass();
    return {pass, fmt("G = 0: residual %.3f of max|w|; Cauchy data = 0: %.3f", g_res, c_res)};
}

Outcome determinism() {
    const RunConfig c;
    ::setenv("SHIELD_THREADS", "1", 1);
    json a = to_json(run_shield(c).report);
    ::setenv("SHIELD_THREADS", "4", 1);
    json b = to_json(run_shield(c).report);
    ::unsetenv("SHIELD_THREADS");
    a.erase("timing");
    b.erase("timing");
    return {a.dump() == b.dump(), "SHIELD_THREADS=1 vs 4"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"cancellation outside Omega, 10x per order doubling", cancellation_and_refinement},
        {"supports of G and z", support_properties},
        {"far-field sum vanishes", farfield_vanishing},
        {"closed-form fields and static limits", closed_form_oracles},
        {"uniform-shell design", naive_design},
        {"surface-potential cancellation", surface_method},
        {"Kirchhoff solver", kirchhoff_solver},
        {"null controls fail", null_controls},
        {"determinism across thread counts", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
