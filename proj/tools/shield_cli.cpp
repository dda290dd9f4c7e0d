// shield-cli: run active-shielding verification experiments from a JSON
// config and write report.json plus CSV tables to an output directory.
//
//   shield-cli shield  --config configs/default.json
//   shield-cli sweep   --config configs/cone.json --out-dir out/cone
//   shield-cli surface --config configs/default.json --tol 1e-6
//
// Exit status is 0 only when every check in the report passes.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "shield/harness/config.hpp"
#include "shield/harness/output.hpp"
#include "shield/harness/pipeline.hpp"

namespace {

using namespace shield;
using namespace shield::harness;

struct Overrides {
    std::string config_path;
    std::string out_dir;
    std::string orders;
    double tol = -1.0;
    bool disable_g = false;
    bool zero_cauchy = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

QuadratureOrders parse_orders(const std::string& text) {
    QuadratureOrders q;
    char c1 = 0;
    char c2 = 0;
    std::istringstream is(text);
    if (!(is >> q.radial >> c1 >> q.polar >> c2 >> q.azimuth) || c1 != ',' || c2 != ',') {
        throw ConfigError("--orders", "expected radial,polar,azimuth");
    }
    return q;
}

RunConfig load(const std::string& subcommand, const Overrides& o) {
    RunConfig cfg = parse_config(read_file(o.config_path));
    if (!o.orders.empty()) cfg.orders = parse_orders(o.orders);
    if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
    if (o.disable_g) cfg.controls.disable_active_source = true;
    if (o.zero_cauchy) cfg.controls.zero_cauchy_data = true;
    if (o.tol > 0.0) {
        // --tol sets the headline tolerance of the chosen subcommand
        if (subcommand == "shield" || subcommand == "sweep") cfg.tolerances.cancellation = o.tol;
        if (subcommand == "farfield") cfg.tolerances.farfield = o.tol;
        if (subcommand == "surface") cfg.tolerances.surface = o.tol;
        if (subcommand == "naive") cfg.tolerances.naive_cancellation = o.tol;
    } else if (o.tol == 0.0) {
        throw ConfigError("--tol", "must be positive");
    }
    cfg.validate();
    return cfg;
}

void print_summary(const VerificationReport& r, const std::string& dir) {
    for (const auto& c : r.checks) {
        std::printf("%-4s %-40s max %.3e  mean %.3e  tol %.1e\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.max_residual, c.mean_residual, c.tolerance);
    }
    std::printf("%s: %s (%.2f s) -> %s\n", r.subcommand.c_str(), r.all_pass() ? "pass" : "FAIL",
                r.seconds, dir.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active shielding of a fixed-frequency wave: construction and verification"};
    app.require_subcommand(1);

    Overrides o;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--out-dir", o.out_dir, "output directory (overrides output.dir)");
        sub->add_option("--orders", o.orders, "quadrature orders radial,polar,azimuth");
        sub->add_option("--tol", o.tol, "headline tolerance for this subcommand");
        sub->add_flag("--disable-g", o.disable_g, "null control: zero the active source");
        sub->add_flag("--zero-cauchy", o.zero_cauchy, "null control: zero the Cauchy data");
    };
    auto* shield_cmd = app.add_subcommand("shield", "build G, evaluate w + w~ on test spheres");
    auto* surface_cmd = app.add_subcommand("surface", "layer-potential cancellation from Cauchy data");
    auto* naive_cmd = app.add_subcommand("naive", "uniform-shell design for the cone source");
    auto* sweep_cmd = app.add_subcommand("sweep", "convergence study over quadrature levels");
    auto* farfield_cmd = app.add_subcommand("farfield", "far-field cancellation only");
    for (auto* sub : {shield_cmd, surface_cmd, naive_cmd, sweep_cmd, farfield_cmd}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        const RunConfig cfg = load(name, o);
        RunResult result;
        if (name == "shield") result = run_shield(cfg);
        else if (name == "surface") result = run_surface(cfg);
        else if (name == "naive") result = run_naive(cfg);
        else if (name == "sweep") result = run_sweep(cfg);
        else result = run_farfield(cfg);
        write_outputs(result, cfg.output_dir);
        print_summary(result.report, cfg.output_dir);
        return result.report.all_pass() ? 0 : 1;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
