// udb: bounds for the density of planar sets avoiding unit distance.
//
// Subcommands: verify, search-lp, find-config, lower-bounds, reproduce,
// report. Exit codes: 0 success, 1 verified-false, 2 input error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udb/bessel.hpp"
#include "udb/certificate.hpp"
#include "udb/config_search.hpp"
#include "udb/constructions.hpp"
#include "udb/geometry.hpp"
#include "udb/lp.hpp"
#include "udb/radial_profile.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "unreadable";
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    char c;
    while (in.get(c)) {
        h ^= (unsigned char)c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

udb::PointConfig load_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point file '" + path + "'");
    auto slash = path.find_last_of('/');
    return udb::read_point_config(in, slash == std::string::npos ? path : path.substr(slash + 1));
}

int cmd_verify(const std::string& path, double L, double epsilon, const std::string& report_path) {
    const auto start = Clock::now();
    udb::Certificate cert;
    try {
        cert = udb::load_certificate(path);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    try {
        const udb::VerifiedBound bound = udb::verify(cert, L, epsilon);
        std::printf("delta <= %.6f\n", bound.delta);
        std::printf("  tail margin at L=%g: %.6f\n", bound.tail_start, bound.tail_margin);
        std::printf("  grid min %.8f (step %.3e), v0 slack %.8f\n", bound.grid_min,
                    bound.grid_step, bound.v0_slack);
        if (!report_path.empty()) {
            std::ofstream rep(report_path);
            rep << "command: verify " << path << "\n";
            rep << "input digest: " << file_digest(path) << "\n";
            rep.precision(17);
            rep << "delta: " << bound.delta << "\n";
            rep << "tail_start: " << bound.tail_start << "\n";
            rep << "tail_margin: " << bound.tail_margin << "\n";
            rep << "grid_step: " << bound.grid_step << "\n";
            rep << "grid_min: " << bound.grid_min << "\n";
            rep << "v0_slack: " << bound.v0_slack << "\n";
            for (const auto& rec : bound.transcript)
                rep << "check " << rec.stage << ": " << (rec.passed ? "pass" : "FAIL") << " ("
                    << rec.detail << ")\n";
            rep << "wall_seconds: " << seconds_since(start) << "\n";
        }
        return 0;
    } catch (const udb::VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_search_lp(double L, double epsilon, const std::string& spindle_path,
                  const std::vector<std::string>& config_paths, int chung_m,
                  const std::string& emit_cert, const std::string& emit_kappa, double tol) {
    std::vector<udb::UnitDistanceGraph> graphs;
    std::vector<udb::PointConfig> configs;
    if (!spindle_path.empty()) {
        std::ifstream in(spindle_path);
        if (!in) {
            std::cerr << "input error: cannot open '" << spindle_path << "'\n";
            return 2;
        }
        // lines "t theta"
        const udb::PointConfig params = udb::read_point_config(in, "spindles");
        for (const udb::Vec2& p : params.points)
            graphs.push_back(udb::unit_distance_graph(udb::moser_spindle(p.x, p.y)));
    }
    for (const auto& path : config_paths) configs.push_back(load_points(path));

    const udb::FixedPointResult fp =
        udb::fixed_point_delta(graphs, configs, L, epsilon, chung_m, tol);
    std::printf("delta = %.6f\n", fp.delta);
    std::printf("  kappa support size %zu, objective %.6f\n", fp.solution.primal.support.size(),
                fp.solution.objective_value);

    if (!emit_kappa.empty()) {
        std::ofstream out(emit_kappa);
        udb::write_radial_profile(out, fp.solution.primal);
    }
    if (!emit_cert.empty()) {
        udb::DiscretizedLP lp = udb::build_lp(fp.delta, graphs,
                                              configs, L, epsilon, chung_m);
        std::vector<udb::PointConfig> cfgs = configs;
        const udb::Certificate cert = udb::extract_certificate(lp, fp.solution, graphs, cfgs);
        std::ofstream out(emit_cert);
        udb::write_certificate(out, cert);
        std::printf("  certificate written to %s\n", emit_cert.c_str());
    }
    return 0;
}

int cmd_find_config(const std::string& kappa_path, int n, int restarts, std::uint64_t seed,
                    double delta, int chung_m) {
    std::ifstream in(kappa_path);
    if (!in) {
        std::cerr << "input error: cannot open '" << kappa_path << "'\n";
        return 2;
    }
    const udb::RadialProfile kappa = udb::read_radial_profile(in);
    const udb::SearchResult result =
        udb::minimize_config(kappa, n, restarts, seed, delta, chung_m);
    udb::write_point_config(std::cout, result.config);
    std::printf("# objective %.9f\n", result.objective);
    if (delta > 0.0) {
        const double rhs =
            (double)chung_m * n - 0.5 * chung_m * (chung_m + 1) / delta;
        std::printf("# rhs at delta=%g: %.9f -> %s\n", delta, rhs,
                    result.violated ? "VIOLATED (new cut)" : "not violated");
    }
    return 0;
}

int cmd_lower_bounds(long mc_samples, std::uint64_t seed) {
    std::printf("hexagonal disk packing: %.6f\n", udb::hex_disk_density());
    const udb::TortoiseOptimum opt = udb::optimize_tortoise();
    std::printf("croft tortoise: x = %.6f, density = %.6f\n", opt.x, opt.density);
    std::printf("non-block lattice example: %.6f\n", udb::nonblock_lattice_density());
    const long audit_samples = std::max(1000L, mc_samples / 100);
    for (auto kind : {udb::ConstructionKind::Hex, udb::ConstructionKind::Tortoise,
                      udb::ConstructionKind::NonBlock}) {
        const double x = (kind == udb::ConstructionKind::Tortoise) ? opt.x : 0.0;
        const udb::AvoidanceReport rep = udb::avoidance_audit(kind, x, audit_samples, seed);
        std::printf("audit %s (%ld samples)\n", rep.message.c_str(), rep.samples);
    }
    return 0;
}

int cmd_report(const std::string& path, double L, double step, const std::string& out_path) {
    udb::Certificate cert;
    try {
        cert = udb::load_certificate(path);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        out = &file;
    }
    const udb::FlatWitness flat = udb::FlatWitness::build(cert);
    (*out) << "t,phi\n";
    out->precision(12);
    for (double t = 0.0; t <= L + 1e-12; t += step) (*out) << t << "," << flat(t) << "\n";
    return 0;
}

int cmd_reproduce(const std::string& budget, const std::string& cert_path, std::uint64_t seed) {
    const auto start = Clock::now();
    int failures = 0;
    auto check = [&failures](bool ok, const std::string& what) {
        std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
        if (!ok) ++failures;
    };

    // 1. bundled certificate
    {
        udb::Certificate cert = udb::load_certificate(cert_path);
        const udb::VerifiedBound bound = udb::verify(cert, 780.0, 1e-4);
        std::ostringstream s;
        s << "certificate verifies: delta <= " << std::fixed << bound.delta;
        check(bound.delta <= 0.258795, s.str());
    }
    // 2. lower bounds
    {
        const udb::TortoiseOptimum opt = udb::optimize_tortoise();
        check(std::fabs(udb::hex_disk_density() - 0.2267249) < 1e-4 &&
                  std::fabs(opt.density - 0.22936) < 1e-4 &&
                  std::fabs(udb::nonblock_lattice_density() - 0.0337) < 1e-4,
              "lower bounds: 0.226725 / 0.229365 / 0.033688");
    }
    // 3. two-row LP
    double tworow = 0.0;
    {
        const udb::FixedPointResult fp = udb::fixed_point_delta({}, {}, 200.0, 0.01, 1, 1e-5);
        tworow = fp.delta;
        std::ostringstream s;
        s << "two-row LP optimum " << fp.delta << " (expect ~0.287)";
        check(std::fabs(fp.delta - 0.287) < 2e-3, s.str());
    }
    // 4. spindle independence bound
    {
        const auto spindle = udb::unit_distance_graph(udb::moser_spindle(0.0, 0.0));
        const int alpha = udb::independence_number(spindle);
        check(alpha == 2 && spindle.edges.size() == 11, "moser spindle: alpha = 2, bound 2/7");
    }

    if (budget == "full") {
        std::vector<udb::UnitDistanceGraph> spindles;
        for (double t : {0.4, 0.6, 0.8})
            spindles.push_back(udb::unit_distance_graph(udb::moser_spindle(t, 5.4)));
        const udb::FixedPointResult fp3 =
            udb::fixed_point_delta(spindles, {}, 200.0, 0.01, 1, 1e-5);
        std::ostringstream s;
        s << "three-spindle LP fixed point " << fp3.delta << " (expect ~0.263)";
        check(std::fabs(fp3.delta - 0.26305) < 1e-3 && fp3.delta < tworow, s.str());

        // one cut-generation round
        const udb::SearchResult cut =
            udb::minimize_config(fp3.solution.primal, 6, 200, seed, fp3.delta, 1);
        std::ostringstream s2;
        s2 << "6-point cut search: objective " << cut.objective << " vs rhs "
           << 6.0 - 1.0 / fp3.delta;
        check(cut.violated, s2.str());

        const udb::FixedPointResult fp4 =
            udb::fixed_point_delta(spindles, {cut.config}, 200.0, 0.01, 1, 1e-5);
        std::ostringstream s3;
        s3 << "delta sequence non-increasing: " << tworow << " -> " << fp3.delta << " -> "
           << fp4.delta;
        check(fp4.delta <= fp3.delta + 1e-9 && fp3.delta <= tworow + 1e-9, s3.str());
    }

    std::printf("%s budget done in %.1f s: %s\n", budget.c_str(), seconds_since(start),
                failures == 0 ? "all checks passed" : "CHECKS FAILED");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"upper and lower bounds for densities of planar 1-avoiding sets"};
    app.require_subcommand(1);

    // verify
    std::string cert_path;
    double L = 780.0, epsilon = 1e-4;
    std::string report_path;
    auto* verify = app.add_subcommand("verify", "verify a witness certificate file");
    verify->add_option("file", cert_path, "certificate JSON file")->required();
    verify->add_option("--L", L, "tail split point");
    verify->add_option("--epsilon", epsilon, "grid accuracy");
    verify->add_option("--report", report_path, "write a full transcript here");

    // search-lp
    double lp_L = 200.0, lp_eps = 0.01, lp_tol = 1e-5;
    std::string spindle_path, emit_cert, emit_kappa;
    std::vector<std::string> config_paths;
    int chung_m = 1;
    auto* search = app.add_subcommand("search-lp", "solve the discretized LP / fixed point");
    search->add_option("--L", lp_L, "grid extent");
    search->add_option("--epsilon", lp_eps, "grid step");
    search->add_option("--spindles", spindle_path, "file of spindle `t theta` lines");
    search->add_option("--configs", config_paths, "point-config file (repeatable)");
    search->add_option("--chung-m", chung_m, "Chung inequality order m");
    search->add_option("--emit-cert", emit_cert, "write extracted dual certificate");
    search->add_option("--emit-kappa", emit_kappa, "write optimal kappa~ profile");
    search->add_option("--delta-tol", lp_tol, "fixed point tolerance");

    // find-config
    std::string kappa_path;
    int n_points = 6, restarts = 200;
    std::uint64_t seed = 1;
    double fc_delta = 0.0;
    int fc_m = 1;
    auto* findc = app.add_subcommand("find-config", "search violating point configurations");
    findc->add_option("--kappa", kappa_path, "radial profile file (`t value` lines)")->required();
    findc->add_option("--n", n_points, "configuration size");
    findc->add_option("--restarts", restarts, "random restarts");
    findc->add_option("--seed", seed, "RNG seed");
    findc->add_option("--delta", fc_delta, "check violation at this delta");
    findc->add_option("--chung-m", fc_m, "Chung inequality order m");

    // lower-bounds
    long mc_samples = 10000000;
    std::uint64_t lb_seed = 7;
    auto* lower = app.add_subcommand("lower-bounds", "evaluate the packing constructions");
    lower->add_option("--mc-samples", mc_samples, "Monte Carlo sample budget");
    lower->add_option("--seed", lb_seed, "RNG seed");

    // reproduce
    std::string budget = "quick";
    std::string repro_cert = "data/paper_certificate.json";
    std::uint64_t repro_seed = 1;
    auto* repro = app.add_subcommand("reproduce", "re-run the headline numbers");
    repro->add_option("--budget", budget, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    repro->add_option("--cert", repro_cert, "bundled certificate path");
    repro->add_option("--seed", repro_seed, "RNG seed");

    // report
    std::string report_cert, report_out;
    double rep_L = 780.0, rep_step = 0.01;
    auto* report = app.add_subcommand("report", "emit CSV of phi(t) samples");
    report->add_option("file", report_cert, "certificate JSON file")->required();
    report->add_option("--L", rep_L, "sample up to this t");
    report->add_option("--step", rep_step, "sample step");
    report->add_option("--out", report_out, "output CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(cert_path, L, epsilon, report_path);
        if (search->parsed())
            return cmd_search_lp(lp_L, lp_eps, spindle_path, config_paths, chung_m, emit_cert,
                                 emit_kappa, lp_tol);
        if (findc->parsed())
            return cmd_find_config(kappa_path, n_points, restarts, seed, fc_delta, fc_m);
        if (lower->parsed()) return cmd_lower_bounds(mc_samples, lb_seed);
        if (repro->parsed()) return cmd_reproduce(budget, repro_cert, repro_seed);
        if (report->parsed()) return cmd_report(report_cert, rep_L, rep_step, report_out);
    } catch (const udb::CertificateFormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
