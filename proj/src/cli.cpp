#include "cpb/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpb/dynamics.hpp"
#include "cpb/json_io.hpp"
#include "cpb/mems.hpp"
#include "cpb/quantifiers.hpp"
#include "cpb/trajectory.hpp"
#include "cpb/verify.hpp"

namespace cpb::cli {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CPB_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 42;
}

struct SimulateOptions {
    std::string initial = "psi";
    bool perfect = false;
    double omega = 1.0;
    double lambda = 1e-3;
    double tmax = 200.0;
    int samples = 4000;
    int nmax = 2;
    double dt = 0.0;
    double tol = 1e-10;
    std::string in_path;
    std::string out_path;
};

int cmd_simulate(const SimulateOptions& opt) {
    if (opt.samples < 2) throw RangeError("simulate: --samples must be at least 2");
    if (!(opt.tmax > 0.0)) throw RangeError("simulate: --tmax must be positive");

    ScenarioParams params;
    Scenario scenario;
    if (opt.initial == "psi" && opt.perfect) {
        scenario = Scenario::PsiPerfect;
        params.cavity.omega = opt.omega;
    } else if (opt.initial == "psi") {
        scenario = Scenario::PsiLossy;
        params.sim = SimParams::lossy(opt.lambda, opt.nmax, opt.dt);
    } else if (opt.initial == "plus") {
        if (opt.perfect)
            throw RangeError("simulate: --perfect applies to the psi scenario only");
        scenario = Scenario::PlusLossy;
        params.sim = SimParams::lossy(opt.lambda, opt.nmax, opt.dt);
    } else if (opt.initial == "custom") {
        if (opt.in_path.empty()) throw RangeError("simulate: custom initial state needs --in");
        scenario = Scenario::Custom;
        params.sim = SimParams::lossy(opt.lambda, opt.nmax, opt.dt);
        params.initial = validate_x_state(DensityMatrix(read_matrix_json(opt.in_path)), opt.tol);
    } else {
        throw RangeError("simulate: --initial must be psi, plus or custom");
    }

    const auto grid = uniform_grid(opt.tmax, opt.samples);
    const auto records = sample_trajectory(scenario, params, grid);
    if (ends_with(opt.out_path, ".json"))
        export_json(records, opt.out_path);
    else
        export_csv(records, opt.out_path);
    std::cout << "wrote " << records.size() << " records to " << opt.out_path << "\n";
    return 0;
}

int cmd_quantify(const std::string& in_path, double tol) {
    const DensityMatrix rho(read_matrix_json(in_path));
    const CPBTriplet t = cpb_triplet(rho, tol);
    std::cout << triplet_to_json(t) << "\n";
    return 0;
}

int cmd_mems(double gamma_min, double gamma_max, int steps, const std::string& out_path) {
    if (gamma_min < 0.0 || gamma_max > 1.0 || gamma_min > gamma_max)
        throw RangeError("mems: need 0 <= gamma-min <= gamma-max <= 1");
    if (steps < 1) throw RangeError("mems: --steps must be at least 1");
    std::ofstream out(out_path);
    if (!out) throw IoError("mems: cannot open " + out_path);
    out << "gamma,C,P,B,R,region\n";
    const int rows = (gamma_min == gamma_max) ? 1 : steps + 1;
    for (int k = 0; k < rows; ++k) {
        const double gamma =
            (rows == 1) ? gamma_min : gamma_min + (gamma_max - gamma_min) * k / steps;
        const MemsCpb v = mems_cpb({gamma});
        out << fmt17(gamma) << ',' << fmt17(v.C) << ',' << fmt17(v.P) << ',' << fmt17(v.B) << ','
            << fmt17(v.R) << ',' << static_cast<int>(v.region) << '\n';
    }
    if (!out) throw IoError("mems: write failed for " + out_path);
    std::cout << "wrote " << rows << " rows to " << out_path << "\n";
    return 0;
}

int cmd_branches(const std::string& in_path, double threshold, const std::string& out_path) {
    const auto records =
        ends_with(in_path, ".json") ? import_json(in_path) : import_csv(in_path);
    const auto branches = detect_branches(records, threshold);
    std::printf("%-6s %-22s %-22s %-12s %s\n", "index", "t_start", "t_end", "b_peak", "clipped");
    for (const Branch& b : branches) {
        std::string clipped;
        if (b.open_start) clipped += "start ";
        if (b.open_end) clipped += "end";
        std::printf("%-6d %-22.15g %-22.15g %-12.10g %s\n", b.index, b.t_start, b.t_end, b.b_peak,
                    clipped.c_str());
    }
    if (!out_path.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Branch& b : branches)
            arr.push_back({{"index", b.index},
                           {"t_start", b.t_start},
                           {"t_end", b.t_end},
                           {"b_peak", b.b_peak},
                           {"open_start", b.open_start},
                           {"open_end", b.open_end}});
        std::ofstream out(out_path);
        if (!out) throw IoError("branches: cannot open " + out_path);
        out << arr.dump(1) << '\n';
    }
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    bool known = suite == "all";
    for (const auto& name : suite_names()) known = known || suite == name;
    if (!known) throw RangeError("verify: unknown suite '" + suite + "'");

    std::cout << "seed " << seed << "\n";
    int failures = 0;
    int ran = 0;
    for (size_t i = 0; i < all_checks().size(); ++i) {
        const VerifyCheck& check = all_checks()[i];
        if (suite != "all" && suite != check.suite) continue;
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        CheckResult result;
        try {
            result = check.run(seed + 1000003 * i);
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!result.pass) ++failures;
        std::printf("[%s] %-11s %-28s (%.2fs) %s\n", result.pass ? "PASS" : "FAIL",
                    check.suite.c_str(), check.name.c_str(), secs, result.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d checks passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 2;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"concurrence-purity-Bell analysis for two qubits in a common reservoir"};
    app.require_subcommand(1);

    SimulateOptions sim;
    CLI::App* simulate = app.add_subcommand("simulate", "integrate a scenario and export records");
    simulate->add_option("--initial", sim.initial, "initial state: psi, plus or custom");
    simulate->add_flag("--perfect", sim.perfect, "lossless cavity (psi only)");
    simulate->add_option("--omega", sim.omega, "qubit-mode coupling for --perfect");
    simulate->add_option("--lambda", sim.lambda, "Lorentzian half-width in units of gamma");
    simulate->add_option("--tmax", sim.tmax, "time horizon in units of 1/gamma");
    simulate->add_option("--samples", sim.samples, "number of grid points");
    simulate->add_option("--nmax", sim.nmax, "Fock truncation");
    simulate->add_option("--dt", sim.dt, "integrator step override");
    simulate->add_option("--tol", sim.tol, "X-pattern tolerance");
    simulate->add_option("--in", sim.in_path, "initial density matrix JSON (custom)");
    simulate->add_option("--out", sim.out_path, "output file (.json switches to JSON)")
        ->required();

    std::string quantify_in;
    double quantify_tol = 1e-10;
    CLI::App* quantify = app.add_subcommand("quantify", "C, P, B, R of one density matrix");
    quantify->add_option("--in", quantify_in, "density matrix JSON")->required();
    quantify->add_option("--tol", quantify_tol, "X-pattern tolerance");

    double gamma_min = 0.0, gamma_max = 1.0;
    int steps = 200;
    std::string mems_out;
    CLI::App* mems = app.add_subcommand("mems", "sweep the maximally entangled mixed states");
    mems->add_option("--gamma-min", gamma_min, "sweep start");
    mems->add_option("--gamma-max", gamma_max, "sweep end");
    mems->add_option("--steps", steps, "number of grid intervals");
    mems->add_option("--out", mems_out, "output CSV")->required();

    std::string branches_in, branches_out;
    double threshold = 2.0;
    CLI::App* branches = app.add_subcommand("branches", "B > threshold intervals of a trajectory");
    branches->add_option("--in", branches_in, "trajectory CSV or JSON")->required();
    branches->add_option("--threshold", threshold, "Bell threshold");
    branches->add_option("--out", branches_out, "optional JSON report");

    std::string suite = "all";
    std::uint64_t seed = default_seed();
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("--suite", suite, "all, qmat, quantifiers, dynamics, mems or trajectory");
    verify->add_option("--seed", seed, "seed for the randomized sweeps");

    std::vector<const char*> argv;
    argv.push_back("cpb");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim);
        if (quantify->parsed()) return cmd_quantify(quantify_in, quantify_tol);
        if (mems->parsed()) return cmd_mems(gamma_min, gamma_max, steps, mems_out);
        if (branches->parsed()) return cmd_branches(branches_in, threshold, branches_out);
        if (verify->parsed()) return cmd_verify(suite, seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace cpb::cli
