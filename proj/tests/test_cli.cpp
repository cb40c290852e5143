#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cpb/cli.hpp"
#include "cpb/json_io.hpp"
#include "cpb/quantifiers.hpp"
#include "cpb/trajectory.hpp"

using namespace cpb;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("simulate writes a trajectory CSV honoring the column contract") {
    const std::string out = "cli_traj.csv";
    const int code = cli::run({"simulate", "--initial", "plus", "--lambda", "0.05", "--tmax",
                               "40", "--samples", "81", "--out", out});
    CHECK(code == 0);
    const auto records = import_csv(out);
    REQUIRE(records.size() == 81);
    CHECK(records.front().t == 0.0);
    CHECK(records.front().triplet.C == doctest::Approx(1.0));
    CHECK(records.back().t == doctest::Approx(40.0));
    for (size_t i = 1; i < records.size(); ++i) CHECK(records[i].t > records[i - 1].t);
    std::remove(out.c_str());
}

TEST_CASE("simulate is deterministic byte for byte") {
    const std::string a = "cli_det_a.csv", b = "cli_det_b.csv";
    CHECK(cli::run({"simulate", "--initial", "psi", "--perfect", "--omega", "1", "--tmax", "3",
                    "--samples", "33", "--out", a}) == 0);
    CHECK(cli::run({"simulate", "--initial", "psi", "--perfect", "--omega", "1", "--tmax", "3",
                    "--samples", "33", "--out", b}) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("simulate writes JSON when asked") {
    const std::string out = "cli_traj.json";
    CHECK(cli::run({"simulate", "--initial", "psi", "--perfect", "--tmax", "2", "--samples", "17",
                    "--out", out}) == 0);
    CHECK(import_json(out).size() == 17);
    std::remove(out.c_str());
}

TEST_CASE("simulate validates its flags") {
    CHECK(cli::run({"simulate", "--initial", "nope", "--out", "x.csv"}) == 1);
    CHECK(cli::run({"simulate", "--initial", "plus", "--perfect", "--out", "x.csv"}) == 1);
    CHECK(cli::run({"simulate", "--initial", "custom", "--out", "x.csv"}) == 1);
    CHECK(cli::run({"simulate", "--unknown-flag", "--out", "x.csv"}) == 1);
    CHECK(cli::run({"simulate", "--initial", "psi", "--lambda", "-1", "--out", "x.csv"}) == 1);
}

TEST_CASE("quantify prints the triplet for a density matrix file") {
    const std::string state = "cli_state.json";
    write_matrix_json(to_density_matrix(bell_psi_state()).matrix(), state);
    CHECK(cli::run({"quantify", "--in", state}) == 0);
    CHECK(cli::run({"quantify", "--in", "missing_file.json"}) == 1);
    std::remove(state.c_str());
}

TEST_CASE("quantify rejects a wrong-sized matrix") {
    const std::string state = "cli_dim8.json";
    write_matrix_json(Complex(0.125) * ComplexMatrix::identity(8), state);
    CHECK(cli::run({"quantify", "--in", state}) == 1);
    std::remove(state.c_str());
}

TEST_CASE("quantify rejects a non-X matrix at default tolerance") {
    const std::string state = "cli_nonx.json";
    ComplexMatrix m = Complex(0.25) * ComplexMatrix::identity(4);
    m(0, 1) = 1e-6;
    m(1, 0) = 1e-6;
    write_matrix_json(m, state);
    CHECK(cli::run({"quantify", "--in", state}) == 1);
    CHECK(cli::run({"quantify", "--in", state, "--tol", "1e-5"}) == 0);
    std::remove(state.c_str());
}

TEST_CASE("custom simulate runs from a state file") {
    const std::string state = "cli_custom.json";
    write_matrix_json(to_density_matrix(bell_plus_state()).matrix(), state);
    const std::string out = "cli_custom_traj.csv";
    CHECK(cli::run({"simulate", "--initial", "custom", "--in", state, "--lambda", "0.1", "--tmax",
                    "10", "--samples", "11", "--out", out}) == 0);
    CHECK(import_csv(out).size() == 11);
    std::remove(state.c_str());
    std::remove(out.c_str());
}

TEST_CASE("mems sweep rows and degenerate ranges") {
    const std::string out = "cli_mems.csv";
    CHECK(cli::run({"mems", "--gamma-min", "0", "--gamma-max", "1", "--steps", "200", "--out",
                    out}) == 0);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "gamma,C,P,B,R,region");
    int rows = 0;
    int crossings = 0;
    double prev_gamma = -1.0, prev_b = -1.0;
    while (std::getline(in, line)) {
        ++rows;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        REQUIRE(v.size() == 6);
        if (rows > 1 && (prev_b - 2.0) * (v[3] - 2.0) < 0.0) {
            ++crossings;
            // The violation threshold sits between gamma neighbors of 1/sqrt(2).
            CHECK(prev_gamma < 1.0 / std::sqrt(2.0));
            CHECK(v[0] > 1.0 / std::sqrt(2.0));
        }
        prev_gamma = v[0];
        prev_b = v[3];
    }
    CHECK(rows == 201);
    CHECK(crossings == 1);
    in.close();

    // Point query at the g-branch boundary: single row with P = 5/9.
    CHECK(cli::run({"mems", "--gamma-min", "0.66666666666666663", "--gamma-max",
                    "0.66666666666666663", "--steps", "1", "--out", out}) == 0);
    std::ifstream in2(out);
    std::getline(in2, line); // header
    std::getline(in2, line);
    const auto second_comma = line.find(',', line.find(',') + 1);
    const double p = std::stod(line.substr(second_comma + 1));
    CHECK(p == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
    in2.close();
    std::remove(out.c_str());

    CHECK(cli::run({"mems", "--gamma-min", "0.5", "--gamma-max", "0.2", "--out", out}) == 1);
    CHECK(cli::run({"mems", "--gamma-min", "0", "--gamma-max", "2", "--out", out}) == 1);
    CHECK(cli::run({"mems", "--gamma-min", "0", "--gamma-max", "1", "--steps", "0", "--out",
                    out}) == 1);
}

TEST_CASE("branches command reads a trajectory file") {
    const std::string traj = "cli_branches_traj.csv";
    CHECK(cli::run({"simulate", "--initial", "plus", "--lambda", "1e-3", "--tmax", "200",
                    "--samples", "801", "--out", traj}) == 0);
    const std::string report = "cli_branches.json";
    CHECK(cli::run({"branches", "--in", traj, "--out", report}) == 0);
    CHECK(!slurp(report).empty());
    std::remove(traj.c_str());
    std::remove(report.c_str());
    CHECK(cli::run({"branches", "--in", "missing.csv"}) == 1);
}

TEST_CASE("verify runs a cheap suite") {
    CHECK(cli::run({"verify", "--suite", "qmat", "--seed", "42"}) == 0);
    CHECK(cli::run({"verify", "--suite", "bogus"}) == 1);
}

TEST_CASE("CPB_SEED is the fallback seed for verify") {
    setenv("CPB_SEED", "777", 1);
    CHECK(cli::run({"verify", "--suite", "qmat"}) == 0);
    setenv("CPB_SEED", "not-a-number", 1);
    CHECK(cli::run({"verify", "--suite", "qmat"}) == 0);
    unsetenv("CPB_SEED");
}

TEST_CASE("usage errors and help") {
    CHECK(cli::run({}) == 1);
    CHECK(cli::run({"--help"}) == 0);
    CHECK(cli::run({"unknown-command"}) == 1);
}
