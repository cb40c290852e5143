#include "cpb/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cpb {

std::vector<double> uniform_grid(double t_max, int n) {
    if (n < 1 || !(t_max >= 0.0)) throw RangeError("uniform_grid: bad arguments");
    std::vector<double> grid;
    grid.reserve(n);
    if (n == 1) {
        grid.push_back(0.0);
        return grid;
    }
    for (int k = 0; k < n; ++k) grid.push_back(t_max * k / static_cast<double>(n - 1));
    return grid;
}

XState bell_psi_state() {
    XState s;
    s.p11 = 0.5;
    s.p44 = 0.5;
    s.c14 = 0.5;
    return s;
}

XState bell_plus_state() {
    XState s;
    s.p22 = 0.5;
    s.p33 = 0.5;
    s.c23 = 0.5;
    return s;
}

namespace {

std::vector<TrajectoryRecord> records_from_evolution(const XState& initial, const SimParams& sim,
                                                     const std::vector<double>& t_grid) {
    const EvolveResult run = evolve_detailed(to_density_matrix(initial), sim, t_grid);
    std::vector<TrajectoryRecord> records;
    records.reserve(run.samples.size());
    for (const EvolveSample& s : run.samples) {
        if (s.off_x_leak > 1e-10)
            throw XLeakageError("trajectory: evolved state left the X pattern", s.off_x_leak);
        TrajectoryRecord r;
        r.t = s.t;
        r.triplet = cpb_triplet(s.state);
        r.rho_pp = s.rho_pp;
        r.singlet_pop = s.singlet_pop;
        r.trace_err = s.trace_err;
        records.push_back(r);
    }
    return records;
}

} // namespace

std::vector<TrajectoryRecord> sample_trajectory(Scenario scenario, const ScenarioParams& params,
                                                const std::vector<double>& t_grid) {
    switch (scenario) {
        case Scenario::PsiLossy:
            return records_from_evolution(bell_psi_state(), params.sim, t_grid);
        case Scenario::PlusLossy:
            return records_from_evolution(bell_plus_state(), params.sim, t_grid);
        case Scenario::Custom:
            if (!params.initial) throw RangeError("sample_trajectory: custom scenario needs an initial state");
            return records_from_evolution(*params.initial, params.sim, t_grid);
        case Scenario::PsiPerfect:
            break;
    }
    std::vector<TrajectoryRecord> records;
    records.reserve(t_grid.size());
    for (double t : t_grid) {
        const XState s = perfect_cavity_psi(t, params.cavity);
        TrajectoryRecord r;
        r.t = t;
        r.triplet = cpb_triplet(s);
        r.rho_pp = 0.5 * (s.p22 + s.p33) + s.c23.real();
        r.singlet_pop = 0.0;
        r.trace_err = 0.0;
        records.push_back(r);
    }
    return records;
}

std::vector<Branch> detect_branches(const std::vector<TrajectoryRecord>& records,
                                    double threshold) {
    if (records.size() < 2) throw RangeError("detect_branches: need at least 2 records");
    std::vector<Branch> branches;
    bool inside = false;
    Branch current;
    for (size_t i = 0; i < records.size(); ++i) {
        const double b = records[i].triplet.B;
        if (!inside && b > threshold) {
            inside = true;
            current = Branch{};
            current.index = static_cast<int>(branches.size()) + 1;
            current.b_peak = b;
            if (i == 0) {
                current.t_start = records[0].t;
                current.open_start = true;
            } else {
                const double b0 = records[i - 1].triplet.B;
                const double t0 = records[i - 1].t;
                current.t_start = t0 + (threshold - b0) * (records[i].t - t0) / (b - b0);
            }
        } else if (inside && b > threshold) {
            current.b_peak = std::max(current.b_peak, b);
        } else if (inside) {
            const double b0 = records[i - 1].triplet.B;
            const double t0 = records[i - 1].t;
            current.t_end = t0 + (threshold - b0) * (records[i].t - t0) / (b - b0);
            branches.push_back(current);
            inside = false;
        }
    }
    if (inside) {
        current.t_end = records.back().t;
        current.open_end = true;
        branches.push_back(current);
    }
    return branches;
}

ClosedRelationReport check_closed_relation(const std::vector<TrajectoryRecord>& records,
                                           double tol) {
    if (records.empty()) throw RangeError("check_closed_relation: no records");
    ClosedRelationReport report;
    report.n_samples = records.size();
    for (const TrajectoryRecord& r : records) {
        const double c = r.triplet.C;
        const double residual = std::abs(r.triplet.B * r.triplet.B / 4.0 - r.triplet.P -
                                         c * c + (1.0 - c) * (1.0 - c));
        report.max_residual = std::max(report.max_residual, residual);
    }
    report.holds = report.max_residual <= tol;
    return report;
}

std::vector<std::pair<size_t, size_t>> detect_ordering_inversions(
    const std::vector<TrajectoryRecord>& records, double eps, size_t cap) {
    if (records.size() < 2) throw RangeError("detect_ordering_inversions: need at least 2 records");
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < records.size() && pairs.size() < cap; ++i)
        for (size_t j = 0; j < records.size() && pairs.size() < cap; ++j) {
            if (i == j) continue;
            if (records[i].triplet.C > records[j].triplet.C + eps &&
                records[i].triplet.B < records[j].triplet.B - eps)
                pairs.emplace_back(i, j);
        }
    return pairs;
}

namespace {

constexpr const char* kCsvHeader = "t,C,P,B,R,region,B1,B2,u1,u2,u3,rho_pp,singlet_pop,trace_err";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void export_csv(const std::vector<TrajectoryRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("export_csv: cannot open " + path);
    out << kCsvHeader << '\n';
    for (const TrajectoryRecord& r : records) {
        const CPBTriplet& t = r.triplet;
        out << fmt17(r.t) << ',' << fmt17(t.C) << ',' << fmt17(t.P) << ',' << fmt17(t.B) << ','
            << fmt17(t.R) << ',' << static_cast<int>(t.region) << ',' << fmt17(t.B1) << ','
            << fmt17(t.B2) << ',' << fmt17(t.u1) << ',' << fmt17(t.u2) << ',' << fmt17(t.u3)
            << ',' << fmt17(r.rho_pp) << ',' << fmt17(r.singlet_pop) << ','
            << fmt17(r.trace_err) << '\n';
    }
    if (!out) throw IoError("export_csv: write failed for " + path);
}

void export_json(const std::vector<TrajectoryRecord>& records, const std::string& path) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TrajectoryRecord& r : records) {
        const CPBTriplet& t = r.triplet;
        arr.push_back({{"t", r.t},
                       {"C", t.C},
                       {"P", t.P},
                       {"B", t.B},
                       {"R", t.R},
                       {"region", static_cast<int>(t.region)},
                       {"B1", t.B1},
                       {"B2", t.B2},
                       {"u1", t.u1},
                       {"u2", t.u2},
                       {"u3", t.u3},
                       {"rho_pp", r.rho_pp},
                       {"singlet_pop", r.singlet_pop},
                       {"trace_err", r.trace_err}});
    }
    std::ofstream out(path);
    if (!out) throw IoError("export_json: cannot open " + path);
    out << arr.dump(1) << '\n';
    if (!out) throw IoError("export_json: write failed for " + path);
}

namespace {

Region region_from_int(int v) {
    if (v < 1 || v > 4) throw IoError("trajectory import: region outside 1..4");
    return static_cast<Region>(v);
}

TrajectoryRecord record_from_fields(const std::vector<double>& f, int region) {
    TrajectoryRecord r;
    r.t = f[0];
    r.triplet.C = f[1];
    r.triplet.P = f[2];
    r.triplet.B = f[3];
    r.triplet.R = f[4];
    r.triplet.region = region_from_int(region);
    r.triplet.B1 = f[5];
    r.triplet.B2 = f[6];
    r.triplet.u1 = f[7];
    r.triplet.u2 = f[8];
    r.triplet.u3 = f[9];
    r.triplet.branch = (r.triplet.B1 >= r.triplet.B2) ? BellBranch::B1 : BellBranch::B2;
    r.rho_pp = f[10];
    r.singlet_pop = f[11];
    r.trace_err = f[12];
    return r;
}

} // namespace

std::vector<TrajectoryRecord> import_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("import_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("import_csv: empty file " + path);
    if (line != kCsvHeader) throw IoError("import_csv: unexpected header in " + path);
    std::vector<TrajectoryRecord> records;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> fields;
        int region = 0;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            try {
                if (col == 5)
                    region = std::stoi(cell);
                else
                    fields.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError("import_csv: bad value at " + path + ":" + std::to_string(lineno));
            }
            ++col;
        }
        if (col != 14)
            throw IoError("import_csv: wrong column count at " + path + ":" +
                          std::to_string(lineno));
        records.push_back(record_from_fields(fields, region));
    }
    return records;
}

std::vector<TrajectoryRecord> import_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("import_json: cannot open " + path);
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (const std::exception& e) {
        throw IoError("import_json: parse error in " + path + ": " + e.what());
    }
    if (!arr.is_array()) throw IoError("import_json: expected an array in " + path);
    std::vector<TrajectoryRecord> records;
    for (const auto& o : arr) {
        try {
            std::vector<double> fields = {o.at("t"),  o.at("C"),  o.at("P"),  o.at("B"),
                                          o.at("R"),  o.at("B1"), o.at("B2"), o.at("u1"),
                                          o.at("u2"), o.at("u3"), o.at("rho_pp"),
                                          o.at("singlet_pop"), o.at("trace_err")};
            records.push_back(record_from_fields(fields, o.at("region")));
        } catch (const nlohmann::json::exception& e) {
            throw IoError("import_json: bad record in " + path + ": " + e.what());
        }
    }
    return records;
}

} // namespace cpb
