// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cpb/dynamics.hpp"
#include "cpb/mems.hpp"
#include "cpb/quantifiers.hpp"
#include "cpb/sampling.hpp"
#include "cpb/trajectory.hpp"

using namespace cpb;

namespace {

struct Criterion {
    bool pass = false;
    std::string detail;
};

int g_failures = 0;

void report(int index, const std::string& name, const Criterion& c, double seconds,
            double budget) {
    const bool ok = c.pass && seconds < budget;
    if (!ok) ++g_failures;
    std::printf("%s  criterion %d %-24s (%6.2f s / %3.0f s)  %s\n", ok ? "PASS" : "FAIL", index,
                name.c_str(), seconds, budget, c.detail.c_str());
    std::fflush(stdout);
}

template <typename F>
void run(int index, const std::string& name, double budget_seconds, F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    Criterion c;
    try {
        c = fn();
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(index, name, c, secs, budget_seconds);
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct Hygiene {
    double trace_err = 0.0;
    double min_eig = 0.0;
    double leak = 0.0;
    double singlet_drift = 0.0;
    int runs = 0;

    void absorb(const EvolveResult& run) {
        const double s0 = run.samples.front().singlet_pop;
        for (const EvolveSample& s : run.samples) {
            trace_err = std::max(trace_err, s.trace_err);
            min_eig = std::min(min_eig, s.min_eig);
            leak = std::max(leak, s.off_x_leak);
            singlet_drift = std::max(singlet_drift, std::abs(s.singlet_pop - s0));
        }
        ++runs;
    }
};

Hygiene g_hygiene;

std::vector<TrajectoryRecord> to_records(const EvolveResult& run) {
    std::vector<TrajectoryRecord> records;
    records.reserve(run.samples.size());
    for (const EvolveSample& s : run.samples) {
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

Criterion criterion_pure_relation() {
    XStateSampler rng(101);
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
        const CPBTriplet t = cpb_triplet(rng.random_pure_x_state());
        worst = std::max(worst, std::abs(t.B - 2.0 * std::sqrt(1.0 + t.C * t.C)));
    }
    return {worst <= 1e-9, "1000 pure X states, max |B - 2 sqrt(1+C^2)| = " + num(worst)};
}

Criterion criterion_remainder_identity() {
    XStateSampler rng(102);
    double worst = 0.0;
    int hits[5] = {0, 0, 0, 0, 0};
    for (int it = 0; it < 10000; ++it) {
        const CPBTriplet t = cpb_triplet(rng.random_x_state());
        worst = std::max(worst, std::abs(t.B * t.B / 4.0 - t.P - t.C * t.C - t.R));
        ++hits[static_cast<int>(t.region)];
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "max residual %.3g; region hits %d/%d/%d/%d", worst, hits[1], hits[2], hits[3],
                  hits[4]);
    const bool covered = hits[1] >= 100 && hits[2] >= 100 && hits[3] >= 100 && hits[4] >= 100;
    return {worst <= 1e-9 && covered, detail};
}

Criterion criterion_oracle_agreement() {
    XStateSampler rng(103);
    double worst_below = 0.0, worst_above = 0.0, worst_closed = 0.0;
    for (int it = 0; it < 200; ++it) {
        const XState s = rng.random_x_state();
        const DensityMatrix rho = to_density_matrix(s);
        const double bh = bell_max_horodecki(rho);
        const double bf = bell_max_bruteforce(rho, 64, 9000 + it);
        worst_below = std::max(worst_below, bh - bf);
        worst_above = std::max(worst_above, bf - bh);
        worst_closed = std::max(worst_closed, std::abs(bell_max_x(s).B - bh));
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "200 states; shortfall %.3g, excess %.3g, closed-form gap %.3g", worst_below,
                  worst_above, worst_closed);
    return {worst_below <= 1e-4 && worst_above <= 1e-12 && worst_closed <= 1e-10, detail};
}

Criterion criterion_superradiant() {
    const SimParams p = SimParams::lossy(1e-3);
    const auto grid = uniform_grid(200.0, 4000);
    const EvolveResult sim = evolve_detailed(to_density_matrix(bell_plus_state()), p, grid);
    g_hygiene.absorb(sim);
    const auto records = to_records(sim);

    double worst_pp = 0.0;
    for (const EvolveSample& s : sim.samples)
        worst_pp = std::max(worst_pp, std::abs(s.rho_pp - rho_pp_analytic(s.t, p)));

    std::vector<TrajectoryRecord> upper;
    for (const auto& r : records)
        if (r.rho_pp >= 1.0 / 3.0) upper.push_back(r);
    const auto rel = check_closed_relation(upper, 1e-8);

    const double thr = 1.0 / std::sqrt(2.0);
    int bad_windows = 0;
    for (size_t i = 0; i < records.size(); ++i) {
        const bool violates = records[i].triplet.B > 2.0;
        const bool predicted = records[i].rho_pp > thr;
        if (violates == predicted) continue;
        const size_t lo = (i == 0) ? 0 : i - 1;
        const size_t hi = std::min(records.size() - 1, i + 1);
        const bool near_crossing = (records[lo].rho_pp - thr) * (records[hi].rho_pp - thr) <= 0.0;
        if (!near_crossing) ++bad_windows;
    }

    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "max |rho_pp num-analytic| %.3g; relation residual %.3g on %zu samples; "
                  "violation mismatches %d",
                  worst_pp, rel.max_residual, rel.n_samples, bad_windows);
    return {worst_pp <= 1e-6 && rel.holds && bad_windows == 0, detail};
}

Criterion criterion_perfect_cavity() {
    const double omega = 1.0;
    const SimParams p = SimParams::perfect(omega);
    const double period = 2.0 * M_PI / (std::sqrt(6.0) * omega);
    const auto grid = uniform_grid(period, 4001); // index 2000 sits at the half period
    const EvolveResult sim = evolve_detailed(to_density_matrix(bell_psi_state()), p, grid);
    g_hygiene.absorb(sim);

    double worst = 0.0;
    for (const EvolveSample& s : sim.samples) {
        const XState ref = perfect_cavity_psi(s.t, {omega});
        worst = std::max({worst, std::abs(s.state.p11 - ref.p11), std::abs(s.state.p22 - ref.p22),
                          std::abs(s.state.p33 - ref.p33), std::abs(s.state.p44 - ref.p44),
                          std::abs(s.state.c14 - ref.c14), std::abs(s.state.c23 - ref.c23)});
    }

    const CPBTriplet mid = cpb_triplet(sim.samples[2000].state);
    const double dev_triplet =
        std::max({std::abs(mid.C - 1.0 / 3.0), std::abs(mid.P - 77.0 / 81.0),
                  std::abs(mid.B - 2.0 * std::sqrt(10.0) / 3.0)});

    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "max element deviation %.3g; half-period triplet deviation %.3g (B = %.6f)",
                  worst, dev_triplet, mid.B);
    return {worst <= 1e-6 && dev_triplet <= 1e-6, detail};
}

Criterion criterion_multibranch() {
    const SimParams p = SimParams::lossy(1e-3);
    const auto grid = uniform_grid(200.0, 4000);
    const EvolveResult sim = evolve_detailed(to_density_matrix(bell_psi_state()), p, grid);
    g_hygiene.absorb(sim);
    const auto records = to_records(sim);
    const auto branches = detect_branches(records);

    const bool first_at_zero = !branches.empty() && branches.front().open_start &&
                               branches.front().t_start == 0.0;
    const CPBTriplet& t0 = records.front().triplet;
    const bool starts_maximal = std::abs(t0.C - 1.0) <= 1e-9 && std::abs(t0.P - 1.0) <= 1e-9 &&
                                std::abs(t0.B - 2.0 * std::sqrt(2.0)) <= 1e-9;

    bool high_purity_low_c = false;
    for (size_t bi = 1; bi < branches.size() && !high_purity_low_c; ++bi) {
        for (const auto& r : records) {
            if (r.t < branches[bi].t_start || r.t > branches[bi].t_end) continue;
            if (r.triplet.B > 2.0 && r.triplet.P > 0.9 && r.triplet.C < 0.4) {
                high_purity_low_c = true;
                break;
            }
        }
    }

    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "%zu branches; first starts at t=0 from (1,1,2sqrt2): %s; later branch with "
                  "P>0.9, C<0.4: %s",
                  branches.size(), (first_at_zero && starts_maximal) ? "yes" : "no",
                  high_purity_low_c ? "yes" : "no");
    return {branches.size() >= 3 && first_at_zero && starts_maximal && high_purity_low_c, detail};
}

Criterion criterion_ordering_inversion() {
    const SimParams p = SimParams::lossy(1e-2);
    const auto grid = uniform_grid(200.0, 4000);
    const EvolveResult sim = evolve_detailed(to_density_matrix(bell_psi_state()), p, grid);
    g_hygiene.absorb(sim);
    const auto records = to_records(sim);
    const auto pairs = detect_ordering_inversions(records);
    char detail[120];
    std::snprintf(detail, sizeof(detail), "%zu inversion pairs (capped at 1000)", pairs.size());
    return {!pairs.empty(), detail};
}

Criterion criterion_mems() {
    const double b_at_thr = mems_cpb({1.0 / std::sqrt(2.0)}).B;
    double worst_low = 0.0;
    for (int k = 1; k <= 500; ++k) {
        const double gamma = 1.0 / std::sqrt(2.0) + (1.0 - 1.0 / std::sqrt(2.0)) * k / 500.0;
        const CPBTriplet t = cpb_triplet(mems_state({gamma}));
        worst_low = std::max(worst_low, std::abs(t.B - 2.0 * std::sqrt(2.0) * t.C));
    }
    double worst_pipeline = 0.0;
    bool regions_ok = true;
    for (int k = 0; k <= 1000; ++k) {
        const MemsParam g{k / 1000.0};
        const MemsCpb closed = mems_cpb(g);
        const CPBTriplet t = cpb_triplet(mems_state(g));
        worst_pipeline = std::max({worst_pipeline, std::abs(closed.C - t.C),
                                   std::abs(closed.P - t.P), std::abs(closed.B - t.B),
                                   std::abs(closed.R - t.R)});
        if ((t.region != Region::R1 && t.region != Region::R3) || closed.region != t.region)
            regions_ok = false;
    }
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "|B(1/sqrt2) - 2| = %.3g; max |B - 2sqrt2 C| = %.3g; closed-vs-pipeline %.3g; "
                  "regions 2/4 absent: %s",
                  std::abs(b_at_thr - 2.0), worst_low, worst_pipeline, regions_ok ? "yes" : "no");
    return {std::abs(b_at_thr - 2.0) <= 1e-9 && worst_low <= 1e-10 && worst_pipeline <= 1e-10 &&
                regions_ok,
            detail};
}

Criterion criterion_hygiene() {
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "%d runs; trace drift %.3g; min eigenvalue %.3g; off-X leak %.3g; singlet "
                  "drift %.3g",
                  g_hygiene.runs, g_hygiene.trace_err, g_hygiene.min_eig, g_hygiene.leak,
                  g_hygiene.singlet_drift);
    return {g_hygiene.runs >= 4 && g_hygiene.trace_err <= 1e-9 && g_hygiene.min_eig >= -1e-8 &&
                g_hygiene.leak <= 1e-10 && g_hygiene.singlet_drift <= 1e-9,
            detail};
}

} // namespace

int main() {
    run(1, "pure-state-relation", 5.0, criterion_pure_relation);
    run(2, "remainder-identity", 10.0, criterion_remainder_identity);
    run(3, "oracle-agreement", 60.0, criterion_oracle_agreement);
    run(4, "superradiant-dynamics", 120.0, criterion_superradiant);
    run(5, "perfect-cavity", 30.0, criterion_perfect_cavity);
    run(6, "multi-branch", 180.0, criterion_multibranch);
    run(7, "ordering-inversion", 120.0, criterion_ordering_inversion);
    run(8, "mems", 5.0, criterion_mems);
    run(9, "integrator-hygiene", 5.0, criterion_hygiene);
    std::printf("%d/9 criteria passed\n", 9 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
