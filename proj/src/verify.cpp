#include "cpb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "cpb/dynamics.hpp"
#include "cpb/mems.hpp"
#include "cpb/qmat.hpp"
#include "cpb/quantifiers.hpp"
#include "cpb/sampling.hpp"
#include "cpb/trajectory.hpp"

namespace cpb {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

CheckResult pass_if(bool ok, const std::string& detail) {
    return {ok, detail};
}

ComplexMatrix random_density(XStateSampler& rng, int dim) {
    // h h^+ normalized: positive by construction.
    ComplexMatrix h(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) h(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    ComplexMatrix rho = h * h.adjoint();
    const double tr = rho.trace().real();
    rho *= Complex(1.0 / tr, 0.0);
    return rho;
}

// ---------------------------------------------------------------- qmat

CheckResult check_kron_basics(std::uint64_t) {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    double worst = (kron(i2, i2) - ComplexMatrix::identity(4)).max_abs();

    ComplexMatrix p(2);
    p(0, 0) = 1.0;
    ComplexMatrix p4(4);
    p4(0, 0) = 1.0;
    worst = std::max(worst, (kron(p, p) - p4).max_abs());

    ComplexMatrix sp(2);
    sp(0, 1) = 1.0; // |1><0| in the {1,0} ordering
    const ComplexMatrix lifted = kron(sp, i2);
    // |01> is index 2 of {11,10,01,00}; raising qubit A sends it to |11>.
    worst = std::max(worst, std::abs(lifted(0, 2) - Complex(1.0)));
    worst = std::max(worst, std::abs(lifted(1, 3) - Complex(1.0)));
    return pass_if(worst <= 1e-15, "max deviation " + num(worst));
}

CheckResult check_kron_algebra(std::uint64_t seed) {
    XStateSampler rng(seed);
    double worst = 0.0;
    for (int it = 0; it < 40; ++it) {
        ComplexMatrix a(2), b(2), c(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                a(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
                b(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
                c(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
            }
        worst = std::max(worst, (kron(kron(a, b), c) - kron(a, kron(b, c))).max_abs());
        worst = std::max(worst, (kron(a, b + c) - (kron(a, b) + kron(a, c))).max_abs());
        const Complex s(rng.uniform(-2, 2), rng.uniform(-2, 2));
        worst = std::max(worst, (kron(s * a, b) - s * kron(a, b)).max_abs());
    }
    return pass_if(worst <= 1e-13, "max deviation " + num(worst));
}

CheckResult check_partial_trace(std::uint64_t seed) {
    XStateSampler rng(seed);
    double worst = 0.0;
    for (int it = 0; it < 30; ++it) {
        const ComplexMatrix rq = random_density(rng, 4);
        const ComplexMatrix rf = random_density(rng, 3);
        worst = std::max(worst, (partial_trace_field(kron(rq, rf), 4, 3) - rq).max_abs());
    }
    // (|11,0> + |00,2>)/sqrt(2): reduced state is diag(1/2,0,0,1/2), no coherence.
    ComplexMatrix psi(12); // used as a rank-1 density matrix
    const int i110 = 0 * 3 + 0, i002 = 3 * 3 + 2;
    psi(i110, i110) = 0.5;
    psi(i002, i002) = 0.5;
    psi(i110, i002) = 0.5;
    psi(i002, i110) = 0.5;
    const ComplexMatrix red = partial_trace_field(psi, 4, 3);
    ComplexMatrix expect(4);
    expect(0, 0) = 0.5;
    expect(3, 3) = 0.5;
    worst = std::max(worst, (red - expect).max_abs());
    return pass_if(worst <= 1e-13, "max deviation " + num(worst));
}

CheckResult check_eig3(std::uint64_t seed) {
    XStateSampler rng(seed);
    double worst = 0.0;
    const auto diag = eigvals_sym3({{{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}});
    worst = std::max({worst, std::abs(diag[0] - 3), std::abs(diag[1] - 2), std::abs(diag[2] - 1)});
    const auto zero = eigvals_sym3({{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}});
    worst = std::max({worst, std::abs(zero[0]), std::abs(zero[1]), std::abs(zero[2])});

    for (int it = 0; it < 200; ++it) {
        // Q^T D Q from a product of Givens rotations.
        double d[3] = {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        std::sort(d, d + 3, std::greater<double>());
        double q[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        for (int axis = 0; axis < 3; ++axis) {
            const double ang = rng.uniform(0, 2 * M_PI);
            const double cs = std::cos(ang), sn = std::sin(ang);
            const int i = axis, j = (axis + 1) % 3;
            for (int k = 0; k < 3; ++k) {
                const double qi = q[i][k], qj = q[j][k];
                q[i][k] = cs * qi - sn * qj;
                q[j][k] = sn * qi + cs * qj;
            }
        }
        Sym3 m{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += q[k][i] * d[k] * q[k][j];
                m[i][j] = s;
            }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const double sym = 0.5 * (m[i][j] + m[j][i]);
                m[i][j] = sym;
                m[j][i] = sym;
            }
        const auto eig = eigvals_sym3(m);
        for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(eig[k] - d[k]));
        const double tr = m[0][0] + m[1][1] + m[2][2];
        worst = std::max(worst, std::abs(eig[0] + eig[1] + eig[2] - tr));
    }
    return pass_if(worst <= 1e-10, "max deviation " + num(worst));
}

// ---------------------------------------------------------- quantifiers

CheckResult check_pure_relation(std::uint64_t seed) {
    XStateSampler rng(seed);
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
        const XState s = rng.random_pure_x_state();
        const CPBTriplet t = cpb_triplet(s);
        worst = std::max(worst, std::abs(t.B - 2.0 * std::sqrt(1.0 + t.C * t.C)));
        worst = std::max(worst, std::abs(t.R));
    }
    return pass_if(worst <= 1e-9, "max |B - 2 sqrt(1+C^2)| and |R|: " + num(worst));
}

CheckResult check_remainder_identity(std::uint64_t seed) {
    XStateSampler rng(seed);
    double worst = 0.0;
    int hits[5] = {0, 0, 0, 0, 0};
    for (int it = 0; it < 10000; ++it) {
        const XState s = rng.random_x_state();
        const CPBTriplet t = cpb_triplet(s);
        worst = std::max(worst, std::abs(t.B * t.B / 4.0 - t.P - t.C * t.C - t.R));
        ++hits[static_cast<int>(t.region)];
    }
    std::ostringstream os;
    os << "max residual " << num(worst) << "; region hits " << hits[1] << "/" << hits[2] << "/"
       << hits[3] << "/" << hits[4];
    const bool covered = hits[1] >= 100 && hits[2] >= 100 && hits[3] >= 100 && hits[4] >= 100;
    return pass_if(worst <= 1e-9 && covered, os.str());
}

CheckResult check_concurrence_oracle(std::uint64_t seed) {
    XStateSampler rng(seed);
    double worst = 0.0;
    for (int it = 0; it < 10000; ++it) {
        const XState s = rng.random_x_state();
        worst = std::max(worst, std::abs(concurrence_x(s) - concurrence_block_oracle(s)));
    }
    return pass_if(worst <= 1e-10, "max |closed form - block oracle| " + num(worst));
}

CheckResult check_bell_horodecki(std::uint64_t seed) {
    XStateSampler rng(seed);
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
        const XState s = rng.random_x_state();
        const double bx = bell_max_x(s).B;
        const double bh = bell_max_horodecki(to_density_matrix(s));
        worst = std::max(worst, std::abs(bx - bh));
    }
    return pass_if(worst <= 1e-10, "max |X closed form - Horodecki| " + num(worst));
}

CheckResult check_bell_bruteforce(std::uint64_t seed) {
    XStateSampler rng(seed);
    double worst_below = 0.0, worst_above = 0.0;
    for (int it = 0; it < 200; ++it) {
        const XState s = rng.random_x_state();
        const DensityMatrix rho = to_density_matrix(s);
        const double bh = bell_max_horodecki(rho);
        const double bf = bell_max_bruteforce(rho, 64, seed + 7919 * it);
        worst_below = std::max(worst_below, bh - bf);
        worst_above = std::max(worst_above, bf - bh);
    }
    std::ostringstream os;
    os << "max shortfall " << num(worst_below) << ", max excess " << num(worst_above);
    return pass_if(worst_below <= 1e-4 && worst_above <= 1e-12, os.str());
}

CheckResult check_region_ties(std::uint64_t seed) {
    XStateSampler rng(seed);
    double worst_b = 0.0, worst_r = 0.0;
    int built = 0;
    for (int it = 0; it < 4000 && built < 200; ++it) {
        XState s = rng.random_x_state();
        // Force u2 == u3 by solving |c23| = |c14| - delta/2.
        const double delta = s.p11 + s.p44 - s.p22 - s.p33;
        const double want = std::abs(s.c14) - 0.5 * delta;
        if (want < 0.0 || want * want > s.p22 * s.p33) continue;
        s.c23 = want;
        ++built;
        const BellMax bm = bell_max_x(s);
        worst_b = std::max(worst_b, std::abs(bm.B1 - bm.B2));
        // Nudging across the tie must not move R.
        XState lo = s, hi = s;
        lo.c23 = std::max(0.0, want - 1e-15);
        hi.c23 = want + 1e-15;
        worst_r = std::max(worst_r, std::abs(remainder_x(lo) - remainder_x(hi)));
    }
    // K1 == K2 ties the same way.
    int built_k = 0;
    for (int it = 0; it < 4000 && built_k < 200; ++it) {
        XState s = rng.random_x_state();
        const double want = std::abs(s.c14) - std::sqrt(s.p22 * s.p33) + std::sqrt(s.p11 * s.p44);
        if (want < 0.0 || want * want > s.p22 * s.p33) continue;
        s.c23 = want;
        ++built_k;
        const double k1 = std::abs(s.c14) - std::sqrt(s.p22 * s.p33);
        const double k2 = std::abs(s.c23) - std::sqrt(s.p11 * s.p44);
        worst_b = std::max(worst_b, std::abs(k1 - k2));
        XState lo = s, hi = s;
        lo.c23 = std::max(0.0, want - 1e-15);
        hi.c23 = want + 1e-15;
        worst_r = std::max(worst_r, std::abs(remainder_x(lo) - remainder_x(hi)));
    }
    std::ostringstream os;
    os << built << "+" << built_k << " tie states; candidate gap " << num(worst_b)
       << ", R jitter " << num(worst_r);
    return pass_if(built >= 50 && built_k >= 50 && worst_b <= 1e-12 && worst_r <= 1e-12,
                   os.str());
}

CheckResult check_high_purity_witness(std::uint64_t) {
    // Lossless-cavity state half way through its period: high purity,
    // small concurrence, yet above the classical bound.
    const XState s = perfect_cavity_psi(M_PI / std::sqrt(6.0), {1.0});
    const CPBTriplet t = cpb_triplet(s);
    const bool ok = t.B > 2.0 && std::abs(t.C - 1.0 / 3.0) < 1e-12 &&
                    std::abs(t.P - 77.0 / 81.0) < 1e-12 &&
                    std::abs(t.B - 2.0 * std::sqrt(10.0) / 3.0) < 1e-12;
    return pass_if(ok, "C=" + num(t.C) + " P=" + num(t.P) + " B=" + num(t.B));
}

// ------------------------------------------------------------- dynamics

CheckResult check_generator_ground(std::uint64_t) {
    const Liouvillian gen = build_generator(SimParams::lossy(0.1));
    ComplexMatrix ground(gen.dim());
    ground(gen.dim() - gen.field_dim, gen.dim() - gen.field_dim) = 1.0; // |00, 0><00, 0|
    const double dev = gen.apply(ground).max_abs();
    return pass_if(dev <= 1e-15, "max |L[ground]| " + num(dev));
}

CheckResult check_generator_trace(std::uint64_t seed) {
    XStateSampler rng(seed);
    const Liouvillian gen = build_generator(SimParams::lossy(0.3));
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
        const ComplexMatrix rho = rng.random_hermitian_unit_trace(gen.dim());
        worst = std::max(worst, std::abs(gen.apply(rho).trace()));
    }
    return pass_if(worst <= 1e-12, "max |Tr L[rho]| " + num(worst));
}

CheckResult check_single_excitation_ode(std::uint64_t) {
    // Independent route: integrate c'' + lambda c' + (gamma lambda / 2) c = 0
    // with a fine-step RK4 and compare |c|^2 against the closed form.
    double worst = 0.0;
    for (double lambda : {1e-3, 1e-2, 0.5, 2.0, 2.0000001, 8.0}) {
        const SimParams p = SimParams::lossy(lambda);
        double c = 1.0, v = 0.0;
        const double t_end = std::min(200.0, 30.0 / lambda);
        const int steps = 200000;
        const double h = t_end / steps;
        const double w2 = 0.5 * p.gamma * lambda;
        auto acc = [&](double cc, double vv) { return -lambda * vv - w2 * cc; };
        int next_check = 0;
        for (int i = 0; i <= steps; ++i) {
            if (i == next_check) {
                const double t = i * h;
                worst = std::max(worst, std::abs(c * c - rho_pp_analytic(t, p)));
                next_check += steps / 100;
            }
            const double k1c = v, k1v = acc(c, v);
            const double k2c = v + 0.5 * h * k1v, k2v = acc(c + 0.5 * h * k1c, v + 0.5 * h * k1v);
            const double k3c = v + 0.5 * h * k2v, k3v = acc(c + 0.5 * h * k2c, v + 0.5 * h * k2v);
            const double k4c = v + h * k3v, k4v = acc(c + h * k3c, v + h * k3v);
            c += h / 6.0 * (k1c + 2 * k2c + 2 * k3c + k4c);
            v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        }
    }
    return pass_if(worst <= 1e-10, "max |c^2 - closed form| " + num(worst));
}

struct HygieneStats {
    double trace_err = 0.0, leak = 0.0, min_eig = 0.0, singlet_drift = 0.0;
    double excitation_rise = 0.0;
};

HygieneStats hygiene_of(const EvolveResult& run) {
    HygieneStats h;
    const double s0 = run.samples.front().singlet_pop;
    double prev_exc = run.samples.front().total_excitation;
    for (const EvolveSample& s : run.samples) {
        h.trace_err = std::max(h.trace_err, s.trace_err);
        h.leak = std::max(h.leak, s.off_x_leak);
        h.min_eig = std::min(h.min_eig, s.min_eig);
        h.singlet_drift = std::max(h.singlet_drift, std::abs(s.singlet_pop - s0));
        h.excitation_rise = std::max(h.excitation_rise, s.total_excitation - prev_exc);
        prev_exc = s.total_excitation;
    }
    return h;
}

CheckResult check_plus_oracle(std::uint64_t) {
    const SimParams p = SimParams::lossy(1e-3);
    const auto grid = uniform_grid(200.0, 501);
    const EvolveResult run = evolve_detailed(to_density_matrix(bell_plus_state()), p, grid);
    double worst = 0.0;
    for (const EvolveSample& s : run.samples)
        worst = std::max(worst, std::abs(s.rho_pp - rho_pp_analytic(s.t, p)));
    const HygieneStats h = hygiene_of(run);
    std::ostringstream os;
    os << "max |num - analytic| " << num(worst) << "; trace err " << num(h.trace_err);
    return pass_if(worst <= 1e-6 && h.trace_err <= 1e-9 && h.leak <= 1e-10 &&
                       h.min_eig >= -1e-8,
                   os.str());
}

CheckResult check_perfect_oracle(std::uint64_t) {
    const double omega = 1.0;
    const SimParams p = SimParams::perfect(omega);
    const double period = 2.0 * M_PI / (std::sqrt(6.0) * omega);
    const auto grid = uniform_grid(period, 401);
    const EvolveResult run = evolve_detailed(to_density_matrix(bell_psi_state()), p, grid);
    double worst = 0.0;
    for (const EvolveSample& s : run.samples) {
        const XState ref = perfect_cavity_psi(s.t, {omega});
        worst = std::max({worst, std::abs(s.state.p11 - ref.p11), std::abs(s.state.p22 - ref.p22),
                          std::abs(s.state.p33 - ref.p33), std::abs(s.state.p44 - ref.p44),
                          std::abs(s.state.c14 - ref.c14), std::abs(s.state.c23 - ref.c23)});
    }
    const HygieneStats h = hygiene_of(run);
    std::ostringstream os;
    os << "max element deviation " << num(worst);
    return pass_if(worst <= 1e-6 && h.trace_err <= 1e-9 && h.leak <= 1e-10 &&
                       h.min_eig >= -1e-8,
                   os.str());
}

CheckResult check_singlet_invariance(std::uint64_t) {
    // Initial state with a singlet component: 0.3 |-><-| + 0.7 |Psi><Psi|.
    XState s;
    s.p22 = 0.15;
    s.p33 = 0.15;
    s.c23 = -0.15;
    s.p11 = 0.35;
    s.p44 = 0.35;
    s.c14 = 0.35;
    const auto grid = uniform_grid(60.0, 201);
    const EvolveResult run = evolve_detailed(to_density_matrix(s), SimParams::lossy(0.05), grid);
    const HygieneStats h = hygiene_of(run);
    std::ostringstream os;
    os << "singlet drift " << num(h.singlet_drift) << " from " << num(run.samples[0].singlet_pop);
    return pass_if(h.singlet_drift <= 1e-9 && std::abs(run.samples[0].singlet_pop - 0.3) < 1e-12,
                   os.str());
}

CheckResult check_excitation_monotone(std::uint64_t) {
    const auto grid = uniform_grid(80.0, 401);
    const EvolveResult run =
        evolve_detailed(to_density_matrix(bell_psi_state()), SimParams::lossy(0.05), grid);
    const HygieneStats h = hygiene_of(run);
    return pass_if(h.excitation_rise <= 1e-9,
                   "max excitation rise between samples " + num(h.excitation_rise));
}

CheckResult check_frame_independence(std::uint64_t seed) {
    XStateSampler rng(seed);
    const auto grid = uniform_grid(40.0, 41);
    const EvolveResult run =
        evolve_detailed(to_density_matrix(bell_psi_state()), SimParams::lossy(0.02), grid);
    double worst_phase = 0.0, worst_unitary = 0.0;
    for (size_t k = 0; k < run.samples.size(); k += 8) {
        const ComplexMatrix& red = run.samples[k].reduced;
        const CPBTriplet base = cpb_triplet(DensityMatrix(red));

        // Local phase rotations keep the X pattern: the full triplet must hold.
        ComplexMatrix ua(2), ub(2);
        const double al = rng.uniform(0, 2 * M_PI), be = rng.uniform(0, 2 * M_PI);
        ua(0, 0) = Complex(std::cos(al), std::sin(al));
        ua(1, 1) = 1.0;
        ub(0, 0) = Complex(std::cos(be), std::sin(be));
        ub(1, 1) = 1.0;
        const ComplexMatrix u = kron(ua, ub);
        const CPBTriplet rot = cpb_triplet(DensityMatrix(u * red * u.adjoint()));
        worst_phase = std::max({worst_phase, std::abs(rot.C - base.C), std::abs(rot.P - base.P),
                                std::abs(rot.B - base.B), std::abs(rot.R - base.R)});

        // General local unitaries break the X pattern; B and P stay put.
        const ComplexMatrix v = kron(rng.random_unitary2(), rng.random_unitary2());
        const ComplexMatrix moved = v * red * v.adjoint();
        const DensityMatrix rho(moved);
        worst_unitary = std::max(worst_unitary,
                                 std::abs(bell_max_horodecki(rho) - base.B));
        worst_unitary = std::max(worst_unitary, std::abs(purity(rho) - base.P));
    }
    std::ostringstream os;
    os << "phase-rotation drift " << num(worst_phase) << ", local-unitary drift "
       << num(worst_unitary);
    return pass_if(worst_phase <= 1e-10 && worst_unitary <= 1e-10, os.str());
}

// ----------------------------------------------------------------- mems

CheckResult check_mems_pipeline(std::uint64_t) {
    double worst = 0.0;
    bool regions_ok = true;
    for (int k = 0; k <= 1000; ++k) {
        const MemsParam g{k / 1000.0};
        const MemsCpb closed = mems_cpb(g);
        const CPBTriplet t = cpb_triplet(mems_state(g));
        worst = std::max({worst, std::abs(closed.C - t.C), std::abs(closed.P - t.P),
                          std::abs(closed.B - t.B), std::abs(closed.R - t.R)});
        if (closed.region != t.region || (t.region != Region::R1 && t.region != Region::R3))
            regions_ok = false;
        worst = std::max(worst, std::abs(closed.B * closed.B / 4.0 - closed.P -
                                         closed.C * closed.C - closed.R));
    }
    return pass_if(worst <= 1e-10 && regions_ok, "max deviation " + num(worst));
}

CheckResult check_mems_violation_bound(std::uint64_t) {
    const double b_at_threshold = mems_cpb({1.0 / std::sqrt(2.0)}).B;
    double worst = std::abs(b_at_threshold - 2.0);
    for (int k = 0; k <= 400; ++k) {
        const double gamma = 1.0 / std::sqrt(2.0) + (1.0 - 1.0 / std::sqrt(2.0)) * k / 400.0;
        const CPBTriplet t = cpb_triplet(mems_state({gamma}));
        worst = std::max(worst, std::abs(t.B - 2.0 * std::sqrt(2.0) * t.C));
    }
    return pass_if(worst <= 1e-10, "max |B - 2 sqrt(2) C| and |B(1/sqrt 2) - 2|: " + num(worst));
}

CheckResult check_mems_boundary(std::uint64_t seed) {
    double worst = std::abs(mems_boundary(0.0) - 1.0 / 3.0);
    worst = std::max(worst, std::abs(mems_boundary(1.0) - 1.0));
    worst = std::max(worst, std::abs(mems_boundary(2.0 / 3.0) - 5.0 / 9.0));
    worst = std::max(worst, std::abs((1.0 / 3.0 + 0.5 * (4.0 / 9.0)) - 5.0 / 9.0));

    // Sampled confinement in the C-P plane: flag counterexamples, do not fail.
    XStateSampler rng(seed);
    int flags = 0;
    for (int it = 0; it < 20000; ++it) {
        const XState s = rng.random_x_state();
        const double c = concurrence_x(s);
        const double p = purity_x(s);
        double c_max = 1.0;
        if (p <= 1.0 / 3.0)
            c_max = 0.0;
        else if (p <= 5.0 / 9.0)
            c_max = std::sqrt(2.0 * (p - 1.0 / 3.0));
        else
            c_max = 0.5 * (1.0 + std::sqrt(2.0 * p - 1.0));
        if (c > c_max + 1e-9) ++flags;
    }
    std::ostringstream os;
    os << "anchor deviation " << num(worst);
    if (flags > 0) os << "; FLAG: " << flags << " states above the frontier";
    else os << "; no state above the frontier in 20000 samples";
    return pass_if(worst <= 1e-12, os.str());
}

CheckResult check_mems_detector(std::uint64_t) {
    const SimParams p = SimParams::lossy(1e-3);
    std::vector<XState> plus_states;
    for (double t = 0.0; t <= 40.0; t += 0.5) {
        const XState s = state_plus(t, p);
        if (s.p22 + s.p33 + 2.0 * s.c23.real() >= 2.0 / 3.0 + 0.01) plus_states.push_back(s);
    }
    const auto plus_report = is_mems_trajectory(plus_states, 1e-9);

    std::vector<XState> cavity_states;
    for (double t = 0.1; t <= 2.0; t += 0.1) cavity_states.push_back(perfect_cavity_psi(t, {1.0}));
    const auto cavity_report = is_mems_trajectory(cavity_states, 1e-9);

    std::vector<XState> ground(1);
    ground[0].p44 = 1.0;
    const auto ground_report = is_mems_trajectory(ground, 1e-9);

    std::ostringstream os;
    os << "plus " << plus_report.matched << "/" << plus_report.counted << ", cavity counted "
       << cavity_report.counted << ", ground counted " << ground_report.counted;
    return pass_if(plus_report.verdict && plus_report.counted >= 20 && !cavity_report.verdict &&
                       !ground_report.verdict,
                   os.str());
}

// ----------------------------------------------------------- trajectory

std::vector<TrajectoryRecord> synthetic_records(const std::vector<double>& bs) {
    std::vector<TrajectoryRecord> records;
    for (size_t i = 0; i < bs.size(); ++i) {
        TrajectoryRecord r;
        r.t = static_cast<double>(i);
        r.triplet.B = bs[i];
        records.push_back(r);
    }
    return records;
}

CheckResult check_branch_constructed(std::uint64_t) {
    const auto one = detect_branches(synthetic_records({2.5, 2.5, 2.5, 2.5}));
    const auto two = detect_branches(synthetic_records({2.5, 1.9, 2.5}));
    const auto none = detect_branches(synthetic_records({1.0, 1.5, 2.0}));
    bool ok = one.size() == 1 && one[0].open_start && one[0].open_end && two.size() == 2 &&
              none.empty();
    std::ostringstream os;
    os << one.size() << "/" << two.size() << "/" << none.size() << " branches";
    return pass_if(ok, os.str());
}

CheckResult check_plus_relations(std::uint64_t) {
    ScenarioParams params;
    params.sim = SimParams::lossy(1e-3);
    const auto records = sample_trajectory(Scenario::PlusLossy, params, uniform_grid(200.0, 801));

    std::vector<TrajectoryRecord> upper;
    for (const auto& r : records)
        if (r.rho_pp >= 1.0 / 3.0) upper.push_back(r);
    const auto rel = check_closed_relation(upper, 1e-8);

    double curve_dev = 0.0;
    bool violation_ok = true;
    for (const auto& r : upper) {
        const double c = r.triplet.C;
        curve_dev = std::max(curve_dev, std::abs(r.triplet.P - (1.0 - 2.0 * c * (1.0 - c))));
        curve_dev = std::max(curve_dev, std::abs(r.triplet.B - 2.0 * std::sqrt(2.0) * c));
    }
    for (const auto& r : records)
        if ((r.triplet.B > 2.0) != (r.rho_pp > 1.0 / std::sqrt(2.0))) violation_ok = false;

    // C and B are monotone in rho_pp on the one-branch segment only.
    const auto inversions = detect_ordering_inversions(upper);

    std::ostringstream os;
    os << "closed-relation residual " << num(rel.max_residual) << " on " << rel.n_samples
       << " samples; curve deviation " << num(curve_dev) << "; inversions on the one-branch "
       << "segment " << inversions.size();
    return pass_if(rel.holds && curve_dev <= 1e-8 && violation_ok && inversions.empty(), os.str());
}

CheckResult check_psi_no_closed_relation(std::uint64_t) {
    ScenarioParams params;
    params.sim = SimParams::lossy(1e-2);
    const auto records = sample_trajectory(Scenario::PsiLossy, params, uniform_grid(200.0, 801));
    const auto rel = check_closed_relation(records, 1e-8);
    const auto inversions = detect_ordering_inversions(records);
    std::ostringstream os;
    os << "residual " << num(rel.max_residual) << "; inversions " << inversions.size();
    return pass_if(!rel.holds && rel.max_residual > 1e-3 && !inversions.empty(), os.str());
}

CheckResult check_branch_refinement(std::uint64_t) {
    ScenarioParams params;
    params.sim = SimParams::lossy(1e-3);
    const auto coarse = sample_trajectory(Scenario::PsiLossy, params, uniform_grid(200.0, 1001));
    const auto fine = sample_trajectory(Scenario::PsiLossy, params, uniform_grid(200.0, 2001));
    const auto bc = detect_branches(coarse);
    const auto bf = detect_branches(fine);
    const double coarse_step = 200.0 / 1000.0;
    bool ok = bc.size() == bf.size() && !bc.empty();
    double worst_shift = 0.0;
    if (ok)
        for (size_t i = 0; i < bc.size(); ++i) {
            worst_shift = std::max(worst_shift, std::abs(bc[i].t_start - bf[i].t_start));
            worst_shift = std::max(worst_shift, std::abs(bc[i].t_end - bf[i].t_end));
        }
    ok = ok && worst_shift < coarse_step;
    std::ostringstream os;
    os << bc.size() << " branches; max crossing shift " << num(worst_shift);
    return pass_if(ok, os.str());
}

CheckResult check_export_round_trip(std::uint64_t) {
    ScenarioParams params;
    params.cavity.omega = 1.0;
    const auto records =
        sample_trajectory(Scenario::PsiPerfect, params, uniform_grid(2.0 * M_PI / std::sqrt(6.0), 64));
    const auto tmp = std::filesystem::temp_directory_path();
    const std::string csv = (tmp / "cpb_verify_round_trip.csv").string();
    const std::string json = (tmp / "cpb_verify_round_trip.json").string();
    export_csv(records, csv);
    export_json(records, json);
    const auto from_csv = import_csv(csv);
    const auto from_json = import_json(json);
    std::remove(csv.c_str());
    std::remove(json.c_str());
    if (from_csv.size() != records.size() || from_json.size() != records.size())
        return {false, "record count changed in round trip"};
    double worst = 0.0, identity = 0.0;
    for (size_t i = 0; i < records.size(); ++i) {
        for (const auto* pair :
             {&from_csv, &from_json}) {
            const TrajectoryRecord& a = (*pair)[i];
            const TrajectoryRecord& b = records[i];
            worst = std::max({worst, std::abs(a.t - b.t), std::abs(a.triplet.C - b.triplet.C),
                              std::abs(a.triplet.B - b.triplet.B),
                              std::abs(a.triplet.R - b.triplet.R),
                              std::abs(a.rho_pp - b.rho_pp)});
            identity = std::max(identity,
                                std::abs(a.triplet.B * a.triplet.B / 4.0 - a.triplet.P -
                                         a.triplet.C * a.triplet.C - a.triplet.R));
        }
    }
    std::ostringstream os;
    os << "max round-trip deviation " << num(worst) << "; identity residual on import "
       << num(identity);
    return pass_if(worst <= 1e-15 && identity <= 1e-9, os.str());
}

} // namespace

const std::vector<VerifyCheck>& all_checks() {
    static const std::vector<VerifyCheck> checks = {
        {"qmat", "kron-identity-cases", check_kron_basics},
        {"qmat", "kron-associative-bilinear", check_kron_algebra},
        {"qmat", "partial-trace", check_partial_trace},
        {"qmat", "eig3-closed-form", check_eig3},
        {"quantifiers", "pure-state-relation", check_pure_relation},
        {"quantifiers", "remainder-identity", check_remainder_identity},
        {"quantifiers", "concurrence-block-oracle", check_concurrence_oracle},
        {"quantifiers", "bell-closed-vs-horodecki", check_bell_horodecki},
        {"quantifiers", "bell-bruteforce-bounds", check_bell_bruteforce},
        {"quantifiers", "region-tie-independence", check_region_ties},
        {"quantifiers", "high-purity-low-c-witness", check_high_purity_witness},
        {"dynamics", "generator-ground-stationary", check_generator_ground},
        {"dynamics", "generator-trace-annihilating", check_generator_trace},
        {"dynamics", "single-excitation-ode", check_single_excitation_ode},
        {"dynamics", "plus-state-oracle", check_plus_oracle},
        {"dynamics", "perfect-cavity-oracle", check_perfect_oracle},
        {"dynamics", "singlet-invariance", check_singlet_invariance},
        {"dynamics", "excitation-monotone", check_excitation_monotone},
        {"dynamics", "frame-independence", check_frame_independence},
        {"mems", "closed-vs-pipeline", check_mems_pipeline},
        {"mems", "violation-lower-bound", check_mems_violation_bound},
        {"mems", "boundary-curve", check_mems_boundary},
        {"mems", "trajectory-detector", check_mems_detector},
        {"trajectory", "branch-detection", check_branch_constructed},
        {"trajectory", "plus-closed-relations", check_plus_relations},
        {"trajectory", "psi-no-closed-relation", check_psi_no_closed_relation},
        {"trajectory", "branch-grid-refinement", check_branch_refinement},
        {"trajectory", "export-round-trip", check_export_round_trip},
    };
    return checks;
}

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& c : all_checks())
        if (names.empty() || names.back() != c.suite) names.push_back(c.suite);
    return names;
}

} // namespace cpb
