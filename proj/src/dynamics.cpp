#include "cpb/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace cpb {

namespace {

const Complex kI{0.0, 1.0};

// Excitation carried by each two-qubit basis state {|11>,|10>,|01>,|00>}.
constexpr int kQubitExcitation[4] = {2, 1, 1, 0};

} // namespace

SimParams SimParams::lossy(double lambda, int n_max, double dt) {
    if (!(lambda > 0.0)) throw RangeError("SimParams::lossy: lambda must be positive");
    SimParams p;
    p.lambda = lambda;
    p.omega0 = 0.5 * std::sqrt(p.gamma * lambda);
    p.kappa = 2.0 * lambda;
    p.n_max = n_max;
    p.dt = dt;
    return p;
}

SimParams SimParams::perfect(double omega, int n_max, double dt) {
    if (!(omega > 0.0)) throw RangeError("SimParams::perfect: omega must be positive");
    SimParams p;
    p.lambda = 0.0;
    p.omega0 = omega;
    p.kappa = 0.0;
    p.n_max = n_max;
    p.dt = dt;
    return p;
}

double SimParams::default_dt() const {
    const double scale = std::max(2.0 * omega0, 0.5 * kappa);
    if (scale <= 0.0) return 0.01;
    return std::min(0.005 / scale, 0.01);
}

void SimParams::validate() const {
    if (!(gamma > 0.0)) throw RangeError("SimParams: gamma must be positive");
    if (lambda < 0.0 || omega0 < 0.0 || kappa < 0.0)
        throw RangeError("SimParams: rates must be non-negative");
    if (lambda > 0.0) {
        const double w = 0.5 * std::sqrt(gamma * lambda);
        if (std::abs(kappa - 2.0 * lambda) > 1e-12 * std::max(1.0, kappa) ||
            std::abs(omega0 - w) > 1e-12 * std::max(1.0, w))
            throw RangeError("SimParams: lossy runs require kappa = 2*lambda and "
                             "omega0 = sqrt(gamma*lambda)/2");
    } else if (kappa != 0.0) {
        throw RangeError("SimParams: kappa without a Lorentzian width");
    }
    if (n_max < 0) throw RangeError("SimParams: n_max must be >= 0");
    if (dt < 0.0) throw RangeError("SimParams: dt must be >= 0");
}

double rho_pp_analytic(double t, const SimParams& p) {
    if (t < 0.0) throw RangeError("rho_pp_analytic: t must be >= 0");
    const double lam = p.lambda;
    if (lam == 0.0) return 1.0; // decoupled limit: J == 0
    const double d2 = 2.0 * p.gamma * lam - lam * lam;
    const double eps = 1e-6 * lam;
    if (d2 > eps * eps) {
        const double d = std::sqrt(d2);
        const double amp = std::cos(0.5 * d * t) + (lam / d) * std::sin(0.5 * d * t);
        return std::exp(-lam * t) * amp * amp;
    }
    if (d2 < -eps * eps) {
        // Hyperbolic branch written with decaying exponentials only; both
        // exponents are negative because dh < lambda.
        const double dh = std::sqrt(-d2);
        const double r = lam / dh;
        const double ep = 0.5 * (1.0 + r) * std::exp(0.5 * (dh - lam) * t);
        const double em = 0.5 * (1.0 - r) * std::exp(-0.5 * (dh + lam) * t);
        const double amp = ep + em;
        return amp * amp;
    }
    const double amp = 1.0 + 0.5 * lam * t; // series limit at d -> 0
    return std::exp(-lam * t) * amp * amp;
}

XState state_plus(double t, const SimParams& p) {
    const double rpp = rho_pp_analytic(t, p);
    XState s;
    s.p22 = 0.5 * rpp;
    s.p33 = 0.5 * rpp;
    s.c23 = 0.5 * rpp;
    s.p44 = 1.0 - rpp;
    return s;
}

XState perfect_cavity_psi(double t, const PerfectCavityParams& q) {
    if (t < 0.0) throw RangeError("perfect_cavity_psi: t must be >= 0");
    if (!(q.omega > 0.0)) throw RangeError("perfect_cavity_psi: omega must be positive");
    const double theta = std::sqrt(6.0) * q.omega * t;
    const double rpp = std::sin(theta) * std::sin(theta) / 6.0;
    const double r14 = (2.0 + std::cos(theta)) / 6.0;
    XState s;
    s.c14 = r14;
    s.p11 = 2.0 * r14 * r14;
    s.p22 = 0.5 * rpp;
    s.p33 = 0.5 * rpp;
    s.c23 = 0.5 * rpp;
    s.p44 = 1.0 - s.p11 - rpp;
    return s;
}

Liouvillian build_generator(const SimParams& p) {
    p.validate();
    const int df = p.n_max + 1;

    ComplexMatrix splus(4); // collective raising operator on the qubits
    splus(0, 1) = 1.0;
    splus(0, 2) = 1.0;
    splus(1, 3) = 1.0;
    splus(2, 3) = 1.0;

    ComplexMatrix a(df);
    for (int n = 1; n < df; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));

    ComplexMatrix h = kron(splus, a);
    h += h.adjoint();
    h *= p.omega0;

    Liouvillian g;
    g.hamiltonian = std::move(h);
    g.kappa = p.kappa;
    g.field_dim = df;
    return g;
}

void Liouvillian::apply(const ComplexMatrix& rho, ComplexMatrix& out,
                        ComplexMatrix& scratch) const {
    const int d = dim();
    const int df = field_dim;
    multiply_into(hamiltonian, rho, scratch); // scratch = H rho; rho H = scratch^+
    if (out.dim() != d) out = ComplexMatrix(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            out(r, c) = -kI * (scratch(r, c) - std::conj(scratch(c, r)));
    if (kappa == 0.0) return;
    for (int r = 0; r < d; ++r) {
        const int nr = r % df;
        for (int c = 0; c < d; ++c) {
            const int nc = c % df;
            Complex diss = -0.5 * static_cast<double>(nr + nc) * rho(r, c);
            if (nr + 1 < df && nc + 1 < df)
                diss += std::sqrt(static_cast<double>(nr + 1)) *
                        std::sqrt(static_cast<double>(nc + 1)) * rho(r + 1, c + 1);
            out(r, c) += kappa * diss;
        }
    }
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
    ComplexMatrix out(dim()), scratch(dim());
    apply(rho, out, scratch);
    return out;
}

namespace {

int required_fock_levels(const DensityMatrix& rho0, double tol = 1e-12) {
    if (rho0(0, 0).real() > tol) return 2;
    if (rho0(1, 1).real() + rho0(2, 2).real() > tol) return 1;
    return 0;
}

double reduced_min_eigenvalue(const ComplexMatrix& reduced, double leak) {
    if (leak <= 1e-8) return x_pattern_min_eigenvalue(reduced);
    return min_eigenvalue_hermitian(reduced);
}

} // namespace

EvolveResult evolve_detailed(const DensityMatrix& rho0_qubits, const SimParams& p,
                             const std::vector<double>& t_grid) {
    p.validate();
    if (rho0_qubits.dim() != 4) throw DimensionError("evolve: initial state must be 4x4");
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw RangeError("evolve: time grid must start at 0");
    for (size_t k = 1; k < t_grid.size(); ++k)
        if (!(t_grid[k] > t_grid[k - 1])) throw RangeError("evolve: time grid must ascend");

    const int required_n = required_fock_levels(rho0_qubits);
    if (p.n_max < required_n)
        throw TruncationError("evolve: n_max below the initial excitation number");

    const Liouvillian gen = build_generator(p);
    const int df = p.n_max + 1;
    const int d = 4 * df;

    ComplexMatrix vacuum(df);
    vacuum(0, 0) = 1.0;
    ComplexMatrix rho = kron(rho0_qubits.matrix(), vacuum);

    const double dt_target = (p.dt > 0.0) ? p.dt : p.default_dt();

    ComplexMatrix k1(d), k2(d), k3(d), k4(d), tmp(d), scratch(d);
    auto rk4_step = [&](double h) {
        gen.apply(rho, k1, scratch);
        tmp = rho;
        tmp.add_scaled(0.5 * h, k1);
        gen.apply(tmp, k2, scratch);
        tmp = rho;
        tmp.add_scaled(0.5 * h, k2);
        gen.apply(tmp, k3, scratch);
        tmp = rho;
        tmp.add_scaled(h, k3);
        gen.apply(tmp, k4, scratch);
        rho.add_scaled(h / 6.0, k1);
        rho.add_scaled(h / 3.0, k2);
        rho.add_scaled(h / 3.0, k3);
        rho.add_scaled(h / 6.0, k4);
    };

    EvolveResult result;
    result.dt_used = dt_target;
    result.samples.reserve(t_grid.size());

    long steps_taken = 0;
    auto record_sample = [&](double t) {
        EvolveSample s;
        s.t = t;
        s.reduced = partial_trace_field(rho, 4, df);
        s.trace_err = std::abs(s.reduced.trace() - Complex(1.0));
        s.off_x_leak = off_x_magnitude(s.reduced);
        s.min_eig = reduced_min_eigenvalue(s.reduced, s.off_x_leak);

        DensityTolerances tol;
        tol.trace = std::max(tol.trace, 10.0 * s.trace_err);
        const DensityMatrix red(s.reduced, tol);
        s.singlet_pop = singlet_population(red);
        s.rho_pp = superradiant_population(red);
        s.state = XState{std::max(0.0, s.reduced(0, 0).real()),
                         std::max(0.0, s.reduced(1, 1).real()),
                         std::max(0.0, s.reduced(2, 2).real()),
                         std::max(0.0, s.reduced(3, 3).real()),
                         s.reduced(0, 3), s.reduced(1, 2)};

        double excitation = 0.0;
        double buffer = 0.0;
        for (int q = 0; q < 4; ++q)
            for (int n = 0; n < df; ++n) {
                const double pop = rho(q * df + n, q * df + n).real();
                excitation += pop * (kQubitExcitation[q] + n);
                if (n > required_n) buffer += pop;
            }
        s.total_excitation = excitation;
        s.buffer_pop = buffer;
        if (buffer > 1e-10)
            throw TruncationError("evolve: population leaked above the expected Fock levels");
        result.samples.push_back(std::move(s));
    };

    record_sample(t_grid.front());
    for (size_t k = 1; k < t_grid.size(); ++k) {
        const double span = t_grid[k] - t_grid[k - 1];
        const long nsub = std::max(1L, static_cast<long>(std::ceil(span / dt_target - 1e-12)));
        const double h = span / static_cast<double>(nsub);
        for (long i = 0; i < nsub; ++i) {
            rk4_step(h);
            ++steps_taken;
            const double drift = std::abs(rho.trace() - Complex(1.0));
            if (drift > 1e-12 * static_cast<double>(steps_taken))
                throw StepTooLargeError("evolve: trace drift indicates an unstable step size");
        }
        record_sample(t_grid[k]);
    }
    result.steps = steps_taken;
    return result;
}

std::vector<DensityMatrix> evolve(const DensityMatrix& rho0_qubits, const SimParams& p,
                                  const std::vector<double>& t_grid) {
    EvolveResult detailed = evolve_detailed(rho0_qubits, p, t_grid);
    std::vector<DensityMatrix> out;
    out.reserve(detailed.samples.size());
    for (auto& s : detailed.samples) out.emplace_back(std::move(s.reduced));
    return out;
}

double singlet_population(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw DimensionError("singlet_population: expects 4x4");
    return 0.5 * (rho(1, 1).real() + rho(2, 2).real()) - rho(1, 2).real();
}

double superradiant_population(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw DimensionError("superradiant_population: expects 4x4");
    return 0.5 * (rho(1, 1).real() + rho(2, 2).real()) + rho(1, 2).real();
}

} // namespace cpb
