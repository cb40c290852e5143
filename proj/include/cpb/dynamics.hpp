#pragma once

#include <vector>

#include "cpb/quantifiers.hpp"

namespace cpb {

/// Parameters of the common-reservoir model. All rates are in units of the
/// spontaneous emission rate (gamma = 1 fixes the time unit); the qubits'
/// Bohr frequency is eliminated by working in the rotating frame on
/// resonance, which is a local unitary and leaves C, P and B unchanged.
///
/// The Lorentzian reservoir of half-width lambda is represented exactly by a
/// single damped mode with decay kappa = 2*lambda and per-qubit coupling
/// omega0 = sqrt(gamma*lambda)/2. With that calibration the one-excitation
/// amplitude obeys c'' + lambda c' + (gamma*lambda/2) c = 0, so the
/// symmetric-state population matches the analytic form below identically.
/// Note on conventions: gamma here is the Markovian decay rate of the
/// one-excitation symmetric state in the wide-reservoir limit; conventions
/// in which the single-qubit rate appears instead differ by a factor 2.
struct SimParams {
    double gamma = 1.0;
    double lambda = 0.0;  // Lorentzian half-width; 0 means lossless mode
    double omega0 = 0.0;  // per-qubit qubit-mode coupling
    double kappa = 0.0;   // mode decay
    int n_max = 2;        // Fock truncation
    double dt = 0.0;      // integrator step; 0 selects the default
    double t_max = 200.0;

    /// Lossy reservoir: derives omega0 and kappa from lambda.
    static SimParams lossy(double lambda, int n_max = 2, double dt = 0.0);

    /// Lossless cavity: kappa = 0 and an explicit coupling.
    static SimParams perfect(double omega, int n_max = 2, double dt = 0.0);

    /// min(0.005 / max(2*omega0, kappa/2), 0.01): at least ~200 steps per
    /// fastest oscillation or decay scale.
    double default_dt() const;

    void validate() const;
};

struct PerfectCavityParams {
    double omega = 1.0;
};

/// Population of the one-excitation symmetric state starting from 1 at t = 0:
/// strong coupling (gamma > lambda/2)
///     e^{-lambda t} [cos(d t/2) + (lambda/d) sin(d t/2)]^2,
///     d = sqrt(2 gamma lambda - lambda^2);
/// weak coupling: the trigonometric functions become hyperbolic (d -> i d);
/// the degenerate point uses the series limit e^{-lambda t}(1 + lambda t/2)^2.
double rho_pp_analytic(double t, const SimParams& p);

/// Two-qubit state evolved from |+> = (|10>+|01>)/sqrt(2): all elements are
/// set by the symmetric-state population, p22 = p33 = Re c23 = rho_pp/2 and
/// p44 = 1 - rho_pp.
XState state_plus(double t, const SimParams& p);

/// Closed-form trajectory of (|00>+|11>)/sqrt(2) in a lossless cavity with
/// per-qubit coupling omega; period 2*pi/(sqrt(6)*omega).
XState perfect_cavity_psi(double t, const PerfectCavityParams& q);

/// Master-equation generator on the qubits + mode space (dimension
/// 4*(n_max+1)): H = omega0 [(s+_A + s+_B) a + h.c.] with a single jump
/// operator a at rate kappa. Trace-annihilating and Hermiticity-preserving.
struct Liouvillian {
    ComplexMatrix hamiltonian;
    double kappa = 0.0;
    int field_dim = 0;

    int dim() const { return hamiltonian.dim(); }

    /// out = -i[H, rho] + kappa (a rho a+ - {a+a, rho}/2). rho must be
    /// Hermitian (intermediates of the integrator are).
    void apply(const ComplexMatrix& rho, ComplexMatrix& out, ComplexMatrix& scratch) const;
    ComplexMatrix apply(const ComplexMatrix& rho) const;
};

Liouvillian build_generator(const SimParams& p);

struct EvolveSample {
    double t = 0.0;
    XState state;               // snapped X form of the reduced state
    ComplexMatrix reduced;      // raw 4x4 reduced state
    double trace_err = 0.0;     // |Tr rho - 1|
    double off_x_leak = 0.0;    // largest off-X magnitude of the reduced state
    double min_eig = 0.0;       // minimum eigenvalue of the reduced state
    double singlet_pop = 0.0;
    double rho_pp = 0.0;        // symmetric-state population
    double total_excitation = 0.0;
    double buffer_pop = 0.0;    // population above the initially excited levels
};

struct EvolveResult {
    std::vector<EvolveSample> samples;
    double dt_used = 0.0;
    long steps = 0;
};

/// Integrates the master equation from rho0 (x) vacuum with fixed-step RK4,
/// landing exactly on each grid time, and reduces over the mode. The grid
/// must be ascending and start at 0.
///
/// Throws TruncationError if n_max cannot hold the initial excitations, or if
/// a spare top level acquires population above 1e-10; StepTooLargeError if
/// the cumulative trace drift exceeds 1e-12 per step taken.
EvolveResult evolve_detailed(const DensityMatrix& rho0_qubits, const SimParams& p,
                             const std::vector<double>& t_grid);

std::vector<DensityMatrix> evolve(const DensityMatrix& rho0_qubits, const SimParams& p,
                                  const std::vector<double>& t_grid);

/// <-|rho|-> with |-> = (|10>-|01>)/sqrt(2); conserved by the common-reservoir
/// dynamics (the antisymmetric state decouples from the field).
double singlet_population(const DensityMatrix& rho);

/// <+|rho|+> with |+> = (|10>+|01>)/sqrt(2).
double superradiant_population(const DensityMatrix& rho);

} // namespace cpb
