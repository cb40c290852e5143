#pragma once

#include <cstdint>

#include "cpb/qmat.hpp"

namespace cpb {

/// Two-qubit basis ordering used throughout: {|11>, |10>, |01>, |00>},
/// indices 1..4 in that order. States whose only nonzero entries sit on the
/// diagonal and anti-diagonal ("X" pattern) are described by seven real
/// degrees of freedom: four populations and two complex coherences.
struct XState {
    double p11 = 0.0, p22 = 0.0, p33 = 0.0, p44 = 0.0;
    Complex c14{0.0, 0.0};
    Complex c23{0.0, 0.0};
};

enum class Region : int { R1 = 1, R2 = 2, R3 = 3, R4 = 4 };

enum class BellBranch : int { B1 = 1, B2 = 2 };

/// Everything computed from one X state: concurrence C, purity P, CHSH
/// maximum B, the remainder R = B^2/4 - P - C^2, the region the state falls
/// in, and the intermediate quantities the closed forms are built from.
struct CPBTriplet {
    double C = 0.0, P = 0.0, B = 0.0, R = 0.0;
    Region region = Region::R1;
    double K1 = 0.0, K2 = 0.0;
    double u1 = 0.0, u2 = 0.0, u3 = 0.0;
    double B1 = 0.0, B2 = 0.0;
    BellBranch branch = BellBranch::B1;
};

struct BellMax {
    double B = 0.0;
    BellBranch branch = BellBranch::B1;
    double u1 = 0.0, u2 = 0.0, u3 = 0.0;
    double B1 = 0.0, B2 = 0.0;
};

/// Checks the X pattern of a 4x4 density matrix and extracts the seven
/// parameters. Off-pattern entries above x_tol raise XLeakageError; the
/// returned state is snapped to exact X form (tiny negative populations from
/// roundoff are clamped to zero).
XState validate_x_state(const DensityMatrix& rho, double x_tol = 1e-10);

/// Builds the 4x4 density matrix of an X state (inverse of validate_x_state).
DensityMatrix to_density_matrix(const XState& s);

double concurrence_x(const XState& s);

/// Independent route to the concurrence: the four square-root eigenvalues of
/// rho * (spin-flipped rho), computed numerically from the two 2x2 blocks.
double concurrence_block_oracle(const XState& s);

double purity(const DensityMatrix& rho);
double purity_x(const XState& s);

BellMax bell_max_x(const XState& s);

/// CHSH maximum from the correlation tensor T_ij = Tr{rho sigma_i x sigma_j}:
/// B = 2 sqrt(sum of the two largest eigenvalues of T^T T).
double bell_max_horodecki(const DensityMatrix& rho);

/// Derivative-free oracle: maximizes |E(a,b)+E(a,b')+E(a',b)-E(a',b')| over
/// four unit measurement vectors using seeded random restarts followed by
/// golden-section refinement of each spherical coordinate (3 sweeps).
double bell_max_bruteforce(const DensityMatrix& rho, int n_restarts = 64,
                           std::uint64_t seed = 1);

Region classify_region(const XState& s);

/// Closed-form remainder for the region the state falls in. The region
/// formulas assume C = 2K; when the relevant K is negative the concurrence
/// clamps to zero and the remainder shifts by 4K^2 to keep
/// B^2/4 - P - C^2 = R exact.
double remainder_x(const XState& s);

/// Assembles C, P, B, R and all auxiliaries; verifies the identity residual
/// internally and throws IdentityViolationError above 1e-6.
CPBTriplet cpb_triplet(const DensityMatrix& rho, double x_tol = 1e-10);
CPBTriplet cpb_triplet(const XState& s);

struct MeasurePair {
    double tangle;
    double linear_entropy;
};

/// tau = C^2, S = (4/3)(1 - P). Inputs outside C in [0,1], P in [1/4,1]
/// (with a small slack) are rejected.
MeasurePair convert_measures(double concurrence, double purity);

} // namespace cpb
