#pragma once

#include <vector>

#include "cpb/quantifiers.hpp"

namespace cpb {

/// Parameter of the maximally-entangled-mixed-state family; coincides with
/// the concurrence of the state.
struct MemsParam {
    double gamma = 0.0;
};

/// g(gamma): gamma/2 for gamma >= 2/3, else 1/3 (both branches meet at 1/3).
double mems_g(double gamma);

/// The MEMS density matrix: p11 = p44 = g(gamma), p33 = 1 - 2 g(gamma),
/// p22 = 0, c14 = gamma/2, c23 = 0.
XState mems_state(const MemsParam& g);

struct MemsCpb {
    double C = 0.0, P = 0.0, B = 0.0, R = 0.0;
    Region region = Region::R1;
};

/// Piecewise closed forms:
///   gamma <= 1/3:  P = 1/3 + g^2/2, B^2/4 = 1/9 + g^2, R = -2/9 - g^2/2
///   gamma in [1/3, 2/3]: P = 1/3 + g^2/2, B = 2 sqrt(2) g, R = -1/3 + g^2/2
///   gamma >= 2/3:  P = 1 - 2g + 2g^2,  B = 2 sqrt(2) g, R = -(1 - g)^2
/// The region is 1 for gamma <= 1/3 and 3 above (ties go to 1, matching the
/// generic classifier).
MemsCpb mems_cpb(const MemsParam& g);

/// The C-P frontier traced by the family: P = 1/3 + C^2/2 below C = 2/3 and
/// P = 1 - 2C + 2C^2 above; continuous (both give 5/9 at C = 2/3).
double mems_boundary(double concurrence);

struct MemsSampleFit {
    double gamma_est = 0.0;
    bool counted = false;  // gamma >= 2/3, where the pattern claim applies
    bool matches = false;
    double max_deviation = 0.0;
};

struct MemsTrajectoryReport {
    bool verdict = false;
    int counted = 0;
    int matched = 0;
    std::vector<MemsSampleFit> samples;
};

/// Tests whether the states follow the MEMS pattern after relabeling
/// |0> <-> |1> on one qubit (which swaps indices 1<->2 and 3<->4). Only
/// samples with estimated gamma >= 2/3 enter the verdict; the verdict is
/// true when at least one sample is counted and all counted samples match
/// within tol. Coherence phases are ignored (the family is defined up to
/// local unitaries).
MemsTrajectoryReport is_mems_trajectory(const std::vector<XState>& states, double tol);

} // namespace cpb
