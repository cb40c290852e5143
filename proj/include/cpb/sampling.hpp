#pragma once

#include <cstdint>
#include <random>

#include "cpb/quantifiers.hpp"

namespace cpb {

/// Seeded generators for property sweeps. Uniform deviates are produced from
/// the raw 64-bit stream (53-bit mantissa), so sequences are reproducible
/// across standard libraries.
class XStateSampler {
public:
    explicit XStateSampler(std::uint64_t seed) : rng_(seed) {}

    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);

    /// Populations from the flat simplex, coherence magnitudes uniform in
    /// [0, sqrt(p_i p_j)], phases uniform. Covers all four regions.
    XState random_x_state();

    /// Rank-1 X state: a superposition within either the {|11>,|00>} or the
    /// {|10>,|01>} sector (mixing sectors would break the X pattern).
    XState random_pure_x_state();

    /// Random Hermitian matrix with unit trace (not necessarily positive);
    /// suitable for linearity/trace checks of superoperators.
    ComplexMatrix random_hermitian_unit_trace(int dim);

    /// Haar-ish random 2x2 unitary (enough for invariance checks).
    ComplexMatrix random_unitary2();

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace cpb
