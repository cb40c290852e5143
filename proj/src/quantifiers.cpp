#include "cpb/quantifiers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cpb {

namespace {

const Complex kI{0.0, 1.0};

// Pauli matrices in the {|1>, |0>} single-qubit ordering (excited first).
ComplexMatrix pauli(int k) {
    ComplexMatrix m(2);
    switch (k) {
        case 0: m(0, 1) = 1.0; m(1, 0) = 1.0; break;          // x
        case 1: m(0, 1) = kI; m(1, 0) = -kI; break;           // y
        default: m(0, 0) = 1.0; m(1, 1) = -1.0; break;        // z
    }
    return m;
}

} // namespace

XState validate_x_state(const DensityMatrix& rho, double x_tol) {
    if (rho.dim() != 4) throw DimensionError("validate_x_state: expects a 4x4 density matrix");
    const ComplexMatrix& m = rho.matrix();
    const double leak = off_x_magnitude(m);
    if (leak > x_tol)
        throw XLeakageError("validate_x_state: off-X entries exceed tolerance", leak);

    XState s;
    s.p11 = std::max(0.0, m(0, 0).real());
    s.p22 = std::max(0.0, m(1, 1).real());
    s.p33 = std::max(0.0, m(2, 2).real());
    s.p44 = std::max(0.0, m(3, 3).real());
    s.c14 = m(0, 3);
    s.c23 = m(1, 2);

    if (std::norm(s.c14) > s.p11 * s.p44 + 1e-10 || std::norm(s.c23) > s.p22 * s.p33 + 1e-10)
        throw NotADensityMatrixError("validate_x_state: coherence exceeds population bound");
    return s;
}

DensityMatrix to_density_matrix(const XState& s) {
    ComplexMatrix m(4);
    m(0, 0) = s.p11;
    m(1, 1) = s.p22;
    m(2, 2) = s.p33;
    m(3, 3) = s.p44;
    m(0, 3) = s.c14;
    m(3, 0) = std::conj(s.c14);
    m(1, 2) = s.c23;
    m(2, 1) = std::conj(s.c23);
    return DensityMatrix(std::move(m));
}

double concurrence_x(const XState& s) {
    const double k1 = std::abs(s.c14) - std::sqrt(s.p22 * s.p33);
    const double k2 = std::abs(s.c23) - std::sqrt(s.p11 * s.p44);
    return 2.0 * std::max({0.0, k1, k2});
}

double concurrence_block_oracle(const XState& s) {
    // rho * rho_tilde is block diagonal; each 2x2 product block is
    // M * M_tilde with M_tilde the spin-flipped partner block.
    auto block_sqrt_eigs = [](double a, double d, Complex o, double& l1, double& l2) {
        // M = [[a, o], [conj(o), d]], M_tilde = [[d, o], [conj(o), a]]
        const Complex p00 = a * d + o * std::conj(o);
        const Complex p01 = a * o + o * a;
        const Complex p10 = std::conj(o) * d + d * std::conj(o);
        const Complex p11 = std::conj(o) * o + d * a;
        const Complex tr = p00 + p11;
        const Complex det = p00 * p11 - p01 * p10;
        const Complex disc = std::sqrt(tr * tr - 4.0 * det);
        const Complex e1 = 0.5 * (tr + disc);
        const Complex e2 = 0.5 * (tr - disc);
        l1 = std::sqrt(std::max(0.0, e1.real()));
        l2 = std::sqrt(std::max(0.0, e2.real()));
    };
    double lam[4];
    block_sqrt_eigs(s.p11, s.p44, s.c14, lam[0], lam[1]);
    block_sqrt_eigs(s.p22, s.p33, s.c23, lam[2], lam[3]);
    std::sort(lam, lam + 4, std::greater<double>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double purity(const DensityMatrix& rho) {
    return rho.purity();
}

double purity_x(const XState& s) {
    return s.p11 * s.p11 + s.p22 * s.p22 + s.p33 * s.p33 + s.p44 * s.p44 +
           2.0 * (std::norm(s.c23) + std::norm(s.c14));
}

BellMax bell_max_x(const XState& s) {
    BellMax r;
    const double a14 = std::abs(s.c14);
    const double a23 = std::abs(s.c23);
    r.u1 = 4.0 * (a14 + a23) * (a14 + a23);
    r.u2 = (s.p11 + s.p44 - s.p22 - s.p33) * (s.p11 + s.p44 - s.p22 - s.p33);
    r.u3 = 4.0 * (a14 - a23) * (a14 - a23);
    r.B1 = 2.0 * std::sqrt(r.u1 + r.u2);
    r.B2 = 2.0 * std::sqrt(r.u1 + r.u3);
    if (r.B1 >= r.B2) {
        r.B = r.B1;
        r.branch = BellBranch::B1;
    } else {
        r.B = r.B2;
        r.branch = BellBranch::B2;
    }
    return r;
}

double bell_max_horodecki(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw DimensionError("bell_max_horodecki: expects 4x4");
    double t[3][3];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const ComplexMatrix op = kron(pauli(i), pauli(j));
            Complex tr = 0.0;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) tr += rho(r, c) * op(c, r);
            t[i][j] = tr.real();
        }
    }
    Sym3 tt{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += t[k][i] * t[k][j];
            tt[i][j] = s;
        }
    const auto eig = eigvals_sym3(tt);
    return 2.0 * std::sqrt(std::max(0.0, eig[0] + eig[1]));
}

namespace {

struct Chsh {
    // Pauli-pair expectations, computed directly from the state.
    double t[3][3];

    explicit Chsh(const DensityMatrix& rho) {
        Complex sig[3][2][2];
        // x
        sig[0][0][0] = 0; sig[0][0][1] = 1; sig[0][1][0] = 1; sig[0][1][1] = 0;
        // y
        sig[1][0][0] = 0; sig[1][0][1] = kI; sig[1][1][0] = -kI; sig[1][1][1] = 0;
        // z
        sig[2][0][0] = 1; sig[2][0][1] = 0; sig[2][1][0] = 0; sig[2][1][1] = -1;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Complex s = 0.0;
                for (int q = 0; q < 2; ++q)
                    for (int r = 0; r < 2; ++r)
                        for (int u = 0; u < 2; ++u)
                            for (int v = 0; v < 2; ++v)
                                s += rho(q * 2 + u, r * 2 + v) * sig[i][r][q] * sig[j][v][u];
                t[i][j] = s.real();
            }
    }

    static void unit_vector(double theta, double phi, double v[3]) {
        v[0] = std::sin(theta) * std::cos(phi);
        v[1] = std::sin(theta) * std::sin(phi);
        v[2] = std::cos(theta);
    }

    double correlation(const double a[3], const double b[3]) const {
        double e = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) e += a[i] * t[i][j] * b[j];
        return e;
    }

    // angles: (theta_a, phi_a, theta_a', phi_a', theta_b, phi_b, theta_b', phi_b')
    double value(const double ang[8]) const {
        double a[3], ap[3], b[3], bp[3];
        unit_vector(ang[0], ang[1], a);
        unit_vector(ang[2], ang[3], ap);
        unit_vector(ang[4], ang[5], b);
        unit_vector(ang[6], ang[7], bp);
        return std::abs(correlation(a, b) + correlation(a, bp) + correlation(ap, b) -
                        correlation(ap, bp));
    }

    void mul(const double v[3], double out[3]) const {
        for (int i = 0; i < 3; ++i) out[i] = t[i][0] * v[0] + t[i][1] * v[1] + t[i][2] * v[2];
    }
    void mul_transposed(const double v[3], double out[3]) const {
        for (int i = 0; i < 3; ++i) out[i] = t[0][i] * v[0] + t[1][i] * v[1] + t[2][i] * v[2];
    }
};

bool normalize3(double v[3]) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (n < 1e-300) return false;
    v[0] /= n;
    v[1] /= n;
    v[2] /= n;
    return true;
}

void to_angles(const double v[3], double& theta, double& phi) {
    theta = std::acos(std::clamp(v[2], -1.0, 1.0));
    phi = std::atan2(v[1], v[0]);
}

double golden_max(const Chsh& f, double ang[8], int coord, double lo, double hi) {
    constexpr double kRatio = 0.6180339887498949;
    double x1 = hi - kRatio * (hi - lo);
    double x2 = lo + kRatio * (hi - lo);
    ang[coord] = x1;
    double f1 = f.value(ang);
    ang[coord] = x2;
    double f2 = f.value(ang);
    for (int it = 0; it < 30; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kRatio * (hi - lo);
            ang[coord] = x2;
            f2 = f.value(ang);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kRatio * (hi - lo);
            ang[coord] = x1;
            f1 = f.value(ang);
        }
    }
    if (f1 >= f2) {
        ang[coord] = x1;
        return f1;
    }
    ang[coord] = x2;
    return f2;
}

} // namespace

double bell_max_bruteforce(const DensityMatrix& rho, int n_restarts, std::uint64_t seed) {
    if (rho.dim() != 4) throw DimensionError("bell_max_bruteforce: expects 4x4");
    if (n_restarts < 16) throw RangeError("bell_max_bruteforce: n_restarts must be >= 16");
    const Chsh f(rho);
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

    double best = 0.0;
    for (int restart = 0; restart < n_restarts; ++restart) {
        double ang[8];
        for (int k = 0; k < 4; ++k) {
            ang[2 * k] = std::acos(1.0 - 2.0 * uniform());
            ang[2 * k + 1] = 2.0 * M_PI * uniform();
        }

        // See-saw stage: given (b, b') the CHSH combination is maximized by
        // a along t(b+b') and a' along t(b-b'), and symmetrically for the
        // other side. Coordinate-wise golden sweeps alone crawl on the flat
        // ridges this landscape develops, so they only polish afterwards.
        double a[3], ap[3], b[3], bp[3];
        Chsh::unit_vector(ang[0], ang[1], a);
        Chsh::unit_vector(ang[2], ang[3], ap);
        Chsh::unit_vector(ang[4], ang[5], b);
        Chsh::unit_vector(ang[6], ang[7], bp);
        double prev = -1.0;
        for (int it = 0; it < 60; ++it) {
            double sum[3], diff[3], u[3], w[3];
            for (int i = 0; i < 3; ++i) {
                sum[i] = b[i] + bp[i];
                diff[i] = b[i] - bp[i];
            }
            f.mul(sum, u);
            if (normalize3(u)) std::copy(u, u + 3, a);
            f.mul(diff, w);
            if (normalize3(w)) std::copy(w, w + 3, ap);
            for (int i = 0; i < 3; ++i) {
                sum[i] = a[i] + ap[i];
                diff[i] = a[i] - ap[i];
            }
            f.mul_transposed(sum, u);
            if (normalize3(u)) std::copy(u, u + 3, b);
            f.mul_transposed(diff, w);
            if (normalize3(w)) std::copy(w, w + 3, bp);
            const double val = f.correlation(a, b) + f.correlation(a, bp) +
                               f.correlation(ap, b) - f.correlation(ap, bp);
            if (std::abs(val - prev) < 1e-15) break;
            prev = val;
        }
        to_angles(a, ang[0], ang[1]);
        to_angles(ap, ang[2], ang[3]);
        to_angles(b, ang[4], ang[5]);
        to_angles(bp, ang[6], ang[7]);

        double val = f.value(ang);
        double width = 0.05;
        for (int sweep = 0; sweep < 3; ++sweep) {
            for (int coord = 0; coord < 8; ++coord) {
                const double center = ang[coord];
                const double improved = golden_max(f, ang, coord, center - width, center + width);
                if (improved < val) {
                    ang[coord] = center; // keep the previous point if the search regressed
                } else {
                    val = improved;
                }
            }
            width *= 0.2;
        }
        best = std::max(best, val);
    }
    return best;
}

Region classify_region(const XState& s) {
    const double k1 = std::abs(s.c14) - std::sqrt(s.p22 * s.p33);
    const double k2 = std::abs(s.c23) - std::sqrt(s.p11 * s.p44);
    const double u2 = (s.p11 + s.p44 - s.p22 - s.p33) * (s.p11 + s.p44 - s.p22 - s.p33);
    const double a14 = std::abs(s.c14);
    const double a23 = std::abs(s.c23);
    const double u3 = 4.0 * (a14 - a23) * (a14 - a23);
    // Ties fall through to the lowest index; B, C and R coincide there.
    if (u2 >= u3) return (k1 >= k2) ? Region::R1 : Region::R2;
    return (k1 >= k2) ? Region::R3 : Region::R4;
}

double remainder_x(const XState& s) {
    const double a14 = std::abs(s.c14);
    const double a23 = std::abs(s.c23);
    const double n14 = a14 * a14;
    const double n23 = a23 * a23;
    const double k1 = a14 - std::sqrt(s.p22 * s.p33);
    const double k2 = a23 - std::sqrt(s.p11 * s.p44);
    const double diag_sq =
        s.p11 * s.p11 + s.p22 * s.p22 + s.p33 * s.p33 + s.p44 * s.p44;

    const Region region = classify_region(s);
    double r = 0.0;
    double k = 0.0;
    switch (region) {
        case Region::R1:
            r = 2.0 * (n23 - n14 + s.p11 * s.p44 - s.p22 * s.p33 + 4.0 * a14 * a23 +
                       4.0 * a14 * std::sqrt(s.p22 * s.p33) -
                       (s.p11 + s.p44) * (s.p22 + s.p33));
            k = k1;
            break;
        case Region::R2:
            r = 2.0 * (n14 - n23 + s.p22 * s.p33 - s.p11 * s.p44 + 4.0 * a14 * a23 +
                       4.0 * a23 * std::sqrt(s.p11 * s.p44) -
                       (s.p11 + s.p44) * (s.p22 + s.p33));
            k = k2;
            break;
        case Region::R3:
            r = 2.0 * n14 + 6.0 * n23 - 4.0 * s.p22 * s.p33 +
                8.0 * a14 * std::sqrt(s.p22 * s.p33) - diag_sq;
            k = k1;
            break;
        case Region::R4:
            r = 2.0 * n23 + 6.0 * n14 - 4.0 * s.p11 * s.p44 +
                8.0 * a23 * std::sqrt(s.p11 * s.p44) - diag_sq;
            k = k2;
            break;
    }
    // The closed forms take C = 2K; a negative K means the concurrence
    // clamps to zero and the remainder picks up the dropped 4K^2.
    if (k < 0.0) r += 4.0 * k * k;
    return r;
}

CPBTriplet cpb_triplet(const XState& s) {
    CPBTriplet t;
    t.K1 = std::abs(s.c14) - std::sqrt(s.p22 * s.p33);
    t.K2 = std::abs(s.c23) - std::sqrt(s.p11 * s.p44);
    t.C = concurrence_x(s);
    t.P = purity_x(s);
    const BellMax bm = bell_max_x(s);
    t.B = bm.B;
    t.branch = bm.branch;
    t.u1 = bm.u1;
    t.u2 = bm.u2;
    t.u3 = bm.u3;
    t.B1 = bm.B1;
    t.B2 = bm.B2;
    t.region = classify_region(s);
    t.R = remainder_x(s);
    const double residual = std::abs(t.B * t.B / 4.0 - t.P - t.C * t.C - t.R);
    if (residual > 1e-6)
        throw IdentityViolationError("cpb_triplet: B^2/4 - P - C^2 - R residual too large");
    return t;
}

CPBTriplet cpb_triplet(const DensityMatrix& rho, double x_tol) {
    return cpb_triplet(validate_x_state(rho, x_tol));
}

MeasurePair convert_measures(double concurrence, double purity) {
    constexpr double kSlack = 1e-9;
    if (!(concurrence >= -kSlack && concurrence <= 1.0 + kSlack))
        throw RangeError("convert_measures: concurrence outside [0, 1]");
    if (!(purity >= 0.25 - kSlack && purity <= 1.0 + kSlack))
        throw RangeError("convert_measures: purity outside [1/4, 1]");
    return {concurrence * concurrence, (4.0 / 3.0) * (1.0 - purity)};
}

} // namespace cpb
