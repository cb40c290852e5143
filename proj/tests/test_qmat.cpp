#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cpb/qmat.hpp"
#include "cpb/sampling.hpp"

using namespace cpb;

namespace {

ComplexMatrix random_small(XStateSampler& rng, int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return m;
}

ComplexMatrix random_density(XStateSampler& rng, int dim) {
    ComplexMatrix h = random_small(rng, dim);
    ComplexMatrix rho = h * h.adjoint();
    rho *= Complex(1.0 / rho.trace().real(), 0.0);
    return rho;
}

} // namespace

TEST_CASE("kron identity and projector cases") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK((kron(i2, i2) - ComplexMatrix::identity(4)).max_abs() == 0.0);

    ComplexMatrix p(2);
    p(0, 0) = 1.0;
    const ComplexMatrix p4 = kron(p, p);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(p4(i, j) == ((i == 0 && j == 0) ? Complex(1.0) : Complex(0.0)));
}

TEST_CASE("raising operator on qubit A maps |01> to |11>") {
    // Basis {|11>,|10>,|01>,|00>}; |01> is index 2.
    ComplexMatrix sp(2);
    sp(0, 1) = 1.0;
    const ComplexMatrix lifted = kron(sp, ComplexMatrix::identity(2));
    CHECK(lifted(0, 2) == Complex(1.0));
    CHECK(lifted(1, 3) == Complex(1.0));
    double others = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!((i == 0 && j == 2) || (i == 1 && j == 3))) others += std::abs(lifted(i, j));
    CHECK(others == 0.0);
}

TEST_CASE("kron is associative and bilinear") {
    XStateSampler rng(11);
    for (int it = 0; it < 50; ++it) {
        const ComplexMatrix a = random_small(rng, 2);
        const ComplexMatrix b = random_small(rng, 3);
        const ComplexMatrix c = random_small(rng, 2);
        CHECK((kron(kron(a, b), c) - kron(a, kron(b, c))).max_abs() <= 1e-14);
        CHECK((kron(a, b + b) - (kron(a, b) + kron(a, b))).max_abs() <= 1e-14);
        const Complex s(rng.uniform(-2, 2), rng.uniform(-2, 2));
        CHECK((kron(s * a, b) - s * kron(a, b)).max_abs() <= 1e-13);
    }
}

TEST_CASE("partial trace of a product state returns the qubit factor") {
    XStateSampler rng(12);
    for (int it = 0; it < 25; ++it) {
        const ComplexMatrix rq = random_density(rng, 4);
        const ComplexMatrix rf = random_density(rng, 3);
        CHECK((partial_trace_field(kron(rq, rf), 4, 3) - rq).max_abs() <= 1e-13);
    }
    const ComplexMatrix mixed =
        kron(Complex(0.25) * ComplexMatrix::identity(4), Complex(1.0 / 3.0) * ComplexMatrix::identity(3));
    CHECK((partial_trace_field(mixed, 4, 3) - Complex(0.25) * ComplexMatrix::identity(4)).max_abs() <=
          1e-16);
}

TEST_CASE("partial trace kills coherences between distinct field levels") {
    // (|11,0> + |00,2>)/sqrt(2) on the 12-dimensional space.
    ComplexMatrix rho(12);
    const int i110 = 0 * 3 + 0, i002 = 3 * 3 + 2;
    rho(i110, i110) = 0.5;
    rho(i002, i002) = 0.5;
    rho(i110, i002) = 0.5;
    rho(i002, i110) = 0.5;
    const ComplexMatrix red = partial_trace_field(rho, 4, 3);
    CHECK(red(0, 0) == Complex(0.5));
    CHECK(red(3, 3) == Complex(0.5));
    CHECK(std::abs(red(0, 3)) == 0.0);
    CHECK(std::abs(red.trace() - Complex(1.0)) <= 1e-16);
}

TEST_CASE("partial trace rejects mismatched dimensions") {
    CHECK_THROWS_AS(partial_trace_field(ComplexMatrix(12), 4, 2), DimensionError);
}

TEST_CASE("partial trace of a density matrix yields a valid density matrix") {
    ComplexMatrix rho(12);
    const int i110 = 0, i002 = 11;
    rho(i110, i110) = 0.5;
    rho(i002, i002) = 0.5;
    rho(i110, i002) = 0.5;
    rho(i002, i110) = 0.5;
    const DensityMatrix red = partial_trace_field(DensityMatrix{rho}, 4, 3);
    CHECK(red.trace_error() <= 1e-12);
    CHECK(red.hermiticity_error() <= 1e-12);
    CHECK(red.min_eigenvalue() >= -1e-12);
}

TEST_CASE("eigvals_sym3 on diagonal and zero matrices") {
    const auto d = eigvals_sym3({{{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}});
    CHECK(d[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(d[2] == doctest::Approx(1.0).epsilon(1e-14));
    const auto z = eigvals_sym3({{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}});
    CHECK(z[0] == 0.0);
    CHECK(z[2] == 0.0);
}

TEST_CASE("eigvals_sym3 recovers a planted spectrum") {
    XStateSampler rng(13);
    for (int it = 0; it < 300; ++it) {
        double d[3] = {rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
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
            for (int j = i; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += q[k][i] * d[k] * q[k][j];
                m[i][j] = s;
                m[j][i] = s;
            }
        const auto eig = eigvals_sym3(m);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(eig[k] - d[k]) <= 1e-10);

        const double tr = m[0][0] + m[1][1] + m[2][2];
        CHECK(std::abs(eig[0] + eig[1] + eig[2] - tr) <= 1e-10);
        const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        CHECK(std::abs(eig[0] * eig[1] * eig[2] - det) <= 1e-10);
    }
}

TEST_CASE("eigvals_sym3 rejects asymmetric input") {
    CHECK_THROWS_AS(eigvals_sym3({{{1, 2, 0}, {0, 1, 0}, {0, 0, 1}}}), DimensionError);
}

TEST_CASE("density matrix validation") {
    ComplexMatrix good = Complex(0.25) * ComplexMatrix::identity(4);
    CHECK_NOTHROW(DensityMatrix{good});

    ComplexMatrix bad_trace = Complex(0.3) * ComplexMatrix::identity(4);
    CHECK_THROWS_AS(DensityMatrix{bad_trace}, NotADensityMatrixError);

    ComplexMatrix not_herm = Complex(0.25) * ComplexMatrix::identity(4);
    not_herm(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{not_herm}, NotADensityMatrixError);

    // Negative eigenvalue beyond tolerance: an X matrix with an oversized coherence.
    ComplexMatrix neg(4);
    neg(0, 0) = 0.5;
    neg(3, 3) = 0.5;
    neg(0, 3) = 0.6;
    neg(3, 0) = 0.6;
    CHECK_THROWS_AS(DensityMatrix{neg}, NotADensityMatrixError);

    // Non-X negative matrix exercises the power-iteration path.
    ComplexMatrix neg2(4);
    neg2(0, 0) = 0.6;
    neg2(1, 1) = 0.6;
    neg2(0, 1) = 0.7;
    neg2(1, 0) = 0.7;
    neg2(2, 2) = -0.1;
    neg2(3, 3) = -0.1;
    CHECK_THROWS_AS(DensityMatrix{neg2}, NotADensityMatrixError);
}

TEST_CASE("min eigenvalue estimators agree on X matrices") {
    XStateSampler rng(14);
    for (int it = 0; it < 50; ++it) {
        const XState s = rng.random_x_state();
        ComplexMatrix m(4);
        m(0, 0) = s.p11;
        m(1, 1) = s.p22;
        m(2, 2) = s.p33;
        m(3, 3) = s.p44;
        m(0, 3) = s.c14;
        m(3, 0) = std::conj(s.c14);
        m(1, 2) = s.c23;
        m(2, 1) = std::conj(s.c23);
        const double exact = x_pattern_min_eigenvalue(m);
        const double iterative = min_eigenvalue_hermitian(m);
        CHECK(std::abs(exact - iterative) <= 1e-9);
    }
}
