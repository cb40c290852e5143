#pragma once

#include <array>
#include <complex>
#include <vector>

#include "cpb/errors.hpp"

namespace cpb {

using Complex = std::complex<double>;

/// Dense complex square matrix for the small fixed dimensions used here
/// (two qubits, qubits + pseudomode). Row-major storage, value semantics.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double max_abs() const;
    bool is_finite() const;

    /// max |a_ij - conj(a_ji)|
    double hermiticity_error() const;

    /// a += s * b (shape-checked)
    void add_scaled(Complex s, const ComplexMatrix& b);

private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

/// out = a * b without allocation; out must not alias a or b.
void multiply_into(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out);

/// Tensor product; the left factor is the slow (leftmost) index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace over the field (fast/rightmost) index: dim = qubit_dim * field_dim in,
/// qubit_dim out. Trace is preserved.
ComplexMatrix partial_trace_field(const ComplexMatrix& rho_full, int qubit_dim, int field_dim);
class DensityMatrix;
DensityMatrix partial_trace_field(const DensityMatrix& rho_full, int qubit_dim, int field_dim);

using Sym3 = std::array<std::array<double, 3>, 3>;

/// Closed-form eigenvalues of a real symmetric 3x3 matrix, sorted descending.
/// Throws DimensionError if the input is not symmetric within 1e-12 of its scale.
std::array<double, 3> eigvals_sym3(const Sym3& m);

/// Lower estimate of the minimum eigenvalue of a Hermitian matrix via a bounded
/// power iteration on (cI - m), c a Gershgorin upper bound on the spectrum.
double min_eigenvalue_hermitian(const ComplexMatrix& m, int max_iters = 500);

struct DensityTolerances {
    double hermiticity = 1e-12;
    double trace = 1e-10;
    double positivity = -1e-8; // minimum admissible eigenvalue
};

/// A ComplexMatrix validated as a density matrix (Hermitian, unit trace,
/// positive within tolerance). Positivity of 4x4 X-patterned matrices is
/// checked exactly through the two 2x2 blocks; anything else falls back to
/// the bounded power iteration.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m, DensityTolerances tol = {});

    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return m_.dim(); }
    const Complex& operator()(int i, int j) const { return m_(i, j); }

    double trace_error() const { return trace_error_; }
    double hermiticity_error() const { return herm_error_; }
    double min_eigenvalue() const { return min_eig_; }

    /// Tr(rho^2)
    double purity() const;

private:
    ComplexMatrix m_;
    double trace_error_ = 0.0;
    double herm_error_ = 0.0;
    double min_eig_ = 0.0;
};

/// Exact minimum eigenvalue of a 4x4 X-patterned Hermitian matrix (the two
/// 2x2 blocks are diagonalized in closed form). Off-X entries are ignored.
double x_pattern_min_eigenvalue(const ComplexMatrix& m);

/// Largest |entry| outside the X pattern (diagonal + anti-diagonal) of a 4x4
/// matrix, including imaginary parts of the diagonal.
double off_x_magnitude(const ComplexMatrix& m);

} // namespace cpb
