#include "cpb/qmat.hpp"

#include <algorithm>
#include <cmath>

namespace cpb {

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw DimensionError("matrix add: dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw DimensionError("matrix subtract: dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
}

void ComplexMatrix::add_scaled(Complex s, const ComplexMatrix& b) {
    if (dim_ != b.dim_) throw DimensionError("add_scaled: dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += s * b.a_[k];
}

void multiply_into(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out) {
    const int n = a.dim();
    if (b.dim() != n) throw DimensionError("multiply: dimension mismatch");
    if (out.dim() != n) out = ComplexMatrix(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out(i, j) = 0.0;
        for (int k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0)) continue;
            for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.dim());
    multiply_into(a, b, out);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::is_finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

DensityMatrix partial_trace_field(const DensityMatrix& rho_full, int qubit_dim, int field_dim) {
    return DensityMatrix(partial_trace_field(rho_full.matrix(), qubit_dim, field_dim));
}

double ComplexMatrix::hermiticity_error() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.is_finite() || !b.is_finite()) throw RangeError("kron: non-finite input");
    const int na = a.dim();
    const int nb = b.dim();
    ComplexMatrix out(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0)) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix partial_trace_field(const ComplexMatrix& rho_full, int qubit_dim, int field_dim) {
    if (rho_full.dim() != qubit_dim * field_dim)
        throw DimensionError("partial_trace_field: dim != qubit_dim * field_dim");
    ComplexMatrix out(qubit_dim);
    for (int i = 0; i < qubit_dim; ++i)
        for (int j = 0; j < qubit_dim; ++j) {
            Complex s = 0.0;
            for (int n = 0; n < field_dim; ++n) s += rho_full(i * field_dim + n, j * field_dim + n);
            out(i, j) = s;
        }
    return out;
}

std::array<double, 3> eigvals_sym3(const Sym3& m) {
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(m[i][j]));
    const double asym = std::max({std::abs(m[0][1] - m[1][0]), std::abs(m[0][2] - m[2][0]),
                                  std::abs(m[1][2] - m[2][1])});
    if (asym > 1e-12 * std::max(scale, 1.0))
        throw DimensionError("eigvals_sym3: input not symmetric");

    const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    std::array<double, 3> eig;
    if (p1 <= 1e-30 * std::max(scale * scale, 1e-30)) {
        eig = {m[0][0], m[1][1], m[2][2]};
    } else {
        // Trigonometric solution of the characteristic cubic.
        const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
        const double d0 = m[0][0] - q, d1 = m[1][1] - q, d2 = m[2][2] - q;
        const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
        const double p = std::sqrt(p2 / 6.0);
        Sym3 b{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / p;
        const double detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                            b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                            b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
        const double r = std::clamp(detb / 2.0, -1.0, 1.0);
        const double phi = std::acos(r) / 3.0;
        eig[0] = q + 2.0 * p * std::cos(phi);
        eig[2] = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
        eig[1] = 3.0 * q - eig[0] - eig[2];
    }
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

double min_eigenvalue_hermitian(const ComplexMatrix& m, int max_iters) {
    const int n = m.dim();
    if (n == 1) return m(0, 0).real();
    // Gershgorin upper bound on the spectrum.
    double c = -1e300;
    for (int i = 0; i < n; ++i) {
        double row = m(i, i).real();
        for (int j = 0; j < n; ++j)
            if (j != i) row += std::abs(m(i, j));
        c = std::max(c, row);
    }
    c += 1.0; // keep cI - m strictly positive definite at the top end

    // Power method with repeated squaring on M = cI - m: M^(2^k) projects
    // onto the top eigenspace even when the gap is tiny, so the Rayleigh
    // quotient below is accurate to rounding. lambda_min(m) = c - lambda_max(M).
    ComplexMatrix power(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) power(i, j) = (i == j ? c : 0.0) - m(i, j);
    const ComplexMatrix shifted = power;
    ComplexMatrix next(n);
    const int squarings = std::min(60, max_iters);
    for (int it = 0; it < squarings; ++it) {
        power *= Complex(1.0 / power.max_abs(), 0.0);
        multiply_into(power, power, next);
        std::swap(power, next);
    }

    std::vector<Complex> v(n), w(n);
    for (int i = 0; i < n; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < n; ++j) s += power(i, j) * Complex(1.0 / (j + 1.0), 0.3 / (j + 2.0));
        v[i] = s;
    }
    double vn = 0.0;
    for (const auto& x : v) vn += std::norm(x);
    if (vn == 0.0)
        for (int i = 0; i < n; ++i) v[i] = 1.0; // start vector hit a null direction

    Complex vmv = 0.0;
    double vv = 0.0;
    for (int i = 0; i < n; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < n; ++j) s += shifted(i, j) * v[j];
        w[i] = s;
        vmv += std::conj(v[i]) * s;
        vv += std::norm(v[i]);
    }
    return c - vmv.real() / vv;
}

double x_pattern_min_eigenvalue(const ComplexMatrix& m) {
    if (m.dim() != 4) throw DimensionError("x_pattern_min_eigenvalue: expects 4x4");
    auto block_min = [](double a, double d, Complex o) {
        const double mid = 0.5 * (a + d);
        const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(o));
        return mid - rad;
    };
    const double outer = block_min(m(0, 0).real(), m(3, 3).real(), m(0, 3));
    const double inner = block_min(m(1, 1).real(), m(2, 2).real(), m(1, 2));
    return std::min(outer, inner);
}

double off_x_magnitude(const ComplexMatrix& m) {
    if (m.dim() != 4) throw DimensionError("off_x_magnitude: expects 4x4");
    double leak = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) {
                leak = std::max(leak, std::abs(m(i, j).imag()));
            } else if (i + j != 3) {
                leak = std::max(leak, std::abs(m(i, j)));
            }
        }
    return leak;
}

DensityMatrix::DensityMatrix(ComplexMatrix m, DensityTolerances tol) : m_(std::move(m)) {
    if (m_.dim() < 1) throw DimensionError("density matrix: empty");
    if (!m_.is_finite()) throw NotADensityMatrixError("density matrix: non-finite entries");
    herm_error_ = m_.hermiticity_error();
    if (herm_error_ > tol.hermiticity)
        throw NotADensityMatrixError("density matrix: not Hermitian within tolerance");
    trace_error_ = std::abs(m_.trace() - Complex(1.0));
    if (trace_error_ > tol.trace)
        throw NotADensityMatrixError("density matrix: trace differs from 1");
    if (m_.dim() == 4 && off_x_magnitude(m_) <= 1e-8) {
        min_eig_ = x_pattern_min_eigenvalue(m_);
    } else {
        min_eig_ = min_eigenvalue_hermitian(m_);
    }
    if (min_eig_ < tol.positivity)
        throw NotADensityMatrixError("density matrix: negative eigenvalue beyond tolerance");
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    double s = 0.0;
    for (int i = 0; i < m_.dim(); ++i)
        for (int j = 0; j < m_.dim(); ++j) s += std::norm(m_(i, j));
    return s;
}

} // namespace cpb
