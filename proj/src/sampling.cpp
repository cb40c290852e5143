#include "cpb/sampling.hpp"

#include <cmath>

namespace cpb {

double XStateSampler::uniform() {
    return (rng_() >> 11) * 0x1.0p-53;
}

double XStateSampler::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

XState XStateSampler::random_x_state() {
    // Exponential spacings normalized to the simplex.
    double e[4];
    double sum = 0.0;
    for (double& x : e) {
        x = -std::log(1.0 - uniform());
        sum += x;
    }
    XState s;
    s.p11 = e[0] / sum;
    s.p22 = e[1] / sum;
    s.p33 = e[2] / sum;
    s.p44 = e[3] / sum;
    const double m14 = uniform() * std::sqrt(s.p11 * s.p44);
    const double m23 = uniform() * std::sqrt(s.p22 * s.p33);
    const double ph14 = 2.0 * M_PI * uniform();
    const double ph23 = 2.0 * M_PI * uniform();
    s.c14 = Complex(m14 * std::cos(ph14), m14 * std::sin(ph14));
    s.c23 = Complex(m23 * std::cos(ph23), m23 * std::sin(ph23));
    return s;
}

XState XStateSampler::random_pure_x_state() {
    const double theta = uniform(0.0, M_PI / 2.0);
    const double phi = 2.0 * M_PI * uniform();
    const double a = std::cos(theta);
    const double b = std::sin(theta);
    const Complex coh = a * b * Complex(std::cos(phi), std::sin(phi));
    XState s;
    if (uniform() < 0.5) {
        s.p11 = a * a;
        s.p44 = b * b;
        s.c14 = coh;
    } else {
        s.p22 = a * a;
        s.p33 = b * b;
        s.c23 = coh;
    }
    return s;
}

ComplexMatrix XStateSampler::random_hermitian_unit_trace(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) {
        m(i, i) = uniform(-1.0, 1.0);
        for (int j = i + 1; j < dim; ++j) {
            const Complex v(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    const double tr = m.trace().real();
    const double shift = (1.0 - tr) / dim;
    for (int i = 0; i < dim; ++i) m(i, i) += shift;
    return m;
}

ComplexMatrix XStateSampler::random_unitary2() {
    // U = [[a, b], [-conj(b), conj(a)]] * phase, |a|^2 + |b|^2 = 1.
    const double theta = std::asin(std::sqrt(uniform()));
    const double alpha = 2.0 * M_PI * uniform();
    const double beta = 2.0 * M_PI * uniform();
    const double gamma = 2.0 * M_PI * uniform();
    const Complex a = std::cos(theta) * Complex(std::cos(alpha), std::sin(alpha));
    const Complex b = std::sin(theta) * Complex(std::cos(beta), std::sin(beta));
    const Complex phase(std::cos(gamma), std::sin(gamma));
    ComplexMatrix u(2);
    u(0, 0) = phase * a;
    u(0, 1) = phase * b;
    u(1, 0) = -phase * std::conj(b);
    u(1, 1) = phase * std::conj(a);
    return u;
}

} // namespace cpb
