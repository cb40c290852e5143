#include "cpb/mems.hpp"

#include <algorithm>
#include <cmath>

namespace cpb {

double mems_g(double gamma) {
    if (gamma < 0.0 || gamma > 1.0) throw RangeError("mems_g: gamma outside [0, 1]");
    return (gamma >= 2.0 / 3.0) ? 0.5 * gamma : 1.0 / 3.0;
}

XState mems_state(const MemsParam& g) {
    const double gg = mems_g(g.gamma);
    XState s;
    s.p11 = gg;
    s.p44 = gg;
    s.p33 = 1.0 - 2.0 * gg;
    s.p22 = 0.0;
    s.c14 = 0.5 * g.gamma;
    s.c23 = 0.0;
    return s;
}

MemsCpb mems_cpb(const MemsParam& g) {
    const double gamma = g.gamma;
    if (gamma < 0.0 || gamma > 1.0) throw RangeError("mems_cpb: gamma outside [0, 1]");
    MemsCpb out;
    out.C = gamma;
    if (gamma < 2.0 / 3.0) {
        out.P = 1.0 / 3.0 + 0.5 * gamma * gamma;
        if (gamma <= 1.0 / 3.0) {
            out.B = 2.0 * std::sqrt(1.0 / 9.0 + gamma * gamma);
            out.R = -2.0 / 9.0 - 0.5 * gamma * gamma;
        } else {
            out.B = 2.0 * std::sqrt(2.0) * gamma;
            out.R = -1.0 / 3.0 + 0.5 * gamma * gamma;
        }
    } else {
        out.P = 1.0 - 2.0 * gamma + 2.0 * gamma * gamma;
        out.B = 2.0 * std::sqrt(2.0) * gamma;
        out.R = -(1.0 - gamma) * (1.0 - gamma);
    }
    // Same tie rule as the generic classifier: u2 = (4g-1)^2, u3 = gamma^2.
    const double u2root = std::abs(4.0 * mems_g(gamma) - 1.0);
    out.region = (u2root >= gamma) ? Region::R1 : Region::R3;
    return out;
}

double mems_boundary(double concurrence) {
    if (concurrence < 0.0 || concurrence > 1.0)
        throw RangeError("mems_boundary: concurrence outside [0, 1]");
    if (concurrence < 2.0 / 3.0) return 1.0 / 3.0 + 0.5 * concurrence * concurrence;
    return 1.0 - 2.0 * concurrence + 2.0 * concurrence * concurrence;
}

MemsTrajectoryReport is_mems_trajectory(const std::vector<XState>& states, double tol) {
    MemsTrajectoryReport report;
    report.samples.reserve(states.size());
    for (const XState& s : states) {
        // Relabel |0> <-> |1> on one qubit: indices 1<->2 and 3<->4.
        const double p11 = s.p22, p22 = s.p11, p33 = s.p44, p44 = s.p33;
        const double a14 = std::abs(s.c23), a23 = std::abs(s.c14);

        MemsSampleFit fit;
        fit.gamma_est = std::min(1.0, 2.0 * a14);
        const double gg = mems_g(fit.gamma_est);
        double dev = 0.0;
        dev = std::max(dev, std::abs(p11 - gg));
        dev = std::max(dev, std::abs(p44 - gg));
        dev = std::max(dev, std::abs(p33 - (1.0 - 2.0 * gg)));
        dev = std::max(dev, std::abs(p22));
        dev = std::max(dev, a23);
        fit.max_deviation = dev;
        fit.matches = dev <= tol;
        fit.counted = fit.gamma_est >= 2.0 / 3.0 - tol;
        if (fit.counted) {
            ++report.counted;
            if (fit.matches) ++report.matched;
        }
        report.samples.push_back(fit);
    }
    report.verdict = report.counted > 0 && report.counted == report.matched;
    return report;
}

} // namespace cpb
