#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpb/dynamics.hpp"
#include "cpb/quantifiers.hpp"

namespace cpb {

struct TrajectoryRecord {
    double t = 0.0;
    CPBTriplet triplet;
    double rho_pp = 0.0;
    double singlet_pop = 0.0;
    double trace_err = 0.0;
};

/// Maximal interval with B above the threshold. Crossing times are linearly
/// interpolated between adjacent samples; intervals clipped by the grid ends
/// are flagged open.
struct Branch {
    int index = 0; // 1-based ordinal
    double t_start = 0.0;
    double t_end = 0.0;
    double b_peak = 0.0;
    bool open_start = false;
    bool open_end = false;
};

enum class Scenario { PsiLossy, PlusLossy, PsiPerfect, Custom };

struct ScenarioParams {
    SimParams sim;                     // lossy scenarios
    PerfectCavityParams cavity;        // PsiPerfect
    std::optional<XState> initial;     // Custom
};

/// Uniform grid of n points on [0, t_max], endpoints included.
std::vector<double> uniform_grid(double t_max, int n);

XState bell_psi_state();   // (|00>+|11>)/sqrt(2)
XState bell_plus_state();  // (|10>+|01>)/sqrt(2)

/// One record per grid point. PsiLossy/PlusLossy/Custom integrate the master
/// equation; PsiPerfect evaluates the lossless closed form.
std::vector<TrajectoryRecord> sample_trajectory(Scenario scenario, const ScenarioParams& params,
                                                const std::vector<double>& t_grid);

std::vector<Branch> detect_branches(const std::vector<TrajectoryRecord>& records,
                                    double threshold = 2.0);

struct ClosedRelationReport {
    double max_residual = 0.0;
    bool holds = false;
    size_t n_samples = 0;
};

/// Residual of B^2/4 - P - C^2 = -(1 - C)^2 over the records.
ClosedRelationReport check_closed_relation(const std::vector<TrajectoryRecord>& records,
                                           double tol);

/// Ordered pairs (i, j) with C_i > C_j + eps and B_i < B_j - eps
/// (entanglement-ordering inversions), capped at the first 1000 pairs.
std::vector<std::pair<size_t, size_t>> detect_ordering_inversions(
    const std::vector<TrajectoryRecord>& records, double eps = 1e-6, size_t cap = 1000);

/// CSV columns, in order:
/// t,C,P,B,R,region,B1,B2,u1,u2,u3,rho_pp,singlet_pop,trace_err
/// Values are written with 17 significant digits so round trips are exact.
void export_csv(const std::vector<TrajectoryRecord>& records, const std::string& path);
void export_json(const std::vector<TrajectoryRecord>& records, const std::string& path);

std::vector<TrajectoryRecord> import_csv(const std::string& path);
std::vector<TrajectoryRecord> import_json(const std::string& path);

} // namespace cpb
