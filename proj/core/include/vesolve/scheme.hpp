#pragma once

// Time-incremental minimization schemes (Energetic, BV-approximating and
// Visco-Energetic) on uniform partitions, and tau-refinement studies.

#include <optional>
#include <string>
#include <vector>

#include "vesolve/reduced.hpp"
#include "vesolve/trajectory.hpp"

namespace vesolve {

enum class SchemeKind { energetic, bv, visco_energetic };

std::string to_string(SchemeKind k);
SchemeKind parse_scheme_kind(const std::string& s);

struct SchemeConfig {
    SchemeKind scheme = SchemeKind::visco_energetic;
    /// Viscosity of the BV scheme; the step penalty is (eps / 2 tau) |z - z_prev|^2.
    double epsilon = 0.0;
    /// Correction of the VE scheme.
    CorrectionSpec correction;
    double tau = 1e-2;
    MinimizerConfig minimizer;
    Vec initial_z;
    /// Horizon; nullopt uses the problem horizon.
    std::optional<double> horizon;
};

std::vector<std::string> validate(const SchemeConfig& cfg);

/// The correction actually used by the step functional of a scheme.
CorrectionSpec scheme_correction(const SchemeConfig& cfg);

/// Problem carrying the scheme correction, as used for stability checks.
RisProblem scheme_problem(const RisProblem& problem, const SchemeConfig& cfg);

/// Node times 0 = t^0 < ... < t^N = T with N = ceil(T / tau).
std::vector<double> time_grid(double horizon, double tau);

DiscreteTrajectory solve_incremental(const RisProblem& problem, const SchemeConfig& cfg);

struct RefinementRun {
    double tau = 0.0;
    std::vector<double> jump_times;
    double balance_residual = 0.0;
};

struct ConvergenceReport {
    std::vector<RefinementRun> runs;
    /// sup_t |z_k(t) - z_{k+1}(t)| over the probe grid, per consecutive pair.
    std::vector<double> sup_differences;
    /// False when the differences stop decreasing, e.g. when the refinement
    /// oscillates between several limits.
    bool cauchy = false;
    std::vector<std::string> notes;
};

/// Energy balance defect |E(T) + sum d + sum delta - E(0) - int power| of a
/// discrete trajectory, using midpoint quadrature of the power along frozen
/// states.
double discrete_balance_residual(const RisProblem& problem, const DiscreteTrajectory& traj);

ConvergenceReport refine_study(const RisProblem& problem, const SchemeConfig& cfg,
                               const std::vector<double>& tau_list, std::size_t probes = 512);

} // namespace vesolve
