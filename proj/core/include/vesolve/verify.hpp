#pragma once

// Certificates for discrete trajectories: minimality, corrected stability,
// energy balance with the augmented variation and jump conditions; plus
// VE = E detection, the plasticity yield check and the adhesive-to-brittle
// limit study.

#include <string>
#include <vector>

#include "vesolve/jump.hpp"
#include "vesolve/models.hpp"
#include "vesolve/scheme.hpp"

namespace vesolve {

struct ToleranceConfig {
    double minimality = 1e-6;
    double stability = 1e-3;
    double balance = 5e-2;
    double jump = 1e-3;
    /// Uniform probe times in addition to all scheme nodes.
    std::size_t probes = 512;
    /// Skips the stability scan (the verdict then reports residual 0).
    bool check_stability = true;
    JumpDetectionConfig detection;
    JumpSearchConfig search;
};

struct JumpResidual {
    double t = 0.0;
    Vec z_minus;
    Vec z_plus;
    double energy_drop = 0.0;
    double cost_upper = 0.0;
    double cost_lower = 0.0;
    double gap = 0.0;
    double dp_gap = 0.0;
    bool grid_supported = false;
    /// |energy drop - c|.
    double residual = 0.0;
    /// Residual of the energy drop against d alone.
    double energetic_residual = 0.0;
};

struct Verdict {
    double residual = 0.0;
    double tolerance = 0.0;
    [[nodiscard]] bool pass() const { return residual <= tolerance; }
};

struct Certificate {
    Verdict minimality;
    Verdict stability;
    Verdict balance;
    Verdict jumps;
    std::vector<JumpResidual> jump_residuals;
    /// Probe time of the largest stability residual.
    double worst_stability_time = 0.0;
    double var_d = 0.0;
    double var_augmented = 0.0;
    double work = 0.0;
    bool refined_search = false;

    [[nodiscard]] bool pass() const {
        return minimality.pass() && stability.pass() && balance.pass() && jumps.pass();
    }
};

/// Probe times: the uniform grid of cfg.probes + 1 points and all nodes.
std::vector<double> probe_times(const Trajectory& traj, std::size_t probes);

/// Probe times not closer than one step to a detected jump.
std::vector<double> stable_probe_times(const Trajectory& traj, std::size_t probes);

/// Midpoint quadrature of the power along the interpolant, frozen at the
/// state that starts each step.
double power_work(const RisProblem& problem, const Trajectory& traj);

/// Certificate against the visco-energetic conditions (correction from the problem).
Certificate verify_VE(const RisProblem& problem, const Trajectory& traj,
                      const ToleranceConfig& tol = {});

/// Certificate against the energetic conditions: no correction in the
/// stability test and plain Var_d in the balance.
Certificate verify_E(const RisProblem& problem, const Trajectory& traj,
                     const ToleranceConfig& tol = {});

struct CoincidenceReport {
    bool equal = false;
    double global_stability_residual = 0.0;
    double worst_time = 0.0;
    double max_incremental_cost = 0.0;
    /// E(t,z-) - E(t,z+) - d(z-,z+) per jump.
    std::vector<double> energetic_jump_residuals;
};

/// True iff the trajectory is globally stable at all probes and every jump
/// has zero incremental cost, both within rho.
CoincidenceReport ve_equals_e(const RisProblem& problem, const Trajectory& traj, double rho,
                              const ToleranceConfig& tol = {});

struct StressReport {
    bool pass = false;
    double max_stress = 0.0;
    double worst_time = 0.0;
    /// Probes where |sigma| <= sigma_y + tol disagrees with R = 0.
    std::size_t equivalence_mismatches = 0;
};

StressReport plasticity_stress_check(const Plasticity0dSpec& spec, const Trajectory& traj,
                                     double tol, std::size_t probes = 512);

struct GammaRow {
    double k = 0.0;
    double sup_state_distance = 0.0;
    double sup_energy_difference = 0.0;
    double final_state_distance = 0.0;
    double constraint_violation = 0.0;
    /// min over sampled (t, z, z') of R_k(t, z_k) - R_brittle(t, z) probed with
    /// the recovery competitor z'_k = z_k z' / z.
    double liminf_margin = 0.0;
};

struct GammaReport {
    std::vector<GammaRow> rows;
    bool violation_monotone = false;
    std::vector<double> energy_at_zero;
    double brittle_energy_at_zero = 0.0;
};

/// VE runs of the adhesive model for each k and of the brittle model.
GammaReport gamma_limit_study(const Delamination0dSpec& spec, const std::vector<double>& k_list,
                              const SchemeConfig& scheme, std::size_t probes = 512,
                              unsigned threads = 1);

} // namespace vesolve
