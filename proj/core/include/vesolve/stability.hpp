#pragma once

// Residual stability R(t,z) = I(t,z) - Y(t,z), the minimal set M(t,z),
// Q-stability, the correction admissibility probe and exponent compatibility
// for the damage correction.

#include <limits>
#include <string>
#include <vector>

#include "vesolve/reduced.hpp"

namespace vesolve {

struct StabilityConfig {
    MinimizerConfig minimizer;
    /// Residuals in [-clamp_tol, 0) are reported as 0.
    double clamp_tol = 1e-9;
};

struct StabilityReport {
    double residual = 0.0;
    /// Best competitor z' (equal to z when z is stable).
    Vec witness;
    /// Y(t,z) = inf_{z'} I(t,z') + d(z,z') + delta(z,z').
    double y_value = 0.0;
    double reduced_energy = 0.0;
    bool certified_global = false;
    double minimizer_tolerance = 0.0;
};

/// Uses the correction stored in the problem.
StabilityReport residual_stability(const RisProblem& problem, double t, CSpan z,
                                   const StabilityConfig& cfg = {});

/// Minimizers of I(t,.) + d(z,.) + delta(z,.) within the near-optimal band.
std::vector<Vec> minimal_set(const RisProblem& problem, double t, CSpan z,
                             const StabilityConfig& cfg = {});

/// R(t,z) <= Q and u minimizes E(t,.,z), both up to tol.
bool is_Q_stable(const RisProblem& problem, double t, const State& s, double Q,
                 const StabilityConfig& cfg = {}, double tol = 1e-9);

struct RatioEntry {
    double scale = 0.0;
    double ratio = 0.0;
    bool skipped = false;
};

struct RatioReport {
    std::vector<RatioEntry> entries;
    bool decreasing = false;
    bool pass = false;
};

/// delta(z, z + s*dir) / d(z, z + s*dir) along a ray. Entries with d = 0 or
/// d = inf are skipped. Passes when the ratio decreases and the last usable
/// ratio is below a tenth of the first.
RatioReport correction_ratio_check(const RisProblem& problem, CSpan z, CSpan direction,
                                   const std::vector<double>& scales);

struct ExponentReport {
    int dim = 0;
    double r = 0.0;
    double q = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
    bool theta_in_range = false;
    bool r_greater_d = false;
    /// (1 - theta) q > 1.
    bool interpolation_strong = false;
    double below_threshold = 0.0;
    /// r > q d / (q + d).
    bool compat_below = false;
    /// Bracket multiplying gamma in the compatibility inequality.
    double bracket = 0.0;
    /// Compatibility holds iff gamma > gamma_threshold (inf when bracket <= 0).
    double gamma_threshold = std::numeric_limits<double>::infinity();
    bool compatible_exps = false;
    /// Any of the three sufficient routes, given compat_below.
    bool sufficient = false;
};

/// Gagliardo-Nirenberg interpolation exponent and the compatibility tests
/// between gradient exponent r, correction exponent q and power gamma.
ExponentReport exponent_check(int d, double r, double q, double gamma);

std::string describe(const ExponentReport& report);

} // namespace vesolve
