#pragma once

// Rate-independent system: energy, dissipation quasi-distance, viscous
// correction and power over a finite-dimensional state (u, z).

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vesolve/ext_real.hpp"

namespace vesolve {

using Vec = std::vector<double>;
using CSpan = std::span<const double>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
    [[nodiscard]] double width() const { return hi - lo; }
};

struct State {
    Vec u;
    Vec z;
};

/// Nondecreasing scalar curve with h(0) = 0, used as delta = h(d).
struct HCurve {
    std::string name = "zero";
    std::function<double(double)> fn = [](double) { return 0.0; };

    double operator()(double r) const { return fn(r); }

    /// h(r) = coefficient * r^exponent.
    static HCurve power(double coefficient, double exponent);
};

enum class CorrectionKind { none, trivial_h, quadratic_mu, power_lq };

/// Distance entering the quadratic correction (mu/2) dtilde^2.
enum class DistanceSelector { euclidean, dissipation };

struct CorrectionSpec {
    CorrectionKind kind = CorrectionKind::none;
    HCurve h;
    double mu = 0.0;
    DistanceSelector tilde = DistanceSelector::euclidean;
    double q = 2.0;
    double gamma = 2.0;

    static CorrectionSpec none() { return {}; }
    static CorrectionSpec trivial_h(HCurve curve);
    static CorrectionSpec quadratic_mu(double mu, DistanceSelector tilde = DistanceSelector::euclidean);
    /// (1/q) ||z - z'||_{L^q}^gamma; gamma == q gives the plain L^q correction.
    static CorrectionSpec power_lq(double q, double gamma);

    [[nodiscard]] std::string describe() const;
};

/// Empty when the parameters are admissible; otherwise one message per violation.
std::vector<std::string> validate(const CorrectionSpec& spec);

/// Constants of |dE/dt| <= lambda_p (E + d(z_ref, z) + f_0 + c_p).
struct PowerControl {
    double lambda_p = 1.0;
    double c_p = 1.0;
    double f_0 = 0.0;
    Vec z_ref;
};

using EnergyFn = std::function<ExtReal(double t, CSpan u, CSpan z)>;
using PowerFn = std::function<double(double t, CSpan u, CSpan z)>;
using DistanceFn = std::function<ExtReal(CSpan from, CSpan to)>;
/// Closed-form u-elimination: returns min_u E(t,u,z) and writes the minimizer
/// into u_out when u_out is non-empty.
using ReducerFn = std::function<ExtReal(double t, CSpan z, std::span<double> u_out)>;
/// Closed-form incremental step for a given correction; nullopt when the
/// model has no closed form for that correction.
using StepSolverFn =
    std::function<std::optional<Vec>(double t, CSpan z_prev, const CorrectionSpec& corr)>;

/// The triple (X, E, d) plus the viscous correction delta. Treated as an
/// immutable value once built; copying is cheap (shared callables).
struct RisProblem {
    std::string name;
    std::size_t n_u = 0;
    std::size_t n_z = 1;
    double horizon = 1.0;
    std::vector<Interval> z_box;

    EnergyFn energy;
    PowerFn power;
    DistanceFn dissipation;
    CorrectionSpec correction;

    ReducerFn reducer;
    StepSolverFn step_solver;

    /// d(z, z') = +inf unless z' <= z componentwise.
    bool unidirectional = false;
    /// Cell measures for L^q norms; empty means unit weights.
    Vec weights;
    PowerControl power_control;
};

/// Copy of the problem with a different viscous correction.
RisProblem with_correction(RisProblem problem, CorrectionSpec correction);

[[nodiscard]] bool in_box(const RisProblem& problem, CSpan z);
void check_z_dim(const RisProblem& problem, CSpan z);
void check_state(const RisProblem& problem, const State& s);

ExtReal eval_energy(const RisProblem& problem, double t, const State& s);
ExtReal eval_energy(const RisProblem& problem, double t, CSpan u, CSpan z);
ExtReal eval_dissipation(const RisProblem& problem, CSpan z_from, CSpan z_to);
ExtReal eval_correction(const RisProblem& problem, CSpan z_from, CSpan z_to);
/// d + delta.
ExtReal eval_corrected_dissipation(const RisProblem& problem, CSpan z_from, CSpan z_to);
/// Analytic dE/dt; throws outside the energy domain.
double eval_power(const RisProblem& problem, double t, const State& s);

/// Weighted Euclidean distance using problem.weights.
double weighted_l2(const RisProblem& problem, CSpan a, CSpan b);
/// (sum w_i |a_i - b_i|^q)^(1/q).
double weighted_lq(const RisProblem& problem, CSpan a, CSpan b, double q);

/// sum_i w_i kappa_i |z'_i - z_i|.
DistanceFn symmetric_l1(Vec kappa, Vec weights = {});
/// sum_i w_i kappa_i (z_i - z'_i) when z' <= z componentwise, +inf otherwise.
DistanceFn unidirectional_l1(Vec kappa, Vec weights = {});

} // namespace vesolve
