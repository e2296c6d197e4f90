#pragma once

// Desk-scale model systems: a 1D toy with convex, double-well or flat
// landscape, a 1D damage bar, 0D perfect plasticity and a two-spring
// delamination model with adhesive or brittle interface.

#include <string>
#include <vector>

#include "vesolve/problem.hpp"

namespace vesolve {

enum class WellKind { convex, doublewell, flat };
/// tilted: W(z) - l(t) z. centered (convex only): a/2 (z - l(t)/a)^2.
enum class LoadingForm { tilted, centered };

struct Toy1dSpec {
    WellKind well = WellKind::convex;
    double a = 1.0;
    double b = 1.0;
    double w = 1.0;
    /// Constant value of a flat landscape.
    double level = 0.0;
    LoadingForm form = LoadingForm::tilted;
    /// l(t) = l0 + l1 t.
    double l0 = 0.0;
    double l1 = 2.0;
    double kappa = 1.0;
    Interval box{-4.0, 4.0};
    double horizon = 1.0;
    CorrectionSpec correction;
};

struct Damage1dSpec {
    std::size_t cells = 2;
    /// Per-cell undamaged stiffness; one entry is broadcast.
    Vec stiffness{1.0};
    double eta = 0.1;
    double r = 2.0;
    double gradient_weight = 0.1;
    /// Per-cell dissipation density; one entry is broadcast.
    Vec kappa{1.0};
    /// w_D(t) = wd0 + wd1 t at the right end, u = 0 at the left end.
    double wd0 = 0.0;
    double wd1 = 2.0;
    double horizon = 1.0;
    CorrectionSpec correction;
};

struct Plasticity0dSpec {
    double C = 1.0;
    double sigma_y = 1.0;
    /// eps(t) = eps0 + eps1 t + amp sin(omega t).
    double eps0 = 0.0;
    double eps1 = 1.0;
    double amp = 0.0;
    double omega = 0.0;
    double horizon = 2.0;
    Interval box{-4.0, 4.0};
    CorrectionSpec correction;
};

struct Delamination0dSpec {
    double k_minus = 1.0;
    double k_plus = 1.0;
    bool brittle = false;
    /// Adhesive penalty stiffness.
    double k = 64.0;
    double a0 = 1.0;
    double kappa = 0.5;
    /// Pulled end position l(t) = l0 + l1 t.
    double l0 = 0.0;
    double l1 = 4.0;
    double z_tol = 1e-12;
    double horizon = 1.0;
    CorrectionSpec correction = CorrectionSpec::trivial_h(HCurve::power(1.0, 2.0));
};

/// Empty when the parameters are valid.
std::vector<std::string> validate(const Toy1dSpec& spec);
std::vector<std::string> validate(const Damage1dSpec& spec);
std::vector<std::string> validate(const Plasticity0dSpec& spec);
std::vector<std::string> validate(const Delamination0dSpec& spec);

RisProblem make_toy1d(const Toy1dSpec& spec);
RisProblem make_damage1d(const Damage1dSpec& spec);
RisProblem make_plasticity0d(const Plasticity0dSpec& spec);
RisProblem make_delamination0d(const Delamination0dSpec& spec, bool brittle);

/// Loading l(t) of the toy model.
double toy_loading(const Toy1dSpec& spec, double t);
/// Largest slope W' on the unstable branch of the double well, attained at
/// z = -w / sqrt(3).
double doublewell_max_slope(const Toy1dSpec& spec);

double plasticity_strain(const Plasticity0dSpec& spec, double t);
double plasticity_stress(const Plasticity0dSpec& spec, double t, double p);

/// Interface opening [u] = u2 - u1.
double delamination_opening(CSpan u);

/// Componentwise min{(z' - shift)^+, z_n}: a competitor below z_n that
/// approaches z' as z_n -> z and shift -> 0.
Vec mutual_recovery(CSpan z_n, CSpan z_target, double shift);

} // namespace vesolve
