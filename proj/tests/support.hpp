#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "vesolve/models.hpp"
#include "vesolve/reduced.hpp"

namespace vesolve::test {

/// Autonomous one-dimensional problem with I = f, d = kappa |.| on a box.
inline RisProblem autonomous_1d(std::function<double(double)> f, double kappa = 1.0,
                                CorrectionSpec corr = {}, Interval box = {-4.0, 4.0}) {
    RisProblem p;
    p.name = "autonomous";
    p.n_u = 0;
    p.n_z = 1;
    p.z_box = {box};
    p.energy = [f, box](double, CSpan, CSpan z) -> ExtReal {
        if (!box.contains(z[0])) {
            return ExtReal::infinity();
        }
        return f(z[0]);
    };
    p.power = [](double, CSpan, CSpan) { return 0.0; };
    p.dissipation = symmetric_l1({kappa});
    p.correction = corr;
    return p;
}

/// I(z) = z^2 / 2 with d = |.|.
inline RisProblem half_square(CorrectionSpec corr = {}) {
    return autonomous_1d([](double z) { return 0.5 * z * z; }, 1.0, corr);
}

/// Two wells at 0 and 1 separated by a barrier. With d = |.| and
/// delta = (z' - z)^2 / 2 the point 0 is stable and 1 lies in M(0).
inline RisProblem isolated_wells() {
    return autonomous_1d(
        [](double z) { return 8.0 * z * z * (1.0 - z) - z - 0.5 * z * z; }, 1.0,
        CorrectionSpec::quadratic_mu(1.0), {0.0, 1.0});
}

/// Brute-force argmin of a scalar function on a uniform grid.
inline std::pair<double, double> scan_min(const std::function<double(double)>& f, double lo,
                                          double hi, std::size_t n) {
    double best_x = lo;
    double best = f(lo);
    for (std::size_t i = 1; i < n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const double v = f(x);
        if (v < best) {
            best = v;
            best_x = x;
        }
    }
    return {best_x, best};
}

} // namespace vesolve::test

#include <random>
#include <string>

namespace vesolve::test {

struct NamedProblem {
    std::string name;
    RisProblem problem;
};

/// One instance of every model, with the corrections used by the shipped configs.
inline std::vector<NamedProblem> all_models() {
    std::vector<NamedProblem> out;
    {
        Toy1dSpec s;
        s.correction = CorrectionSpec::quadratic_mu(1.0);
        out.push_back({"toy_convex", make_toy1d(s)});
        s.well = WellKind::doublewell;
        s.kappa = 0.5;
        s.l1 = 4.0;
        out.push_back({"toy_doublewell", make_toy1d(s)});
    }
    {
        Damage1dSpec s;
        s.cells = 3;
        s.stiffness = {1.0, 1.2, 0.9};
        s.correction = CorrectionSpec::trivial_h(HCurve::power(1.0, 2.0));
        out.push_back({"damage1d", make_damage1d(s)});
    }
    {
        Plasticity0dSpec s;
        s.amp = 0.3;
        s.omega = 5.0;
        s.correction = CorrectionSpec::trivial_h(HCurve::power(1.0, 4.0));
        out.push_back({"plasticity0d", make_plasticity0d(s)});
    }
    {
        Delamination0dSpec s;
        out.push_back({"delamination_adhesive", make_delamination0d(s, false)});
        out.push_back({"delamination_brittle", make_delamination0d(s, true)});
    }
    return out;
}

inline Vec sample_z(const RisProblem& p, std::mt19937_64& rng) {
    Vec z(p.n_z);
    for (std::size_t i = 0; i < p.n_z; ++i) {
        const double lo = std::max(p.z_box[i].lo, -4.0);
        const double hi = std::min(p.z_box[i].hi, 4.0);
        z[i] = std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    return z;
}

/// Random state with finite energy at time t: random u first, equilibrium u
/// when the random one is inadmissible.
inline State sample_state(const RisProblem& p, double t, std::mt19937_64& rng) {
    State s;
    s.z = sample_z(p, rng);
    s.u.resize(p.n_u);
    std::uniform_real_distribution<double> du(-2.0, 2.0);
    for (double& v : s.u) {
        v = du(rng);
    }
    if (p.n_u > 0 && eval_energy(p, t, s).is_infinite()) {
        s.u = reduce_energy(p, t, s.z).u;
    }
    return s;
}

} // namespace vesolve::test
