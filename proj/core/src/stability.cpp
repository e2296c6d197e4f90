#include "vesolve/stability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vesolve {

StabilityReport residual_stability(const RisProblem& problem, double t, CSpan z,
                                   const StabilityConfig& cfg) {
    check_z_dim(problem, z);
    const ExtReal i = reduced_energy(problem, t, z);
    if (i.is_infinite()) {
        throw std::domain_error("residual_stability: I(t,z) is infinite");
    }
    const MinResult m = global_min_corrected(problem, t, z, cfg.minimizer);
    StabilityReport rep;
    rep.reduced_energy = i.value();
    rep.y_value = m.value.value();
    rep.witness = m.argmin;
    rep.certified_global = m.certified_global;
    rep.minimizer_tolerance = m.tolerance;
    double r = rep.reduced_energy - rep.y_value;
    if (r < 0.0 && r >= -cfg.clamp_tol) {
        r = 0.0;
    }
    // z itself is always a candidate, so a negative value can only be rounding.
    rep.residual = std::max(r, 0.0);
    if (rep.residual == 0.0) {
        rep.witness.assign(z.begin(), z.end());
    }
    return rep;
}

std::vector<Vec> minimal_set(const RisProblem& problem, double t, CSpan z,
                             const StabilityConfig& cfg) {
    const MinResult m = global_min_corrected(problem, t, z, cfg.minimizer);
    const double best = m.value.value();
    const double band = cfg.minimizer.near_optimal_band * (1.0 + std::abs(best));
    std::vector<Vec> out;
    out.push_back(m.argmin);
    for (const Candidate& c : m.candidates) {
        if (!c.value.is_finite() || c.value.value() > best + band) {
            continue;
        }
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Vec& v) {
            double dist = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                dist = std::max(dist, std::abs(v[i] - c.z[i]));
            }
            return dist < 1e-8;
        });
        if (!dup) {
            out.push_back(c.z);
        }
    }
    return out;
}

bool is_Q_stable(const RisProblem& problem, double t, const State& s, double Q,
                 const StabilityConfig& cfg, double tol) {
    check_state(problem, s);
    const ExtReal e = eval_energy(problem, t, s);
    if (e.is_infinite()) {
        return false;
    }
    const StabilityReport rep = residual_stability(problem, t, s.z, cfg);
    if (rep.residual > Q + tol) {
        return false;
    }
    return e.value() <= rep.reduced_energy + tol * (1.0 + std::abs(rep.reduced_energy));
}

RatioReport correction_ratio_check(const RisProblem& problem, CSpan z, CSpan direction,
                                   const std::vector<double>& scales) {
    check_z_dim(problem, z);
    if (direction.size() != z.size()) {
        throw std::invalid_argument("correction_ratio_check: direction has wrong dimension");
    }
    RatioReport rep;
    Vec target(z.size());
    for (double s : scales) {
        if (!(s > 0.0)) {
            throw std::invalid_argument("correction_ratio_check: scales must be positive");
        }
        for (std::size_t i = 0; i < z.size(); ++i) {
            target[i] = z[i] + s * direction[i];
        }
        RatioEntry e;
        e.scale = s;
        const ExtReal d = eval_dissipation(problem, z, target);
        if (d.is_infinite() || d.value() == 0.0) {
            e.skipped = true;
        } else {
            e.ratio = eval_correction(problem, z, target).to_double() / d.value();
        }
        rep.entries.push_back(e);
    }
    std::vector<double> used;
    for (const auto& e : rep.entries) {
        if (!e.skipped) {
            used.push_back(e.ratio);
        }
    }
    rep.decreasing = used.size() >= 2;
    for (std::size_t i = 1; i < used.size(); ++i) {
        if (!(used[i] < used[i - 1])) {
            rep.decreasing = false;
        }
    }
    rep.pass = rep.decreasing && used.back() < 0.1 * used.front();
    return rep;
}

ExponentReport exponent_check(int d, double r, double q, double gamma) {
    if (d < 1 || d > 3) {
        throw std::invalid_argument("exponent_check: dimension must be 1, 2 or 3");
    }
    if (!(r > 1.0) || !(q > 1.0) || !(gamma > 1.0)) {
        throw std::invalid_argument("exponent_check: r, q and gamma must exceed 1");
    }
    ExponentReport rep;
    rep.dim = d;
    rep.r = r;
    rep.q = q;
    rep.gamma = gamma;
    const double dd = d;
    // 1/q = theta (1/r - 1/d) + 1 - theta. Verdicts are decided on
    // cross-multiplied forms so that integer exponents compare exactly.
    const double den = dd * r + r - dd;
    rep.theta = (q - 1.0) * dd * r / (q * den);
    rep.theta_in_range = rep.theta > 0.0 && rep.theta < 1.0;
    rep.r_greater_d = r > dd;
    rep.interpolation_strong = rep.theta_in_range && (q - 1.0) * den > (q - 1.0) * dd * r;
    rep.below_threshold = q * dd / (q + dd);
    rep.compat_below = r * (q + dd) > q * dd;
    const double scaled = den - (q - 1.0) * (dd - r); // bracket * q * den
    rep.bracket = scaled / (q * den);
    if (scaled > 0.0) {
        rep.gamma_threshold = q * den / scaled;
        rep.compatible_exps = gamma * scaled > q * den;
    }
    rep.sufficient = rep.compat_below &&
                     (rep.r_greater_d || rep.interpolation_strong || rep.compatible_exps);
    return rep;
}

std::string describe(const ExponentReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "d=" << rep.dim << " r=" << rep.r << " q=" << rep.q << " gamma=" << rep.gamma
       << " theta=" << rep.theta << " theta_in_range=" << rep.theta_in_range
       << " r_greater_d=" << rep.r_greater_d
       << " interpolation_strong=" << rep.interpolation_strong
       << " compat_below=" << rep.compat_below << " (threshold " << rep.below_threshold << ")"
       << " gamma_threshold=" << rep.gamma_threshold
       << " compatible_exps=" << rep.compatible_exps << " sufficient=" << rep.sufficient;
    return os.str();
}

} // namespace vesolve
