#include "vesolve/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vesolve {

HCurve HCurve::power(double coefficient, double exponent) {
    std::ostringstream name;
    name << coefficient << "*r^" << exponent;
    return HCurve{name.str(), [coefficient, exponent](double r) {
                      if (std::isinf(r)) {
                          return r;
                      }
                      return coefficient * std::pow(r, exponent);
                  }};
}

CorrectionSpec CorrectionSpec::trivial_h(HCurve curve) {
    CorrectionSpec s;
    s.kind = CorrectionKind::trivial_h;
    s.h = std::move(curve);
    return s;
}

CorrectionSpec CorrectionSpec::quadratic_mu(double mu, DistanceSelector tilde) {
    CorrectionSpec s;
    s.kind = CorrectionKind::quadratic_mu;
    s.mu = mu;
    s.tilde = tilde;
    return s;
}

CorrectionSpec CorrectionSpec::power_lq(double q, double gamma) {
    CorrectionSpec s;
    s.kind = CorrectionKind::power_lq;
    s.q = q;
    s.gamma = gamma;
    return s;
}

std::string CorrectionSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
    case CorrectionKind::none:
        os << "none";
        break;
    case CorrectionKind::trivial_h:
        os << "h(d), h=" << h.name;
        break;
    case CorrectionKind::quadratic_mu:
        os << "quadratic mu=" << mu
           << (tilde == DistanceSelector::euclidean ? " (euclidean)" : " (dissipation)");
        break;
    case CorrectionKind::power_lq:
        os << "power_lq q=" << q << " gamma=" << gamma;
        break;
    }
    return os.str();
}

std::vector<std::string> validate(const CorrectionSpec& spec) {
    std::vector<std::string> errors;
    switch (spec.kind) {
    case CorrectionKind::none:
        break;
    case CorrectionKind::quadratic_mu:
        if (!(spec.mu >= 0.0) || std::isinf(spec.mu)) {
            errors.emplace_back("mu must be finite and nonnegative");
        }
        break;
    case CorrectionKind::power_lq:
        if (!(spec.q > 1.0)) {
            errors.emplace_back("q must exceed 1");
        }
        if (!(spec.gamma > 1.0)) {
            errors.emplace_back("gamma must exceed 1");
        }
        break;
    case CorrectionKind::trivial_h: {
        if (!spec.h.fn) {
            errors.emplace_back("h curve is empty");
            break;
        }
        if (spec.h(0.0) != 0.0) {
            errors.emplace_back("h(0) must be 0");
        }
        double prev = spec.h(0.0);
        for (int i = 1; i <= 64; ++i) {
            const double v = spec.h(0.05 * i);
            if (v < prev) {
                errors.emplace_back("h must be nondecreasing");
                break;
            }
            prev = v;
        }
        const double r1 = spec.h(1e-1) / 1e-1;
        const double r2 = spec.h(1e-2) / 1e-2;
        const double r3 = spec.h(1e-3) / 1e-3;
        if (!(r1 > r2 && r2 > r3)) {
            errors.emplace_back("h(r)/r must decrease toward 0 as r -> 0");
        }
        break;
    }
    }
    return errors;
}

RisProblem with_correction(RisProblem problem, CorrectionSpec correction) {
    problem.correction = std::move(correction);
    return problem;
}

bool in_box(const RisProblem& problem, CSpan z) {
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!problem.z_box[i].contains(z[i])) {
            return false;
        }
    }
    return true;
}

void check_z_dim(const RisProblem& problem, CSpan z) {
    if (z.size() != problem.n_z) {
        std::ostringstream os;
        os << problem.name << ": z has dimension " << z.size() << ", expected " << problem.n_z;
        throw std::invalid_argument(os.str());
    }
}

void check_state(const RisProblem& problem, const State& s) {
    check_z_dim(problem, s.z);
    if (s.u.size() != problem.n_u) {
        std::ostringstream os;
        os << problem.name << ": u has dimension " << s.u.size() << ", expected " << problem.n_u;
        throw std::invalid_argument(os.str());
    }
}

ExtReal eval_energy(const RisProblem& problem, double t, CSpan u, CSpan z) {
    check_z_dim(problem, z);
    if (u.size() != problem.n_u) {
        throw std::invalid_argument(problem.name + ": u dimension mismatch");
    }
    if (!in_box(problem, z)) {
        return ExtReal::infinity();
    }
    return problem.energy(t, u, z);
}

ExtReal eval_energy(const RisProblem& problem, double t, const State& s) {
    return eval_energy(problem, t, s.u, s.z);
}

ExtReal eval_dissipation(const RisProblem& problem, CSpan z_from, CSpan z_to) {
    check_z_dim(problem, z_from);
    check_z_dim(problem, z_to);
    return problem.dissipation(z_from, z_to);
}

double weighted_l2(const RisProblem& problem, CSpan a, CSpan b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double w = problem.weights.empty() ? 1.0 : problem.weights[i];
        s += w * (a[i] - b[i]) * (a[i] - b[i]);
    }
    return std::sqrt(s);
}

double weighted_lq(const RisProblem& problem, CSpan a, CSpan b, double q) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double w = problem.weights.empty() ? 1.0 : problem.weights[i];
        s += w * std::pow(std::abs(a[i] - b[i]), q);
    }
    return std::pow(s, 1.0 / q);
}

ExtReal eval_correction(const RisProblem& problem, CSpan z_from, CSpan z_to) {
    const CorrectionSpec& c = problem.correction;
    switch (c.kind) {
    case CorrectionKind::none:
        return 0.0;
    case CorrectionKind::trivial_h: {
        const ExtReal d = problem.dissipation(z_from, z_to);
        if (d.is_infinite()) {
            return ExtReal::infinity();
        }
        return c.h(d.value());
    }
    case CorrectionKind::quadratic_mu: {
        if (c.mu == 0.0) {
            return 0.0;
        }
        double dist = 0.0;
        if (c.tilde == DistanceSelector::euclidean) {
            dist = weighted_l2(problem, z_from, z_to);
        } else {
            const ExtReal d = problem.dissipation(z_from, z_to);
            if (d.is_infinite()) {
                return ExtReal::infinity();
            }
            dist = d.value();
        }
        return 0.5 * c.mu * dist * dist;
    }
    case CorrectionKind::power_lq: {
        const double norm = weighted_lq(problem, z_from, z_to, c.q);
        return std::pow(norm, c.gamma) / c.q;
    }
    }
    return 0.0;
}

ExtReal eval_corrected_dissipation(const RisProblem& problem, CSpan z_from, CSpan z_to) {
    const ExtReal d = eval_dissipation(problem, z_from, z_to);
    if (d.is_infinite()) {
        return d;
    }
    return d + eval_correction(problem, z_from, z_to);
}

double eval_power(const RisProblem& problem, double t, const State& s) {
    check_state(problem, s);
    if (eval_energy(problem, t, s).is_infinite()) {
        throw std::domain_error(problem.name + ": power undefined outside the energy domain");
    }
    return problem.power(t, s.u, s.z);
}

namespace {

double weight_at(const Vec& w, std::size_t i) { return w.empty() ? 1.0 : w[i]; }

} // namespace

DistanceFn symmetric_l1(Vec kappa, Vec weights) {
    return [kappa = std::move(kappa), weights = std::move(weights)](CSpan a, CSpan b) -> ExtReal {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            s += weight_at(weights, i) * kappa[i] * std::abs(b[i] - a[i]);
        }
        return s;
    };
}

DistanceFn unidirectional_l1(Vec kappa, Vec weights) {
    return [kappa = std::move(kappa), weights = std::move(weights)](CSpan a, CSpan b) -> ExtReal {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (b[i] > a[i]) {
                return ExtReal::infinity();
            }
            s += weight_at(weights, i) * kappa[i] * (a[i] - b[i]);
        }
        return s;
    };
}

} // namespace vesolve
