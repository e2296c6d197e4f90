#include "vesolve/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vesolve {

namespace {

void throw_if_invalid(const std::string& model, const std::vector<std::string>& errors) {
    if (errors.empty()) {
        return;
    }
    std::ostringstream os;
    os << model << ": ";
    for (std::size_t i = 0; i < errors.size(); ++i) {
        os << (i ? "; " : "") << errors[i];
    }
    throw std::invalid_argument(os.str());
}

bool inside(const std::vector<Interval>& box, CSpan z) {
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!box[i].contains(z[i])) {
            return false;
        }
    }
    return true;
}

Vec broadcast(const Vec& v, std::size_t n) {
    if (v.size() == n) {
        return v;
    }
    return Vec(n, v.front());
}

void append_correction_errors(const CorrectionSpec& c, std::vector<std::string>& errors) {
    for (auto& e : validate(c)) {
        errors.push_back("correction: " + e);
    }
}

} // namespace

std::vector<std::string> validate(const Toy1dSpec& spec) {
    std::vector<std::string> errors;
    if (!(spec.kappa > 0.0)) {
        errors.emplace_back("kappa must be positive");
    }
    if (spec.well == WellKind::convex && !(spec.a > 0.0)) {
        errors.emplace_back("convex curvature must be positive");
    }
    if (spec.well == WellKind::doublewell && (!(spec.b > 0.0) || !(spec.w > 0.0))) {
        errors.emplace_back("double-well height and separation must be positive");
    }
    if (spec.form == LoadingForm::centered && spec.well != WellKind::convex) {
        errors.emplace_back("centered loading requires a convex well");
    }
    if (!(spec.box.lo < spec.box.hi)) {
        errors.emplace_back("box must satisfy lo < hi");
    }
    if (!(spec.horizon > 0.0)) {
        errors.emplace_back("horizon must be positive");
    }
    append_correction_errors(spec.correction, errors);
    return errors;
}

std::vector<std::string> validate(const Damage1dSpec& spec) {
    std::vector<std::string> errors;
    if (spec.cells < 1) {
        errors.emplace_back("at least one cell required");
    }
    auto sized = [&](const Vec& v) { return v.size() == 1 || v.size() == spec.cells; };
    if (!sized(spec.stiffness) || !sized(spec.kappa)) {
        errors.emplace_back("stiffness and kappa need 1 or N entries");
    } else {
        for (double e : spec.stiffness) {
            if (!(e > 0.0)) {
                errors.emplace_back("stiffness must be positive");
                break;
            }
        }
        for (double k : spec.kappa) {
            if (!(k > 0.0)) {
                errors.emplace_back("kappa must be bounded below by a positive constant");
                break;
            }
        }
    }
    if (!(spec.eta > 0.0 && spec.eta < 1.0)) {
        errors.emplace_back("eta must lie in (0,1)");
    }
    if (!(spec.r > 1.0)) {
        errors.emplace_back("gradient exponent r must exceed 1");
    }
    if (!(spec.gradient_weight >= 0.0)) {
        errors.emplace_back("gradient weight must be nonnegative");
    }
    if (!(spec.horizon > 0.0)) {
        errors.emplace_back("horizon must be positive");
    }
    append_correction_errors(spec.correction, errors);
    return errors;
}

std::vector<std::string> validate(const Plasticity0dSpec& spec) {
    std::vector<std::string> errors;
    if (!(spec.C > 0.0)) {
        errors.emplace_back("C must be positive");
    }
    if (!(spec.sigma_y > 0.0)) {
        errors.emplace_back("sigma_y must be positive");
    }
    if (!(spec.box.lo < spec.box.hi)) {
        errors.emplace_back("box must satisfy lo < hi");
    }
    if (!(spec.horizon > 0.0)) {
        errors.emplace_back("horizon must be positive");
    }
    append_correction_errors(spec.correction, errors);
    return errors;
}

std::vector<std::string> validate(const Delamination0dSpec& spec) {
    std::vector<std::string> errors;
    if (!(spec.k_minus > 0.0) || !(spec.k_plus > 0.0)) {
        errors.emplace_back("spring stiffnesses must be positive");
    }
    if (!spec.brittle && !(spec.k > 0.0)) {
        errors.emplace_back("adhesive stiffness must be positive");
    }
    if (!(spec.a0 >= 0.0)) {
        errors.emplace_back("a0 must be nonnegative");
    }
    if (!(spec.kappa > 0.0)) {
        errors.emplace_back("kappa must be positive");
    }
    if (!(spec.z_tol >= 0.0 && spec.z_tol < 1.0)) {
        errors.emplace_back("z_tol must lie in [0,1)");
    }
    if (!(spec.horizon > 0.0)) {
        errors.emplace_back("horizon must be positive");
    }
    append_correction_errors(spec.correction, errors);
    return errors;
}

double toy_loading(const Toy1dSpec& spec, double t) { return spec.l0 + spec.l1 * t; }

double doublewell_max_slope(const Toy1dSpec& spec) {
    return 8.0 * spec.b / (3.0 * std::sqrt(3.0) * spec.w);
}

RisProblem make_toy1d(const Toy1dSpec& spec) {
    throw_if_invalid("toy1d", validate(spec));
    RisProblem p;
    p.name = "toy1d";
    p.n_u = 0;
    p.n_z = 1;
    p.horizon = spec.horizon;
    p.z_box = {spec.box};
    p.correction = spec.correction;

    auto well = [spec](double z) {
        switch (spec.well) {
        case WellKind::convex:
            return 0.5 * spec.a * z * z;
        case WellKind::doublewell: {
            const double s = (z / spec.w) * (z / spec.w) - 1.0;
            return spec.b * s * s;
        }
        case WellKind::flat:
            return spec.level;
        }
        return 0.0;
    };
    p.energy = [spec, well](double t, CSpan, CSpan z) -> ExtReal {
        if (!spec.box.contains(z[0])) {
            return ExtReal::infinity();
        }
        const double l = toy_loading(spec, t);
        if (spec.form == LoadingForm::centered) {
            const double s = z[0] - l / spec.a;
            return 0.5 * spec.a * s * s;
        }
        return well(z[0]) - l * z[0];
    };
    p.power = [spec](double t, CSpan, CSpan z) {
        if (spec.form == LoadingForm::centered) {
            return -spec.l1 * (z[0] - toy_loading(spec, t) / spec.a);
        }
        return -spec.l1 * z[0];
    };
    p.dissipation = symmetric_l1({spec.kappa});

    if (spec.well == WellKind::convex) {
        p.step_solver = [spec](double t, CSpan z_prev,
                               const CorrectionSpec& corr) -> std::optional<Vec> {
            double mu = 0.0;
            if (corr.kind == CorrectionKind::quadratic_mu) {
                // |.|-based and Euclidean tilde distances differ by kappa.
                mu = corr.tilde == DistanceSelector::euclidean ? corr.mu
                                                               : corr.mu * spec.kappa * spec.kappa;
            } else if (corr.kind != CorrectionKind::none) {
                return std::nullopt;
            }
            const double l = toy_loading(spec, t);
            const double zp = z_prev[0];
            const double force = l - spec.a * zp;
            double z = zp;
            if (force > spec.kappa) {
                z = zp + (force - spec.kappa) / (spec.a + mu);
            } else if (force < -spec.kappa) {
                z = zp + (force + spec.kappa) / (spec.a + mu);
            }
            return Vec{std::clamp(z, spec.box.lo, spec.box.hi)};
        };
    }

    const double zmax = std::max(std::abs(spec.box.lo), std::abs(spec.box.hi));
    const double lmax =
        std::max(std::abs(spec.l0), std::abs(toy_loading(spec, spec.horizon)));
    p.power_control.z_ref = {0.0};
    if (spec.form == LoadingForm::centered) {
        p.power_control.lambda_p = std::abs(spec.l1) * (zmax + lmax / spec.a) + 1e-12;
        p.power_control.c_p = 1.0;
    } else {
        // W >= min(0, level) and |l z| <= lmax zmax bound E from below.
        const double wmin = spec.well == WellKind::flat ? spec.level : 0.0;
        p.power_control.lambda_p = std::abs(spec.l1) * zmax + 1e-12;
        p.power_control.c_p = 1.0 + lmax * zmax - std::min(wmin, 0.0);
    }
    return p;
}

RisProblem make_damage1d(const Damage1dSpec& spec) {
    throw_if_invalid("damage1d", validate(spec));
    const std::size_t n = spec.cells;
    const double h = 1.0 / static_cast<double>(n);
    const Vec e0 = broadcast(spec.stiffness, n);
    const Vec kappa = broadcast(spec.kappa, n);

    RisProblem p;
    p.name = "damage1d";
    p.n_u = n - 1;
    p.n_z = n;
    p.horizon = spec.horizon;
    p.z_box.assign(n, Interval{0.0, 1.0});
    p.correction = spec.correction;
    p.unidirectional = true;
    p.weights.assign(n, h);
    p.dissipation = unidirectional_l1(kappa, p.weights);

    const auto box = p.z_box;
    auto stiffness = [spec, e0](CSpan z, std::size_t i) {
        return (spec.eta + (1.0 - spec.eta) * z[i]) * e0[i];
    };
    auto gradient = [spec, n, h](CSpan z) {
        double g = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            g += std::pow(std::abs(z[i + 1] - z[i]), spec.r) / (spec.r * std::pow(h, spec.r - 1.0));
        }
        return spec.gradient_weight * g;
    };
    auto boundary = [spec](double t) { return spec.wd0 + spec.wd1 * t; };
    auto node = [n, boundary](double t, CSpan u, std::size_t i) {
        if (i == 0) {
            return 0.0;
        }
        return i == n ? boundary(t) : u[i - 1];
    };

    p.energy = [n, h, box, stiffness, gradient, node](double t, CSpan u, CSpan z) -> ExtReal {
        if (!inside(box, z)) {
            return ExtReal::infinity();
        }
        double el = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = (node(t, u, i + 1) - node(t, u, i)) / h;
            el += h * 0.5 * stiffness(z, i) * e * e;
        }
        return el + gradient(z);
    };
    p.power = [spec, n, h, stiffness, node](double t, CSpan u, CSpan z) {
        const double e = (node(t, u, n) - node(t, u, n - 1)) / h;
        return stiffness(z, n - 1) * e * spec.wd1;
    };
    // Springs in series: the equilibrium force is w / sum(h / k_i) and the
    // interior nodes follow by accumulating the cell elongations.
    p.reducer = [n, h, box, stiffness, gradient, boundary](double t, CSpan z,
                                                          std::span<double> u_out) -> ExtReal {
        if (!inside(box, z)) {
            return ExtReal::infinity();
        }
        double compliance = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            compliance += h / stiffness(z, i);
        }
        const double w = boundary(t);
        const double force = w / compliance;
        if (!u_out.empty()) {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                acc += force * h / stiffness(z, i);
                u_out[i] = acc;
            }
        }
        return 0.5 * w * force + gradient(z);
    };

    double kmax = 0.0;
    for (double e : e0) {
        kmax = std::max(kmax, e);
    }
    p.power_control.lambda_p = std::abs(spec.wd1) / h + 1e-12;
    p.power_control.c_p = 0.5 * h * kmax + 1e-12;
    p.power_control.z_ref.assign(n, 1.0);
    return p;
}

double plasticity_strain(const Plasticity0dSpec& spec, double t) {
    return spec.eps0 + spec.eps1 * t + spec.amp * std::sin(spec.omega * t);
}

double plasticity_stress(const Plasticity0dSpec& spec, double t, double p) {
    return spec.C * (plasticity_strain(spec, t) - p);
}

RisProblem make_plasticity0d(const Plasticity0dSpec& spec) {
    throw_if_invalid("plasticity0d", validate(spec));
    RisProblem p;
    p.name = "plasticity0d";
    p.n_u = 0;
    p.n_z = 1;
    p.horizon = spec.horizon;
    p.z_box = {spec.box};
    p.correction = spec.correction;
    p.dissipation = symmetric_l1({spec.sigma_y});
    p.energy = [spec](double t, CSpan, CSpan z) -> ExtReal {
        if (!spec.box.contains(z[0])) {
            return ExtReal::infinity();
        }
        const double s = plasticity_strain(spec, t) - z[0];
        return 0.5 * spec.C * s * s;
    };
    p.power = [spec](double t, CSpan, CSpan z) {
        const double rate = spec.eps1 + spec.amp * spec.omega * std::cos(spec.omega * t);
        return plasticity_stress(spec, t, z[0]) * rate;
    };
    p.step_solver = [spec](double t, CSpan z_prev,
                           const CorrectionSpec& corr) -> std::optional<Vec> {
        double mu = 0.0;
        if (corr.kind == CorrectionKind::quadratic_mu) {
            mu = corr.tilde == DistanceSelector::euclidean ? corr.mu
                                                           : corr.mu * spec.sigma_y * spec.sigma_y;
        } else if (corr.kind != CorrectionKind::none) {
            return std::nullopt;
        }
        // Return mapping with viscous over-stress.
        const double trial = plasticity_stress(spec, t, z_prev[0]);
        double z = z_prev[0];
        if (std::abs(trial) > spec.sigma_y) {
            const double sign = trial > 0 ? 1.0 : -1.0;
            z += sign * (std::abs(trial) - spec.sigma_y) / (spec.C + mu);
        }
        return Vec{std::clamp(z, spec.box.lo, spec.box.hi)};
    };
    const double zmax = std::max(std::abs(spec.box.lo), std::abs(spec.box.hi));
    const double rate_max = std::abs(spec.eps1) + std::abs(spec.amp * spec.omega);
    // |C s eps'| <= rate (C s^2 / 2 + C / 2).
    p.power_control.lambda_p = rate_max + 1e-12;
    p.power_control.c_p = 0.5 * spec.C + 1e-12;
    p.power_control.z_ref = {0.0};
    (void)zmax;
    return p;
}

double delamination_opening(CSpan u) { return u[1] - u[0]; }

RisProblem make_delamination0d(const Delamination0dSpec& spec_in, bool brittle) {
    Delamination0dSpec spec = spec_in;
    spec.brittle = brittle;
    throw_if_invalid("delamination0d", validate(spec));
    RisProblem p;
    p.name = brittle ? "delamination0d-brittle" : "delamination0d-adhesive";
    p.n_u = 2;
    p.n_z = 1;
    p.horizon = spec.horizon;
    p.z_box = {Interval{0.0, 1.0}};
    p.correction = spec.correction;
    p.unidirectional = true;
    p.dissipation = unidirectional_l1({spec.kappa});

    auto pull = [spec](double t) { return spec.l0 + spec.l1 * t; };
    auto bonded = [spec](double z) { return spec.brittle && z > spec.z_tol; };

    p.energy = [spec, pull, bonded](double t, CSpan u, CSpan z) -> ExtReal {
        if (!(z[0] >= 0.0 && z[0] <= 1.0)) {
            return ExtReal::infinity();
        }
        const double jump = delamination_opening(u);
        const double scale = 1.0 + std::abs(u[0]) + std::abs(u[1]);
        if (jump < -1e-12 * scale) {
            return ExtReal::infinity();
        }
        if (bonded(z[0]) && std::abs(jump) > 1e-12 * scale) {
            return ExtReal::infinity();
        }
        const double w = pull(t);
        double e = 0.5 * spec.k_minus * u[0] * u[0] + 0.5 * spec.k_plus * (w - u[1]) * (w - u[1]);
        if (!spec.brittle) {
            e += 0.5 * spec.k * z[0] * jump * jump;
        }
        return e - spec.a0 * z[0];
    };
    p.power = [spec, pull](double t, CSpan u, CSpan) {
        return spec.k_plus * (pull(t) - u[1]) * spec.l1;
    };
    p.reducer = [spec, pull, bonded](double t, CSpan z, std::span<double> u_out) -> ExtReal {
        if (!(z[0] >= 0.0 && z[0] <= 1.0)) {
            return ExtReal::infinity();
        }
        const double w = pull(t);
        const double km = spec.k_minus;
        const double kp = spec.k_plus;
        double u1 = 0.0;
        double u2 = 0.0;
        auto glue = [&] {
            u1 = kp * w / (km + kp);
            u2 = u1;
        };
        if (bonded(z[0])) {
            glue();
        } else {
            const double ka = spec.brittle ? 0.0 : spec.k * z[0];
            // [km + ka, -ka; -ka, kp + ka] (u1, u2) = (0, kp w)
            const double det = (km + ka) * (kp + ka) - ka * ka;
            u1 = ka * kp * w / det;
            u2 = (km + ka) * kp * w / det;
            if (u2 - u1 < 0.0) {
                glue();
            }
        }
        if (!u_out.empty()) {
            u_out[0] = u1;
            u_out[1] = u2;
        }
        double e = 0.5 * km * u1 * u1 + 0.5 * kp * (w - u2) * (w - u2);
        if (!spec.brittle) {
            e += 0.5 * spec.k * z[0] * (u2 - u1) * (u2 - u1);
        }
        return e - spec.a0 * z[0];
    };
    // |kp (w - u2) l1| <= |l1| (kp (w - u2)^2 / 2 + kp / 2) and E >= -a0.
    p.power_control.lambda_p = std::abs(spec.l1) + 1e-12;
    p.power_control.c_p = 0.5 * spec.k_plus + spec.a0 + 1e-12;
    p.power_control.z_ref = {1.0};
    return p;
}

Vec mutual_recovery(CSpan z_n, CSpan z_target, double shift) {
    if (z_n.size() != z_target.size()) {
        throw std::invalid_argument("mutual_recovery: dimension mismatch");
    }
    Vec out(z_n.size());
    for (std::size_t i = 0; i < z_n.size(); ++i) {
        out[i] = std::min(std::max(z_target[i] - shift, 0.0), z_n[i]);
    }
    return out;
}

} // namespace vesolve
