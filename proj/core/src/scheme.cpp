#include "vesolve/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vesolve {

std::string to_string(SchemeKind k) {
    switch (k) {
    case SchemeKind::energetic:
        return "E";
    case SchemeKind::bv:
        return "BV";
    case SchemeKind::visco_energetic:
        return "VE";
    }
    return "unknown";
}

SchemeKind parse_scheme_kind(const std::string& s) {
    if (s == "E" || s == "energetic") {
        return SchemeKind::energetic;
    }
    if (s == "BV" || s == "bv") {
        return SchemeKind::bv;
    }
    if (s == "VE" || s == "ve" || s == "visco-energetic") {
        return SchemeKind::visco_energetic;
    }
    throw std::invalid_argument("unknown scheme '" + s + "'");
}

std::vector<std::string> validate(const SchemeConfig& cfg) {
    std::vector<std::string> errors;
    if (!(cfg.tau > 0.0) || std::isinf(cfg.tau)) {
        errors.emplace_back("tau must be positive");
    }
    if (cfg.horizon && !(*cfg.horizon > 0.0)) {
        errors.emplace_back("horizon must be positive");
    }
    if (cfg.horizon && cfg.tau > *cfg.horizon) {
        errors.emplace_back("tau must not exceed the horizon");
    }
    if (cfg.scheme == SchemeKind::bv && !(cfg.epsilon > 0.0)) {
        errors.emplace_back("BV scheme needs epsilon > 0");
    }
    if (cfg.scheme == SchemeKind::visco_energetic) {
        for (auto& e : validate(cfg.correction)) {
            errors.push_back("correction: " + e);
        }
    }
    for (auto& e : validate(cfg.minimizer)) {
        errors.push_back("minimizer: " + e);
    }
    if (cfg.initial_z.empty()) {
        errors.emplace_back("initial_z is required");
    }
    return errors;
}

CorrectionSpec scheme_correction(const SchemeConfig& cfg) {
    switch (cfg.scheme) {
    case SchemeKind::energetic:
        return CorrectionSpec::none();
    case SchemeKind::bv:
        return CorrectionSpec::quadratic_mu(cfg.epsilon / cfg.tau);
    case SchemeKind::visco_energetic:
        return cfg.correction;
    }
    return CorrectionSpec::none();
}

RisProblem scheme_problem(const RisProblem& problem, const SchemeConfig& cfg) {
    return with_correction(problem, scheme_correction(cfg));
}

std::vector<double> time_grid(double horizon, double tau) {
    const auto steps =
        static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / tau - 1e-9)));
    std::vector<double> t(steps + 1);
    for (std::size_t n = 0; n <= steps; ++n) {
        t[n] = horizon * static_cast<double>(n) / static_cast<double>(steps);
    }
    return t;
}

namespace {

TrajectoryNode make_node(const RisProblem& problem, double t, Vec z, Vec u) {
    TrajectoryNode node;
    node.t = t;
    node.state = State{std::move(u), std::move(z)};
    const ExtReal e = eval_energy(problem, t, node.state);
    if (e.is_infinite()) {
        throw std::runtime_error("infeasible step: state with infinite energy at t=" +
                                 std::to_string(t));
    }
    node.energy = e.value();
    node.power = eval_power(problem, t, node.state);
    return node;
}

} // namespace

DiscreteTrajectory solve_incremental(const RisProblem& problem_in, const SchemeConfig& cfg) {
    const auto errors = validate(cfg);
    if (!errors.empty()) {
        std::ostringstream os;
        os << "invalid scheme config: ";
        for (std::size_t i = 0; i < errors.size(); ++i) {
            os << (i ? "; " : "") << errors[i];
        }
        throw std::invalid_argument(os.str());
    }
    const RisProblem problem = scheme_problem(problem_in, cfg);
    check_z_dim(problem, cfg.initial_z);
    if (!in_box(problem, cfg.initial_z)) {
        throw std::invalid_argument("initial_z lies outside the admissible box");
    }
    const double horizon = cfg.horizon.value_or(problem.horizon);
    if (cfg.tau > horizon) {
        throw std::invalid_argument("tau must not exceed the horizon");
    }
    const std::vector<double> times = time_grid(horizon, cfg.tau);

    DiscreteTrajectory traj;
    traj.tau = times[1] - times[0];
    if (std::abs(traj.tau - cfg.tau) > 1e-12 * cfg.tau) {
        std::ostringstream os;
        os << "tau adjusted from " << cfg.tau << " to " << traj.tau << " for a uniform partition";
        traj.warnings.push_back(os.str());
    }
    if (cfg.scheme == SchemeKind::bv && cfg.epsilon / cfg.tau < 10.0) {
        std::ostringstream os;
        os << "BV scheme with epsilon/tau = " << cfg.epsilon / cfg.tau
           << " < 10 is far from the vanishing-viscosity regime";
        traj.warnings.push_back(os.str());
    }

    MinResult r0 = reduce_energy(problem, times[0], cfg.initial_z);
    if (r0.value.is_infinite()) {
        throw std::invalid_argument("initial state has infinite energy");
    }
    TrajectoryNode first = make_node(problem, times[0], cfg.initial_z, r0.u);
    first.objective = first.energy;
    first.certified = true;
    traj.nodes.reserve(times.size());
    traj.nodes.push_back(std::move(first));

    for (std::size_t n = 1; n < times.size(); ++n) {
        const Vec& z_prev = traj.nodes.back().state.z;
        MinResult m = global_min_corrected(problem, times[n], z_prev, cfg.minimizer);
        const double d = eval_dissipation(problem, z_prev, m.argmin).value();
        const double delta = eval_correction(problem, z_prev, m.argmin).value();
        TrajectoryNode node = make_node(problem, times[n], m.argmin, m.u);
        node.step_dissipation = d;
        node.step_correction = delta;
        node.objective = m.value.value();
        node.certified = m.certified_global;
        traj.nodes.push_back(std::move(node));
    }
    return traj;
}

double discrete_balance_residual(const RisProblem& problem, const DiscreteTrajectory& traj) {
    if (traj.nodes.size() < 2) {
        return 0.0;
    }
    double dissipated = 0.0;
    double work = 0.0;
    for (std::size_t n = 1; n < traj.nodes.size(); ++n) {
        const auto& prev = traj.nodes[n - 1];
        const auto& cur = traj.nodes[n];
        dissipated += cur.step_dissipation + cur.step_correction;
        const double mid = 0.5 * (prev.t + cur.t);
        const MinResult r = reduce_energy(problem, mid, prev.state.z);
        work += (cur.t - prev.t) * problem.power(mid, r.u, prev.state.z);
    }
    return std::abs(traj.nodes.back().energy + dissipated - traj.nodes.front().energy - work);
}

ConvergenceReport refine_study(const RisProblem& problem, const SchemeConfig& cfg,
                               const std::vector<double>& tau_list, std::size_t probes) {
    if (tau_list.size() < 3) {
        throw std::invalid_argument("refine_study needs at least three values of tau");
    }
    for (std::size_t i = 1; i < tau_list.size(); ++i) {
        if (!(tau_list[i] < tau_list[i - 1])) {
            throw std::invalid_argument("refine_study: tau values must decrease");
        }
    }
    ConvergenceReport rep;
    std::vector<Trajectory> trajs;
    const RisProblem scheme_prob = scheme_problem(problem, cfg);
    for (double tau : tau_list) {
        SchemeConfig c = cfg;
        c.tau = tau;
        DiscreteTrajectory d = solve_incremental(problem, c);
        RefinementRun run;
        run.tau = tau;
        run.balance_residual = discrete_balance_residual(scheme_prob, d);
        Trajectory tr(std::move(d));
        for (const auto& j : tr.jumps()) {
            run.jump_times.push_back(j.t);
        }
        rep.runs.push_back(std::move(run));
        trajs.push_back(std::move(tr));
    }
    const double horizon = trajs.front().horizon();
    for (std::size_t k = 0; k + 1 < trajs.size(); ++k) {
        double sup = 0.0;
        for (std::size_t i = 0; i <= probes; ++i) {
            const double t = horizon * static_cast<double>(i) / static_cast<double>(probes);
            const Vec& a = trajs[k].z_at(t);
            const Vec& b = trajs[k + 1].z_at(t);
            for (std::size_t j = 0; j < a.size(); ++j) {
                sup = std::max(sup, std::abs(a[j] - b[j]));
            }
        }
        rep.sup_differences.push_back(sup);
    }
    rep.cauchy = true;
    for (std::size_t k = 1; k < rep.sup_differences.size(); ++k) {
        if (rep.sup_differences[k] > 1.1 * rep.sup_differences[k - 1] + 1e-12) {
            rep.cauchy = false;
        }
    }
    if (!rep.cauchy) {
        rep.notes.emplace_back(
            "sup-differences do not decrease; jumps at tau-dependent times or several limits");
    }
    return rep;
}

} // namespace vesolve
