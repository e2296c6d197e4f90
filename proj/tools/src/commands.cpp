#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "trajectory_csv.hpp"

namespace vesolve::cli {

namespace fs = std::filesystem;

namespace {

RunConfig load(const CommonOptions& opt) {
    RunConfig cfg = parse_run_config(opt.config);
    if (opt.seed) {
        cfg.seed = *opt.seed;
        cfg.scheme.minimizer.seed = *opt.seed;
        cfg.verify.tol.search.stability.minimizer.seed = *opt.seed;
    }
    return cfg;
}

fs::path output_path(const CommonOptions& opt, const std::string& name) {
    fs::create_directories(opt.out_dir);
    return fs::path(opt.out_dir) / name;
}

std::string join(const Vec& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
            s += sep;
        }
        s += format_number(v[i]);
    }
    return s;
}

Vec parse_vector(const std::string& text, const std::string& what) {
    Vec v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw ConfigError(what + ": bad number '" + item + "'");
        }
    }
    if (v.empty()) {
        throw ConfigError(what + ": empty list");
    }
    return v;
}

Certificate certify(const RunConfig& cfg, const RisProblem& problem, const Trajectory& traj) {
    return verify_as_ve(cfg) ? verify_VE(problem, traj, cfg.verify.tol)
                             : verify_E(problem, traj, cfg.verify.tol);
}

void write_verdict(std::ostream& os, const std::string& name, const Verdict& v) {
    os << name << ".residual = " << format_number(v.residual) << '\n'
       << name << ".tolerance = " << format_number(v.tolerance) << '\n'
       << name << ".pass = " << (v.pass() ? "true" : "false") << '\n';
}

const char* model_name(ModelKind k) {
    switch (k) {
    case ModelKind::toy1d:
        return "toy1d";
    case ModelKind::damage1d:
        return "damage1d";
    case ModelKind::plasticity0d:
        return "plasticity0d";
    case ModelKind::delamination0d:
        return "delamination0d";
    }
    return "unknown";
}

} // namespace

std::string certificate_document(const RunConfig& cfg, const Certificate& cert, bool as_ve) {
    std::ostringstream os;
    os << "model = " << model_name(cfg.model.kind) << '\n'
       << "scheme = " << to_string(cfg.scheme.scheme) << '\n'
       << "concept = " << (as_ve ? "VE" : "E") << '\n'
       << "verdict = " << (cert.pass() ? "PASS" : "FAIL") << '\n';
    write_verdict(os, "minimality", cert.minimality);
    write_verdict(os, "stability", cert.stability);
    os << "stability.worst_time = " << format_number(cert.worst_stability_time) << '\n';
    write_verdict(os, "balance", cert.balance);
    write_verdict(os, "jumps", cert.jumps);
    os << "jumps.count = " << cert.jump_residuals.size() << '\n'
       << "jumps.refined_search = " << (cert.refined_search ? "true" : "false") << '\n';
    for (std::size_t i = 0; i < cert.jump_residuals.size(); ++i) {
        const auto& j = cert.jump_residuals[i];
        const std::string p = "jump." + std::to_string(i + 1) + ".";
        os << p << "t = " << format_number(j.t) << '\n'
           << p << "z_minus = " << join(j.z_minus, ';') << '\n'
           << p << "z_plus = " << join(j.z_plus, ';') << '\n'
           << p << "energy_drop = " << format_number(j.energy_drop) << '\n'
           << p << "cost_upper = " << format_number(j.cost_upper) << '\n'
           << p << "cost_lower = " << format_number(j.cost_lower) << '\n'
           << p << "residual = " << format_number(as_ve ? j.residual : j.energetic_residual)
           << '\n';
    }
    os << "var_d = " << format_number(cert.var_d) << '\n'
       << "var_augmented = " << format_number(cert.var_augmented) << '\n'
       << "work = " << format_number(cert.work) << '\n';
    return os.str();
}

int cmd_solve(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = load(opt);
        const RisProblem problem = build_problem(cfg);
        DiscreteTrajectory d = solve_incremental(problem, cfg.scheme);
        for (const auto& w : d.warnings) {
            err << "warning: " << w << '\n';
        }
        const Trajectory traj(std::move(d), cfg.verify.tol.detection);

        CsvExtras extras;
        double cum = 0.0;
        for (const auto& node : traj.nodes()) {
            cum += node.step_dissipation;
            extras.cum_var_d.push_back(cum);
            extras.residual_stability.push_back(
                residual_stability(problem, node.t, node.state.z, cfg.verify.tol.search.stability)
                    .residual);
            extras.jump_flag.push_back(0);
        }
        for (const auto& j : traj.jumps()) {
            for (std::size_t n = j.first_step; n <= j.last_step; ++n) {
                extras.jump_flag[n] = 1;
            }
        }
        {
            std::ofstream f(output_path(opt, cfg.output.trajectory));
            write_trajectory_csv(f, traj, extras);
        }
        const Certificate cert = certify(cfg, problem, traj);
        const std::string doc = certificate_document(cfg, cert, verify_as_ve(cfg));
        {
            std::ofstream f(output_path(opt, cfg.output.certificate));
            f << doc;
        }
        out << doc;
        return cert.pass() ? exit_pass : exit_fail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
}

int cmd_verify(const CommonOptions& opt, const std::string& trajectory_csv, std::ostream& out,
               std::ostream& err) {
    try {
        const RunConfig cfg = load(opt);
        const RisProblem problem = build_problem(cfg);
        std::ifstream in(trajectory_csv);
        if (!in) {
            throw CsvError("cannot open trajectory '" + trajectory_csv + "'");
        }
        DiscreteTrajectory d = read_trajectory_csv(in, problem.n_z, problem.n_u);
        const Trajectory traj(std::move(d), cfg.verify.tol.detection);
        const Certificate cert = certify(cfg, problem, traj);
        const std::string doc = certificate_document(cfg, cert, verify_as_ve(cfg));
        out << doc;
        return cert.pass() ? exit_pass : exit_fail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
}

int cmd_jumpcost(const CommonOptions& opt, double t, const std::string& z_minus,
                 const std::string& z_plus, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = load(opt);
        const RisProblem problem = build_problem(cfg);
        const Vec a = parse_vector(z_minus, "z-minus");
        const Vec b = parse_vector(z_plus, "z-plus");
        check_z_dim(problem, a);
        check_z_dim(problem, b);
        if (reduced_energy(problem, t, a).is_infinite() ||
            reduced_energy(problem, t, b).is_infinite()) {
            err << "infeasible endpoints: infinite energy\n";
            return exit_fail;
        }
        const JumpCostResult r = jump_cost(problem, t, a, b, cfg.verify.tol.search);
        out << "t = " << format_number(t) << '\n'
            << "lower = " << format_number(r.bound.lower) << '\n'
            << "upper = " << format_number(r.bound.upper) << '\n'
            << "gap = " << format_number(r.bound.gap) << '\n'
            << "dp_value = " << format_number(r.bound.dp_value) << '\n'
            << "dp_gap = " << format_number(r.bound.dp_gap) << '\n'
            << "grid_supported = " << (r.bound.grid_supported ? "true" : "false") << '\n'
            << "sliding_k_change = " << format_number(r.sliding_k_change) << '\n';
        for (const auto& [name, value] : r.candidates) {
            out << "candidate." << name << " = " << format_number(value) << '\n';
        }
        std::ofstream f(output_path(opt, "jump_chain.csv"));
        f << "k";
        for (std::size_t i = 1; i <= problem.n_z; ++i) {
            f << ",z_" << i;
        }
        f << ",kind,link_diss,link_gap,point_residual\n";
        const JumpChain& c = r.witness;
        // The terminal point does not enter the cost but is reported too.
        auto point_residual = [&](std::size_t k) {
            return k < c.point_residual.size()
                       ? c.point_residual[k]
                       : residual_stability(problem, t, c.points[k], cfg.verify.tol.search.stability)
                             .residual;
        };
        for (std::size_t k = 0; k < c.points.size(); ++k) {
            f << k;
            for (double z : c.points[k]) {
                f << ',' << format_number(z);
            }
            f << ',' << (c.kinds[k] == PointKind::sliding ? "sliding" : "viscous") << ','
              << (k > 0 ? format_number(c.link_diss[k - 1]) : "0") << ','
              << (k > 0 ? format_number(c.link_gap[k - 1]) : "0") << ','
              << format_number(point_residual(k)) << '\n';
        }
        out << "chain.points = " << c.points.size() << '\n';
        for (std::size_t k = 0; k < c.points.size(); ++k) {
            out << "chain.point." << k << " = " << join(c.points[k], ';') << '\n'
                << "chain.residual." << k << " = " << format_number(point_residual(k)) << '\n';
        }
        return std::isfinite(r.bound.upper) ? exit_pass : exit_fail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
}

namespace {

struct SweepRow {
    double value = 0.0;
    bool ok = false;
    std::string message;
    std::vector<double> jump_times;
    Vec final_z;
    double balance = 0.0;
    double violation = 0.0;
    Trajectory traj;
};

RunConfig sweep_variant(RunConfig cfg, const std::string& axis, double v) {
    if (axis == "tau") {
        cfg.scheme.tau = v;
    } else if (axis == "mu") {
        cfg.scheme.scheme = SchemeKind::visco_energetic;
        const auto tilde = cfg.scheme.correction.kind == CorrectionKind::quadratic_mu
                               ? cfg.scheme.correction.tilde
                               : DistanceSelector::euclidean;
        cfg.scheme.correction = CorrectionSpec::quadratic_mu(v, tilde);
    } else if (axis == "epsilon") {
        cfg.scheme.scheme = SchemeKind::bv;
        cfg.scheme.epsilon = v;
    } else if (axis == "k") {
        if (cfg.model.kind != ModelKind::delamination0d || cfg.model.delamination.brittle) {
            throw ConfigError("axis k needs an adhesive delamination model");
        }
        cfg.model.delamination.k = v;
    } else {
        throw ConfigError("unknown sweep axis '" + axis + "'");
    }
    return cfg;
}

SweepRow sweep_run(const RunConfig& base, const std::string& axis, double v) {
    SweepRow row;
    row.value = v;
    try {
        const RunConfig cfg = sweep_variant(base, axis, v);
        const RisProblem problem = build_problem(cfg);
        row.traj = Trajectory(solve_incremental(problem, cfg.scheme), cfg.verify.tol.detection);
        for (const auto& j : row.traj.jumps()) {
            row.jump_times.push_back(j.t);
        }
        row.final_z = row.traj.nodes().back().state.z;
        ToleranceConfig tol = cfg.verify.tol;
        tol.check_stability = false;
        const Certificate cert = verify_as_ve(cfg) ? verify_VE(problem, row.traj, tol)
                                                   : verify_E(problem, row.traj, tol);
        row.balance = cert.balance.residual;
        if (cfg.model.kind == ModelKind::delamination0d) {
            for (const auto& n : row.traj.nodes()) {
                const double jump = delamination_opening(n.state.u);
                row.violation = std::max(row.violation, n.state.z[0] * jump * jump);
            }
        }
        row.ok = true;
    } catch (const std::exception& e) {
        row.message = e.what();
    }
    return row;
}

} // namespace

int cmd_sweep(const CommonOptions& opt, const std::string& axis, const std::string& values,
              std::ostream& out, std::ostream& err) {
    std::vector<SweepRow> rows;
    try {
        const RunConfig cfg = load(opt);
        const Vec vals = parse_vector(values, "values");
        if (vals.size() < 2) {
            throw ConfigError("a sweep needs at least two values");
        }
        (void)sweep_variant(cfg, axis, vals.front());
        rows.resize(vals.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < vals.size(); i = next++) {
                rows[i] = sweep_run(cfg, axis, vals[i]);
            }
        };
        const unsigned n = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(vals.size())));
        std::vector<std::thread> pool;
        for (unsigned i = 1; i < n; ++i) {
            pool.emplace_back(worker);
        }
        worker();
        for (auto& th : pool) {
            th.join();
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }

    std::ostringstream csv;
    csv << "value,status,jump_times,final_z,balance_residual,sup_distance_prev,violation\n";
    bool all_ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        all_ok = all_ok && r.ok;
        double sup = 0.0;
        if (i > 0 && r.ok && rows[i - 1].ok) {
            const double horizon = r.traj.horizon();
            for (std::size_t k = 0; k <= 512; ++k) {
                const double t = horizon * static_cast<double>(k) / 512.0;
                const Vec& a = r.traj.z_at(t);
                const Vec& b = rows[i - 1].traj.z_at(t);
                for (std::size_t j = 0; j < a.size(); ++j) {
                    sup = std::max(sup, std::abs(a[j] - b[j]));
                }
            }
        }
        csv << format_number(r.value) << ',' << (r.ok ? "ok" : "failed") << ','
            << join(r.jump_times, ';') << ',' << join(r.final_z, ';') << ','
            << format_number(r.balance) << ',' << format_number(sup) << ','
            << format_number(r.violation) << '\n';
        if (!r.ok) {
            err << "run " << format_number(r.value) << " failed: " << r.message << '\n';
        }
    }
    out << csv.str();
    if (axis == "tau") {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = 0;
        for (const auto& r : rows) {
            if (r.ok && r.balance > 0.0) {
                const double x = std::log(r.value);
                const double y = std::log(r.balance);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
                ++m;
            }
        }
        if (m >= 2) {
            const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            out << "# balance_slope = " << format_number(slope) << '\n';
        }
    }
    try {
        std::ofstream f(output_path(opt, "sweep_" + axis + ".csv"));
        f << csv.str();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
    return all_ok ? exit_pass : exit_fail;
}

} // namespace vesolve::cli
