#include "vesolve/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vesolve {

std::string to_string(MinMethod m) {
    switch (m) {
    case MinMethod::automatic:
        return "automatic";
    case MinMethod::grid:
        return "grid";
    case MinMethod::multistart_descent:
        return "multistart-descent";
    case MinMethod::closed_form:
        return "closed-form";
    }
    return "unknown";
}

MinMethod parse_min_method(const std::string& s) {
    if (s == "automatic" || s == "auto") {
        return MinMethod::automatic;
    }
    if (s == "grid") {
        return MinMethod::grid;
    }
    if (s == "multistart-descent" || s == "multistart_descent") {
        return MinMethod::multistart_descent;
    }
    if (s == "closed-form" || s == "closed_form") {
        return MinMethod::closed_form;
    }
    throw std::invalid_argument("unknown minimizer method '" + s + "'");
}

std::vector<std::string> validate(const MinimizerConfig& cfg) {
    std::vector<std::string> errors;
    for (std::size_t r : cfg.grid_resolution) {
        if (r < 2) {
            errors.emplace_back("grid_resolution must be at least 2 per dimension");
            break;
        }
    }
    if (!(cfg.descent_tol > 0.0)) {
        errors.emplace_back("descent_tol must be positive");
    }
    if (!(cfg.near_optimal_band > 0.0)) {
        errors.emplace_back("near_optimal_band must be positive");
    }
    return errors;
}

namespace {

double to_cmp(const ExtReal& v) { return v.to_double(); }

// Plain gradient descent on u for models without a closed-form reducer.
MinResult descend_u(const RisProblem& problem, double t, CSpan z) {
    const std::size_t n = problem.n_u;
    Vec u(n, 0.0);
    auto f = [&](const Vec& x) { return problem.energy(t, x, z).to_double(); };
    double fu = f(u);
    Vec grad(n);
    Vec trial(n);
    double step = 1.0;
    for (int it = 0; it < 2000 && std::isfinite(fu); ++it) {
        double gnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double h = 1e-6 * (1.0 + std::abs(u[i]));
            Vec up = u;
            Vec dn = u;
            up[i] += h;
            dn[i] -= h;
            grad[i] = (f(up) - f(dn)) / (2.0 * h);
            gnorm += grad[i] * grad[i];
        }
        if (std::sqrt(gnorm) < 1e-12) {
            break;
        }
        bool accepted = false;
        step *= 2.0;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) {
                trial[i] = u[i] - step * grad[i];
            }
            const double ft = f(trial);
            if (ft <= fu - 1e-4 * step * gnorm) {
                u = trial;
                fu = ft;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            break;
        }
    }
    MinResult res;
    res.argmin = u;
    res.u = u;
    res.value = ExtReal(fu);
    res.method = MinMethod::multistart_descent;
    res.certified_global = false;
    res.tolerance = 1e-12;
    return res;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> pts(count);
    if (count == 1) {
        pts[0] = lo;
        return pts;
    }
    for (std::size_t k = 0; k < count; ++k) {
        pts[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    pts.back() = hi;
    return pts;
}

struct TensorGrid {
    std::vector<std::vector<double>> axes;

    [[nodiscard]] std::size_t size() const {
        std::size_t total = 1;
        for (const auto& a : axes) {
            total *= a.size();
        }
        return total;
    }

    void point(std::size_t flat, Vec& out) const {
        for (std::size_t d = axes.size(); d-- > 0;) {
            const std::size_t n = axes[d].size();
            out[d] = axes[d][flat % n];
            flat /= n;
        }
    }
};

std::size_t checked_total(const std::vector<std::vector<double>>& axes) {
    double total = 1.0;
    for (const auto& a : axes) {
        total *= static_cast<double>(a.size());
    }
    if (total > static_cast<double>(oracle_point_budget)) {
        std::ostringstream os;
        os << "grid of " << total << " points exceeds the budget of " << oracle_point_budget;
        throw std::length_error(os.str());
    }
    return static_cast<std::size_t>(total);
}

// Window search: repeatedly evaluates a (2m+1)^n lattice around the incumbent
// and contracts the window once the incumbent stops moving.
Candidate polish(const Objective& f, const std::vector<Interval>& box, Vec start, Vec half,
                 double xtol) {
    const std::size_t n = start.size();
    ExtReal best = f(start);
    Vec x(n);
    const int m = n <= 2 ? 4 : 1;
    const std::size_t per_dim = 2 * static_cast<std::size_t>(m) + 1;
    std::size_t lattice = 1;
    for (std::size_t d = 0; d < n; ++d) {
        lattice *= per_dim;
    }
    const bool coordinate_only = n > 2;
    for (int iter = 0; iter < 400; ++iter) {
        double hmax = 0.0;
        for (std::size_t d = 0; d < n; ++d) {
            hmax = std::max(hmax, half[d]);
        }
        if (hmax <= xtol) {
            break;
        }
        Vec center = start;
        bool moved = false;
        bool on_edge = false;
        auto consider = [&](const Vec& p, bool edge) {
            const ExtReal v = f(p);
            if (to_cmp(v) < to_cmp(best)) {
                best = v;
                start = p;
                moved = true;
                on_edge = edge;
            }
        };
        if (coordinate_only) {
            for (std::size_t d = 0; d < n; ++d) {
                for (int s : {-1, 1}) {
                    x = center;
                    x[d] = std::clamp(center[d] + s * half[d], box[d].lo, box[d].hi);
                    consider(x, true);
                }
            }
        } else {
            for (std::size_t flat = 0; flat < lattice; ++flat) {
                std::size_t rest = flat;
                bool edge = false;
                bool is_center = true;
                for (std::size_t d = 0; d < n; ++d) {
                    const int k = static_cast<int>(rest % per_dim) - m;
                    rest /= per_dim;
                    if (k != 0) {
                        is_center = false;
                    }
                    if (k == -m || k == m) {
                        edge = true;
                    }
                    x[d] = std::clamp(center[d] + half[d] * k / m, box[d].lo, box[d].hi);
                }
                if (!is_center) {
                    consider(x, edge);
                }
            }
        }
        const double factor = !moved ? 0.35 : (on_edge ? 1.0 : 0.5);
        for (std::size_t d = 0; d < n; ++d) {
            half[d] *= factor;
        }
    }
    return Candidate{start, best};
}

// Projected gradient descent with central differences inside the box.
Candidate projected_descent(const Objective& f, const std::vector<Interval>& box, Vec x,
                            double tol) {
    const std::size_t n = x.size();
    ExtReal fx = f(x);
    Vec grad(n);
    Vec trial(n);
    Vec probe(n);
    double step = 0.1;
    for (int it = 0; it < 300 && fx.is_finite(); ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            const double h = 1e-7 * (1.0 + std::abs(x[i]));
            probe = x;
            const double hi = std::min(x[i] + h, box[i].hi);
            const double lo = std::max(x[i] - h, box[i].lo);
            probe[i] = hi;
            const ExtReal fp = f(probe);
            probe[i] = lo;
            const ExtReal fm = f(probe);
            grad[i] = (fp.is_finite() && fm.is_finite() && hi > lo)
                          ? (fp.value() - fm.value()) / (hi - lo)
                          : 0.0;
        }
        bool accepted = false;
        step = std::min(step * 2.0, 1.0);
        for (int ls = 0; ls < 50; ++ls) {
            double moved2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                trial[i] = std::clamp(x[i] - step * grad[i], box[i].lo, box[i].hi);
                moved2 += (trial[i] - x[i]) * (trial[i] - x[i]);
            }
            if (moved2 == 0.0) {
                break;
            }
            const ExtReal ft = f(trial);
            if (ft.is_finite() && ft.value() <= fx.value() - 1e-4 * moved2 / step) {
                const double moved = std::sqrt(moved2);
                x = trial;
                fx = ft;
                accepted = moved > tol;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            break;
        }
    }
    return Candidate{x, fx};
}

// Finite-d search region: the z box, restricted to {z <= z_prev} when the
// dissipation forbids increases.
std::vector<Interval> search_box(const RisProblem& problem, CSpan z_prev) {
    std::vector<Interval> box = problem.z_box;
    if (problem.unidirectional) {
        for (std::size_t i = 0; i < box.size(); ++i) {
            box[i].hi = std::min(box[i].hi, z_prev[i]);
            box[i].lo = std::min(box[i].lo, box[i].hi);
        }
    }
    return box;
}

std::vector<std::size_t> default_resolution(const RisProblem& problem, const MinimizerConfig& cfg) {
    if (!cfg.grid_resolution.empty()) {
        if (cfg.grid_resolution.size() == 1 && problem.n_z > 1) {
            return std::vector<std::size_t>(problem.n_z, cfg.grid_resolution.front());
        }
        if (cfg.grid_resolution.size() != problem.n_z) {
            throw std::invalid_argument("grid_resolution has wrong dimension");
        }
        return cfg.grid_resolution;
    }
    const std::size_t r = problem.n_z == 1 ? 2001 : (problem.n_z == 2 ? 201 : 11);
    return std::vector<std::size_t>(problem.n_z, r);
}

// Tie-break: among values within the band of the best, prefer the candidate
// closest to z_prev.
void select_and_sort(const RisProblem& problem, CSpan z_prev, const MinimizerConfig& cfg,
                     std::vector<Candidate>& cands, MinResult& res) {
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return to_cmp(a.value) < to_cmp(b.value);
    });
    if (cands.empty() || cands.front().value.is_infinite()) {
        throw std::runtime_error("infeasible step: no admissible state with finite energy");
    }
    const double best = cands.front().value.value();
    const double band = cfg.near_optimal_band * (1.0 + std::abs(best));
    std::size_t pick = 0;
    double pick_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (!(cands[i].value.is_finite() && cands[i].value.value() <= best + band)) {
            continue;
        }
        const double dist = weighted_l2(problem, cands[i].z, z_prev);
        if (dist < pick_dist) {
            pick_dist = dist;
            pick = i;
        }
    }
    res.argmin = cands[pick].z;
    res.value = cands[pick].value;
    res.candidates = std::move(cands);
}

void add_candidate(std::vector<Candidate>& out, Candidate c) {
    for (auto& existing : out) {
        double dist = 0.0;
        for (std::size_t i = 0; i < c.z.size(); ++i) {
            dist = std::max(dist, std::abs(existing.z[i] - c.z[i]));
        }
        if (dist < 1e-9) {
            if (to_cmp(c.value) < to_cmp(existing.value)) {
                existing = std::move(c);
            }
            return;
        }
    }
    out.push_back(std::move(c));
}

MinResult grid_minimize(const RisProblem& problem, const Objective& f, CSpan z_prev,
                        const MinimizerConfig& cfg) {
    const std::vector<Interval> box = search_box(problem, z_prev);
    const std::vector<std::size_t> res_full = default_resolution(problem, cfg);
    const std::size_t n = problem.n_z;

    TensorGrid grid;
    Vec spacing(n);
    for (std::size_t d = 0; d < n; ++d) {
        const double s = problem.z_box[d].width() / static_cast<double>(res_full[d] - 1);
        spacing[d] = s > 0 ? s : 1.0;
        const double w = box[d].width();
        const std::size_t count =
            w > 0 ? static_cast<std::size_t>(std::ceil(w / spacing[d] - 1e-9)) + 1 : 1;
        std::vector<double> axis = linspace(box[d].lo, box[d].hi, std::max<std::size_t>(count, 1));
        if (box[d].contains(z_prev[d])) {
            axis.push_back(z_prev[d]);
            std::sort(axis.begin(), axis.end());
            axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
        }
        grid.axes.push_back(std::move(axis));
    }
    const std::size_t total = checked_total(grid.axes);
    std::vector<double> values(total);
    Vec x(n);
    for (std::size_t k = 0; k < total; ++k) {
        grid.point(k, x);
        values[k] = to_cmp(f(x));
    }

    // Grid local minima with respect to axis neighbours.
    std::vector<std::size_t> strides(n);
    std::size_t stride = 1;
    for (std::size_t d = n; d-- > 0;) {
        strides[d] = stride;
        stride *= grid.axes[d].size();
    }
    std::vector<std::size_t> local;
    for (std::size_t k = 0; k < total; ++k) {
        if (!std::isfinite(values[k])) {
            continue;
        }
        bool is_min = true;
        for (std::size_t d = 0; d < n && is_min; ++d) {
            const std::size_t idx = (k / strides[d]) % grid.axes[d].size();
            if (idx > 0 && values[k - strides[d]] < values[k]) {
                is_min = false;
            }
            if (idx + 1 < grid.axes[d].size() && values[k + strides[d]] < values[k]) {
                is_min = false;
            }
        }
        if (is_min) {
            local.push_back(k);
        }
    }
    std::stable_sort(local.begin(), local.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    if (local.size() > cfg.polish_candidates) {
        local.resize(cfg.polish_candidates);
    }

    std::vector<Candidate> cands;
    Vec half = spacing;
    for (std::size_t k : local) {
        grid.point(k, x);
        add_candidate(cands, polish(f, box, x, half, cfg.descent_tol));
    }
    Vec prev(z_prev.begin(), z_prev.end());
    if (in_box(problem, prev)) {
        add_candidate(cands, Candidate{prev, f(prev)});
    }

    MinResult res;
    res.method = MinMethod::grid;
    res.certified_global = n <= 2;
    double hmax = 0.0;
    for (double s : spacing) {
        hmax = std::max(hmax, s);
    }
    res.tolerance = hmax;
    select_and_sort(problem, z_prev, cfg, cands, res);
    return res;
}

MinResult multistart_minimize(const RisProblem& problem, const Objective& f, CSpan z_prev,
                              const MinimizerConfig& cfg) {
    const std::vector<Interval> box = search_box(problem, z_prev);
    const std::size_t n = problem.n_z;
    std::vector<Vec> starts;
    Vec prev(z_prev.begin(), z_prev.end());
    for (std::size_t d = 0; d < n; ++d) {
        prev[d] = std::clamp(prev[d], box[d].lo, box[d].hi);
    }
    starts.push_back(prev);
    Vec center(n);
    Vec corner(n);
    for (std::size_t d = 0; d < n; ++d) {
        center[d] = 0.5 * (box[d].lo + box[d].hi);
        corner[d] = box[d].lo;
    }
    starts.push_back(center);
    starts.push_back(corner);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t s = 0; s < cfg.multistart_count; ++s) {
        Vec p(n);
        for (std::size_t d = 0; d < n; ++d) {
            p[d] = box[d].lo + unit(rng) * box[d].width();
        }
        starts.push_back(std::move(p));
    }
    std::vector<Candidate> cands;
    Vec half(n);
    for (std::size_t d = 0; d < n; ++d) {
        half[d] = std::max(1e-3 * problem.z_box[d].width(), 1e-6);
    }
    for (const Vec& s : starts) {
        Candidate c = projected_descent(f, box, s, cfg.descent_tol);
        add_candidate(cands, polish(f, box, c.z, half, cfg.descent_tol));
    }
    if (in_box(problem, z_prev)) {
        add_candidate(cands, Candidate{Vec(z_prev.begin(), z_prev.end()), f(z_prev)});
    }
    MinResult res;
    res.method = MinMethod::multistart_descent;
    res.certified_global = false;
    res.tolerance = cfg.descent_tol;
    select_and_sort(problem, z_prev, cfg, cands, res);
    return res;
}

} // namespace

MinResult reduce_energy(const RisProblem& problem, double t, CSpan z) {
    check_z_dim(problem, z);
    MinResult res;
    res.method = MinMethod::closed_form;
    res.certified_global = true;
    if (!in_box(problem, z)) {
        res.value = ExtReal::infinity();
        return res;
    }
    if (problem.n_u == 0) {
        res.value = problem.energy(t, {}, z);
        return res;
    }
    if (problem.reducer) {
        Vec u(problem.n_u);
        res.value = problem.reducer(t, z, u);
        if (res.value.is_infinite()) {
            return res;
        }
        res.argmin = u;
        res.u = std::move(u);
        return res;
    }
    return descend_u(problem, t, z);
}

ExtReal reduced_energy(const RisProblem& problem, double t, CSpan z) {
    if (!in_box(problem, z)) {
        return ExtReal::infinity();
    }
    if (problem.n_u == 0) {
        return problem.energy(t, {}, z);
    }
    if (problem.reducer) {
        return problem.reducer(t, z, {});
    }
    return reduce_energy(problem, t, z).value;
}

MinResult oracle_grid_min(const Objective& objective, const std::vector<Interval>& box,
                          const std::vector<std::size_t>& resolution) {
    if (resolution.size() != box.size()) {
        throw std::invalid_argument("oracle_grid_min: resolution/box dimension mismatch");
    }
    TensorGrid grid;
    for (std::size_t d = 0; d < box.size(); ++d) {
        if (resolution[d] < 2) {
            throw std::invalid_argument("oracle_grid_min: resolution must be at least 2");
        }
        if (!(box[d].lo <= box[d].hi) || !std::isfinite(box[d].lo) || !std::isfinite(box[d].hi)) {
            throw std::invalid_argument("oracle_grid_min: box must be bounded");
        }
        grid.axes.push_back(linspace(box[d].lo, box[d].hi, resolution[d]));
    }
    const std::size_t total = checked_total(grid.axes);
    Vec x(box.size());
    MinResult res;
    res.method = MinMethod::grid;
    res.certified_global = true;
    double hmax = 0.0;
    for (std::size_t d = 0; d < box.size(); ++d) {
        hmax = std::max(hmax, box[d].width() / static_cast<double>(resolution[d] - 1));
    }
    res.tolerance = hmax;
    for (std::size_t k = 0; k < total; ++k) {
        grid.point(k, x);
        const ExtReal v = objective(x);
        if (k == 0 || to_cmp(v) < to_cmp(res.value)) {
            res.value = v;
            res.argmin = x;
        }
    }
    return res;
}

Objective corrected_objective(const RisProblem& problem, double t, CSpan z_prev) {
    Vec prev(z_prev.begin(), z_prev.end());
    return [&problem, t, prev = std::move(prev)](CSpan z) -> ExtReal {
        const ExtReal d = problem.dissipation(prev, z);
        if (d.is_infinite()) {
            return d;
        }
        const ExtReal delta = eval_correction(problem, prev, z);
        if (delta.is_infinite()) {
            return delta;
        }
        const ExtReal i = reduced_energy(problem, t, z);
        return i + d + delta;
    };
}

MinResult global_min_corrected(const RisProblem& problem, double t, CSpan z_prev,
                               const MinimizerConfig& cfg) {
    check_z_dim(problem, z_prev);
    const Objective f = corrected_objective(problem, t, z_prev);
    MinResult res;
    MinMethod method = cfg.method;
    if (method == MinMethod::automatic) {
        method = problem.n_z <= 2 ? MinMethod::grid : MinMethod::multistart_descent;
    }
    switch (method) {
    case MinMethod::closed_form: {
        if (!problem.step_solver) {
            throw std::invalid_argument(problem.name + ": no closed-form step available");
        }
        auto z = problem.step_solver(t, z_prev, problem.correction);
        if (!z) {
            throw std::invalid_argument(problem.name + ": no closed-form step for correction " +
                                        problem.correction.describe());
        }
        res.argmin = *z;
        res.value = f(*z);
        if (res.value.is_infinite()) {
            throw std::runtime_error("infeasible step: closed-form step has infinite value");
        }
        res.method = MinMethod::closed_form;
        res.certified_global = false;
        res.tolerance = 0.0;
        res.candidates.push_back(Candidate{res.argmin, res.value});
        break;
    }
    case MinMethod::grid:
        res = grid_minimize(problem, f, z_prev, cfg);
        break;
    case MinMethod::multistart_descent:
    case MinMethod::automatic:
        res = multistart_minimize(problem, f, z_prev, cfg);
        break;
    }
    res.u = reduce_energy(problem, t, res.argmin).u;
    return res;
}

} // namespace vesolve
