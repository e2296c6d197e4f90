#include "vesolve/jump.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace vesolve {

double JumpChain::cost() const {
    double c = 0.0;
    for (double v : link_diss) {
        c += v;
    }
    for (double v : link_gap) {
        c += v;
    }
    for (double v : point_residual) {
        c += v;
    }
    return c;
}

namespace {

double max_abs_diff(CSpan a, CSpan b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

double residual(const RisProblem& problem, double t, CSpan z, const StabilityConfig& cfg) {
    return residual_stability(problem, t, z, cfg).residual;
}

// Memo table for R(t, .) on grid nodes; safe to share between workers.
class ResidualCache {
public:
    ResidualCache(const RisProblem& problem, double t, const StabilityConfig& cfg)
        : problem_(problem), t_(t), cfg_(cfg) {}

    double get(std::size_t key, CSpan z) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = values_.find(key);
            if (it != values_.end()) {
                return it->second;
            }
        }
        const double r = residual(problem_, t_, z, cfg_);
        std::lock_guard<std::mutex> lock(mutex_);
        values_[key] = r;
        return r;
    }

private:
    const RisProblem& problem_;
    double t_;
    const StabilityConfig& cfg_;
    std::mutex mutex_;
    std::unordered_map<std::size_t, double> values_;
};

// Dijkstra over a tensor grid with the endpoints inserted. Edge weight is
// d + delta, leaving a node costs R at that node.
std::pair<double, std::vector<Vec>> grid_shortest_path(const RisProblem& problem, double t,
                                                       CSpan z_minus, CSpan z_plus,
                                                       const JumpSearchConfig& cfg) {
    const std::size_t n = problem.n_z;
    const std::size_t res = n == 1 ? cfg.dp_resolution_1d : cfg.dp_resolution_2d;
    std::vector<Vec> nodes;
    std::vector<std::vector<double>> axes(n);
    for (std::size_t d = 0; d < n; ++d) {
        Interval b = problem.z_box[d];
        if (cfg.dp_padding >= 0.0) {
            const double lo = std::min(z_minus[d], z_plus[d]);
            const double hi = std::max(z_minus[d], z_plus[d]);
            const double pad = cfg.dp_padding * (hi - lo);
            b.lo = std::max(b.lo, lo - pad);
            b.hi = std::min(b.hi, hi + pad);
        }
        const std::size_t count = b.width() > 0.0 ? res : 1;
        for (std::size_t k = 0; k < count; ++k) {
            axes[d].push_back(count == 1 ? b.lo
                                         : b.lo + b.width() * static_cast<double>(k) /
                                                      static_cast<double>(count - 1));
        }
    }
    std::size_t total = 1;
    for (const auto& a : axes) {
        total *= a.size();
    }
    nodes.reserve(total + 2);
    nodes.emplace_back(z_minus.begin(), z_minus.end());
    nodes.emplace_back(z_plus.begin(), z_plus.end());
    Vec x(n);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (std::size_t d = n; d-- > 0;) {
            x[d] = axes[d][rest % axes[d].size()];
            rest /= axes[d].size();
        }
        if (max_abs_diff(x, z_minus) < 1e-14 || max_abs_diff(x, z_plus) < 1e-14) {
            continue;
        }
        nodes.push_back(x);
    }
    const std::size_t v = nodes.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(v, inf);
    std::vector<std::size_t> parent(v, v);
    std::vector<char> done(v, 0);
    ResidualCache cache(problem, t, cfg.stability);
    dist[0] = 0.0;
    for (;;) {
        std::size_t u = v;
        double best = inf;
        for (std::size_t i = 0; i < v; ++i) {
            if (!done[i] && dist[i] < best) {
                best = dist[i];
                u = i;
            }
        }
        if (u == v || u == 1) {
            break;
        }
        done[u] = 1;
        const double leave = dist[u] + cache.get(u, nodes[u]);
        for (std::size_t w = 0; w < v; ++w) {
            if (done[w] || w == u) {
                continue;
            }
            const ExtReal edge = eval_corrected_dissipation(problem, nodes[u], nodes[w]);
            if (edge.is_infinite()) {
                continue;
            }
            const double cand = leave + edge.value();
            if (cand < dist[w]) {
                dist[w] = cand;
                parent[w] = u;
            }
        }
    }
    if (!std::isfinite(dist[1])) {
        return {inf, {}};
    }
    std::vector<Vec> path;
    for (std::size_t i = 1; i != v; i = parent[i]) {
        path.push_back(nodes[i]);
        if (i == 0) {
            break;
        }
    }
    std::reverse(path.begin(), path.end());
    return {dist[1], path};
}

// Residual below which a sampled point counts as stable on a sliding arc.
constexpr double sliding_arc_tol = 1e-9;

// Consecutive sliding points bound a continuous stable arc, which has no hole
// and therefore no correction term.
double link_gap_of(const RisProblem& problem, const JumpChain& c, std::size_t k) {
    if (c.kinds[k - 1] == PointKind::sliding && c.kinds[k] == PointKind::sliding) {
        return 0.0;
    }
    return eval_correction(problem, c.points[k - 1], c.points[k]).to_double();
}

JumpChain sliding_chain(const RisProblem& problem, double t, CSpan a, CSpan b, std::size_t k,
                        const StabilityConfig& cfg) {
    std::vector<Vec> pts;
    for (std::size_t i = 0; i <= k; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(k);
        Vec p(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) {
            p[j] = i == k ? b[j] : a[j] + s * (b[j] - a[j]);
        }
        pts.push_back(std::move(p));
    }
    std::vector<PointKind> kinds(pts.size(), PointKind::sliding);
    return make_chain(problem, t, std::move(pts), std::move(kinds), cfg);
}

} // namespace

JumpChain make_chain(const RisProblem& problem, double t, std::vector<Vec> points,
                     std::vector<PointKind> kinds, const StabilityConfig& cfg) {
    if (points.empty()) {
        throw std::invalid_argument("make_chain: a chain needs at least one point");
    }
    if (kinds.size() != points.size()) {
        kinds.assign(points.size(), PointKind::viscous);
    }
    JumpChain c;
    c.points = std::move(points);
    c.kinds = std::move(kinds);
    for (std::size_t k = 0; k + 1 < c.points.size(); ++k) {
        c.point_residual.push_back(residual(problem, t, c.points[k], cfg));
    }
    // A point that is not stable cannot lie on a stable arc.
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        if (c.kinds[k] != PointKind::sliding) {
            continue;
        }
        const double r = k < c.point_residual.size() ? c.point_residual[k]
                                                     : residual(problem, t, c.points[k], cfg);
        if (r > sliding_arc_tol) {
            c.kinds[k] = PointKind::viscous;
        }
    }
    for (std::size_t k = 1; k < c.points.size(); ++k) {
        c.link_diss.push_back(eval_dissipation(problem, c.points[k - 1], c.points[k]).to_double());
        c.link_gap.push_back(link_gap_of(problem, c, k));
    }
    return c;
}

double transition_cost(const RisProblem& problem, double t, const JumpChain& chain,
                       const StabilityConfig& cfg) {
    const std::size_t k = chain.points.empty() ? 0 : chain.points.size() - 1;
    if (chain.points.empty() || chain.link_diss.size() != k || chain.link_gap.size() != k ||
        chain.point_residual.size() != k || chain.kinds.size() != k + 1) {
        throw std::invalid_argument("transition_cost: inconsistent chain sizes");
    }
    auto agree = [](double stored, double fresh) {
        if (std::isinf(stored) || std::isinf(fresh)) {
            return std::isinf(stored) && std::isinf(fresh);
        }
        return std::abs(stored - fresh) <= 1e-9;
    };
    for (std::size_t i = 1; i <= k; ++i) {
        const double d = eval_dissipation(problem, chain.points[i - 1], chain.points[i]).to_double();
        const double g = link_gap_of(problem, chain, i);
        if (!agree(chain.link_diss[i - 1], d) || !agree(chain.link_gap[i - 1], g)) {
            throw std::invalid_argument("transition_cost: stored link values are inconsistent");
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!agree(chain.point_residual[i], residual(problem, t, chain.points[i], cfg))) {
            throw std::invalid_argument("transition_cost: stored residuals are inconsistent");
        }
    }
    return chain.cost();
}

JumpChain viscous_chain(const RisProblem& problem, double t, CSpan z_start,
                        std::size_t max_steps, const StabilityConfig& cfg) {
    std::vector<Vec> pts{Vec(z_start.begin(), z_start.end())};
    bool converged = false;
    for (std::size_t s = 0; s < max_steps; ++s) {
        const MinResult m = global_min_corrected(problem, t, pts.back(), cfg.minimizer);
        if (max_abs_diff(m.argmin, pts.back()) < 1e-10) {
            converged = true;
            break;
        }
        pts.push_back(m.argmin);
    }
    if (!converged && max_steps == 0) {
        converged = residual(problem, t, pts.back(), cfg) == 0.0;
    }
    JumpChain c = make_chain(problem, t, std::move(pts), {}, cfg);
    c.converged = converged;
    return c;
}

JumpCostResult jump_cost(const RisProblem& problem, double t, CSpan z_minus, CSpan z_plus,
                         const JumpSearchConfig& cfg) {
    check_z_dim(problem, z_minus);
    check_z_dim(problem, z_plus);
    JumpCostResult out;
    const ExtReal lower = eval_dissipation(problem, z_minus, z_plus);
    out.bound.lower = lower.to_double();
    if (max_abs_diff(z_minus, z_plus) == 0.0) {
        out.bound.upper = 0.0;
        out.bound.gap = 0.0;
        out.bound.lower = 0.0;
        out.bound.dp_value = 0.0;
        out.bound.dp_gap = 0.0;
        out.bound.grid_supported = problem.n_z <= 2;
        out.witness = make_chain(problem, t, {Vec(z_minus.begin(), z_minus.end())}, {},
                                 cfg.stability);
        out.candidates.emplace_back("direct", 0.0);
        return out;
    }
    if (lower.is_infinite()) {
        out.witness = make_chain(problem, t, {Vec(z_minus.begin(), z_minus.end())}, {},
                                 cfg.stability);
        return out;
    }

    auto consider = [&](const std::string& name, JumpChain chain) {
        const double c = chain.cost();
        out.candidates.emplace_back(name, c);
        if (c < out.bound.upper) {
            out.bound.upper = c;
            out.witness = std::move(chain);
        }
    };

    consider("direct", make_chain(problem, t,
                                  {Vec(z_minus.begin(), z_minus.end()),
                                   Vec(z_plus.begin(), z_plus.end())},
                                  {PointKind::viscous, PointKind::viscous}, cfg.stability));

    // Viscous chain from z_minus, leaving for z_plus after each prefix.
    {
        const JumpChain vc = viscous_chain(problem, t, z_minus, cfg.viscous_max_steps, cfg.stability);
        double prefix = 0.0;
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < vc.points.size(); ++j) {
            if (j > 0) {
                prefix += vc.link_diss[j - 1] + vc.link_gap[j - 1];
            }
            const double rj = j < vc.point_residual.size()
                                  ? vc.point_residual[j]
                                  : residual(problem, t, vc.points[j], cfg.stability);
            const ExtReal tail = eval_corrected_dissipation(problem, vc.points[j], z_plus);
            if (tail.is_infinite()) {
                continue;
            }
            const double total = max_abs_diff(vc.points[j], z_plus) == 0.0
                                     ? prefix
                                     : prefix + rj + tail.value();
            if (total < best) {
                best = total;
                best_j = j;
            }
        }
        if (std::isfinite(best)) {
            std::vector<Vec> pts(vc.points.begin(), vc.points.begin() + static_cast<long>(best_j) + 1);
            if (max_abs_diff(pts.back(), z_plus) > 0.0) {
                pts.emplace_back(z_plus.begin(), z_plus.end());
            }
            consider("viscous", make_chain(problem, t, std::move(pts), {}, cfg.stability));
        }
    }

    if (cfg.use_dp && problem.n_z <= 2) {
        auto [value, path] = grid_shortest_path(problem, t, z_minus, z_plus, cfg);
        out.bound.dp_value = value;
        out.bound.grid_supported = std::isfinite(value);
        if (std::isfinite(value)) {
            consider("dp", make_chain(problem, t, std::move(path), {}, cfg.stability));
        }
    }

    if (cfg.sliding_points >= 2) {
        JumpChain fine = sliding_chain(problem, t, z_minus, z_plus, cfg.sliding_points, cfg.stability);
        const JumpChain coarse =
            sliding_chain(problem, t, z_minus, z_plus, cfg.sliding_points / 2, cfg.stability);
        out.sliding_k_change = std::abs(fine.cost() - coarse.cost());
        consider("sliding", std::move(fine));
    }

    // c >= d holds exactly; chains that undercut d only do so by rounding.
    out.bound.upper = std::max(out.bound.upper, out.bound.lower);
    out.bound.gap = out.bound.upper - out.bound.lower;
    if (std::isfinite(out.bound.dp_value)) {
        out.bound.dp_gap = std::max(0.0, out.bound.dp_value - out.bound.upper);
    }
    return out;
}

double incremental_cost(const RisProblem& problem, double t, CSpan z_minus, CSpan z_plus,
                        const JumpSearchConfig& cfg) {
    const JumpCostResult r = jump_cost(problem, t, z_minus, z_plus, cfg);
    if (!std::isfinite(r.bound.upper)) {
        return std::numeric_limits<double>::infinity();
    }
    return std::max(0.0, r.bound.gap);
}

double dissipation_variation(const Trajectory& traj, double t0, double t1) {
    if (t1 < t0) {
        throw std::invalid_argument("variation: t1 < t0");
    }
    const auto& nodes = traj.nodes();
    double var = 0.0;
    for (std::size_t n = 1; n < nodes.size(); ++n) {
        const double s = nodes[n - 1].t;
        if (s >= t0 && s < t1) {
            var += nodes[n].step_dissipation;
        }
    }
    return var;
}

double augmented_variation(const Trajectory& traj, double t0, double t1,
                           const std::vector<double>& jump_increments) {
    if (jump_increments.size() != traj.jumps().size()) {
        throw std::invalid_argument("augmented_variation: one increment per jump required");
    }
    double var = dissipation_variation(traj, t0, t1);
    const auto& nodes = traj.nodes();
    for (std::size_t j = 0; j < traj.jumps().size(); ++j) {
        const double s = nodes[traj.jumps()[j].first_step - 1].t;
        if (s >= t0 && s < t1) {
            var += jump_increments[j];
        }
    }
    return var;
}

double augmented_variation(const RisProblem& problem, const Trajectory& traj, double t0,
                           double t1, const JumpSearchConfig& cfg) {
    std::vector<double> inc;
    const auto& nodes = traj.nodes();
    for (const auto& j : traj.jumps()) {
        const double s = nodes[j.first_step - 1].t;
        if (s >= t0 && s < t1) {
            inc.push_back(incremental_cost(problem, j.t, j.z_left, j.z_right, cfg));
        } else {
            inc.push_back(0.0);
        }
    }
    return augmented_variation(traj, t0, t1, inc);
}

} // namespace vesolve
