#include "run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace vesolve::cli {

namespace pt = boost::property_tree;

namespace {

std::string where(const std::string& section, const std::string& key) {
    return section.empty() ? key : "[" + section + "] " + key;
}

double to_double(const std::string& section, const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where(section, key) + ": expected a number, got '" + text + "'");
    }
}

Vec to_list(const std::string& section, const std::string& key, const std::string& text) {
    Vec out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) {
            throw ConfigError(where(section, key) + ": empty list entry");
        }
        out.push_back(to_double(section, key, item.substr(b, e - b + 1)));
    }
    if (out.empty()) {
        throw ConfigError(where(section, key) + ": empty list");
    }
    return out;
}

bool to_bool(const std::string& section, const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError(where(section, key) + ": expected true/false, got '" + text + "'");
}

// Reads one section, handing each key to its setter and rejecting the rest.
class Section {
public:
    Section(const pt::ptree& root, std::string name) : name_(std::move(name)) {
        if (auto child = root.get_child_optional(name_)) {
            for (const auto& [k, v] : *child) {
                values_[k] = v.data();
            }
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }

    template <typename Fn>
    void on(const std::string& key, Fn&& fn) {
        auto it = values_.find(key);
        if (it != values_.end()) {
            fn(it->second);
            used_.insert(key);
        }
    }

    void number(const std::string& key, double& out) {
        on(key, [&](const std::string& v) { out = to_double(name_, key, v); });
    }

    void count(const std::string& key, std::size_t& out) {
        on(key, [&](const std::string& v) {
            const double d = to_double(name_, key, v);
            if (d < 0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
                throw ConfigError(where(name_, key) + ": expected a nonnegative integer");
            }
            out = static_cast<std::size_t>(d);
        });
    }

    void list(const std::string& key, Vec& out) {
        on(key, [&](const std::string& v) { out = to_list(name_, key, v); });
    }

    void text(const std::string& key, std::string& out) {
        on(key, [&](const std::string& v) { out = v; });
    }

    void flag(const std::string& key, bool& out) {
        on(key, [&](const std::string& v) { out = to_bool(name_, key, v); });
    }

    void reject_unused() const {
        for (const auto& [k, v] : values_) {
            if (!used_.count(k)) {
                throw ConfigError(where(name_, k) + ": unknown key");
            }
        }
    }

    [[nodiscard]] const std::string& name() const { return name_; }

private:
    std::string name_;
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

CorrectionSpec parse_correction(Section& s) {
    std::string kind = "none";
    s.text("correction", kind);
    double h_coef = 1.0;
    double h_exp = 2.0;
    double mu = 0.0;
    std::string tilde = "euclidean";
    double q = 2.0;
    double gamma = 2.0;
    s.number("h_coef", h_coef);
    s.number("h_exp", h_exp);
    s.number("mu", mu);
    s.text("tilde", tilde);
    s.number("q", q);
    s.number("gamma", gamma);
    if (kind == "none") {
        return CorrectionSpec::none();
    }
    if (kind == "h_power") {
        return CorrectionSpec::trivial_h(HCurve::power(h_coef, h_exp));
    }
    if (kind == "quadratic") {
        if (tilde != "euclidean" && tilde != "dissipation") {
            throw ConfigError(where(s.name(), "tilde") + ": expected euclidean or dissipation");
        }
        return CorrectionSpec::quadratic_mu(
            mu, tilde == "euclidean" ? DistanceSelector::euclidean : DistanceSelector::dissipation);
    }
    if (kind == "power_lq") {
        return CorrectionSpec::power_lq(q, gamma);
    }
    throw ConfigError(where(s.name(), "correction") + ": unknown correction '" + kind + "'");
}

void parse_model(const pt::ptree& root, ModelConfig& m) {
    Section s(root, "model");
    std::string kind;
    s.text("kind", kind);
    if (kind == "toy1d") {
        m.kind = ModelKind::toy1d;
        auto& t = m.toy;
        std::string well = "convex";
        std::string form = "tilted";
        s.text("well", well);
        s.text("form", form);
        if (well == "convex") {
            t.well = WellKind::convex;
        } else if (well == "doublewell") {
            t.well = WellKind::doublewell;
        } else if (well == "flat") {
            t.well = WellKind::flat;
        } else {
            throw ConfigError("[model] well: unknown well '" + well + "'");
        }
        if (form == "tilted") {
            t.form = LoadingForm::tilted;
        } else if (form == "centered") {
            t.form = LoadingForm::centered;
        } else {
            throw ConfigError("[model] form: unknown loading form '" + form + "'");
        }
        s.number("a", t.a);
        s.number("b", t.b);
        s.number("w", t.w);
        s.number("level", t.level);
        s.number("l0", t.l0);
        s.number("l1", t.l1);
        s.number("kappa", t.kappa);
        s.number("z_lo", t.box.lo);
        s.number("z_hi", t.box.hi);
        s.number("horizon", t.horizon);
    } else if (kind == "damage1d") {
        m.kind = ModelKind::damage1d;
        auto& d = m.damage;
        s.count("cells", d.cells);
        s.list("stiffness", d.stiffness);
        s.number("eta", d.eta);
        s.number("r", d.r);
        s.number("gradient_weight", d.gradient_weight);
        s.list("kappa", d.kappa);
        s.number("wd0", d.wd0);
        s.number("wd1", d.wd1);
        s.number("horizon", d.horizon);
    } else if (kind == "plasticity0d") {
        m.kind = ModelKind::plasticity0d;
        auto& p = m.plasticity;
        s.number("C", p.C);
        s.number("sigma_y", p.sigma_y);
        s.number("eps0", p.eps0);
        s.number("eps1", p.eps1);
        s.number("amp", p.amp);
        s.number("omega", p.omega);
        s.number("z_lo", p.box.lo);
        s.number("z_hi", p.box.hi);
        s.number("horizon", p.horizon);
    } else if (kind == "delamination0d") {
        m.kind = ModelKind::delamination0d;
        auto& d = m.delamination;
        s.number("k_minus", d.k_minus);
        s.number("k_plus", d.k_plus);
        s.flag("brittle", d.brittle);
        s.number("k", d.k);
        s.number("a0", d.a0);
        s.number("kappa", d.kappa);
        s.number("l0", d.l0);
        s.number("l1", d.l1);
        s.number("z_tol", d.z_tol);
        s.number("horizon", d.horizon);
    } else if (kind.empty()) {
        throw ConfigError("[model] kind: missing");
    } else {
        throw ConfigError("[model] kind: unknown model '" + kind + "'");
    }
    s.reject_unused();
}

void parse_scheme(const pt::ptree& root, SchemeConfig& c) {
    Section s(root, "scheme");
    std::string kind = "VE";
    s.text("kind", kind);
    try {
        c.scheme = parse_scheme_kind(kind);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[scheme] kind: ") + e.what());
    }
    s.number("epsilon", c.epsilon);
    s.number("tau", c.tau);
    s.list("initial_z", c.initial_z);
    if (s.has("horizon")) {
        double h = 0.0;
        s.number("horizon", h);
        c.horizon = h;
    }
    c.correction = parse_correction(s);
    s.reject_unused();
}

void parse_minimizer(const pt::ptree& root, MinimizerConfig& m) {
    Section s(root, "minimizer");
    std::string method = "automatic";
    s.text("method", method);
    try {
        m.method = parse_min_method(method);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[minimizer] method: ") + e.what());
    }
    if (s.has("grid_resolution")) {
        Vec r;
        s.list("grid_resolution", r);
        m.grid_resolution.clear();
        for (double v : r) {
            if (v < 2 || v != static_cast<double>(static_cast<std::size_t>(v))) {
                throw ConfigError("[minimizer] grid_resolution: integers >= 2 expected");
            }
            m.grid_resolution.push_back(static_cast<std::size_t>(v));
        }
    }
    s.count("multistart_count", m.multistart_count);
    s.number("descent_tol", m.descent_tol);
    s.number("near_optimal_band", m.near_optimal_band);
    s.count("polish_candidates", m.polish_candidates);
    s.reject_unused();
}

void parse_verify(const pt::ptree& root, VerifyConfig& v) {
    Section s(root, "verify");
    std::string mode = "auto";
    s.text("mode", mode);
    if (mode == "auto") {
        v.mode = VerifyMode::automatic;
    } else if (mode == "VE") {
        v.mode = VerifyMode::ve;
    } else if (mode == "E") {
        v.mode = VerifyMode::e;
    } else {
        throw ConfigError("[verify] mode: expected auto, VE or E");
    }
    auto& t = v.tol;
    s.number("minimality", t.minimality);
    s.number("stability", t.stability);
    s.number("balance", t.balance);
    s.number("jump", t.jump);
    s.count("probes", t.probes);
    s.number("jump_threshold", t.detection.threshold);
    s.count("dp_resolution", t.search.dp_resolution_1d);
    s.number("dp_padding", t.search.dp_padding);
    s.count("sliding_points", t.search.sliding_points);
    s.reject_unused();
}

void parse_output(const pt::ptree& root, OutputConfig& o) {
    Section s(root, "output");
    s.text("trajectory", o.trajectory);
    s.text("certificate", o.certificate);
    s.reject_unused();
}

RunConfig from_tree(const pt::ptree& root) {
    static const std::set<std::string> sections{"model", "scheme", "minimizer", "verify", "output"};
    RunConfig cfg;
    for (const auto& [k, v] : root) {
        if (v.empty()) {
            if (k != "seed") {
                throw ConfigError(k + ": unknown key");
            }
        } else if (!sections.count(k)) {
            throw ConfigError("[" + k + "]: unknown section");
        }
    }
    if (auto seed = root.get_optional<std::string>("seed")) {
        const double s = to_double("", "seed", *seed);
        if (s < 0 || s != static_cast<double>(static_cast<std::uint64_t>(s))) {
            throw ConfigError("seed: expected a nonnegative integer");
        }
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    parse_model(root, cfg.model);
    parse_scheme(root, cfg.scheme);
    parse_minimizer(root, cfg.scheme.minimizer);
    parse_verify(root, cfg.verify);
    parse_output(root, cfg.output);
    cfg.scheme.minimizer.seed = cfg.seed;
    cfg.verify.tol.search.stability.minimizer = cfg.scheme.minimizer;

    auto errors = validate(cfg.scheme);
    if (!errors.empty()) {
        throw ConfigError("[scheme] " + errors.front());
    }
    try {
        (void)build_problem(cfg);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[model] ") + e.what());
    }
    return cfg;
}

} // namespace

RunConfig parse_run_config_text(const std::string& text) {
    pt::ptree root;
    std::istringstream in(text);
    try {
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
    }
    return from_tree(root);
}

RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_run_config_text(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

RisProblem build_problem(const RunConfig& cfg) {
    const CorrectionSpec corr = scheme_correction(cfg.scheme);
    switch (cfg.model.kind) {
    case ModelKind::toy1d: {
        Toy1dSpec s = cfg.model.toy;
        s.correction = corr;
        return make_toy1d(s);
    }
    case ModelKind::damage1d: {
        Damage1dSpec s = cfg.model.damage;
        s.correction = corr;
        return make_damage1d(s);
    }
    case ModelKind::plasticity0d: {
        Plasticity0dSpec s = cfg.model.plasticity;
        s.correction = corr;
        return make_plasticity0d(s);
    }
    case ModelKind::delamination0d: {
        Delamination0dSpec s = cfg.model.delamination;
        s.correction = corr;
        return make_delamination0d(s, s.brittle);
    }
    }
    throw ConfigError("unknown model kind");
}

bool verify_as_ve(const RunConfig& cfg) {
    switch (cfg.verify.mode) {
    case VerifyMode::ve:
        return true;
    case VerifyMode::e:
        return false;
    case VerifyMode::automatic:
        return cfg.scheme.scheme != SchemeKind::energetic;
    }
    return true;
}

} // namespace vesolve::cli
