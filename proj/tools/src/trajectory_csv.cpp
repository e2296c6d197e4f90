#include "trajectory_csv.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace vesolve::cli {

std::string format_number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (v == 0.0) {
        return "0";
    }
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::vector<std::string> csv_columns(std::size_t n_z, std::size_t n_u) {
    std::vector<std::string> cols{"t"};
    for (std::size_t i = 1; i <= n_z; ++i) {
        cols.push_back("z_" + std::to_string(i));
    }
    for (std::size_t i = 1; i <= n_u; ++i) {
        cols.push_back("u_" + std::to_string(i));
    }
    for (const char* c : {"energy", "power", "step_dissipation", "cum_var_d", "residual_stability",
                          "jump_flag"}) {
        cols.emplace_back(c);
    }
    return cols;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const CsvExtras& extras) {
    const auto& nodes = traj.nodes();
    const std::size_t n_z = nodes.front().state.z.size();
    const std::size_t n_u = nodes.front().state.u.size();
    out << csv_version_line << '\n';
    const auto cols = csv_columns(n_z, n_u);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        const auto& node = nodes[n];
        out << format_number(node.t);
        for (double z : node.state.z) {
            out << ',' << format_number(z);
        }
        for (double u : node.state.u) {
            out << ',' << format_number(u);
        }
        out << ',' << format_number(node.energy) << ',' << format_number(node.power) << ','
            << format_number(node.step_dissipation) << ',' << format_number(extras.cum_var_d[n])
            << ',' << format_number(extras.residual_stability[n]) << ',' << extras.jump_flag[n]
            << '\n';
    }
}

DiscreteTrajectory read_trajectory_csv(std::istream& in, std::size_t n_z, std::size_t n_u) {
    std::string line;
    if (!std::getline(in, line)) {
        throw CsvError("empty trajectory file");
    }
    if (line != csv_version_line) {
        throw CsvError("unsupported trajectory version line '" + line + "'");
    }
    if (!std::getline(in, line)) {
        throw CsvError("missing column header");
    }
    const auto cols = csv_columns(n_z, n_u);
    {
        std::stringstream ss(line);
        std::string c;
        std::size_t i = 0;
        while (std::getline(ss, c, ',')) {
            if (i >= cols.size() || c != cols[i]) {
                throw CsvError("column header does not match the model dimensions");
            }
            ++i;
        }
        if (i != cols.size()) {
            throw CsvError("column header does not match the model dimensions");
        }
    }
    DiscreteTrajectory traj;
    std::size_t row = 2;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) {
            continue;
        }
        std::vector<double> v;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(c == "inf" ? std::numeric_limits<double>::infinity() : std::stod(c, &used));
                if (c != "inf" && used != c.size()) {
                    throw std::invalid_argument(c);
                }
            } catch (const std::exception&) {
                throw CsvError("row " + std::to_string(row) + ": bad number '" + c + "'");
            }
        }
        if (v.size() != cols.size()) {
            throw CsvError("row " + std::to_string(row) + ": expected " +
                           std::to_string(cols.size()) + " fields");
        }
        TrajectoryNode node;
        std::size_t k = 0;
        node.t = v[k++];
        node.state.z.assign(v.begin() + static_cast<long>(k), v.begin() + static_cast<long>(k + n_z));
        k += n_z;
        node.state.u.assign(v.begin() + static_cast<long>(k), v.begin() + static_cast<long>(k + n_u));
        k += n_u;
        node.energy = v[k++];
        node.power = v[k++];
        node.step_dissipation = v[k++];
        traj.nodes.push_back(std::move(node));
    }
    if (traj.nodes.empty()) {
        throw CsvError("trajectory has no rows");
    }
    if (traj.nodes.size() > 1) {
        traj.tau = traj.nodes[1].t - traj.nodes[0].t;
    }
    return traj;
}

} // namespace vesolve::cli
