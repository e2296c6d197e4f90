#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace vesolve::cli;
    CLI::App app{"Rate-independent evolution solver: incremental schemes, jump costs, certificates"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "Run configuration (INI)")->required();
        sub->add_option("--out-dir", opt.out_dir, "Directory for output files");
        sub->add_option("--seed", seed, "Override the configuration seed");
        sub->add_option("--threads", opt.threads, "Worker threads");
    };

    auto* solve = app.add_subcommand("solve", "Run the configured scheme and certify the result");
    add_common(solve);

    std::string trajectory;
    auto* verify = app.add_subcommand("verify", "Certify a trajectory CSV against a configuration");
    add_common(verify);
    verify->add_option("trajectory", trajectory, "Trajectory CSV written by solve")->required();

    double t = 0.0;
    std::string z_minus;
    std::string z_plus;
    auto* jumpcost = app.add_subcommand("jumpcost", "Bound the jump cost between two states");
    add_common(jumpcost);
    jumpcost->add_option("--t", t, "Time")->required();
    jumpcost->add_option("--z-minus", z_minus, "Left state, comma separated")->required();
    jumpcost->add_option("--z-plus", z_plus, "Right state, comma separated")->required();

    std::string axis;
    std::string values;
    auto* sweep = app.add_subcommand("sweep", "Run one solve per parameter value");
    add_common(sweep);
    sweep->add_option("--axis", axis, "tau, mu, epsilon or k")
        ->required()
        ->check(CLI::IsMember({"tau", "mu", "epsilon", "k"}));
    sweep->add_option("--values", values, "Comma-separated values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_error;
    }
    for (auto* sub : {solve, verify, jumpcost, sweep}) {
        if (sub->parsed() && sub->count("--seed") > 0) {
            opt.seed = seed;
        }
    }

    if (solve->parsed()) {
        return cmd_solve(opt, std::cout, std::cerr);
    }
    if (verify->parsed()) {
        return cmd_verify(opt, trajectory, std::cout, std::cerr);
    }
    if (jumpcost->parsed()) {
        return cmd_jumpcost(opt, t, z_minus, z_plus, std::cout, std::cerr);
    }
    return cmd_sweep(opt, axis, values, std::cout, std::cerr);
}
