#include "bbm/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"bbm-lab: generalized BBM equation workbench"};
    app.require_subcommand(1);

    std::string sim_cfg;
    auto* simulate = app.add_subcommand("simulate", "evolve the initial data and track conserved quantities");
    simulate->add_option("config", sim_cfg, "run configuration file")->required();

    std::string q_expr;
    auto* verify = app.add_subcommand("verify-currents", "certify characteristics with exact arithmetic");
    auto* q_opt = verify->add_option("--q", q_expr, "characteristic Q to verify, e.g. \"f(u) - u_tx\"");

    std::string exp_name;
    std::string exp_cfg;
    auto* experiment = app.add_subcommand("experiment", "run a numerical witness experiment");
    experiment->add_option("name", exp_name, "ucp-leakage | segment-identity | vanish-slice | convergence")->required();
    experiment->add_option("config", exp_cfg, "run configuration file")->required();

    std::string conv_cfg;
    auto* convergence = app.add_subcommand("convergence", "dt/resolution convergence study");
    convergence->add_option("config", conv_cfg, "run configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : bbm::kExitConfig;
    }

    try {
        if (*simulate) return bbm::cmd_simulate(sim_cfg, std::cout, std::cerr);
        if (*verify) {
            return bbm::cmd_verify_currents(*q_opt ? std::optional<std::string>(q_expr) : std::nullopt, std::cout,
                                            std::cerr);
        }
        if (*experiment) return bbm::cmd_experiment(exp_name, exp_cfg, std::cout, std::cerr);
        if (*convergence) return bbm::cmd_experiment("convergence", conv_cfg, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bbm::kExitConfig;
    }
    return bbm::kExitConfig;
}
