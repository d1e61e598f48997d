#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "qom/errors.hpp"

namespace {

struct Common {
    std::string config_path;
    std::string out_dir;
    std::string format;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config_path, "JSON config file (flags override its values)");
    cmd->add_option("--out", c.out_dir, "output directory (default: config value or '.')");
    cmd->add_option("--format", c.format, "tabular output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

qom::cli::RunConfig build_config(const Common& c) {
    qom::cli::RunConfig cfg =
        c.config_path.empty() ? qom::cli::RunConfig{} : qom::cli::load_config(c.config_path);
    if (!c.out_dir.empty()) cfg.output.directory = c.out_dir;
    if (!c.format.empty()) cfg.output.format = c.format;
    qom::cli::validate(cfg);
    return cfg;
}

void report_files(const std::vector<std::string>& names) {
    for (const auto& n : names) std::cout << n << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Dissipative generation of nonclassical mechanical states: "
        "steady-state simulator and closed-form reference curves"};
    app.require_subcommand(1);

    Common steady_c, oracle_c, wigner_c, figures_c;
    std::string model = "effective";
    std::string source = "oracle";
    std::vector<double> r_grid;

    auto* steady = app.add_subcommand("steady", "compute the stationary state and its observables");
    add_common(steady, steady_c);
    steady->add_option("--model", model, "full (two-mode) or effective (single-mode)")
        ->check(CLI::IsMember({"full", "effective"}));

    auto* oracle = app.add_subcommand("oracle", "closed-form stationary curves over a squeezing grid");
    add_common(oracle, oracle_c);
    oracle->add_option("--r-grid", r_grid, "squeezing values (default: 0..2 step 0.05)");

    auto* wigner = app.add_subcommand("wigner", "phase-space distribution of the stationary state");
    add_common(wigner, wigner_c);
    wigner->add_option("--source", source, "oracle (closed-form ket) or numeric (steady-state run)")
        ->check(CLI::IsMember({"oracle", "numeric"}));

    auto* figures = app.add_subcommand("figures", "regenerate every figure dataset plus a manifest");
    add_common(figures, figures_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (steady->parsed())
            report_files(qom::cli::cmd_steady(build_config(steady_c), model));
        else if (oracle->parsed())
            report_files(qom::cli::cmd_oracle(build_config(oracle_c), r_grid));
        else if (wigner->parsed())
            report_files(qom::cli::cmd_wigner(build_config(wigner_c), source));
        else
            report_files(qom::cli::cmd_figures(build_config(figures_c)));
        return 0;
    } catch (const qom::convergence_error& e) {
        std::cerr << nlohmann::json{{"error", "convergence"},
                                    {"message", e.what()},
                                    {"residual", e.residual}}
                         .dump()
                  << "\n";
        return 3;
    } catch (const qom::domain_error& e) {
        std::cerr << nlohmann::json{{"error", "domain"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 4;
    }
}
