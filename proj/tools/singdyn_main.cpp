#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "singdyn/acceptance.hpp"
#include "singdyn/errors.hpp"
#include "singdyn/scenario.hpp"

int main(int argc, char** argv) try {
    CLI::App app{"singdyn: singularity dynamics of a degenerate parabolic equation"};
    app.require_subcommand(1);

    std::string config, out_dir;
    auto* run = app.add_subcommand("run", "run a scenario from a JSON config");
    run->add_option("--config", config, "scenario configuration file")->required();
    run->add_option("--out", out_dir, "output directory")->required();

    std::string in_csv, out_svg, x_col, y_col;
    auto* plot = app.add_subcommand("plot", "render a trajectory CSV as SVG");
    plot->add_option("--in", in_csv, "input CSV file")->required();
    plot->add_option("--out", out_svg, "output SVG file")->required();
    plot->add_option("--x", x_col, "x column name (default: first column)");
    plot->add_option("--y", y_col, "y column name (default: all other columns)");

    std::string scenarios_dir = "scenarios";
    auto* check = app.add_subcommand("check", "run the built-in acceptance suite");
    check->add_option("--scenarios", scenarios_dir, "bundled scenario directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const singdyn::ScenarioResult r = singdyn::run_scenario(config, out_dir);
            if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
            for (const auto& a : r.artifacts) std::cout << out_dir << "/" << a << "\n";
            return r.exit_code;
        }
        if (plot->parsed()) {
            singdyn::plot_csv_to_svg(in_csv, out_svg, x_col, y_col);
            std::cout << out_svg << "\n";
            return 0;
        }
        if (check->parsed())
            return singdyn::run_acceptance(std::cout, scenarios_dir) ? 0 : 1;
    } catch (const singdyn::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
} catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 3;
}
