#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "weakmeas/kernels.hpp"
#include "weakmeas/runner.hpp"

/* Command-line front end. Exit codes: 0 all scenario checks pass, 1 a check
 * failed, 2 usage or configuration error. */

int main(int argc, char** argv) {
    CLI::App app{"weak measurement simulator and verification suite"};

    std::string scenario = "hardy";
    std::string format = "csv";
    weakmeas::RunConfig config;

    app.add_option("--scenario", scenario, "hardy | twoslit | identities | povm | sweep")
        ->capture_default_str();
    app.add_option("--x0", config.x0, "pointer centre (nonzero)")->capture_default_str();
    app.add_option("--sigma", config.sigma, "pointer spread (positive)")->capture_default_str();
    app.add_option("--kappa", config.kappa, "measurement coupling (positive)")
        ->capture_default_str();
    app.add_option("--dim", config.dim, "Hilbert-space dimension for random suites")
        ->capture_default_str();
    app.add_option("--trials", config.trials, "random trials per suite")->capture_default_str();
    app.add_option("--seed", config.seed, "random seed")->capture_default_str();
    app.add_option("--out", config.out,
                   "output file; the check summary goes to <stem>.summary.<ext>");
    app.add_option("--format", format, "csv | json")->capture_default_str();
    app.add_option("--planes", config.planes, "two-slit propagation planes")
        ->capture_default_str();
    app.add_option("--starts", config.starts, "two-slit trajectory starts")
        ->capture_default_str();
    app.add_option("--bins", config.bins, "pointer readout bins")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help exits cleanly, bad usage is 2
    }

    try {
        config.scenario = weakmeas::parse_scenario(scenario);
        config.format = weakmeas::parse_format(format);
        std::cerr << "kernels: " << weakmeas::kernels::active_name() << "\n";
        return weakmeas::run(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
