#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "weakmeas/io.hpp"
#include "weakmeas/pointer.hpp"

/* Scenario driver shared by the command-line tool and the test suites. Every
 * scenario produces one data table plus a list of named checks; the process
 * exit code reports whether all checks passed. */

namespace weakmeas {

enum class Scenario { hardy, twoslit, identities, povm, sweep };
Scenario parse_scenario(const std::string& name);
const char* to_string(Scenario s);

struct RunConfig {
    Scenario scenario = Scenario::hardy;
    double x0 = 1.0;
    double sigma = 1.0;
    double kappa = 0.01;
    std::size_t dim = 4;
    std::size_t trials = 1000;
    std::uint64_t seed = 12345;
    std::string out;  // empty: table to stdout, checks to stderr
    OutFormat format = OutFormat::csv;
    std::size_t planes = 41;  // two-slit z planes
    std::size_t starts = 80;  // two-slit trajectory starts
    std::size_t bins = 4;     // pointer readout bins
};

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;  // comparison direction is the scenario's, not always <=
};

struct RunReport {
    io::Table table;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

RunReport run_scenario(const RunConfig& config);

/* Executes the scenario and writes the outputs: with `out` set, the table goes
 * to that file and the check summary next to it (<stem>.summary.<ext>); with
 * `out` empty the table goes to stdout. Returns 0 when all checks pass, 1
 * otherwise. */
int run(const RunConfig& config);

/* Coupling-halving study of the exact post-selection probability after the
 * readout against the first-order law p0 + (coupling/x0) * Re(<I|psi><psi|A|I>)
 * over {k, k/2, k/4}. The truncation error must shrink by ~4x per halving
 * (second order) unless it already sits at the rounding floor ("exact", e.g.
 * when the only surviving eigenbranch has eigenvalue zero). */
struct SweepResult {
    std::array<double, 3> couplings{};
    std::array<double, 3> errors{};
    double ratio_big = 0.0;     // e(k) / e(k/2)
    double ratio_small = 0.0;   // e(k/2) / e(k/4)
    double fitted_order = 0.0;  // log2 slope through the three errors
    bool exact = false;
    bool pass = false;
};
SweepResult sweep_coupling(const WeakSetup& setup, const Ket& final_state);

}  // namespace weakmeas
