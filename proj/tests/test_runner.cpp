#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "weakmeas/runner.hpp"

using namespace weakmeas;

namespace {

std::string render(const RunReport& rep, OutFormat format) {
    io::Meta meta;
    std::ostringstream os;
    io::write_table(os, rep.table, meta, format);
    return os.str();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("scenario and format names round-trip") {
    for (const Scenario s : {Scenario::hardy, Scenario::twoslit, Scenario::identities,
                             Scenario::povm, Scenario::sweep})
        CHECK(parse_scenario(to_string(s)) == s);
    CHECK_THROWS_AS(parse_scenario("bogus"), std::invalid_argument);
    CHECK(parse_format("csv") == OutFormat::csv);
    CHECK(parse_format("json") == OutFormat::json);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("seeded scenarios rerun byte-identically") {
    RunConfig c;
    c.scenario = Scenario::identities;
    c.trials = 50;
    c.dim = 3;
    const RunReport a = run_scenario(c);
    const RunReport b = run_scenario(c);
    CHECK(a.all_pass());
    CHECK(render(a, OutFormat::csv) == render(b, OutFormat::csv));
    CHECK(render(a, OutFormat::json) == render(b, OutFormat::json));

    RunConfig s;
    s.scenario = Scenario::sweep;
    s.trials = 40;
    s.dim = 4;
    const RunReport sa = run_scenario(s);
    const RunReport sb = run_scenario(s);
    CHECK(sa.all_pass());
    CHECK(render(sa, OutFormat::csv) == render(sb, OutFormat::csv));
}

TEST_CASE("CSV output carries the header block and quotes special cells") {
    io::Table t;
    t.columns = {"name", "value"};
    t.add_row({std::string("plain"), 1.5});
    t.add_row({std::string("with,comma"), 2.0});
    t.add_row({std::string("has \"quote\""), 3.0});
    io::Meta m;
    m.add("seed", "42");
    m.add("kappa", 0.25);

    std::ostringstream os;
    io::write_csv(os, t, m);
    const std::string want =
        "# schema: weakmeas-1\n"
        "# seed: 42\n"
        "# kappa: 0.25\n"
        "name,value\n"
        "plain,1.5\n"
        "\"with,comma\",2\n"
        "\"has \"\"quote\"\"\",3\n";
    CHECK(os.str() == want);

    CHECK_THROWS_AS(t.add_row({std::string("too"), 1.0, 2.0}), std::invalid_argument);

    /* 17 significant digits round-trip exactly. */
    const double v = 1.0 / 3.0;
    CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("JSON output parses back into the same table") {
    RunConfig c;  // hardy defaults
    const RunReport rep = run_scenario(c);
    io::Meta meta;
    meta.add("scenario", "hardy");
    std::ostringstream os;
    io::write_json(os, rep.table, meta);

    const auto root = nlohmann::json::parse(os.str());
    CHECK(root["schema"] == "weakmeas-1");
    CHECK(root["meta"]["scenario"] == "hardy");
    REQUIRE(root["columns"].size() == rep.table.columns.size());
    for (std::size_t j = 0; j < rep.table.columns.size(); ++j)
        CHECK(root["columns"][j].get<std::string>() == rep.table.columns[j]);
    REQUIRE(root["rows"].size() == rep.table.rows.size());
    /* Numeric cells survive the round trip exactly. */
    const auto& first = rep.table.rows.front();
    for (std::size_t j = 0; j < first.size(); ++j) {
        if (const double* d = std::get_if<double>(&first[j]))
            CHECK(root["rows"][0][j].get<double>() == *d);
        else
            CHECK(root["rows"][0][j].get<std::string>() == std::get<std::string>(first[j]));
    }
}

TEST_CASE("summary path sits next to the output file") {
    CHECK(io::summary_path("a/b.csv") == "a/b.summary.csv");
    CHECK(io::summary_path("out.json") == "out.summary.json");
}

TEST_CASE("invalid configurations are rejected before any work") {
    RunConfig c;
    c.kappa = 0.0;
    CHECK_THROWS_AS(run_scenario(c), std::invalid_argument);
    c = RunConfig{};
    c.dim = 1;
    CHECK_THROWS_AS(run_scenario(c), std::invalid_argument);
    c = RunConfig{};
    c.sigma = -1.0;
    CHECK_THROWS_AS(run_scenario(c), std::invalid_argument);
    c = RunConfig{};
    c.x0 = 0.0;
    CHECK_THROWS_AS(run_scenario(c), std::invalid_argument);
    c = RunConfig{};
    c.planes = 1;
    CHECK_THROWS_AS(run_scenario(c), std::invalid_argument);
}

TEST_CASE("all scenarios pass end to end at reduced settings") {
    RunConfig c;
    c.scenario = Scenario::hardy;
    CHECK(run_scenario(c).all_pass());

    c = RunConfig{};
    c.scenario = Scenario::identities;
    c.trials = 25;
    c.dim = 3;
    CHECK(run_scenario(c).all_pass());

    c = RunConfig{};
    c.scenario = Scenario::povm;
    c.trials = 5;
    c.dim = 3;
    c.bins = 3;
    CHECK(run_scenario(c).all_pass());

    c = RunConfig{};
    c.scenario = Scenario::sweep;
    c.trials = 25;
    c.dim = 4;
    CHECK(run_scenario(c).all_pass());

    c = RunConfig{};
    c.scenario = Scenario::twoslit;
    c.planes = 11;
    c.starts = 12;
    const RunReport rep = run_scenario(c);
    CHECK(rep.all_pass());
    CHECK(rep.table.rows.size() == 11 * 12);
}

TEST_CASE("run() writes the table and the check summary next to it") {
    namespace fs = std::filesystem;
    const fs::path out = fs::temp_directory_path() / "weakmeas_runner_case.csv";
    const fs::path summary = fs::temp_directory_path() / "weakmeas_runner_case.summary.csv";

    RunConfig c;  // hardy defaults
    c.out = out.string();
    CHECK(run(c) == 0);
    REQUIRE(fs::exists(out));
    REQUIRE(fs::exists(summary));

    const std::string table_text = slurp(out);
    CHECK(table_text.find("# schema: weakmeas-1") == 0);
    CHECK(table_text.find("# scenario: hardy") != std::string::npos);
    CHECK(table_text.find("N(NO+,NO-)") != std::string::npos);

    const std::string summary_text = slurp(summary);
    CHECK(summary_text.find("check,value,threshold,status") != std::string::npos);
    CHECK(summary_text.find(",pass\n") != std::string::npos);
    CHECK(summary_text.find(",fail\n") == std::string::npos);

    fs::remove(out);
    fs::remove(summary);
}

TEST_CASE("coupling sweep reports exactness when the surviving branch reads zero") {
    /* ini sits in the eigenvalue-0 eigenspace and the post-selection never
     * sees the other branch, so the readout probability is constant in k. */
    const Ket ini = Ket::basis(2, 0);
    const LinOp a = LinOp::diagonal({0.0, 5.0});
    const WeakSetup setup{ini, a, GaussianPointer(1.0, 1.0), 0.01};
    const SweepResult sr = sweep_coupling(setup, ini);
    CHECK(sr.exact);
    CHECK(sr.pass);
    CHECK(sr.couplings[0] == 0.01);
    CHECK(sr.couplings[1] == 0.005);
    CHECK(sr.couplings[2] == 0.0025);
    CHECK_THROWS_AS(
        sweep_coupling(WeakSetup{ini, a, GaussianPointer(1.0, 1.0), 0.0}, ini),
        ZeroCoupling);
}
