#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "agmstar/agm.hpp"
#include "agmstar/batch.hpp"
#include "agmstar/report.hpp"
#include "agmstar/star.hpp"
#include "oracles.hpp"

// Drives the installed binary end to end: output text, exit codes, report
// determinism, batch behavior.

namespace {

struct run_result {
    int exit_code = -1;
    std::string out;
    std::string err;
};

run_result run_cli(const std::string& args, const std::string& stdin_text = {})
{
    static int counter = 0;
    std::string tag = "/tmp/agmstar_cli_test_" + std::to_string(++counter);
    std::string out_path = tag + ".out";
    std::string err_path = tag + ".err";
    std::string in_path = tag + ".in";

    std::string cmd = std::string(AGMSTAR_CLI) + " " + args;
    if (!stdin_text.empty()) {
        std::ofstream(in_path) << stdin_text;
        cmd += " < " + in_path;
    } else {
        cmd += " < /dev/null";
    }
    cmd += " > " + out_path + " 2> " + err_path;

    int status = std::system(cmd.c_str());
    run_result r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    std::remove(in_path.c_str());
    return r;
}

double parse_scalar(const std::string& text)
{
    return std::strtod(text.c_str(), nullptr);
}

} // namespace

using testoracle::rel_err;

TEST_CASE("cli agm prints 17-significant-digit round-trip values")
{
    run_result r = run_cli("agm 1 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1\n");

    r = run_cli("agm 1 2");
    CHECK(r.exit_code == 0);
    // printed text re-parses to the identical binary64 value
    CHECK(parse_scalar(r.out) == agmstar::agm(1.0, 2.0));
    CHECK(rel_err(parse_scalar(r.out), testoracle::agm_1_2) < 4e-16);
}

TEST_CASE("cli agm error contract")
{
    run_result r = run_cli("agm 1 -2");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("y") != std::string::npos); // names the offending operand

    r = run_cli("agm 1 2 --tolerance 1e-40");
    CHECK(r.exit_code == 3);

    r = run_cli("agm 1"); // missing operand: parse error
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli star commands and methods")
{
    run_result r = run_cli("star 3 5");
    CHECK(r.exit_code == 0);
    CHECK(rel_err(parse_scalar(r.out), 9.0) < 1e-9);

    r = run_cli("star 5 13 --method agm-inverse");
    CHECK(r.exit_code == 0);
    CHECK(rel_err(parse_scalar(r.out), 25.0) < 1e-9);

    run_result h = run_cli("star 0.9 0.5 --method hypergeom");
    run_result t = run_cli("star 0.9 0.5 --method theta");
    CHECK(h.exit_code == 0);
    CHECK(t.exit_code == 0);
    CHECK(rel_err(parse_scalar(h.out), parse_scalar(t.out)) < 1e-8);
}

TEST_CASE("cli star diagnostics record")
{
    run_result r = run_cli("star 3 5 --diagnostics");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(rel_err(j["value"].get<double>(), 9.0) < 1e-9);
    CHECK(j["backend"] == "theta");
    CHECK(j["iterations"].get<int>() > 0);
    CHECK(j["residual"].get<double>() <= 1e-11);
    CHECK(rel_err(j["mean"].get<double>(), agmstar::agm(3.0, 5.0)) < 1e-15);
    CHECK(j["nome"].is_number());
}

TEST_CASE("cli star exit codes")
{
    CHECK(run_cli("star 0.01 0.01 --method theta").exit_code == 4);
    CHECK(run_cli("star 3 5 --method hypergeom").exit_code == 4);
    CHECK(run_cli("star 0.001 0.001").exit_code == 2); // value under binary64 range
    CHECK(run_cli("star 3 -5").exit_code == 2);
    CHECK(run_cli("star 3 5 --max-iter 2").exit_code == 3);
}

TEST_CASE("cli theta, inverse, solve, elliptic")
{
    CHECK(rel_err(parse_scalar(run_cli("theta 0.1").out), testoracle::theta_0p1) < 1e-14);
    CHECK(run_cli("theta 0.9995").exit_code == 2);

    CHECK(rel_err(parse_scalar(run_cli("inverse 3").out), testoracle::star_inverse_3) < 1e-9);
    CHECK(rel_err(parse_scalar(run_cli("solve 3 9").out), 5.0) < 1e-8);
    CHECK(rel_err(parse_scalar(run_cli("solve 5 25").out), 13.0) < 1e-8);

    double agm_route = parse_scalar(run_cli("elliptic 1 2").out);
    double quad_route = parse_scalar(run_cli("elliptic 1 2 --method quadrature").out);
    CHECK(rel_err(agm_route, 0.5 * agmstar::pi / testoracle::agm_1_2) < 1e-15);
    CHECK(rel_err(agm_route, quad_route) < 1e-10);
}

TEST_CASE("cli verify: determinism, formats, failure path")
{
    std::string f1 = "/tmp/agmstar_verify_1.json";
    std::string f2 = "/tmp/agmstar_verify_2.json";
    run_result r1 = run_cli("verify --seed 7 --format json --output " + f1);
    run_result r2 = run_cli("verify --seed 7 --format json --output " + f2);
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);

    auto slurp = [](const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    std::string a = slurp(f1);
    std::string b = slurp(f2);
    CHECK(!a.empty());
    CHECK(a == b); // byte-identical for the same seed

    auto reports = agmstar::reports_from_json(a);
    CHECK(reports.size() == agmstar::all_identities.size());
    for (const auto& rep : reports)
        CHECK(rep.passed);
    std::remove(f1.c_str());
    std::remove(f2.c_str());

    // csv to stdout parses too
    run_result csv = run_cli("verify --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(agmstar::reports_from_csv(csv.out).size() == agmstar::all_identities.size());

    // corrupted tolerance: reports still written, exit 1
    run_result bad = run_cli("verify --tolerance 1e-30 --format csv");
    CHECK(bad.exit_code == 1);
    auto bad_reports = agmstar::reports_from_csv(bad.out);
    bool any_failed = false;
    for (const auto& rep : bad_reports)
        any_failed = any_failed || !rep.passed;
    CHECK(any_failed);

    CHECK(run_cli("verify --output /nonexistent-dir/x.csv").exit_code == 2);
}

TEST_CASE("cli verify with a grid file")
{
    std::string grid_path = "/tmp/agmstar_grid.csv";
    std::ofstream(grid_path) << "# tiny grid\n1,1\n2,3\n1.5\n2,3,4\n";
    run_result r = run_cli("verify --grid " + grid_path + " --format json");
    // the tiny grid passes every identity it can sample and finds the
    // (2,3,4) witness
    CHECK(r.exit_code == 0);
    auto reports = agmstar::reports_from_json(r.out);
    for (const auto& rep : reports)
        CHECK(rep.passed);
    std::remove(grid_path.c_str());

    CHECK(run_cli("verify --grid /no/such/file.csv").exit_code == 2);
}

TEST_CASE("cli batch: stdin, files, formats, row isolation")
{
    run_result r = run_cli("batch", "star,3,5\nagm,1,1\nbroken,1\ntheta,0.1\n");
    CHECK(r.exit_code == 0);
    auto lines = agmstar::detail::split(r.out, '\n');
    REQUIRE(lines.size() >= 5); // header + 4 rows + trailing empty
    CHECK(lines[0] == agmstar::batch_csv_header);
    CHECK(lines[1].substr(0, 5) == "star,");
    CHECK(rel_err(std::strtod(std::string(agmstar::detail::split(lines[1], ',')[3]).c_str(), nullptr),
                  9.0) < 1e-9);
    CHECK(lines[2].substr(0, 4) == "agm,");
    CHECK(agmstar::detail::split(lines[2], ',')[3] == "1");
    CHECK(lines[3].substr(0, 7) == "broken,");
    CHECK_FALSE(std::string(agmstar::detail::split(lines[3], ',')[6]).empty());
    CHECK(lines[4].substr(0, 6) == "theta,");

    // empty input: just the header, exit 0
    run_result empty = run_cli("batch", "\n");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out == std::string(agmstar::batch_csv_header) + "\n");

    run_result json = run_cli("batch --format json", "star,5,13\nnope,1,2\n");
    CHECK(json.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(json.out);
    REQUIRE(j.size() == 2);
    CHECK(rel_err(j[0]["result"].get<double>(), 25.0) < 1e-9);
    CHECK(j[1]["result"].is_null());

    CHECK(run_cli("batch /no/such/input.csv").exit_code == 2);
}

TEST_CASE("cli rejects unknown flags and subcommands")
{
    CHECK(run_cli("star 1 2 --method nope").exit_code == 2);
    CHECK(run_cli("frobnicate 1").exit_code == 2);
}
