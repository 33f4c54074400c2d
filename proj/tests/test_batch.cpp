#include "doctest.h"

#include <cmath>

#include "agmstar/batch.hpp"
#include "oracles.hpp"

using namespace agmstar;
using testoracle::rel_err;

TEST_CASE("batch evaluates rows in order and isolates failures")
{
    const char* text =
        "star,3,5\n"
        "agm,1,1\n"
        "# a comment\n"
        "\n"
        "bogus,1,2\n"
        "theta,0.1\n"
        "agm,1\n"
        "star,-1,2\n"
        "solve,3,9\n"
        "inverse,3\n"
        "elliptic,1,2\n";
    auto rows = run_batch(text);
    REQUIRE(rows.size() == 9);

    CHECK(rows[0].operation == "star");
    REQUIRE(rows[0].result.has_value());
    CHECK(rel_err(*rows[0].result, 9.0) < 1e-9);
    CHECK(rows[0].backend == "theta");
    REQUIRE(rows[0].residual.has_value());
    CHECK(rows[0].error.empty());

    CHECK(rows[1].operation == "agm");
    CHECK(*rows[1].result == 1.0);
    CHECK(rows[1].backend.empty());

    CHECK(rows[2].operation == "bogus");
    CHECK_FALSE(rows[2].result.has_value());
    CHECK_FALSE(rows[2].error.empty());

    CHECK(rel_err(*rows[3].result, testoracle::theta_0p1) < 1e-14);

    CHECK_FALSE(rows[4].result.has_value()); // wrong arity
    CHECK_FALSE(rows[4].error.empty());

    CHECK_FALSE(rows[5].result.has_value()); // negative operand
    CHECK(rows[5].operands.size() == 2);

    CHECK(rel_err(*rows[6].result, 5.0) < 1e-8);
    CHECK(rel_err(*rows[7].result, testoracle::star_inverse_3) < 1e-9);
    CHECK(rel_err(*rows[8].result, 0.5 * pi / testoracle::agm_1_2) < 1e-14);
}

TEST_CASE("empty batch input gives an empty table")
{
    CHECK(run_batch("").empty());
    CHECK(run_batch("# only a comment\n\n").empty());
}

TEST_CASE("batch CSV rendering is rectangular and re-parseable numbers")
{
    auto rows = run_batch("star,3,5\nbogus,7\n");
    std::string csv = batch_to_csv(rows);
    auto lines = detail::split(csv, '\n');
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0] == batch_csv_header);
    for (std::size_t i = 1; i + 1 < lines.size(); ++i)
        CHECK(detail::split(lines[i], ',').size() == 7);
    // echoed operand re-parses to the identical double
    auto fields = detail::split(lines[1], ',');
    CHECK(detail::parse_double(fields[1]) == 3.0);
}

TEST_CASE("batch JSON rendering parses and keeps order")
{
    auto rows = run_batch("agm,1,2\nstar,5,13\nbogus\n");
    nlohmann::json j = nlohmann::json::parse(batch_to_json(rows));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    CHECK(j[0]["operation"] == "agm");
    CHECK(rel_err(j[0]["result"].get<double>(), testoracle::agm_1_2) < 1e-15);
    CHECK(j[1]["backend"] == "theta");
    CHECK(rel_err(j[1]["result"].get<double>(), 25.0) < 1e-9);
    CHECK(j[2]["result"].is_null());
    CHECK_FALSE(j[2]["error"].is_null());
}
