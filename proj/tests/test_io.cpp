#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "neumann/constructions.hpp"
#include "neumann/io.hpp"

using namespace neumann;

TEST_CASE("potential JSON round trip is exact") {
    const auto step = Potential::piecewise_constant({0.0, 0.1, 0.7, 1.3}, {std::numbers::pi, 1.0 / 3.0, -2e-17});
    const auto back = potential_from_json(json::parse(to_json(step).dump()));
    CHECK(back.kind() == Potential::Kind::PiecewiseConstant);
    CHECK(std::equal(back.nodes().begin(), back.nodes().end(), step.nodes().begin()));
    CHECK(std::equal(back.values().begin(), back.values().end(), step.values().begin()));

    const auto s = Potential::sampled({0.0, 0.3, 1.0}, {0.1, 0.2, 0.30000000000000004});
    const auto j = to_json(s);
    CHECK(j["interpolation"] == "linear");
    const auto sb = potential_from_json(json::parse(j.dump()));
    CHECK(std::equal(sb.values().begin(), sb.values().end(), s.values().begin()));
}

TEST_CASE("potential JSON validation") {
    CHECK_THROWS_AS(potential_from_json(json::parse(R"({"L": 1, "kind": "spline", "grid": [0, 1], "values": [1, 1]})")),
                    InputError);
    CHECK_THROWS_AS(potential_from_json(json::parse(R"({"L": 2, "kind": "piecewise_constant", "breakpoints": [0, 1], "values": [1]})")),
                    InputError);
    CHECK_THROWS_AS(potential_from_json(json::parse(R"({"L": 1, "kind": "piecewise_constant", "breakpoints": [0, 1]})")),
                    InputError);
    CHECK_THROWS_AS(potential_from_json(json::parse(R"({"L": 1, "kind": "piecewise_constant", "breakpoints": [0, 1], "values": [1, 2]})")),
                    InputError);
    CHECK_THROWS_AS(load_potential("/nonexistent/file.json"), InputError);
}

TEST_CASE("certificate JSON carries the documented keys") {
    const auto cert = check_l1_partition(Potential::constant(1.0, std::numbers::pi * std::numbers::pi + 1.0),
                                         Partition::equal(1, 1.0));
    const auto j = to_json(cert);
    for (const char* key : {"verdict", "method", "n", "partition", "margins", "tolerances", "assumptions"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["verdict"] == "UniqueTrivial");
    CHECK(j["partition"].size() == 5);
    CHECK(j["margins"].is_object());
    CHECK(dump(j) == dump(to_json(cert)));
    CHECK(to_json(check_dolph(Potential::constant(1.0, 1.0), 1))["partition"].is_null());
}

TEST_CASE("partition and trajectory JSON") {
    CHECK(partition_from_json(json::parse("[0, 0.2, 0.45, 0.8, 1]")).gap(1) == doctest::Approx(0.25));
    CHECK(partition_from_json(json::parse(R"({"points": [0, 0.25, 0.5, 0.75, 1]})")).n() == 1);
    CHECK_THROWS_AS(partition_from_json(json::parse("[0, 1]")), InputError);
    const auto t = integrate(Potential::constant(1.0, 4.0), {0.0, 1.0}, 1.0, 0.0);
    const auto j = to_json(t);
    REQUIRE(j.is_array());
    CHECK(j.front().contains("theta"));
    CHECK(j.back()["x"] == 1.0);
}

TEST_CASE("solution JSON") {
    const auto j = to_json(resonant_step(Partition({0.0, 0.2, 0.45, 0.8, 1.0})).solution);
    CHECK(j["breakpoints"].size() == 5);
    CHECK(j["pieces"].size() == 4);
    CHECK(j["pieces"][1]["params"]["k"].get<double>() == doctest::Approx(-1.25));
}
