#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "hml/grid.hpp"
#include "hml/harness.hpp"
#include "hml/measure.hpp"

using namespace hml;

namespace {

const ordered_json* find_assertion(const ordered_json& payload, const std::string& name) {
    for (const auto& a : payload["assertions"])
        if (a["name"] == name) return &a;
    return nullptr;
}

}  // namespace

TEST_CASE("identity experiment passes on Lebesgue") {
    RadialMeasure leb = Lebesgue{};
    MomentSequence m = moment_sequence(leb, condition2_required_length(leb, 0.99));
    ExperimentReport rep = run_identity_check(m, 25, 7);
    CHECK(rep.pass);
    CHECK(rep.name == "identity");
    ordered_json p = rep.payload();
    CHECK(p["parameters"]["seed"] == 7);
    CHECK(p["parameters"]["source"] == "lebesgue");
    REQUIRE(p["steps"].size() == 2);
    CHECK(p["steps"][0]["rows"].size() == 25);
    CHECK(p["steps"][1]["max_dev"].get<double>() <= 1e-10);

    CHECK_THROWS_AS(run_identity_check(m, 0, 1), std::domain_error);
}

TEST_CASE("counterexample experiment at K = 3") {
    ExperimentReport rep =
        run_counterexample(3, DiskGrid::standard(10, 64), QuadratureScheme::gauss_legendre(64, 128));
    CHECK(rep.pass);
    ordered_json p = rep.payload();
    bool saw_lacunary = false;
    for (const auto& step : p["steps"])
        if (step.contains("name") && step["name"] == "lacunary") {
            saw_lacunary = true;
            CHECK(step["is_lacunary"] == true);
            CHECK(step["sup_coeff"] == 1.0);
            CHECK(step["sum_sq"] == 3.0);
        }
    CHECK(saw_lacunary);

    const DiskGrid grid = DiskGrid::standard(10, 64);
    const QuadratureScheme quad = QuadratureScheme::gauss_legendre(32, 64);
    CHECK_THROWS_AS(run_counterexample(0, grid, quad), std::domain_error);
    CHECK_THROWS_AS(run_counterexample(13, grid, quad), std::domain_error);
}

TEST_CASE("family scan separates s = -1/2 from s = 1") {
    ExperimentReport rep =
        run_power_family_scan({-0.5, 1.0}, 64, DiskGrid::standard(16, 64),
                              QuadratureScheme::gauss_legendre(64, 128), 10);
    CHECK(rep.pass);
    ordered_json p = rep.payload();
    REQUIRE(p["steps"].size() == 2);
    CHECK(p["steps"][0]["expected"] == "grow");
    CHECK(p["steps"][1]["expected"] == "plateau");
    for (const auto& step : p["steps"])
        for (const auto& [key, lad] : step["criteria"].items())
            CHECK(lad["verdict"] == step["expected"]);

    const DiskGrid grid = DiskGrid::standard(10, 32);
    const QuadratureScheme quad = QuadratureScheme::gauss_legendre(32, 64);
    CHECK_THROWS_AS(run_power_family_scan({}, 64, grid, quad, 10), std::domain_error);
    CHECK_THROWS_AS(run_power_family_scan({0.5}, 3, grid, quad, 10), std::domain_error);
    CHECK_THROWS_AS(run_power_family_scan({0.5}, 64, grid, quad, 3), std::domain_error);
}

TEST_CASE("arc-length section norms experiment") {
    ExperimentReport rep = run_hilbert_convergence({1, 2, 16, 64}, 1e-10);
    CHECK(rep.pass);
    ordered_json p = rep.payload();
    const ordered_json& rows = p["steps"][0]["rows"];
    REQUIRE(rows.size() == 4);
    CHECK(rows[0]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    const ordered_json* n2 = find_assertion(p, "n2_closed_form");
    REQUIRE(n2 != nullptr);
    CHECK((*n2)["pass"] == true);

    CHECK_THROWS_AS(run_hilbert_convergence({}, 1e-10), std::domain_error);
    CHECK_THROWS_AS(run_hilbert_convergence({4, 4}, 1e-10), std::domain_error);
    CHECK_THROWS_AS(run_hilbert_convergence({0, 4}, 1e-10), std::domain_error);
}

TEST_CASE("pairing probe stays under the quadratic form constant") {
    ExperimentReport rep = run_pairing_probe(Lebesgue{}, 16, 50, 3);
    CHECK(rep.pass);
    ordered_json p = rep.payload();
    const ordered_json& summary = p["steps"][1];
    CHECK(summary["max_ratio_h2"].get<double>() <=
          summary["quadratic_form_constant"].get<double>() + 1e-9);
    CHECK(summary["max_ratio_h1"].get<double>() > 0.0);

    CHECK_THROWS_AS(run_pairing_probe(Lebesgue{}, 0, 10, 1), std::domain_error);
    CHECK_THROWS_AS(run_pairing_probe(Lebesgue{}, 4, 0, 1), std::domain_error);
}

TEST_CASE("report assembly") {
    ExperimentReport rep;
    rep.name = "probe";
    rep.assert_that("first", true, "");
    CHECK(rep.pass);
    rep.assert_that("second", false, "went wrong");
    CHECK_FALSE(rep.pass);
    rep.assert_that("third", true, "");
    CHECK_FALSE(rep.pass);

    ordered_json p = rep.payload();
    std::vector<std::string> keys;
    for (const auto& [key, value] : p.items()) keys.push_back(key);
    const std::vector<std::string> expect = {"name", "parameters", "steps", "assertions", "pass"};
    CHECK(keys == expect);
    CHECK(p["pass"] == false);
    CHECK(p["assertions"].size() == 3);
    CHECK(p["assertions"][1]["detail"] == "went wrong");
}
