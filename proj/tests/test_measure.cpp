#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hml/grid.hpp"
#include "hml/measure.hpp"

using namespace hml;

TEST_CASE("closed-form moments") {
    RadialMeasure leb = Lebesgue{};
    for (long n = 0; n <= 10; ++n)
        CHECK(moment(leb, n) == 1.0 / (static_cast<double>(n) + 1.0));

    RadialMeasure pw = PowerWeight{0.5};
    CHECK(moment(pw, 0) == doctest::Approx(0.66666666666666667).epsilon(1e-15));
    CHECK(moment(pw, 1) == doctest::Approx(0.26666666666666667).epsilon(1e-15));

    // powerweight s=1: mu[0] = 1/2, mu[1] = 1/6
    RadialMeasure pw1 = PowerWeight{1.0};
    CHECK(moment(pw1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(moment(pw1, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

    RadialMeasure origin = AtomList{{{0.0, 1.0}}};
    CHECK(moment(origin, 0) == 1.0);
    CHECK(moment(origin, 1) == 0.0);
    CHECK(moment(origin, 2) == 0.0);

    RadialMeasure half = AtomList{{{0.5, 1.0}}};
    for (long n = 0; n <= 20; ++n)
        CHECK(moment(half, n) == doctest::Approx(std::pow(0.5, n)).epsilon(1e-15));

    RadialMeasure two = AtomList{{{0.25, 2.0}, {0.75, 0.5}}};
    CHECK(moment(two, 3) ==
          doctest::Approx(2.0 * std::pow(0.25, 3) + 0.5 * std::pow(0.75, 3)).epsilon(1e-15));
}

TEST_CASE("validate rejects inadmissible parameters") {
    CHECK_THROWS_AS(validate(RadialMeasure(PowerWeight{-1.0})), std::domain_error);
    CHECK_THROWS_AS(validate(RadialMeasure(AtomList{{{1.0, 1.0}}})), std::domain_error);
    CHECK_THROWS_AS(validate(RadialMeasure(AtomList{{{-0.1, 1.0}}})), std::domain_error);
    CHECK_THROWS_AS(validate(RadialMeasure(AtomList{{{0.5, 0.0}}})), std::domain_error);
    CHECK_NOTHROW(validate(RadialMeasure(PowerWeight{-0.999})));
    CHECK_THROWS_AS(moment(RadialMeasure(Lebesgue{}), -1), std::domain_error);
}

TEST_CASE("moment_sequence matches pointwise moments and records its origin") {
    std::vector<RadialMeasure> measures = {Lebesgue{}, PowerWeight{-0.5},
                                           AtomList{{{0.3, 1.0}, {0.9, 2.0}}}};
    for (const RadialMeasure& mu : measures) {
        MomentSequence m = moment_sequence(mu, 2000);
        REQUIRE(m.values.size() == 2001);
        CHECK(m.origin.has_value());
        CHECK_FALSE(m.complete);
        CHECK_FALSE(m.source.empty());
        for (long n : {0L, 1L, 255L, 256L, 257L, 1023L, 2000L}) {
            double want = moment(mu, n);
            double got = m.values[static_cast<size_t>(n)].real();
            CHECK(m.values[static_cast<size_t>(n)].imag() == 0.0);
            if (want == 0.0)
                CHECK(got == 0.0);
            else
                CHECK(std::abs(got / want - 1.0) <= 1e-13);
        }
    }
}

TEST_CASE("tail_mass closed forms") {
    RadialMeasure leb = Lebesgue{};
    CHECK(tail_mass(leb, 0.25) == 0.25);
    CHECK(tail_mass(leb, 1.0) == 1.0);

    RadialMeasure pw = PowerWeight{0.5};
    CHECK(tail_mass(pw, 0.25) == doctest::Approx(std::pow(0.25, 1.5) / 1.5).epsilon(1e-15));

    RadialMeasure atoms = AtomList{{{0.9, 2.0}, {0.5, 1.0}}};
    CHECK(tail_mass(atoms, 0.05) == 0.0);    // only positions > 0.95 counted
    CHECK(tail_mass(atoms, 0.15) == 2.0);    // picks up the 0.9 atom
    CHECK(tail_mass(atoms, 0.6) == 3.0);     // picks up both
    CHECK_THROWS_AS(tail_mass(leb, 0.0), std::domain_error);
    CHECK_THROWS_AS(tail_mass(leb, 1.5), std::domain_error);
}

TEST_CASE("carleson_constant closed forms") {
    CHECK(carleson_constant(Lebesgue{}, 16) == 1.0);
    // s = 0.5: ratio h^{1/2}/1.5 peaks at h = 1
    CHECK(carleson_constant(PowerWeight{0.5}, 16) == doctest::Approx(1.0 / 1.5).epsilon(1e-15));
    // s = -0.5: ratio 2 h^{-1/2} peaks at the deepest level
    CHECK(carleson_constant(PowerWeight{-0.5}, 10) ==
          doctest::Approx(2.0 * std::pow(2.0, 5.0)).epsilon(1e-14));
    CHECK_THROWS_AS(carleson_constant(Lebesgue{}, -1), std::domain_error);
}

TEST_CASE("counterexample density and conjugate moments") {
    DiskDensityMeasure nu = counterexample_density(3);
    REQUIRE(nu.coeffs.size() == 9);
    CHECK(nu.coeffs[0] == cplx(1.0, 0.0));
    CHECK(nu.coeffs[2] == cplx(3.0, 0.0));
    CHECK(nu.coeffs[4] == cplx(5.0, 0.0));
    CHECK(nu.coeffs[8] == cplx(9.0, 0.0));
    CHECK(nu.coeffs[1] == cplx(0.0, 0.0));

    // Conjugate moments are exactly 1 on {0} and the powers 2^k, 0 elsewhere.
    for (long n = 0; n <= 12; ++n) {
        cplx v = conjugate_moment(nu, n);
        bool hit = n == 0 || n == 2 || n == 4 || n == 8;
        CHECK(v.real() == (hit ? 1.0 : 0.0));
        CHECK(v.imag() == 0.0);
    }

    CHECK_THROWS_AS(counterexample_density(0), std::domain_error);
    CHECK_THROWS_AS(counterexample_density(25), std::domain_error);
}

TEST_CASE("quadrature conjugate moments agree with the closed form") {
    DiskDensityMeasure nu = counterexample_density(3);
    QuadratureScheme quad = QuadratureScheme::gauss_legendre(64, 64);
    for (long n = 0; n <= 10; ++n) {
        QuadMoment qm = conjugate_moment_quadrature(nu, n, quad);
        cplx want = conjugate_moment(nu, n);
        CHECK(std::abs(qm.value - want) <= 1e-10);
        CHECK(qm.err_estimate <= 1e-8);
    }
}

TEST_CASE("conjugate_moment_sequence completeness flag") {
    DiskDensityMeasure nu = counterexample_density(2);  // degree 4
    MomentSequence full = conjugate_moment_sequence(nu, 4);
    CHECK(full.complete);
    CHECK(full.values.size() == 5);
    MomentSequence part = conjugate_moment_sequence(nu, 3);
    CHECK_FALSE(part.complete);
    MomentSequence longer = conjugate_moment_sequence(nu, 9);
    CHECK(longer.complete);
    CHECK(longer.values[9] == cplx(0.0, 0.0));
}

TEST_CASE("condition2_required_length closes the stated tail budget") {
    RadialMeasure leb = Lebesgue{};
    auto tail_sum = [](long L, double r) {
        double omr = 1.0 - r;
        return std::pow(r, static_cast<double>(L) + 1.0) * ((L + 2) - (L + 1) * r) / (omr * omr);
    };
    for (double r : {0.5, 0.99, 0.9999}) {
        long L = condition2_required_length(leb, r);
        CHECK(moment(leb, L) * tail_sum(L, r) <= 1e-12);
        if (L > 0) CHECK(moment(leb, L - 1) * tail_sum(L - 1, r) > 1e-12);
    }
    CHECK(condition2_required_length(leb, 0.99) < condition2_required_length(leb, 0.9999));
    // Atoms supported away from 1 need very little.
    CHECK(condition2_required_length(AtomList{{{0.5, 1.0}}}, 0.9) < 200);
    CHECK_THROWS_AS(condition2_required_length(leb, 1.0), std::domain_error);
}

TEST_CASE("measure spec grammar round-trips") {
    ParsedMeasure a = parse_measure_spec("lebesgue");
    CHECK(a.is_radial());
    CHECK(a.canonical == "lebesgue");

    ParsedMeasure b = parse_measure_spec(" powerweight : s = 0.5 ");
    CHECK(b.canonical == "powerweight:s=0.5");
    CHECK(std::get<PowerWeight>(b.radial()).s == 0.5);

    ParsedMeasure c = parse_measure_spec("atoms:[(0.5,1.0),(0.25,2)]");
    CHECK(c.canonical == "atoms:[(0.5,1),(0.25,2)]");
    REQUIRE(std::get<AtomList>(c.radial()).atoms.size() == 2);

    ParsedMeasure d = parse_measure_spec("counterexample:K=5");
    CHECK_FALSE(d.is_radial());
    CHECK(d.counterexample_K == 5);
    CHECK(d.canonical == "counterexample:K=5");
    CHECK(d.density().coeffs.size() == 33);

    // Canonical strings parse back to the same canonical string.
    for (const char* spec : {"lebesgue", "powerweight:s=-0.25", "atoms:[(0.5,1),(0.25,2)]",
                             "counterexample:K=4"})
        CHECK(parse_measure_spec(parse_measure_spec(spec).canonical).canonical == spec);
}

TEST_CASE("measure spec errors carry a position") {
    auto position_of = [](const std::string& spec) -> std::string {
        try {
            parse_measure_spec(spec);
        } catch (const SpecParseError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(position_of("gaussian").find("position 0") != std::string::npos);
    CHECK(position_of("powerweight:s=").find("position 14") != std::string::npos);
    CHECK(position_of("atoms:[(0.5,1)").find("expected") != std::string::npos);
    CHECK(position_of("lebesgue junk").find("trailing") != std::string::npos);
    CHECK(position_of("atoms:[]").find("empty") != std::string::npos);

    // Range violations surface as domain errors, not parse errors.
    CHECK_THROWS_AS(parse_measure_spec("powerweight:s=-2"), std::domain_error);
    CHECK_THROWS_AS(parse_measure_spec("atoms:[(1.5,1)]"), std::domain_error);
    CHECK_THROWS_AS(parse_measure_spec("counterexample:K=0"), std::domain_error);
}
