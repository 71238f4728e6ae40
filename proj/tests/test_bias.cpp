#include <doctest.h>

#include <cmath>

#include "opinion/bias.hpp"
#include "opinion/errors.hpp"
#include "test_util.hpp"

using namespace opinion;

TEST_CASE("built-in bias evaluation") {
    CHECK(BiasSpec::backf()(0.5) == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(BiasSpec::fan()(-0.3) == -1.0);
    CHECK(BiasSpec::fan()(0.0) == 0.0);
    CHECK(BiasSpec::fan()(0.7) == 1.0);
    CHECK(BiasSpec::ins()(0.7) == 0.0);
    for (double x : {-1.0, -0.42, 0.0, 0.3, 1.0}) {
        CHECK(BiasSpec::degroot()(x) == x);
    }
    CHECK(BiasSpec::conf(1e-4)(1.0) == doctest::Approx(1e-4 / (1.0 + 1e-4)).epsilon(1e-14));
    CHECK(BiasSpec::step_discontinuous()(-1.0) == doctest::Approx(-0.0625).epsilon(1e-15));
    CHECK(BiasSpec::step_discontinuous()(0.25) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(BiasSpec::step_discontinuous()(0.75) == doctest::Approx(0.03125).epsilon(1e-15));
    CHECK(BiasSpec::exp_slow()(0.0) == 0.0);
    CHECK(BiasSpec::exp_slow()(0.5) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(BiasSpec::arctan_malleable()(1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("bias domain is [-1,1]") {
    CHECK_THROWS_AS(BiasSpec::degroot()(1.5), std::domain_error);
    CHECK_THROWS_AS(BiasSpec::conf()(-1.0000001), std::domain_error);
}

TEST_CASE("bias parameter validation") {
    CHECK_THROWS_AS(BiasSpec::conf(0.0), ValidationError);
    CHECK_THROWS_AS(BiasSpec::conf(-1.0), ValidationError);
    CHECK_THROWS_AS(BiasSpec::piecewise_linear({{-1.0, 0.0}}), ValidationError);
    CHECK_THROWS_AS(BiasSpec::piecewise_linear({{-0.5, 0.0}, {1.0, 0.0}}), ValidationError);
    CHECK_THROWS_AS(BiasSpec::piecewise_linear({{-1.0, 0.0}, {0.0, 1.5}, {1.0, 0.0}}),
                    ValidationError);
    CHECK_THROWS_AS(BiasSpec::piecewise_linear({{-1.0, 0.0}, {0.0, 0.0}, {0.0, 0.1}, {1.0, 0.0}}),
                    ValidationError);
    auto pw = BiasSpec::piecewise_linear({{-1.0, -0.5}, {0.0, 0.0}, {1.0, 0.5}});
    CHECK(pw(0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(pw(-1.0) == -0.5);
}

TEST_CASE("region membership point predicates") {
    auto all4 = region_membership(0.0, 0.0);
    CHECK(all4.malleable);
    CHECK(all4.receptive);
    CHECK(all4.backfire);
    CHECK(all4.insular);

    auto r = region_membership(0.5, 0.25);
    CHECK(r == RegionSet{false, true, false, false});
    CHECK(region_membership(0.5, -0.1) == RegionSet{false, false, true, false});
    CHECK(region_membership(0.5, 0.5) == RegionSet{true, false, false, false});
    CHECK(region_membership(-0.5, 0.0) == RegionSet{false, false, false, true});

    CHECK_THROWS_AS(region_membership(1.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(region_membership(0.0, -1.1), std::domain_error);
}

TEST_CASE("classify built-ins") {
    auto conf = classify_bias(BiasSpec::conf(1e-4), 2001);
    CHECK(conf.certified);
    CHECK(conf.coverage_of(Region::Receptive) == Coverage::All);
    CHECK(conf.coverage_of(Region::Malleable) == Coverage::Some);
    CHECK(conf.coverage_of(Region::Backfire) == Coverage::Some);
    CHECK(conf.coverage_of(Region::Insular) == Coverage::Some);
    // the only overlap is the origin
    CHECK(conf.witness[static_cast<int>(Region::Malleable)] == std::pair{0.0, 0.0});

    auto ins = classify_bias(BiasSpec::ins());
    CHECK(ins.coverage_of(Region::Insular) == Coverage::All);

    auto degroot = classify_bias(BiasSpec::degroot());
    CHECK(degroot.coverage_of(Region::Malleable) == Coverage::All);
    CHECK(degroot.coverage_of(Region::Receptive) == Coverage::Some);

    CHECK_THROWS_AS(classify_bias(BiasSpec::degroot(), 2), ValidationError);
}

TEST_CASE("continuity probe") {
    auto step = continuity_probe(BiasSpec::step_discontinuous(), 4001, 50.0);
    CHECK_FALSE(step.analytically_continuous);
    REQUIRE(step.suspect_intervals.size() == 2);
    CHECK(std::abs(step.suspect_intervals[0].first - (-0.5)) < 1e-3);
    CHECK(std::abs(step.suspect_intervals[1].first - 0.5) < 1e-3);

    auto degroot = continuity_probe(BiasSpec::degroot(), 4001, 50.0);
    CHECK(degroot.analytically_continuous);
    CHECK(degroot.suspect_intervals.empty());

    // the grid hits x=0 where fan is 0, so its jump splits in two
    auto fan = continuity_probe(BiasSpec::fan(), 4001, 50.0);
    CHECK_FALSE(fan.analytically_continuous);
    REQUIRE(fan.suspect_intervals.size() == 2);
    for (const auto& [a, b] : fan.suspect_intervals) {
        CHECK(std::abs(a) < 1e-3);
        CHECK(std::abs(b) < 1e-3);
    }
}

TEST_CASE("property: built-ins map [-1,1] into [-1,1]") {
    testutil::Rng rng(20240817);
    std::vector<BiasSpec> builtins = {
        BiasSpec::degroot(),           BiasSpec::conf(1e-4),
        BiasSpec::backf(),             BiasSpec::fan(),
        BiasSpec::ins(),               BiasSpec::exp_slow(),
        BiasSpec::step_discontinuous(), BiasSpec::arctan_malleable()};
    for (const auto& b : builtins) {
        for (int k = 0; k < 10000; ++k) {
            double y = b(testutil::uniform(rng, -1.0, 1.0));
            CHECK(y >= -1.0);
            CHECK(y <= 1.0);
        }
    }
}

TEST_CASE("property: odd symmetry of the smooth built-ins") {
    testutil::Rng rng(7);
    std::vector<BiasSpec> odd = {BiasSpec::degroot(), BiasSpec::conf(1e-4),
                                 BiasSpec::backf(),   BiasSpec::fan(),
                                 BiasSpec::ins(),     BiasSpec::exp_slow(),
                                 BiasSpec::arctan_malleable()};
    for (const auto& b : odd) {
        for (int k = 0; k < 1000; ++k) {
            double x = testutil::uniform(rng, 0.0, 1.0);
            CHECK(std::abs(b(-x) + b(x)) <= 1e-12);
        }
    }
}

TEST_CASE("property: conf satisfies the receptive-resistant inequalities pointwise") {
    testutil::Rng rng(11);
    for (double delta : {1e-6, 1e-4, 1.0, 10.0}) {
        BiasSpec conf = BiasSpec::conf(delta);
        for (int k = 0; k < 2000; ++k) {
            double x = testutil::uniform(rng, -1.0, 1.0);
            if (x == 0.0) continue;
            double y = conf(x);
            CHECK(std::abs(y) > 0.0);
            CHECK(std::abs(y) < std::abs(x));
            CHECK(std::signbit(y) == std::signbit(x));
        }
    }
}

TEST_CASE("property: higher delta moves conf toward the identity") {
    std::vector<double> deltas = {1e-4, 1.0, 10.0, 100.0};
    for (double x : {-0.9, -0.5, -0.01, 0.02, 0.4, 1.0}) {
        double prev = -1.0;
        bool first = true;
        for (double delta : deltas) {
            double dist = std::abs(BiasSpec::conf(delta)(x) - x);
            if (!first) CHECK(dist < prev);
            prev = dist;
            first = false;
        }
    }
}

TEST_CASE("property: classify agrees with per-point membership") {
    testutil::Rng rng(99);
    std::vector<BiasSpec> specs = {BiasSpec::degroot(),  BiasSpec::conf(0.3),
                                   BiasSpec::backf(),    BiasSpec::fan(),
                                   BiasSpec::ins(),      BiasSpec::exp_slow(),
                                   BiasSpec::step_discontinuous(),
                                   BiasSpec::arctan_malleable(),
                                   testutil::random_receptive_piecewise(rng)};
    const int grid = 501;
    for (const auto& b : specs) {
        auto report = classify_bias(b, grid);
        for (Region r : kAllRegions) {
            int inside = 0;
            for (int k = 0; k < grid; ++k) {
                double x = -1.0 + 2.0 * k / (grid - 1);
                if (region_membership(x, b(x)).contains(r)) ++inside;
            }
            Coverage expected = inside == grid ? Coverage::All
                                : inside > 0   ? Coverage::Some
                                               : Coverage::None;
            CHECK(report.coverage_of(r) == expected);
        }
    }
}

TEST_CASE("piecewise receptive certificate") {
    testutil::Rng rng(5);
    for (int k = 0; k < 50; ++k) {
        CHECK(testutil::random_receptive_piecewise(rng).certified_receptive());
    }
    // identity-like piecewise touches y=x, outside the strict region
    auto diag = BiasSpec::piecewise_linear({{-1.0, -1.0}, {0.0, 0.0}, {1.0, 1.0}});
    CHECK_FALSE(diag.certified_receptive());
    // misses the origin
    auto off = BiasSpec::piecewise_linear({{-1.0, -0.5}, {1.0, 0.5}});
    CHECK(off.certified_receptive()); // line through origin
    auto shifted = BiasSpec::piecewise_linear({{-1.0, -0.2}, {1.0, 0.6}});
    CHECK_FALSE(shifted.certified_receptive());
}
