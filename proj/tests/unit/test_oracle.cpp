#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "expr_gen.hpp"
#include "valbis/errors.hpp"
#include "valbis/expr.hpp"
#include "valbis/interval.hpp"
#include "valbis/oracle.hpp"

using valbis::Expr;
using valbis::Interval;
using valbis::OracleConfig;
using valbis::OracleKind;
using valbis::OracleVerdict;
using valbis::Reach;
using valbis::UnknownPolicy;

namespace {

constexpr double kPi = 3.14159265358979323846;

OracleConfig grid_cfg(int points = 1025) {
    OracleConfig cfg;
    cfg.kind = OracleKind::Grid;
    cfg.grid_points = points;
    return cfg;
}

OracleConfig certified_cfg(int depth = 40) {
    OracleConfig cfg;
    cfg.kind = OracleKind::Certified;
    cfg.max_depth = depth;
    return cfg;
}

}  // namespace

TEST_CASE("grid oracle returns the leftmost witnessing sample") {
    Expr f = valbis::parse("sin(x)");
    Interval d{0.0, kPi};
    OracleVerdict v = valbis::decide_reachable_grid(f, d, 0.5, grid_cfg());
    REQUIRE(v.kind == Reach::Reachable);
    REQUIRE(v.witness.has_value());
    CHECK(v.certified);  // a concrete witness makes the verdict certified

    // First sample with sin(x) >= 0.5 on the 1025-point grid.
    int i = 0;
    while (std::sin(d.lo + (d.hi - d.lo) * (i / 1024.0)) < 0.5) ++i;
    CHECK(*v.witness == d.lo + (d.hi - d.lo) * (i / 1024.0));
    CHECK(std::sin(*v.witness) >= 0.5);
}

TEST_CASE("grid oracle on the step function finds the plateau edge") {
    Expr f = valbis::parse("piecewise(x<=-1: x+5; x<0: 4; else: 3)");
    OracleVerdict v =
        valbis::decide_reachable_grid(f, {-4.0, 1.0}, 3.5, grid_cfg(1025));
    REQUIRE(v.kind == Reach::Reachable);
    // x = -1.5 is a grid point ((-4) + 5 * (512/1024)) and f(-1.5) = 3.5.
    CHECK(*v.witness == -1.5);
}

TEST_CASE("grid oracle reports unreachable levels without certification") {
    Expr f = valbis::parse("sin(x)");
    OracleVerdict v =
        valbis::decide_reachable_grid(f, {0.0, kPi}, 1.5, grid_cfg());
    CHECK(v.kind == Reach::Unreachable);
    CHECK(!v.certified);
    CHECK(!v.witness.has_value());
}

TEST_CASE("grid oracle gives up when no sample is finite") {
    Expr f = valbis::parse("log(x)");
    OracleVerdict v =
        valbis::decide_reachable_grid(f, {-2.0, -1.0}, 0.0, grid_cfg());
    CHECK(v.kind == Reach::Unknown);
    CHECK(!v.certified);
}

TEST_CASE("certified oracle proves unreachability just above a maximum") {
    Expr f = valbis::parse("-(x-0.5)^2+1");
    double level = 1.0 + 1e-15;
    OracleVerdict v =
        valbis::decide_reachable_certified(f, {0.0, 1.0}, level, certified_cfg());
    CHECK(v.kind == Reach::Unreachable);
    CHECK(v.certified);
}

TEST_CASE("certified oracle produces a midpoint witness") {
    Expr f = valbis::parse("-(x-0.5)^2+1");
    OracleVerdict v =
        valbis::decide_reachable_certified(f, {0.0, 1.0}, 0.9, certified_cfg());
    REQUIRE(v.kind == Reach::Reachable);
    CHECK(v.certified);
    REQUIRE(v.witness.has_value());
    CHECK(valbis::eval(f, *v.witness) >= 0.9);
    // The very first box probe already succeeds at the domain midpoint.
    CHECK(*v.witness == 0.5);
}

TEST_CASE("oscillatory function near its peak exercises every verdict") {
    Expr f = valbis::parse("sin(100*x)");
    Interval d{0.0, 1.0};
    double level = 0.999999;

    // Deep search settles it: some peak of sin(100x) clears the level.
    OracleVerdict deep = valbis::decide_reachable_certified(f, d, level, certified_cfg());
    REQUIRE(deep.kind == Reach::Reachable);
    CHECK(deep.certified);
    CHECK(valbis::eval(f, *deep.witness) >= level);

    // A shallow search cannot decide.
    OracleVerdict shallow =
        valbis::decide_reachable_certified(f, d, level, certified_cfg(3));
    CHECK(shallow.kind == Reach::Unknown);
    CHECK(!shallow.certified);

    // Hybrid mode falls back to the grid, which answers (uncertified).
    OracleConfig hybrid;
    hybrid.kind = OracleKind::Hybrid;
    hybrid.max_depth = 3;
    OracleVerdict fallback = valbis::decide_reachable(f, d, level, hybrid);
    CHECK(fallback.kind == Reach::Unreachable);
    CHECK(!fallback.certified);

    double grid_max = -1.0;
    for (int i = 0; i <= 1024; ++i)
        grid_max = std::max(grid_max, std::sin(100.0 * (i / 1024.0)));
    CHECK(grid_max < level);  // the fallback verdict is honest for this grid

    // With the abort policy the dispatcher must surface the indecision.
    hybrid.unknown_policy = UnknownPolicy::Abort;
    OracleVerdict aborted = valbis::decide_reachable(f, d, level, hybrid);
    CHECK(aborted.kind == Reach::Unknown);
}

TEST_CASE("dispatcher honours the configured oracle kind") {
    Expr f = valbis::parse("-(x-0.5)^2+1");
    Interval d{0.0, 1.0};

    OracleVerdict via_grid = valbis::decide_reachable(f, d, 0.9, grid_cfg());
    OracleVerdict direct_grid = valbis::decide_reachable_grid(f, d, 0.9, grid_cfg());
    CHECK(via_grid.kind == direct_grid.kind);
    CHECK(via_grid.witness == direct_grid.witness);

    OracleVerdict via_cert = valbis::decide_reachable(f, d, 0.9, certified_cfg());
    OracleVerdict direct_cert =
        valbis::decide_reachable_certified(f, d, 0.9, certified_cfg());
    CHECK(via_cert.kind == direct_cert.kind);
    CHECK(via_cert.witness == direct_cert.witness);
}

TEST_CASE("oracle verdicts are deterministic") {
    Expr f = valbis::parse("sin(x)+cos(3*x)");
    Interval d{0.0, 2.0};
    OracleConfig cfg;  // hybrid defaults
    OracleVerdict a = valbis::decide_reachable(f, d, 1.1, cfg);
    OracleVerdict b = valbis::decide_reachable(f, d, 1.1, cfg);
    CHECK(a.kind == b.kind);
    CHECK(a.certified == b.certified);
    CHECK(a.witness == b.witness);
}

TEST_CASE("initial_bracket pins down tight seeds") {
    OracleConfig cfg;  // defaults

    valbis::ValueBracket step =
        valbis::initial_bracket(valbis::parse("piecewise(x<=-1: x+5; x<0: 4; else: 3)"),
                                {-4.0, 1.0}, cfg);
    CHECK(step.lo == 4.0);
    CHECK(step.hi == std::nextafter(4.0, 5.0));

    valbis::ValueBracket para =
        valbis::initial_bracket(valbis::parse("-(x-0.5)^2+1"), {0.0, 1.0}, cfg);
    CHECK(para.lo == 1.0);  // x = 0.5 is a grid sample; the max is attained there
    CHECK(para.hi == std::nextafter(1.0, 2.0));

    valbis::ValueBracket wave =
        valbis::initial_bracket(valbis::parse("sin(x)"), {0.0, kPi}, cfg);
    CHECK(wave.lo <= 1.0);
    CHECK(wave.hi == 1.0);  // the enclosure clamps at the exact peak
    CHECK(wave.lo > 0.99);

    valbis::ValueBracket ex =
        valbis::initial_bracket(valbis::parse("exp(x)-4*x"), {0.0, 1.0}, cfg);
    CHECK(ex.lo == 1.0);  // best sample is at x = 0
    // The naive enclosure tops out near exp(1): the subtraction ignores the
    // dependency between the two occurrences of x.
    CHECK(ex.hi >= std::exp(1.0) - 4.0e-12);
    CHECK(ex.hi <= std::exp(1.0) + 1.0e-12);
}

TEST_CASE("initial_bracket rejects functions with no finite information") {
    OracleConfig cfg;
    CHECK_THROWS_AS(
        valbis::initial_bracket(valbis::parse("log(x)"), {-2.0, -1.0}, cfg),
        valbis::EvaluationError);
    CHECK_THROWS_AS(valbis::initial_bracket(valbis::parse("1/x"), {-1.0, 1.0}, cfg),
                    valbis::EvaluationError);
}

TEST_CASE("property: initial_bracket always brackets the sampled maximum") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    OracleConfig cfg;

    for (int trial = 0; trial < 60; ++trial) {
        std::vector<double> cs(5);
        for (double& c : cs) c = coeff(rng);
        Expr f = testgen::poly_expr(cs);
        Interval d{-2.0, 2.0};

        valbis::ValueBracket b = valbis::initial_bracket(f, d, cfg);
        CHECK(b.lo <= b.hi);

        // A ten-times denser grid shares every coarse sample (10*i/10240 is
        // exactly i/1024), so its maximum can only rise above b.lo.
        double dense = -std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 10240; ++i) {
            double x = d.lo + (d.hi - d.lo) * (i / 10240.0);
            dense = std::max(dense, testgen::poly_eval(cs, x));
        }
        CHECK(b.lo <= dense);
        double pad = 4.0 * std::ldexp(std::max(1.0, std::fabs(b.hi)), -52);
        CHECK(dense <= b.hi + pad);
    }
}

TEST_CASE("property: certified verdicts are sound") {
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    std::uniform_real_distribution<double> lvl(-4.0, 6.0);
    OracleConfig cfg;
    cfg.kind = OracleKind::Certified;

    for (int trial = 0; trial < 60; ++trial) {
        std::vector<double> cs(4);
        for (double& c : cs) c = coeff(rng);
        Expr f = testgen::poly_expr(cs);
        Interval d{-2.0, 2.0};
        double c = lvl(rng);

        OracleVerdict v = valbis::decide_reachable_certified(f, d, c, cfg);
        if (v.kind == Reach::Reachable) {
            REQUIRE(v.witness.has_value());
            CHECK(valbis::eval(f, *v.witness) >= c);
        } else if (v.kind == Reach::Unreachable) {
            double best = -std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 100000; ++i) {
                double x = d.lo + (d.hi - d.lo) * (i / 100000.0);
                best = std::max(best, testgen::poly_eval(cs, x));
            }
            CHECK(best < c);
        }
    }
}

TEST_CASE("oracle configuration is validated") {
    Expr f = valbis::parse("x");
    OracleConfig bad_grid;
    bad_grid.grid_points = 1;
    CHECK_THROWS_AS(valbis::decide_reachable_grid(f, {0.0, 1.0}, 0.0, bad_grid),
                    std::invalid_argument);

    OracleConfig bad_depth;
    bad_depth.max_depth = 0;
    CHECK_THROWS_AS(
        valbis::decide_reachable_certified(f, {0.0, 1.0}, 0.0, bad_depth),
        std::invalid_argument);

    OracleConfig cfg;
    CHECK_THROWS_AS(valbis::decide_reachable(f, {1.0, 0.0}, 0.0, cfg),
                    std::invalid_argument);
    double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(valbis::decide_reachable(f, {0.0, inf}, 0.0, cfg),
                    std::invalid_argument);
}
