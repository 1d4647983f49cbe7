#include "oracles.hpp"

#include "sparsepen/penalty.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sparsepen;

TEST(PenaltySpec, RejectsInvalidParameters) {
    EXPECT_THROW(PenaltySpec::lasso(-0.1), std::invalid_argument);
    EXPECT_THROW(PenaltySpec::scad(1.0, 2.0), std::invalid_argument);
    EXPECT_THROW(PenaltySpec::mcp(1.0, 1.0), std::invalid_argument);
    EXPECT_NO_THROW(PenaltySpec::scad(1.0, 2.0001));
    EXPECT_NO_THROW(PenaltySpec::mcp(0.0, 1.5));
    // a is never read for the lasso
    EXPECT_NO_THROW(PenaltySpec(Family::Lasso, 1.0, -5.0));
}

TEST(PenaltySpec, ParsesFamilyNames) {
    EXPECT_EQ(parse_family("LASSO"), Family::Lasso);
    EXPECT_EQ(parse_family("scad"), Family::SCAD);
    EXPECT_EQ(parse_family("Mcp"), Family::MCP);
    EXPECT_THROW(parse_family("ridge"), std::invalid_argument);
    EXPECT_EQ(to_string(Family::SCAD), "scad");
}

TEST(PenaltyValue, Examples) {
    EXPECT_EQ(penalty_value(PenaltySpec::lasso(0.5), 0.0), 0.0);
    EXPECT_DOUBLE_EQ(penalty_value(PenaltySpec::scad(1.0, 3.7), 1.0), 1.0);
    EXPECT_DOUBLE_EQ(penalty_value(PenaltySpec::scad(1.0, 3.7), 10.0), 2.35);
    EXPECT_DOUBLE_EQ(penalty_value(PenaltySpec::mcp(1.0, 3.0), 5.0), 1.5);
    EXPECT_EQ(penalty_value(PenaltySpec::scad(0.7), 0.0), 0.0);
    EXPECT_EQ(penalty_value(PenaltySpec::mcp(0.7), 0.0), 0.0);
    EXPECT_THROW(penalty_value(PenaltySpec::lasso(1.0), -1e-9), std::invalid_argument);
}

TEST(PenaltyDerivative, Examples) {
    EXPECT_DOUBLE_EQ(penalty_derivative(PenaltySpec::lasso(0.3), 5.0), 0.3);
    EXPECT_EQ(penalty_derivative(PenaltySpec::scad(1.0, 3.7), 10.0), 0.0);
    EXPECT_DOUBLE_EQ(penalty_derivative(PenaltySpec::mcp(1.0, 2.0), 1.0), 0.5);
    EXPECT_THROW(penalty_derivative(PenaltySpec::lasso(1.0), 0.0), std::invalid_argument);
    EXPECT_EQ(penalty_derivative(PenaltySpec::scad(0.0), 1.0), 0.0);
}

TEST(Threshold, Examples) {
    EXPECT_EQ(threshold(PenaltySpec::lasso(0.5), 0.3), 0.0);
    EXPECT_EQ(threshold(PenaltySpec::scad(1.0, 3.7), 5.0), 5.0);
    EXPECT_NEAR(threshold(PenaltySpec::scad(1.0, 3.7), 3.0), 2.588235294117647, 1e-14);
    EXPECT_NEAR(threshold(PenaltySpec::mcp(1.0, 3.0), 2.0), 1.5, 1e-14);
    EXPECT_NEAR(threshold(PenaltySpec::lasso(0.5), -2.0), -1.5, 1e-14);
}

TEST(Threshold, ExamplesAgreeWithGridSearch) {
    for (const auto& [spec, z] : std::vector<std::pair<PenaltySpec, double>>{
             {PenaltySpec::scad(1.0, 3.7), 3.0},
             {PenaltySpec::mcp(1.0, 3.0), 2.0},
             {PenaltySpec::lasso(0.5), -2.0}}) {
        EXPECT_NEAR(threshold(spec, z), oracle::prox_grid_search(spec, z), 2e-4);
    }
}

TEST(Threshold, BranchBoundariesAgree) {
    for (double lam : {0.1, 1.0, 2.5}) {
        for (double a : {2.2, 3.7, 6.0}) {
            const PenaltySpec scad = PenaltySpec::scad(lam, a);
            const double at = a * lam;
            const double middle = ((a - 1.0) * at - a * lam) / (a - 2.0);
            EXPECT_NEAR(middle, at, 1e-12);
            EXPECT_EQ(threshold(scad, at), at);
            // soft branch and middle branch meet at 2 lambda
            EXPECT_NEAR(((a - 1.0) * 2.0 * lam - a * lam) / (a - 2.0), lam, 1e-12);
            EXPECT_NEAR(threshold(scad, 2.0 * lam), lam, 1e-12);
        }
        for (double a : {1.2, 3.0}) {
            const PenaltySpec mcp = PenaltySpec::mcp(lam, a);
            EXPECT_NEAR((a * lam - lam) / (1.0 - 1.0 / a), a * lam, 1e-12);
            EXPECT_EQ(threshold(mcp, -a * lam), -a * lam);
        }
    }
}

class PenaltyProperties : public ::testing::Test {
protected:
    std::mt19937_64 rng{123};
    PenaltySpec draw() {
        std::uniform_int_distribution<int> fam(0, 2);
        std::uniform_real_distribution<double> lam(0.01, 3.0), u(0.0, 1.0);
        switch (fam(rng)) {
        case 0: return PenaltySpec::lasso(lam(rng));
        case 1: return PenaltySpec::scad(lam(rng), 2.0 + 4.0 * (1.0 - u(rng)));
        default: return PenaltySpec::mcp(lam(rng), 1.0 + 5.0 * (1.0 - u(rng)));
        }
    }
};

TEST_F(PenaltyProperties, ValueIsNondecreasing) {
    std::uniform_real_distribution<double> t(0.0, 20.0);
    for (int i = 0; i < 5000; ++i) {
        const PenaltySpec spec = draw();
        double lo = t(rng), hi = t(rng);
        if (lo > hi) std::swap(lo, hi);
        EXPECT_LE(penalty_value(spec, lo), penalty_value(spec, hi) + 1e-15);
    }
}

TEST_F(PenaltyProperties, DerivativeInRangeAndMatchesFiniteDifference) {
    std::uniform_real_distribution<double> t(1e-3, 15.0);
    for (int i = 0; i < 2000; ++i) {
        const PenaltySpec spec = draw();
        const double x = t(rng);
        const double d = penalty_derivative(spec, x);
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, spec.lambda());
        bool near_knot = false;
        for (double k : oracle::penalty_knots(spec)) near_knot |= std::abs(x - k) < 1e-3;
        if (near_knot) continue;
        const double h = 1e-6;
        const double fd = (penalty_value(spec, x + h) - penalty_value(spec, x - h)) / (2 * h);
        EXPECT_NEAR(fd, d, 1e-5);
    }
}

TEST_F(PenaltyProperties, ThresholdIsOddAndShrinks) {
    std::uniform_real_distribution<double> z(-20.0, 20.0);
    for (int i = 0; i < 5000; ++i) {
        const PenaltySpec spec = draw();
        const double v = z(rng);
        const double s = threshold(spec, v);
        EXPECT_LE(std::abs(s), std::abs(v));
        EXPECT_EQ(threshold(spec, -v), -s);
        EXPECT_TRUE(s == 0.0 || (s > 0) == (v > 0));
    }
}

TEST_F(PenaltyProperties, IdentityBeyondAlambdaForConcavePenalties) {
    std::uniform_real_distribution<double> extra(0.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        const PenaltySpec spec = draw();
        if (spec.family() == Family::Lasso) continue;
        const double z = spec.a() * spec.lambda() + extra(rng);
        EXPECT_EQ(threshold(spec, z), z);
        EXPECT_EQ(threshold(spec, -z), -z);
    }
}

TEST_F(PenaltyProperties, ThresholdMatchesProxGridSearch) {
    std::uniform_real_distribution<double> z(-10.0, 10.0);
    int checked = 0;
    while (checked < 300) {
        const PenaltySpec spec = draw();
        const double v = z(rng);
        bool near = false;
        for (double k : oracle::threshold_knots(spec)) near |= std::abs(std::abs(v) - k) < 1e-3;
        if (near) continue;
        EXPECT_NEAR(threshold(spec, v), oracle::prox_grid_search(spec, v), 2e-4);
        ++checked;
    }
}

TEST_F(PenaltyProperties, ScaledThresholdMinimizesWeightedProblem) {
    std::uniform_real_distribution<double> u(-8.0, 8.0), curv(0.2, 2.0);
    for (int i = 0; i < 300; ++i) {
        const PenaltySpec spec = draw();
        const double x = u(rng);
        const double d = curv(rng);
        const double got = threshold_scaled(spec, x, d);
        // Objective at the returned point must not exceed the grid minimum.
        auto obj = [&](double b) { return 0.5 * d * (x - b) * (x - b) + penalty_value(spec, std::abs(b)); };
        double grid_best = obj(0.0);
        for (double b = -std::abs(x) - 1.0; b <= std::abs(x) + 1.0; b += 1e-3) grid_best = std::min(grid_best, obj(b));
        EXPECT_LE(obj(got), grid_best + 1e-9);
    }
}

TEST(ThresholdScaled, UnitCurvatureAgreesWithClosedForm) {
    for (const PenaltySpec& spec : {PenaltySpec::lasso(0.7), PenaltySpec::scad(0.7), PenaltySpec::mcp(0.7)}) {
        for (double z = -6.0; z <= 6.0; z += 0.013)
            EXPECT_NEAR(threshold_scaled(spec, z, 1.0), threshold(spec, z), 1e-12) << to_string(spec.family()) << " z=" << z;
    }
    EXPECT_THROW(threshold_scaled(PenaltySpec::lasso(1.0), 1.0, 0.0), std::invalid_argument);
}
