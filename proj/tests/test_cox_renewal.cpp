#include "subfpt/cox_renewal.hpp"
#include "subfpt/montecarlo.hpp"

#include <gtest/gtest.h>

using namespace subfpt;

namespace {
const double R0 = (3.0 - std::sqrt(5.0)) / 2.0;
RiskModel base() { return RiskModel::fractional_poisson(1.0, 1.0, 1.0, 0.5); }
}  // namespace

TEST(CoxRenewal, HoldingTimeTransform) {
    EXPECT_EQ(holding_time_lt(base(), 0.0), 1.0);
    RiskModel poisson(1.0, 1.0, 1.0, SubordinatorModel::drift_only(1.0));
    EXPECT_NEAR(holding_time_lt(poisson, 1.0), 0.5, 1e-15);
    EXPECT_NEAR(holding_time_lt(base(), 4.0), 1.0 / 3.0, 1e-15);
}

TEST(CoxRenewal, Roots) {
    EXPECT_NEAR(solve_Rq(base(), 0.0), R0, 1e-12);
    double prev = 0.0;
    for (double q : {10.0, 100.0, 1000.0}) {
        double r = solve_Rq(base(), q);
        EXPECT_GT(r, prev);
        EXPECT_LT(r, 1.0);
        prev = r;
    }
    EXPECT_GT(prev, 0.95);
    EXPECT_NEAR(solve_Rq(RiskModel(1.0, 1.0, 0.0, SubordinatorModel::stable(0.5)), 1.0), 0.5, 1e-12);
    // bisection shortcut agrees with the general root solver
    for (double q : {0.0, 0.7, 5.0}) {
        RiskModel m = base();
        EXPECT_NEAR(solve_Rq(m, q), make_wh_factor(m.problem(), q, m.timeChange.phi(q)).root, 1e-11) << q;
    }
}

TEST(CoxRenewal, RuinProbability) {
    EXPECT_NEAR(ruin_probability(base(), 0.0), 1.0 - R0, 1e-12);
    EXPECT_NEAR(ruin_probability(base(), 0.0), 0.618034, 1e-6);
    EXPECT_NEAR(ruin_probability(base(), 1.0), (1.0 - R0) * std::exp(-R0), 1e-12);
    EXPECT_NEAR(ruin_probability(base(), 1.0), 0.4218195, 1e-7);
    RiskModel safe(1.0, 1.0, 0.5, SubordinatorModel::drift_only(1.0));
    EXPECT_EQ(ruin_probability(safe, 3.0), 1.0);
    // tempered-stable clock and a compound Poisson capital inflow go through the general root
    RiskModel gen(1.0, 2.0, SubordinatorModel::compound_poisson_exp(1.0, 0.5, 1.0),
                  SubordinatorModel::tempered_stable(0.6, 1.0, 0.5));
    double r1 = ruin_probability(gen, 1.0);
    EXPECT_GT(r1, 0.0);
    EXPECT_LT(r1, 1.0);
    EXPECT_THROW(ruin_probability(base(), -1.0), ValidationError);
    std::string csv = ruin_csv(base(), {0.0, 1.0});
    EXPECT_EQ(csv.substr(0, 11), "a,ruinProb\n");
    EXPECT_NE(csv.find("0,0.61803398875"), std::string::npos);
}

TEST(CoxRenewal, JointTransform) {
    const auto m = base();
    for (double q : {0.5, 2.0}) {
        double R = solve_Rq(m, q);
        EXPECT_NEAR(joint_transform(m, 1.0, q, kInf), (1.0 - R) * std::exp(-R), 1e-12);
    }
    EXPECT_NEAR(joint_transform(m, 1.0, 1e-12, kInf), ruin_probability(m, 1.0), 1e-5);
    EXPECT_THROW(joint_transform(m, 1.0, 0.0, 1.0), ValidationError);
    double jt = joint_transform(m, 1.0, 1.0, 1.0);
    auto xs = parallel_generate<double>(100000, 1, 31, [&](RngStream& r, std::size_t) {
        RuinSample s = simulate_ruin(m, 1.0, r);
        return (s.ruined && s.overshoot <= 1.0) ? std::exp(-s.time) : 0.0;
    });
    Estimate e = estimate_mean(xs);
    EXPECT_TRUE(e.agrees(jt)) << e.value << " +- " << e.stdError << " vs " << jt;
}

TEST(CoxRenewal, GeneralClockSimulation) {
    RiskModel gen(1.0, 2.0, SubordinatorModel::drift_only(1.0), SubordinatorModel::tempered_stable(0.6, 1.0, 0.5));
    double r = ruin_probability(gen, 0.5);
    auto xs = parallel_generate<double>(40000, 1, 32, [&](RngStream& g, std::size_t) {
        return simulate_ruin(gen, 0.5, g).ruined ? 1.0 : 0.0;
    });
    Estimate e = estimate_mean(xs);
    EXPECT_TRUE(e.agrees(r)) << e.value << " vs " << r;
}

TEST(CoxRenewal, Validation) {
    EXPECT_THROW(RiskModel(0.0, 1.0, 1.0, SubordinatorModel::stable(0.5)), ValidationError);
    EXPECT_THROW(RiskModel(1.0, -1.0, 1.0, SubordinatorModel::stable(0.5)), ValidationError);
    EXPECT_THROW(RiskModel::fractional_poisson(1.0, 1.0, 1.0, 1.0), ValidationError);
}
