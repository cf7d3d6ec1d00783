#include "subfpt/cox_renewal.hpp"
#include "subfpt/spectrally_negative.hpp"
#include "subfpt/wiener_hopf.hpp"

#include <gtest/gtest.h>

using namespace subfpt;

namespace {

const double R0 = (3.0 - std::sqrt(5.0)) / 2.0;

ProblemTriple renewal() { return RiskModel::fractional_poisson(1.0, 1.0, 1.0, 0.5).problem(); }

}  // namespace

TEST(WienerHopf, Classification) {
    EXPECT_EQ(classify(ProblemTriple(LevyModel::brownian(1.0), SubordinatorModel::stable(0.5))), WhFamily::SpectrallyNegative);
    EXPECT_EQ(classify(renewal()), WhFamily::LewisMordeckiExp);
    EXPECT_THROW(classify(ProblemTriple(LevyModel::stable(1.5, 0.5), SubordinatorModel::stable(0.5))), ValidationError);
    // upward exponential jumps with a Gaussian part have no closed factor here
    EXPECT_THROW(classify(ProblemTriple(LevyModel::compound_poisson_exp(1.0, 1.0, JumpSign::Up, 1.0),
                                        SubordinatorModel::stable(0.5))),
                 ValidationError);
}

TEST(WienerHopf, Roots) {
    ProblemTriple bm(LevyModel::brownian(1.0), SubordinatorModel::drift_only(1.0));
    EXPECT_NEAR(solve_root(CompositeExponent(bm, 0.0), 2.0, WhFamily::SpectrallyNegative), 2.0, 1e-12);
    EXPECT_NEAR(make_wh_factor(renewal(), 0.0, 0.0).root, R0, 1e-12);
    ProblemTriple sn(LevyModel::spectrally_negative_stable(1.6), SubordinatorModel::stable(0.8));
    EXPECT_NEAR(solve_root(CompositeExponent(sn, 0.0), std::pow(4.0, 0.8), WhFamily::SpectrallyNegative), 2.0, 1e-11);
    // Lewis-Mordecki root stays inside (0, p) and grows with varrho
    double prev = 0.0;
    for (double q : {0.1, 1.0, 10.0, 100.0}) {
        double r = make_wh_factor(renewal(), q, std::sqrt(q)).root;
        EXPECT_GT(r, prev);
        EXPECT_LT(r, 1.0);
        prev = r;
    }
}

TEST(WienerHopf, NoPositiveRootWithoutDrift) {
    ProblemTriple slow(LevyModel::compound_poisson_exp(1.0, 1.0, JumpSign::Up), SubordinatorModel::drift_only(1.0),
                       SubordinatorModel::drift_only(0.5));
    EXPECT_THROW(make_wh_factor(slow, 0.0, 0.0), ValidationError);
    EXPECT_THROW(composite_rhs_q0(slow, 1.0, 0.5), ValidationError);
}

TEST(WienerHopf, FactorValues) {
    WhFactor sn{WhFamily::SpectrallyNegative, 2.0, 0.0, 0.0, 1.0};
    WhFactor lm{WhFamily::LewisMordeckiExp, 0.382, 1.0, 0.0, 0.0};
    EXPECT_NEAR(std::abs(wh_factor(sn, 0.0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(wh_factor(lm, 0.0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(wh_factor(sn, cplx(0.0, 1.0)) - 2.0 / 3.0), 0.0, 1e-15);
    EXPECT_NEAR(wh_factor(lm, cplx(0.0, 1.0)).real(), 0.5528, 1e-4);
    EXPECT_THROW(wh_factor(sn, cplx(0.0, -0.5)), DomainError);
}

TEST(WienerHopf, LewisMordeckiFactorization) {
    const auto pb = renewal();
    for (double q : {0.3, 1.0, 3.0}) {
        WhFactor f = make_wh_factor(pb, q, SubordinatorModel::stable(0.5).phi(q));
        CompositeExponent ce(pb, q);
        for (double z = -30.0; z <= 30.0; z += 0.5) {
            cplx minus = wh_negative_factor_quotient(f, ce, z);
            cplx prod = wh_factor(f, z) * minus;
            EXPECT_NEAR(std::abs(prod - f.varrho / (f.varrho - ce(z))), 0.0, 1e-10) << "q " << q << " z " << z;
            EXPECT_LE(std::abs(minus), 1.0 + 1e-12);
            EXPECT_LE(std::abs(wh_factor(f, z)), 1.0 + 1e-12);
        }
    }
}

TEST(WienerHopf, SpectrallyNegativeRhsClosedForm) {
    // creeping: E[exp(-q T) at an Exp(p) level] = p / (p + phi_T(q)), for every v
    ProblemTriple pb(LevyModel::compound_poisson_exp(1.0, 2.0, JumpSign::Down, 1.0, 0.3), SubordinatorModel::stable(0.7));
    for (double q : {0.5, 2.0}) {
        double phiT = fpt_laplace_exponent(pb, q);
        for (double p : {0.5, 1.5})
            for (double v : {0.0, 0.7, 3.0}) EXPECT_NEAR(composite_rhs(pb, q, p, v), p / (p + phiT), 1e-12);
    }
}

TEST(WienerHopf, RhsMonotoneAndGuarded) {
    const auto pb = renewal();
    EXPECT_THROW(composite_rhs(pb, 1.0, 1.0, 1.0), ValidationError);
    EXPECT_THROW(composite_rhs(pb, 0.0, 1.0, 0.5), ValidationError);
    double prev = 1.0;
    for (double q : {1.0, 10.0, 100.0, 1000.0}) {
        double r = composite_rhs(pb, q, 1.0, 0.5);
        EXPECT_LT(r, prev);
        EXPECT_GT(r, 0.0);
        prev = r;
    }
    EXPECT_LT(prev, 0.05);
    prev = 1.0;
    for (double v : {0.0, 0.5, 2.0, 5.0}) {
        double r = composite_rhs(pb, 1.0, 2.5, v);
        EXPECT_LT(r, prev);
        prev = r;
    }
}

TEST(WienerHopf, RhsAtZeroKilling) {
    const auto pb = renewal();
    double r = composite_rhs_q0(pb, 1.0, 0.0);
    EXPECT_NEAR(r, 1.0 - 2.0 * R0 / (1.0 + R0), 1e-12);
    // integral of e^{-a} ruin(a) da
    EXPECT_NEAR(r, (1.0 - R0) / (1.0 + R0), 1e-12);
    EXPECT_NEAR(r, 0.447214, 1e-6);
    // q -> 0 continuity
    EXPECT_NEAR(composite_rhs(pb, 1e-10, 1.0, 0.0), r, 1e-4);
}
