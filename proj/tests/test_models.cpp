#include "subfpt/models.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace subfpt;

namespace {
const cplx I(0.0, 1.0);
}

TEST(Models, PsiExamples) {
    LevyModel sn2 = LevyModel::spectrally_negative_stable(2.0);
    EXPECT_NEAR(std::abs(sn2.psi(-2.0 * I) - 4.0), 0.0, 1e-14);
    LevyModel cp = LevyModel::compound_poisson_exp(1.0, 1.0, JumpSign::Up);
    EXPECT_EQ(cp.psi(0.0), cplx(0.0));
    EXPECT_NEAR(std::abs(cp.psi(I) - (-0.5)), 0.0, 1e-15);
}

TEST(Models, PhiExamples) {
    EXPECT_NEAR(SubordinatorModel::stable(0.5).phi(4.0), 2.0, 1e-15);
    EXPECT_NEAR(SubordinatorModel::drift_only(0.7).phi(3.0), 2.1, 1e-15);
    EXPECT_NEAR(SubordinatorModel::tempered_stable(0.5, 1.0).phi(3.0), 1.0, 1e-15);
    EXPECT_THROW(SubordinatorModel::stable(0.5).phi(cplx(-1.0, 0.0)), DomainError);
}

TEST(Models, CompositeExamples) {
    ProblemTriple sn(LevyModel::spectrally_negative_stable(1.6), SubordinatorModel::stable(0.8));
    CompositeExponent ce(sn, 0.0);
    for (double u : {0.3, 1.0, 2.5}) EXPECT_NEAR(ce.at_minus_iu(u), std::pow(u, 1.6), 1e-12);

    ProblemTriple risk(LevyModel::compound_poisson_exp(1.0, 1.0, JumpSign::Up), SubordinatorModel::stable(0.5),
                       SubordinatorModel::drift_only(1.0));
    EXPECT_NEAR(CompositeExponent(risk, 0.0).at_minus_iu(0.25), -1.0 / 6.0, 1e-14);

    ProblemTriple bm(LevyModel::brownian(1.0, 0.3), SubordinatorModel::stable(0.5));
    CompositeExponent c0(bm, 0.0);
    for (double z : {-1.5, 0.2, 3.0}) EXPECT_NEAR(std::abs(c0(z) - bm.x_process.psi(z)), 0.0, 1e-14);
}

TEST(Models, ZeroAtOriginAndHermitian) {
    std::vector<LevyModel> xs = {LevyModel::brownian(1.0, -0.4),
                                 LevyModel::compound_poisson_exp(2.0, 1.5, JumpSign::Down, 0.5, 0.1),
                                 LevyModel::stable(1.5, 0.4),
                                 LevyModel::stable(0.7, 0.5),
                                 LevyModel::spectrally_negative_stable(1.6),
                                 LevyModel(0.2, 0.0, CustomFiniteActivity{{{1.0, ExpJumpUp{2.0}}, {0.5, FixedJump{-0.3}}, {0.3, NormalJump{0.1, 0.2}}}}),
                                 LevyModel::spectrally_negative_stable(1.3).negated()};
    for (const auto& x : xs) {
        EXPECT_EQ(std::abs(x.psi(0.0)), 0.0);
        for (double z : {0.1, 0.9, 4.0}) EXPECT_NEAR(std::abs(x.psi(-z) - std::conj(x.psi(z))), 0.0, 1e-12);
    }
    std::vector<SubordinatorModel> subs = {SubordinatorModel::stable(0.3), SubordinatorModel::tempered_stable(0.6, 2.0, 0.1),
                                           SubordinatorModel::compound_poisson_exp(2.0, 0.5, 1.0), SubordinatorModel::zero()};
    for (const auto& s : subs) EXPECT_EQ(s.phi(0.0), 0.0);
}

TEST(Models, BernsteinShape) {
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> U(0.0, 10.0);
    std::vector<SubordinatorModel> subs = {SubordinatorModel::stable(0.3), SubordinatorModel::tempered_stable(0.6, 2.0, 0.1),
                                           SubordinatorModel::compound_poisson_exp(2.0, 0.5, 1.0)};
    for (const auto& s : subs)
        for (int k = 0; k < 200; ++k) {
            double a = U(g), b = U(g), c = U(g);
            if (a > b) std::swap(a, b);
            if (b > c) std::swap(b, c);
            if (a > b) std::swap(a, b);
            if (c - a < 1e-6) continue;
            double fa = s.phi(a), fb = s.phi(b), fc = s.phi(c);
            EXPECT_GE(fa, 0.0);
            EXPECT_LE(fa, fb + 1e-14);
            EXPECT_LE(fb, fc + 1e-14);
            // concave: fb above the chord
            double chord = fa + (fc - fa) * (b - a) / (c - a);
            EXPECT_GE(fb, chord - 1e-12);
        }
}

TEST(Models, CompositeConvexForSpectrallyNegative) {
    ProblemTriple pb(LevyModel::compound_poisson_exp(1.0, 2.0, JumpSign::Down, 0.5, 0.2), SubordinatorModel::stable(0.6),
                     SubordinatorModel::tempered_stable(0.5, 1.0, 0.3));
    for (double q : {0.0, 0.7}) {
        CompositeExponent ce(pb, q);
        EXPECT_NEAR(std::abs(ce(0.0)), 0.0, 1e-15);
        for (double u = 0.2; u < 8.0; u += 0.37) {
            double h = 0.1;
            double d2 = ce.at_minus_iu(u + h) - 2.0 * ce.at_minus_iu(u) + ce.at_minus_iu(u - h);
            EXPECT_GE(d2, -1e-12) << "u=" << u << " q=" << q;
        }
    }
}

TEST(Models, DriftVerdicts) {
    ProblemTriple risk(LevyModel::compound_poisson_exp(1.0, 1.0, JumpSign::Up), SubordinatorModel::stable(0.5),
                       SubordinatorModel::drift_only(1.0));
    EXPECT_EQ(drifts_to_minus_infinity(risk), DriftVerdict::Yes);
    EXPECT_EQ(drifts_to_minus_infinity(ProblemTriple(LevyModel::brownian(1.0), SubordinatorModel::stable(0.5))),
              DriftVerdict::No);
    EXPECT_EQ(drifts_to_minus_infinity(ProblemTriple(LevyModel::brownian(1.0, -1.0), SubordinatorModel::stable(0.5))),
              DriftVerdict::Yes);
    // finite boundary drift rate below the claim rate: no drift to -inf
    ProblemTriple slow(LevyModel::compound_poisson_exp(1.0, 1.0, JumpSign::Up), SubordinatorModel::drift_only(1.0),
                       SubordinatorModel::drift_only(0.5));
    EXPECT_EQ(drifts_to_minus_infinity(slow), DriftVerdict::No);
}

TEST(Models, Validation) {
    EXPECT_THROW(LevyModel::brownian(-1.0), ValidationError);
    EXPECT_THROW(LevyModel::stable(2.5, 0.5), ValidationError);
    EXPECT_THROW(SubordinatorModel::stable(1.0), ValidationError);
    EXPECT_THROW(SubordinatorModel::tempered_stable(0.5, 0.0), ValidationError);
    EXPECT_THROW(SubordinatorModel(-0.1), ValidationError);
    // time change needs drift or infinite activity
    EXPECT_THROW(ProblemTriple(LevyModel::brownian(1.0), SubordinatorModel::zero()), ValidationError);
    EXPECT_THROW(ProblemTriple(LevyModel::brownian(1.0), SubordinatorModel::compound_poisson_exp(1.0, 1.0)),
                 ValidationError);
    EXPECT_THROW(ProblemTriple(LevyModel::brownian(1.0), SubordinatorModel::stable(0.5), SubordinatorModel::zero(), -1.0),
                 ValidationError);
}
