#include "subfpt/fractional.hpp"
#include "subfpt/montecarlo.hpp"
#include "subfpt/sampler.hpp"

#include <gtest/gtest.h>

using namespace subfpt;

namespace {

FractionalProblem bm_drift_one() { return FractionalProblem::brownian_with_drift(0.5, 1.0, 1.0, 1.0); }

}  // namespace

TEST(Fractional, FactorizedDeterministicBase) {
    FractionalProblem fp;
    fp.alpha = 0.5;
    const double c = 1.7;
    fp.baseMellin = [c](cplx s) { return std::exp(s * std::log(c)); };
    fp.decay = kPi * 1.5;
    fp.baseSampler = [c](RngStream&) { return c; };
    auto xs = parallel_generate<double>(100000, 1, 1, [&](RngStream& r, std::size_t) {
        return std::exp(-factorized_sample(fp, r) / (c * c));
    });
    Estimate e = estimate_mean(xs);
    EXPECT_TRUE(e.agrees(std::exp(-1.0))) << e.value;
}

TEST(Fractional, FactorizedMatchesDirectSampler) {
    const auto fp = bm_drift_one();
    ProblemTriple pb(LevyModel::brownian(1.0, 1.0), SubordinatorModel::stable(0.5), SubordinatorModel::zero(), 0.0, -1.0);
    SamplerOptions o;
    o.opStep = 1e-3;
    o.opHorizon = 50.0;
    o.bridge = true;
    auto dir = run_ensemble(pb, SamplerKind::Reduced, 2000, 1, 2, o);
    std::vector<double> a, b;
    for (auto& s : dir) a.push_back(std::min(s.time, 1e12));
    b = parallel_generate<double>(2000, 1, 3, [&](RngStream& r, std::size_t) { return factorized_sample(fp, r); });
    KsResult ks = ks_two_sample(a, b);
    EXPECT_GT(ks.pValue, 0.01) << ks.statistic;
}

TEST(Fractional, Validation) {
    EXPECT_THROW(FractionalProblem::brownian_with_drift(1.0, 1.0, 1.0, 1.0), ValidationError);
    EXPECT_THROW(FractionalProblem::brownian_with_drift(0.0, 1.0, 1.0, 1.0), ValidationError);
    const auto fp = bm_drift_one();
    EXPECT_THROW(fp.mellin(cplx(0.6, 0.0)), DomainError);
    MellinLine l = MellinDensity::default_line(fp);
    l.abscissa = 0.55;
    EXPECT_THROW(MellinDensity(fp, l), DomainError);
}

TEST(Fractional, DensityMassAndShape) {
    const auto fp = bm_drift_one();
    MellinDensity f(fp, MellinDensity::default_line(fp));
    AccuracyReport m = density_mass(f, 1e-12, 1e10);
    EXPECT_NEAR(m.value + survival_asymptote(fp, 1e10), 1.0, 1e-6);
    EXPECT_LE(f(1.0).imagResidual, 1e-12);
    for (double t : {1e-3, 0.1, 1.0, 10.0, 1e3}) EXPECT_GT(f(t).value, 0.0);
    // defective base: mass exp(-2 |mu| x / sigma2)
    auto neg = FractionalProblem::brownian_with_drift(0.5, -0.5, 1.0, 1.0);
    EXPECT_NEAR(std::abs(neg.mellin(0.0)), std::exp(-1.0), 1e-12);
    // Levy base (mu = 0): E[T0(X)^s] at s = 1/4
    auto lev = FractionalProblem::brownian_with_drift(0.5, 0.0, 1.0, 1.0);
    EXPECT_NEAR(std::abs(lev.mellin(0.0) - 1.0), 0.0, 1e-12);
}

TEST(Fractional, DerivativeFiniteDifference) {
    const auto fp = bm_drift_one();
    MellinDensity f0(fp, MellinDensity::default_line(fp, 0)), f1(fp, MellinDensity::default_line(fp, 1));
    for (double t : {0.3, 1.0, 4.0}) {
        double h = 1e-3 * t;
        double fd = (f0(t + h).value - f0(t - h).value) / (2.0 * h);
        EXPECT_NEAR(f1(t, 1).value, fd, 1e-5 * std::abs(fd) + 1e-9) << t;
    }
}

TEST(Fractional, ContourIndependence) {
    const auto fp = bm_drift_one();
    MellinLine a = MellinDensity::default_line(fp), b = a;
    b.abscissa = 0.1;
    MellinDensity fa(fp, a), fb(fp, b);
    for (double t : {0.05, 1.0, 30.0}) {
        AccuracyReport x = fa(t), y = fb(t);
        EXPECT_LE(std::abs(x.value - y.value), x.absErrorEstimate + y.absErrorEstimate + 1e-15);
    }
}

TEST(Fractional, Asymptotes) {
    EXPECT_NEAR(tail_asymptote(1.0, 0.5, 1.0), 1.128379, 1e-6);
    EXPECT_NEAR(tail_asymptote(1.0, 0.5, 4.0), std::pow(4.0, 0.5) * tail_asymptote(1.0, 0.5, 1.0), 1e-14);
    const auto fp = bm_drift_one();
    MellinDensity f(fp, MellinDensity::default_line(fp, 1));
    double t = 1e5;
    EXPECT_NEAR(f(t).value / density_asymptote(fp, t), 1.0, 0.02);
    EXPECT_NEAR(f(t, 1).value / density_asymptote(fp, t, 1), 1.0, 0.03);
    // survival asymptote as the large-t limit of 1 - mass
    double surv = 1.0 - density_mass(MellinDensity(fp, MellinDensity::default_line(fp)), 1e-12, t).value;
    EXPECT_NEAR(surv / survival_asymptote(fp, t), 1.0, 0.01);
    EXPECT_NEAR(tail_derivative_asymptote(fp, t, 1), -density_asymptote(fp, t, 0), 1e-15);
}

TEST(Fractional, StableMellinSpecializations) {
    const double A = 1.6, al = 0.5;
    StableParams sp{A, 1.0 / A, 1.0};
    EXPECT_NEAR(std::abs(stable_mellin_hatT0(sp, al, 0.0) - 1.0), 0.0, 1e-10);
    for (cplx z : {cplx(0.1, 0.0), cplx(-0.2, 1.5), cplx(0.15, -3.0)})
        EXPECT_NEAR(std::abs(stable_mellin_hatT0(sp, al, z) - sn_stable_mellin(A, al, 1.0, z)), 0.0,
                    1e-9 * std::abs(sn_stable_mellin(A, al, 1.0, z)))
            << z;
    // index 2, rho 1/2: Brownian motion with sigma2 = 2 started at distance 1
    StableParams bm{2.0, 0.5, 1.0};
    auto lev = FractionalProblem::brownian_with_drift(al, 0.0, 2.0, 1.0);
    for (cplx z : {cplx(0.1, 0.0), cplx(-0.2, 1.5)})
        EXPECT_NEAR(std::abs(stable_mellin_hatT0(bm, al, z) - lev.mellin(z)), 0.0, 1e-9 * std::abs(lev.mellin(z))) << z;
    EXPECT_THROW(StableParams({2.5, 0.5, 1.0}).validate(), ValidationError);
}

TEST(Fractional, SnSeriesAgainstMellin) {
    const double A = 1.6, al = 0.5;
    auto fp = FractionalProblem::sn_stable(al, A, 1.0);
    MellinDensity m(fp, MellinDensity::default_line(fp));
    for (double t : {5.0, 50.0}) {
        AccuracyReport s = sn_stable_series_density(A, al, t), r = m(t);
        EXPECT_LE(std::abs(s.value - r.value), s.absErrorEstimate + r.absErrorEstimate + 1e-14) << t;
    }
    EXPECT_NEAR(sn_stable_series_density(A, al, 5.0).value, 0.015619347342, 1e-11);
    SnStableDensity f(A, al);
    double lead = sn_stable_leading_term(A, al, 1000.0) / f(1000.0).report.value;
    EXPECT_NEAR(lead, 1.0, 0.05);
    double split = f.split();
    double total = density_mass(f.mellin(), 1e-16, split).value + sn_stable_series_survival(A, al, split).value;
    EXPECT_NEAR(total, 1.0, 1e-2);
    // self-similarity in the start point: T0 from x equals x^{a/alpha} T0 from 1
    double x = 2.0, sc = std::pow(x, A / al);
    EXPECT_NEAR(sn_stable_series_density(A, al, 40.0, 200, x).value, sn_stable_series_density(A, al, 40.0 / sc).value / sc,
                1e-12);
}

TEST(Fractional, DensityCsv) {
    std::string csv = density_csv({1.0}, {AccuracyReport{0.5, 1e-9, 0.0}});
    EXPECT_EQ(csv, "t,f,errEstimate\n1,0.5,1e-09\n");
}
