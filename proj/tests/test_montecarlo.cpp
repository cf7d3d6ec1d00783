#include "subfpt/cox_renewal.hpp"
#include "subfpt/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>

using namespace subfpt;

TEST(MonteCarlo, EstimateLtEdgeCases) {
    std::vector<FptSample> all(50, FptSample::hit(2.0, 0.5, SamplerKind::Reduced));
    Estimate e = estimate_lt(all, 0.0, 0.0);
    EXPECT_EQ(e.value, 1.0);
    EXPECT_EQ(e.stdError, 0.0);
    std::vector<FptSample> mix = {FptSample::hit(1.0, 0.0, SamplerKind::Reduced), FptSample::never(SamplerKind::Reduced),
                                  FptSample::hit(3.0, 0.0, SamplerKind::Reduced), FptSample::never(SamplerKind::Reduced)};
    EXPECT_EQ(estimate_lt(mix, 0.0, 0.0).value, 0.5);
    EXPECT_NEAR(estimate_lt(mix, 1.0, 0.0).value, (std::exp(-1.0) + std::exp(-3.0)) / 4.0, 1e-15);
    // censored draws count as zero; the bias bound covers them
    std::vector<FptSample> cens = {FptSample::hit(1.0, 0.0, SamplerKind::Reduced), FptSample::censor(10.0, SamplerKind::Reduced)};
    Estimate c = estimate_lt(cens, 0.5, 0.0);
    EXPECT_NEAR(c.value, std::exp(-0.5) / 2.0, 1e-15);
    EXPECT_NEAR(c.biasBound, std::exp(-5.0) / 2.0, 1e-15);
    EXPECT_EQ(c.censoredFraction, 0.5);
}

TEST(MonteCarlo, KolmogorovSmirnov) {
    std::vector<double> x;
    for (int i = 0; i < 500; ++i) x.push_back((i + 0.5) / 500.0);
    KsResult same = ks_two_sample(x, x);
    EXPECT_EQ(same.statistic, 0.0);
    EXPECT_FALSE(same.reject);
    std::vector<double> y = x;
    for (double& v : y) v += 1.0;
    EXPECT_TRUE(ks_two_sample(x, y).reject);
    KsResult one = ks_one_sample(x, [](double u) { return std::clamp(u, 0.0, 1.0); });
    EXPECT_FALSE(one.reject);
    EXPECT_NEAR(ks_critical(0.05), 1.3581, 1e-4);
    EXPECT_NEAR(kolmogorov_q(1.3581), 0.05, 1e-4);
}

TEST(MonteCarlo, ConfidenceCoverage) {
    int covered = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        auto xs = parallel_generate<double>(1000, 1, 500 + rep, [](RngStream& r, std::size_t) { return r.uniform() < 0.5 ? 1.0 : 0.0; });
        Estimate e = estimate_mean(xs);
        if (e.lower() <= 0.5 && 0.5 <= e.upper()) ++covered;
    }
    EXPECT_GE(covered, 90);
}

TEST(MonteCarlo, Correlation) {
    auto xs = parallel_generate<double>(5000, 1, 1, [](RngStream& r, std::size_t) { return r.normal(); });
    auto ys = parallel_generate<double>(5000, 1, 2, [](RngStream& r, std::size_t) { return r.normal(); });
    Correlation c = correlation(xs, ys);
    EXPECT_LE(c.lower, 0.0);
    EXPECT_GE(c.upper, 0.0);
    Correlation d = correlation(xs, xs);
    EXPECT_NEAR(d.r, 1.0, 1e-12);
}

TEST(MonteCarlo, EnsembleDeterminism) {
    ProblemTriple pb(LevyModel::brownian(1.0), SubordinatorModel::stable(0.5), SubordinatorModel::zero(), 1.0);
    SamplerOptions o;
    o.physHorizon = 30.0;
    auto one = run_ensemble(pb, SamplerKind::Reduced, 1, 1, 42, o);
    RngStream r(42, 0);
    FptSample direct = fpt_reduced(pb, o, r);
    EXPECT_EQ(one[0].time, direct.time);
    auto a = run_ensemble(pb, SamplerKind::Reduced, 400, 1, 43, o);
    auto b = run_ensemble(pb, SamplerKind::Reduced, 400, 8, 43, o);
    auto c = run_ensemble(pb, SamplerKind::Direct, 50, 3, 43, o);
    auto d = run_ensemble(pb, SamplerKind::Direct, 50, 1, 43, o);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(std::memcmp(&a[i].time, &b[i].time, sizeof(double)), 0);
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(std::memcmp(&c[i].time, &d[i].time, sizeof(double)), 0);
    EXPECT_THROW(run_ensemble(pb, SamplerKind::Reduced, 0, 1, 1, o), ValidationError);
}

TEST(MonteCarlo, RuinBenchmarkFiniteFraction) {
    const RiskModel m = RiskModel::fractional_poisson(1.0, 1.0, 1.0, 0.5);
    auto xs = run_ensemble(m.problem(1.0), SamplerKind::Reduced, 20000, 0, 44);
    Estimate e = estimate_lt(xs, 0.0, 0.0);
    EXPECT_TRUE(e.agrees(ruin_probability(m, 1.0))) << e.value << " +- " << e.stdError;
    double mean = 0.0;
    int k = 0;
    for (auto& s : xs)
        if (s.finite) {
            mean += s.overshoot;
            ++k;
        }
    Estimate over = estimate_mean([&] {
        std::vector<double> v;
        for (auto& s : xs)
            if (s.finite) v.push_back(s.overshoot);
        return v;
    }());
    EXPECT_TRUE(over.agrees(1.0)) << over.value;
    EXPECT_NEAR(mean / k, over.value, 1e-12);
}

TEST(MonteCarlo, WorkerDefault) {
    ::setenv("SUBFPT_THREADS", "3", 1);
    EXPECT_EQ(default_workers(), 3u);
    ::setenv("SUBFPT_THREADS", "junk", 1);
    EXPECT_GE(default_workers(), 1u);
    ::unsetenv("SUBFPT_THREADS");
}

TEST(MonteCarlo, ExceptionsPropagate) {
    EXPECT_THROW(parallel_generate<double>(10, 4, 1, [](RngStream&, std::size_t i) -> double {
                     if (i == 7) throw ConvergenceError("boom");
                     return 0.0;
                 }),
                 ConvergenceError);
}
