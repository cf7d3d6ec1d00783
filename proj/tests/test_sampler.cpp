#include "subfpt/montecarlo.hpp"
#include "subfpt/sampler.hpp"
#include "subfpt/special.hpp"

#include <gtest/gtest.h>

using namespace subfpt;

namespace {

Estimate mean_of(std::size_t n, std::uint64_t seed, const std::function<double(RngStream&)>& g) {
    return estimate_mean(parallel_generate<double>(n, 1, seed, [&](RngStream& r, std::size_t) { return g(r); }));
}

}  // namespace

TEST(Sampler, StableIncrementLaplaceAndNegativeMoment) {
    Estimate lt = mean_of(200000, 1, [](RngStream& r) { return std::exp(-stable_subordinator_increment(0.5, 1.0, r)); });
    EXPECT_TRUE(lt.agrees(std::exp(-1.0))) << lt.value << " +- " << lt.stdError;
    Estimate inv = mean_of(200000, 2, [](RngStream& r) { return 1.0 / stable_subordinator_increment(0.5, 1.0, r); });
    EXPECT_TRUE(inv.agrees(2.0)) << inv.value << " +- " << inv.stdError;
}

TEST(Sampler, StableIncrementSelfSimilar) {
    auto a = parallel_generate<double>(20000, 1, 3, [](RngStream& r, std::size_t) { return stable_subordinator_increment(0.5, 4.0, r); });
    auto b = parallel_generate<double>(20000, 1, 4, [](RngStream& r, std::size_t) { return 16.0 * stable_subordinator_increment(0.5, 1.0, r); });
    EXPECT_FALSE(ks_two_sample(a, b).reject);
}

TEST(Sampler, SymmetricStableCharacteristicFunction) {
    // strictly stable index 1.5, rho = 1/2: E cos(u X) = exp(-|u|^1.5) under the unit scale
    Estimate c = mean_of(200000, 5, [](RngStream& r) { return std::cos(strictly_stable_unit(1.5, 0.5, r)); });
    EXPECT_TRUE(c.agrees(std::exp(-1.0))) << c.value << " +- " << c.stdError;
}

TEST(Sampler, SubordinatorPaths) {
    RngStream r(9, 0);
    PathRecord ramp = simulate_subordinator(SubordinatorModel::drift_only(0.7), 2.0, 0.25, r);
    for (std::size_t i = 0; i < ramp.times.size(); ++i) EXPECT_NEAR(ramp.values[i], 0.7 * ramp.times[i], 1e-14);

    Estimate term = mean_of(20000, 10, [](RngStream& g) {
        return simulate_subordinator(SubordinatorModel::compound_poisson_exp(2.0, 1.0, 1.0), 10.0, 0.5, g).values.back();
    });
    EXPECT_TRUE(term.agrees(30.0)) << term.value;

    Estimate st = mean_of(50000, 11, [](RngStream& g) {
        return std::exp(-simulate_subordinator(SubordinatorModel::stable(0.5), 1.0, 0.01, g).values.back());
    });
    EXPECT_TRUE(st.agrees(std::exp(-1.0))) << st.value;

    PathRecord p = simulate_subordinator(SubordinatorModel::stable(0.5), 3.0, 0.01, r);
    for (std::size_t i = 1; i < p.times.size(); ++i) {
        EXPECT_GT(p.times[i], p.times[i - 1]);
        EXPECT_GE(p.values[i], p.values[i - 1]);
    }
}

TEST(Sampler, InversePath) {
    PathRecord ramp;
    ramp.kind = PathKind::Sub;
    for (int k = 0; k <= 100; ++k) {
        ramp.times.push_back(0.05 * k);
        ramp.values.push_back(2.0 * 0.05 * k);
    }
    PathRecord inv = invert_path(ramp, 0.5, 9.0);
    for (std::size_t i = 0; i < inv.times.size(); ++i) EXPECT_NEAR(inv.values[i], inv.times[i] / 2.0, 0.05 + 1e-12);

    // unit drift, one jump at s = 1 from 0.5 to 2.0 (nodes on a fine grid)
    PathRecord jump;
    jump.kind = PathKind::Sub;
    for (int k = 0; k <= 300; ++k) {
        double s = 0.01 * k;
        jump.times.push_back(s);
        jump.values.push_back(s < 1.0 ? 0.5 * s : s + 1.0);
    }
    PathRecord j = invert_path(jump, 0.1, 2.9);
    for (std::size_t i = 0; i < j.times.size(); ++i)
        if (j.times[i] >= 0.5 && j.times[i] < 2.0) EXPECT_NEAR(j.values[i], 1.0, 1e-12) << j.times[i];

    RngStream r(12, 0);
    PathRecord s = simulate_subordinator(SubordinatorModel::stable(0.5), 20.0, 0.01, r);
    double horizon = std::min(5.0, 0.9 * s.values.back());
    PathRecord l = invert_path(s, 0.01, horizon);
    for (std::size_t i = 0; i < l.times.size(); ++i) {
        // Sub at the node before l_t is <= t < Sub at l_t
        auto k = static_cast<std::size_t>(std::llround(l.values[i] / 0.01));
        ASSERT_LT(k, s.values.size());
        EXPECT_GT(s.values[k], l.times[i]);
        if (k > 0) EXPECT_LE(s.values[k - 1], l.times[i]);
        if (i > 0) EXPECT_GE(l.values[i], l.values[i - 1]);
    }
    EXPECT_THROW(invert_path(s, 0.01, s.values.back() + 1.0), DomainError);
}

TEST(Sampler, DeterministicRampCrossing) {
    ProblemTriple pb(LevyModel(0.0, 1.0), SubordinatorModel::drift_only(1.0), SubordinatorModel::zero(), 2.0);
    RngStream r(1, 0), r2(1, 1);
    SamplerOptions o;
    o.opStep = 1e-3;
    FptSample d = fpt_direct(pb, o, r);
    FptSample q = fpt_reduced(pb, o, r2);
    ASSERT_TRUE(d.finite && q.finite);
    EXPECT_NEAR(d.time, 2.0, 2e-3);
    EXPECT_NEAR(q.time, 2.0, 2e-3);
    EXPECT_NEAR(q.overshoot, 0.0, 2e-3);
}

TEST(Sampler, LevelZeroRegularity) {
    ProblemTriple pb(LevyModel::brownian(1.0), SubordinatorModel::stable(0.5), SubordinatorModel::zero(), 0.0);
    double prev = 1e300;
    for (double h : {1e-2, 1e-3, 1e-4}) {
        SamplerOptions o;
        o.opStep = h;
        Estimate e = mean_of(2000, 13, [&](RngStream& r) { return std::min(fpt_reduced(pb, o, r).time, 10.0); });
        // the grid walk needs O(h) operational time with a heavy tail, so the mean shrinks like sqrt(h)
        EXPECT_LT(2.0 * e.value, prev) << h;
        prev = e.value;
    }
    EXPECT_LT(prev, 0.1);
}

TEST(Sampler, SpectrallyNegativeCreeps) {
    ProblemTriple pb(LevyModel::compound_poisson_exp(1.0, 2.0, JumpSign::Down, 1.0, 0.5), SubordinatorModel::stable(0.6),
                     SubordinatorModel::zero(), 1.0);
    SamplerOptions o;
    o.bridge = true;
    for (std::uint64_t i = 0; i < 200; ++i) {
        RngStream r(14, i);
        FptSample s = fpt_reduced(pb, o, r);
        if (s.finite) {
            EXPECT_EQ(s.overshoot, 0.0);
        }
    }
}

TEST(Sampler, ReducedAndDirectAgree) {
    ProblemTriple pb(LevyModel::brownian(1.0, 0.5), SubordinatorModel::stable(0.6, 0.2), SubordinatorModel::zero(), 0.5);
    SamplerOptions o;
    o.opStep = 2e-3;
    o.opHorizon = 50.0;
    auto red = run_ensemble(pb, SamplerKind::Reduced, 3000, 1, 15, o);
    auto dir = run_ensemble(pb, SamplerKind::Direct, 3000, 1, 16, o);
    std::vector<double> a, b;
    for (auto& s : red) a.push_back(std::min(s.time, 1e6));
    for (auto& s : dir) b.push_back(std::min(s.time, 1e6));
    EXPECT_FALSE(ks_two_sample(a, b).reject);
}

TEST(Sampler, EventExactMatchesGrid) {
    // compound Poisson claims against a linear boundary: exact event path vs the grid
    ProblemTriple pb(LevyModel::compound_poisson_exp(1.0, 1.0, JumpSign::Up), SubordinatorModel::stable(0.5),
                     SubordinatorModel::drift_only(1.0), 1.0);
    SamplerOptions exact, grid;
    grid.eventExact = false;
    grid.opStep = 1e-3;
    grid.opHorizon = 60.0;
    auto a = run_ensemble(pb, SamplerKind::Reduced, 4000, 1, 17, exact);
    auto b = run_ensemble(pb, SamplerKind::Reduced, 4000, 1, 18, grid);
    Estimate ea = estimate_lt(a, 0.5, 0.5), eb = estimate_lt(b, 0.5, 0.5);
    EXPECT_LE(std::abs(ea.value - eb.value), 3.0 * std::hypot(ea.stdError, eb.stdError) + eb.biasBound);
}

TEST(Sampler, MittagLefflerWaitingTimes) {
    Estimate near1 = mean_of(100000, 19, [](RngStream& r) { return mittag_leffler_waiting_time(0.999, 1.0, r) > 1.0 ? 1.0 : 0.0; });
    EXPECT_TRUE(near1.agrees(mittag_leffler(0.999, -1.0).value)) << near1.value;
    EXPECT_NEAR(mittag_leffler(0.999, -1.0).value, std::exp(-1.0), 2e-3);
    Estimate half = mean_of(100000, 20, [](RngStream& r) { return mittag_leffler_waiting_time(0.5, 1.0, r) > 1.0 ? 1.0 : 0.0; });
    EXPECT_TRUE(half.agrees(0.42758357615581)) << half.value;
    // lambda = 2 at t = 0.25 has the lambda = 1 survival at 2^{1/alpha} t = 1
    Estimate scaled = mean_of(100000, 21, [](RngStream& r) { return mittag_leffler_waiting_time(0.5, 2.0, r) > 0.25 ? 1.0 : 0.0; });
    EXPECT_TRUE(scaled.agrees(0.42758357615581)) << scaled.value;
}

TEST(Sampler, StreamsReproduce) {
    ProblemTriple pb(LevyModel::brownian(1.0), SubordinatorModel::stable(0.5), SubordinatorModel::zero(), 1.0);
    RngStream a(77, 5), b(77, 5), c(77, 6);
    SamplerOptions o;
    FptSample x = fpt_reduced(pb, o, a), y = fpt_reduced(pb, o, b), z = fpt_reduced(pb, o, c);
    EXPECT_EQ(x.time, y.time);
    EXPECT_NE(x.time, z.time);
}

TEST(Sampler, CsvShapes) {
    std::vector<FptSample> xs = {FptSample::hit(1.5, 0.25, SamplerKind::Reduced), FptSample::censor(30.0, SamplerKind::Reduced)};
    std::string csv = batch_csv(xs);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "time,overshoot,finite,censored");
    EXPECT_NE(csv.find("1.5,0.25,1,0"), std::string::npos);
    EXPECT_NE(csv.find("30,nan,0,1"), std::string::npos);
    PathRecord p;
    p.times = {0.0, 1.0};
    p.values = {0.0, 2.0};
    EXPECT_EQ(path_csv(p), "t,value,kind\n0,0,sub\n1,2,sub\n");
}

TEST(Sampler, OptionValidation) {
    SamplerOptions o;
    o.opStep = 0.0;
    EXPECT_THROW(o.validate(), ValidationError);
    RngStream r(1, 1);
    EXPECT_THROW(stable_subordinator_increment(1.2, 1.0, r), ValidationError);
    EXPECT_THROW(mittag_leffler_waiting_time(0.5, 0.0, r), ValidationError);
}
