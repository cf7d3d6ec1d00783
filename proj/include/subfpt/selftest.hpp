#pragma once

#include "subfpt/cox_renewal.hpp"
#include "subfpt/fractional.hpp"
#include "subfpt/montecarlo.hpp"
#include "subfpt/spectrally_negative.hpp"
#include "subfpt/special.hpp"
#include "subfpt/wiener_hopf.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace subfpt {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

inline CheckResult close_check(const std::string& name, double got, double want, double tol) {
    double d = std::abs(got - want);
    return {name, d <= tol, "got " + fmt(got) + " want " + fmt(want) + " |diff| " + fmt(d) + " tol " + fmt(tol)};
}

}  // namespace detail

/**
 * @brief Invariant suite behind `subfpt selftest`: exact formulas, internal
 * consistency of the analytic modules and small fixed-seed Monte Carlo checks.
 */
inline std::vector<CheckResult> run_selftest(unsigned workers = 0) {
    using detail::close_check;
    using detail::fmt;
    std::vector<CheckResult> out;
    auto guarded = [&](const std::string& name, const std::function<CheckResult()>& f) {
        try {
            out.push_back(f());
        } catch (const std::exception& e) {
            out.push_back({name, false, std::string("threw: ") + e.what()});
        }
    };

    // special functions
    guarded("gamma reflection", [] {
        double worst = 0.0;
        for (double re : {-3.7, -0.5, 0.25, 1.3}) {
            for (double im : {0.0, 0.8, -2.5, 7.0}) {
                cplx z(re, im);
                cplx lhs = gamma(z) * gamma(1.0 - z);
                cplx rhs = kPi / std::sin(kPi * z);
                worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
            }
        }
        return CheckResult{"gamma reflection", worst <= 1e-12, "max rel residual " + fmt(worst)};
    });
    guarded("barnes recurrences", [] {
        double worst = 0.0;
        for (double tau : {0.5, 0.625, 1.0, 2.0}) {
            for (cplx u : {cplx(0.7, 0.0), cplx(1.3, 2.0), cplx(2.5, -1.0)}) {
                cplx r1 = barnes_g(u + 1.0, tau) - barnes_g(u, tau) - log_gamma(u / tau);
                cplx r2 = barnes_g(u + tau, tau) - barnes_g(u, tau) -
                          (0.5 * (tau - 1.0) * std::log(2.0 * kPi) + (0.5 - u) * std::log(tau) + log_gamma(u));
                worst = std::max({worst, std::abs(std::remainder(r1.imag(), 2 * kPi)) + std::abs(r1.real()),
                                  std::abs(std::remainder(r2.imag(), 2 * kPi)) + std::abs(r2.real())});
            }
        }
        return CheckResult{"barnes recurrences", worst <= 1e-9, "max residual " + fmt(worst)};
    });
    guarded("mittag-leffler", [] {
        return close_check("mittag-leffler E_0.5(-1)", mittag_leffler(0.5, -1.0).value,
                           std::exp(1.0) * boost::math::erfc(1.0), 1e-10);
    });
    guarded("laplace round trips", [] {
        struct Pair {
            std::function<cplx(cplx)> F;
            std::function<double(double)> f;
            double t;
        };
        std::vector<Pair> pairs = {
            {[](cplx s) { return 1.0 / (s + 1.0); }, [](double t) { return std::exp(-t); }, 3.0},
            {[](cplx s) { return 1.0 / (s * s); }, [](double t) { return t; }, 3.0},
            {[](cplx s) { return 1.0 / std::sqrt(s); }, [](double t) { return 1.0 / std::sqrt(kPi * t); }, 3.0},
            {[](cplx s) { return 1.0 / (s * s + 1.0); }, [](double t) { return std::sin(t); }, 1.0},
            {[](cplx s) { return std::exp(-std::sqrt(s)) / s; },
             [](double t) { return boost::math::erfc(0.5 / std::sqrt(t)); }, 1.0},
        };
        double worst = 0.0;
        for (auto& p : pairs) worst = std::max(worst, std::abs(laplace_invert(p.F, p.t, 1e-10).value - p.f(p.t)));
        return CheckResult{"laplace round trips", worst <= 1e-8, "max error " + fmt(worst)};
    });

    // roots and factors
    const ProblemTriple bm(LevyModel::brownian(1.0), SubordinatorModel::drift_only(1.0), SubordinatorModel::zero(), 1.0);
    const RiskModel risk = RiskModel::fractional_poisson(1.0, 1.0, 1.0, 0.5);
    const ProblemTriple m22 = risk.problem(1.0);
    const ProblemTriple fk(LevyModel::brownian(1.0), SubordinatorModel::stable(0.5), SubordinatorModel::zero(), 1.0);
    const double R0 = (3.0 - std::sqrt(5.0)) / 2.0;
    guarded("root bm", [&] {
        return close_check("solve_root unit BM varrho=2", solve_root(CompositeExponent(bm, 0.0), 2.0, WhFamily::SpectrallyNegative), 2.0, 1e-12);
    });
    guarded("root R0", [&] { return close_check("R(0) renewal model", make_wh_factor(m22, 0.0, 0.0).root, R0, 1e-12); });
    guarded("root sn", [&] {
        ProblemTriple sn(LevyModel::spectrally_negative_stable(1.6), SubordinatorModel::stable(0.8), SubordinatorModel::zero(), 1.0);
        return close_check("phi_T(4) = 4^{0.5}", fpt_laplace_exponent(sn, 4.0), 2.0, 1e-11);
    });
    guarded("wh factors", [&] {
        WhFactor sn{WhFamily::SpectrallyNegative, 2.0, 0.0, 0.0, 1.0};
        WhFactor lm{WhFamily::LewisMordeckiExp, 0.382, 1.0, 0.0, 0.0};
        double e1 = std::abs(wh_factor(sn, cplx(0.0, 1.0)) - 2.0 / 3.0);
        double e2 = std::abs(wh_factor(lm, cplx(0.0, 1.0)) - 2.0 * 0.382 / 1.382);
        double e3 = std::abs(wh_factor(lm, 0.0) - 1.0) + std::abs(wh_factor(sn, 0.0) - 1.0);
        double w = std::max({e1, e2, e3});
        return CheckResult{"wh factor values", w <= 1e-14, "max error " + fmt(w)};
    });
    guarded("rhs q0", [&] { return close_check("composite_rhs_q0 renewal model", composite_rhs_q0(m22, 1.0, 0.0), 1.0 - 2.0 * R0 / (1.0 + R0), 1e-12); });
    guarded("lm quotient", [&] {
        WhFactor f = make_wh_factor(m22, 1.0, risk.timeChange.phi(1.0));
        CompositeExponent ce(m22, 1.0);
        double worst = 0.0;
        bool bounded = true;
        for (double z = -20.0; z <= 20.0; z += 0.25) {
            cplx nh = wh_negative_factor_quotient(f, ce, z);
            cplx prod = wh_factor(f, z) * nh;
            cplx rhs = f.varrho / (f.varrho - ce(z));
            worst = std::max(worst, std::abs(prod - rhs));
            bounded = bounded && std::abs(nh) <= 1.0 + 1e-12;
        }
        // removable singularity at z = -i R
        cplx a = wh_negative_factor_quotient(f, ce, cplx(0.0, -f.root * (1.0 + 1e-6)));
        cplx b = wh_negative_factor_quotient(f, ce, cplx(0.0, -f.root * (1.0 - 1e-6)));
        bool removable = std::abs(a - b) < 1e-4 * std::abs(a) && std::isfinite(std::abs(a));
        return CheckResult{"LM factorization", worst <= 1e-10 && bounded && removable,
                           "residual " + fmt(worst) + (bounded ? "" : " |quotient|>1") + (removable ? "" : " pole at -iR")};
    });
    guarded("rhs monotone", [&] {
        // a transform of the nonnegative pair (T, overshoot): decreasing in both v and q
        bool ok = true;
        double prev = 2.0;
        for (double v : {0.0, 0.3, 0.6, 0.9, 1.2}) {
            double r = composite_rhs(m22, 1.0, 1.5, v);
            ok = ok && r < prev;
            prev = r;
        }
        prev = 2.0;
        for (double q : {0.1, 0.5, 1.0, 4.0, 20.0}) {
            double r = composite_rhs(m22, q, 1.0, 0.5);
            ok = ok && r < prev;
            prev = r;
        }
        return CheckResult{"composite_rhs decreasing in v and q", ok, ok ? "" : "monotonicity violated"};
    });

    // spectrally negative
    guarded("phiT fk", [&] { return close_check("phi_T(1) fractional kinetic", fpt_laplace_exponent(fk, 1.0), std::sqrt(2.0), 1e-12); });
    guarded("phiT bernstein", [&] {
        std::vector<double> qs, v;
        for (double q = 0.0; q <= 10.0; q += 0.5) {
            qs.push_back(q);
            v.push_back(fpt_laplace_exponent(fk, q));
        }
        bool ok = v[0] >= 0.0;
        for (size_t i = 1; i < v.size(); ++i) ok = ok && v[i] >= v[i - 1];
        for (size_t i = 1; i + 1 < v.size(); ++i) ok = ok && v[i + 1] - 2.0 * v[i] + v[i - 1] <= 1e-12;
        return CheckResult{"phi_T Bernstein on grid", ok, ok ? "" : "not nonnegative, nondecreasing and concave"};
    });
    guarded("scale W", [&] {
        auto t = scale_functions(fk, 1.0, {1.0}, 1e-10, false);
        return close_check("W^(1)(1) by inversion", t.W[0], std::sqrt(2.0) * std::sinh(std::sqrt(2.0)), 1e-8);
    });
    guarded("scale Z identity", [&] {
        ProblemTriple sn(LevyModel::spectrally_negative_stable(1.6), SubordinatorModel::stable(0.5), SubordinatorModel::zero(), 1.0);
        auto tab = scale_functions(sn, 1.0, {1.5});
        double p = tab.p;
        auto w = [&](double x) { return x <= 0.0 ? 0.0 : scale_functions(sn, 1.0, {x}).W[0]; };
        double I = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(w, 0.0, 1.5, 5, 1e-10);
        return close_check("Z = 1 + p int W", tab.Z[0], 1.0 + p * I, 1e-6);
    });
    guarded("exit q0", [&] {
        auto e = two_sided_exit(fk, 2.0, 1.0, 0.0);
        return close_check("two-sided exit q=0 gambler's ruin", e.first, 0.5, 1e-12);
    });
    guarded("wh vs sn", [&] {
        double phiT = fpt_laplace_exponent(fk, 1.0);
        double p = 2.0;
        return close_check("Laplace-in-a vs composite_rhs", p / (p + phiT), composite_rhs(fk, 1.0, p, 0.0), 1e-8);
    });

    // fractional
    const FractionalProblem fpb = FractionalProblem::brownian_with_drift(0.5, 1.0, 1.0, 1.0);
    guarded("density mass", [&] {
        MellinDensity md(fpb, MellinDensity::default_line(fpb));
        auto m = density_mass(md, 1e-8, 1e8);
        return close_check("density mass", m.value + survival_asymptote(fpb, 1e8), 1.0, 1e-3);
    });
    guarded("contour independence", [&] {
        MellinLine l1 = MellinDensity::default_line(fpb), l2 = l1;
        l2.abscissa = 0.1;
        auto a = density_T0(fpb, 2.0, 0, l1), b = density_T0(fpb, 2.0, 0, l2);
        double d = std::abs(a.value - b.value);
        return CheckResult{"contour independence", d <= a.absErrorEstimate + b.absErrorEstimate,
                           "diff " + fmt(d) + " budget " + fmt(a.absErrorEstimate + b.absErrorEstimate)};
    });
    guarded("strip violation", [&] {
        try {
            fpb.mellin(cplx(0.5, 0.0));
        } catch (const DomainError&) {
            return CheckResult{"E[T0^alpha] rejected", true, ""};
        }
        return CheckResult{"E[T0^alpha] rejected", false, "no domain error at Re z = alpha"};
    });
    guarded("sn dual route", [&] {
        SnStableDensity sd(1.6, 0.5);
        auto s = sn_stable_series_density(1.6, 0.5, 5.0);
        auto m = sd.mellin()(5.0);
        return close_check("SN series vs Mellin at t=5", s.value, m.value, s.absErrorEstimate + m.absErrorEstimate);
    });

    // renewal
    guarded("ruin", [&] { return close_check("ruin_probability(1)", ruin_probability(risk, 1.0), (1.0 - R0) * std::exp(-R0), 1e-12); });
    guarded("ruin vs rhs", [&] {
        auto f = [&](double a) { return std::exp(-a) * ruin_probability(risk, a); };
        double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numeric_limits<double>::infinity(), 10, 1e-13);
        return close_check("int p e^{-pa} ruin(a) da = composite_rhs_q0", I, composite_rhs_q0(m22, 1.0, 0.0), 1e-10);
    });

    // Monte Carlo
    guarded("determinism", [&] {
        SamplerOptions o;
        o.opStep = 1e-2;
        o.opHorizon = 20.0;
        auto a = run_ensemble(fk, SamplerKind::Reduced, 64, 1, 9, o);
        auto b = run_ensemble(fk, SamplerKind::Reduced, 64, 4, 9, o);
        bool same = true;
        for (size_t i = 0; i < a.size(); ++i)
            same = same && a[i].time == b[i].time && a[i].censored == b[i].censored;
        return CheckResult{"run_ensemble identical across worker counts", same, ""};
    });
    guarded("mc fk", [&] {
        SamplerOptions o;
        o.opStep = 2e-3;
        o.opHorizon = 200.0;
        o.physHorizon = 30.0;
        o.bridge = true;
        auto s = run_ensemble(fk, SamplerKind::Reduced, 8000, workers, 21, o);
        auto e = estimate_lt(s, 1.0, 0.0);
        double want = std::exp(-std::sqrt(2.0));
        return CheckResult{"fractional-kinetic transform (MC)", e.agrees(want, 4.0),
                           "est " + fmt(e.value) + " se " + fmt(e.stdError) + " want " + fmt(want)};
    });
    guarded("mc ruin", [&] {
        auto v = parallel_generate<RuinSample>(20000, workers, 23, [&](RngStream& r, std::size_t) { return simulate_ruin(risk, 1.0, r); });
        std::vector<double> ind;
        for (auto& s : v) ind.push_back(s.ruined ? 1.0 : 0.0);
        auto e = estimate_mean(ind);
        double want = ruin_probability(risk, 1.0);
        return CheckResult{"renewal ruin probability (MC)", e.agrees(want, 4.0),
                           "est " + fmt(e.value) + " se " + fmt(e.stdError) + " want " + fmt(want)};
    });
    return out;
}

/// Prints one PASS/FAIL line per check; true when all pass.
inline bool print_selftest(const std::vector<CheckResult>& rs, std::ostream& os) {
    bool all = true;
    for (const auto& r : rs) {
        os << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) os << "  (" << r.detail << ")";
        os << '\n';
        all = all && r.pass;
    }
    return all;
}

}  // namespace subfpt
