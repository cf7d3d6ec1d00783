#pragma once

#include "subfpt/error.hpp"
#include "subfpt/models.hpp"
#include "subfpt/rng.hpp"
#include "subfpt/sampler.hpp"
#include "subfpt/wiener_hopf.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace subfpt {

/**
 * @brief Renewal risk model: claims Exp(p) arriving at rate lambda in
 * operational time, a stable (or general) time change, capital inflow K.
 *
 * Ruin at level a is T_a = inf{t : X_{l_t} > a + K_t} with X the claim
 * process (compound Poisson, upward exponential jumps, no drift).
 */
struct RiskModel {
    double lambda = 1.0;
    double p = 1.0;
    double delta = 1.0;  ///< premium rate when capitalK is left as drift(delta)
    SubordinatorModel capitalK = SubordinatorModel::drift_only(1.0);
    SubordinatorModel timeChange = SubordinatorModel::stable(0.5);

    RiskModel() = default;
    RiskModel(double lam, double pp, double del, SubordinatorModel sub)
        : lambda(lam), p(pp), delta(del), capitalK(SubordinatorModel::drift_only(del)), timeChange(std::move(sub)) {
        validate();
    }
    RiskModel(double lam, double pp, SubordinatorModel k, SubordinatorModel sub)
        : lambda(lam), p(pp), delta(k.drift()), capitalK(std::move(k)), timeChange(std::move(sub)) {
        validate();
    }

    /// Stable(alpha) time change, premium delta.
    static RiskModel fractional_poisson(double lam, double pp, double del, double alpha) {
        return RiskModel(lam, pp, del, SubordinatorModel::stable(alpha));
    }

    void validate() const {
        detail::require(lambda > 0.0 && std::isfinite(lambda), "RiskModel: lambda must be > 0");
        detail::require(p > 0.0 && std::isfinite(p), "RiskModel: p must be > 0");
        detail::require(delta >= 0.0 && std::isfinite(delta), "RiskModel: premium rate must be >= 0");
        timeChange.validate_time_change();
    }

    ProblemTriple problem(double a = 0.0) const {
        return ProblemTriple(LevyModel::compound_poisson_exp(lambda, p, JumpSign::Up), timeChange, capitalK, a, 0.0);
    }
};

/// E[e^{-u J}] = lambda / (lambda + phi_Sub(u)) for the holding time J.
inline double holding_time_lt(const RiskModel& m, double u) {
    detail::require(u >= 0.0, "holding_time_lt: u must be >= 0");
    return m.lambda / (m.lambda + m.timeChange.phi(u));
}

/**
 * @brief R_q in (0, p): lambda R/(p - R) = phi_Sub(phi_K(R) + q).
 *
 * Pure-stable Sub with drift-only K solves lambda R/(p-R) - (delta R + q)^alpha = 0
 * directly; anything else goes through the Lewis-Mordecki root of Psi_q.
 */
inline double solve_Rq(const RiskModel& m, double q) {
    detail::require(q >= 0.0 && std::isfinite(q), "solve_Rq: q must be finite and >= 0");
    if (m.capitalK.drift_only() && m.timeChange.pure_stable()) {
        const double al = m.timeChange.stable_alpha();
        const double d = m.capitalK.drift();
        auto g = [&](double R) { return m.lambda * R / (m.p - R) - std::pow(d * R + q, al); };
        double lo = 0.0, hi = m.p;
        for (int it = 0; it < 200 && hi - lo > 2e-16 * m.p; ++it) {
            double mid = 0.5 * (lo + hi);
            if (g(mid) <= 0.0)
                lo = mid;
            else
                hi = mid;
        }
        if (!(lo > 0.0)) throw ConvergenceError("solve_Rq: bracket failure");
        return lo;
    }
    return make_wh_factor(m.problem(), q, m.timeChange.phi(q)).root;
}

/// ((p - R(0))/p) exp(-R(0) a), or 1 when Xbs does not drift to -inf.
inline double ruin_probability(const RiskModel& m, double a) {
    detail::require(a >= 0.0, "ruin_probability: a must be >= 0");
    if (drifts_to_minus_infinity(m.problem(a)) != DriftVerdict::Yes) return 1.0;
    double R = solve_Rq(m, 0.0);
    return (m.p - R) / m.p * std::exp(-R * a);
}

/// E[e^{-q T_a}; overshoot <= y] = ((p - R_q)/p) e^{-R_q a} (1 - e^{-p y}).
inline double joint_transform(const RiskModel& m, double a, double q, double y) {
    detail::require(a >= 0.0 && q > 0.0 && y > 0.0, "joint_transform: need a >= 0, q > 0, y > 0");
    double R = solve_Rq(m, q);
    double tail = std::isinf(y) ? 1.0 : -std::expm1(-m.p * y);
    return (m.p - R) / m.p * std::exp(-R * a) * tail;
}

inline std::string ruin_csv(const RiskModel& m, const std::vector<double>& as) {
    std::ostringstream os;
    os.precision(12);
    os << "a,ruinProb\n";
    for (double a : as) os << a << ',' << ruin_probability(m, a) << '\n';
    return os.str();
}

struct RuinSample {
    bool ruined = false;
    bool censored = false;
    double time = kInf;
    double overshoot = 0.0;
};

struct RenewalOptions {
    double surplusCap = 60.0;  ///< stop (no ruin) once the surplus exceeds a + cap
    long maxClaims = 10000000;
};

/**
 * @brief Event-exact simulation of the renewal risk process: holding times
 * Sub(E/lambda) (Mittag-Leffler for stable Sub), Exp(p) claims, capital
 * K over each holding time. Ruin can only occur at claim instants.
 */
inline RuinSample simulate_ruin(const RiskModel& m, double a, RngStream& rng, const RenewalOptions& o = {}) {
    detail::require(a >= 0.0, "simulate_ruin: a must be >= 0");
    const bool ml = m.timeChange.pure_stable();
    double surplus = a, t = 0.0;
    for (long k = 0; k < o.maxClaims; ++k) {
        double J = ml ? mittag_leffler_waiting_time(m.timeChange.stable_alpha(), m.lambda, rng)
                      : subordinator_increment(m.timeChange, rng.exponential() / m.lambda, rng);
        t += J;
        surplus += m.capitalK.drift_only() ? m.capitalK.drift() * J : subordinator_increment(m.capitalK, J, rng);
        surplus -= rng.exponential() / m.p;
        if (surplus < 0.0) return {true, false, t, -surplus};
        if (surplus > a + o.surplusCap) return {false, true, kInf, 0.0};
    }
    return {false, true, kInf, 0.0};
}

}  // namespace subfpt
