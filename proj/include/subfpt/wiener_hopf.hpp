#pragma once

#include "subfpt/error.hpp"
#include "subfpt/models.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace subfpt {

enum class WhFamily { SpectrallyNegative, LewisMordeckiExp };

inline const char* to_string(WhFamily f) {
    return f == WhFamily::SpectrallyNegative ? "spectrally_negative" : "lewis_mordecki_exp";
}

/// Solved positive Wiener-Hopf factor of the composite process at (q, varrho).
struct WhFactor {
    WhFamily family = WhFamily::SpectrallyNegative;
    double root = 0.0;      ///< phi_Ikea(varrho) for SN, R(varrho) for LM
    double jumpRate = 0.0;  ///< p of the exponential upward jumps (LM only)
    double q = 0.0;
    double varrho = 0.0;
};

namespace detail {

/// Rate p when the only upward jumps of X are one exponential(p) class.
inline std::optional<double> exp_up_jump_rate(const LevyModel& X) {
    const bool refl = X.reflected();
    return std::visit(overloaded{
                          [&](const CompoundPoissonExp& c) -> std::optional<double> {
                              bool up = (c.sign == JumpSign::Up) != refl;
                              return up ? std::optional<double>(c.jumpRate) : std::nullopt;
                          },
                          [&](const CustomFiniteActivity& c) -> std::optional<double> {
                              std::optional<double> rate;
                              for (const auto& k : c.classes) {
                                  bool ok = std::visit(overloaded{
                                                           [&](const ExpJumpUp& e) {
                                                               if (refl) return true;
                                                               if (rate && *rate != e.rate) return false;
                                                               rate = e.rate;
                                                               return true;
                                                           },
                                                           [&](const ExpJumpDown& e) {
                                                               if (!refl) return true;
                                                               if (rate && *rate != e.rate) return false;
                                                               rate = e.rate;
                                                               return true;
                                                           },
                                                           [&](const FixedJump& f) { return (refl ? -f.size : f.size) < 0.0; },
                                                           [&](const NormalJump& n) {
                                                               return n.sd == 0.0 && (refl ? -n.mean : n.mean) < 0.0;
                                                           },
                                                       },
                                                       k.law);
                                  if (!ok) return std::nullopt;
                              }
                              return rate;
                          },
                          [](const auto&) -> std::optional<double> { return std::nullopt; },
                      },
                      X.jumps());
}

}  // namespace detail

/**
 * Family of the composite process Xbs = X - K(Sub). SN when X has no upward
 * jumps. LM when the upward jumps of X are exponential(p), X has no Gaussian
 * part and the effective drift d_X - delta*kappa is <= 0 (no upward creeping).
 */
inline WhFamily classify(const ProblemTriple& pb) {
    const auto& X = pb.x_process;
    if (X.spectrally_negative()) return WhFamily::SpectrallyNegative;
    auto rate = detail::exp_up_jump_rate(X);
    if (rate && X.sigma2() == 0.0 && X.finite_activity() &&
        X.drift() - pb.boundary.drift() * pb.time_change.drift() <= 0.0)
        return WhFamily::LewisMordeckiExp;
    throw ValidationError("wiener_hopf: no closed positive factor for this model (needs spectrally negative X, "
                          "or exponential upward jumps without upward creeping)");
}

/**
 * @brief Root u* of Psi_q(-iu) = varrho: the right end of the sublevel set
 * {u >= 0 : Psi_q(-iu) <= varrho} of a convex function.
 *
 * Bisection on a bracket (doubling for SN, (0, p) for LM), then a secant
 * step kept only if it lowers the residual.
 */
inline double solve_root(const CompositeExponent& ce, double varrho, WhFamily family, double upper = kInf) {
    detail::require(varrho >= 0.0 && std::isfinite(varrho), "solve_root: varrho must be finite and >= 0");
    auto f = [&](double u) {
        double v = ce.at_minus_iu(u);
        return std::isnan(v) ? kInf : v;
    };
    double lo = 0.0, hi;
    if (family == WhFamily::SpectrallyNegative) {
        hi = 1.0;
        int k = 0;
        while (!(f(hi) > varrho)) {
            hi *= 2.0;
            if (++k > 1000) throw ConvergenceError("solve_root: bracket failure, Psi_q(-iu) stays below varrho");
        }
    } else {
        detail::require(upper > 0.0 && std::isfinite(upper), "solve_root: LM family needs the jump rate p");
        hi = upper;
    }
    for (int it = 0; it < 2000 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) <= varrho)
            lo = mid;
        else
            hi = mid;
    }
    double u = lo;
    if (family == WhFamily::LewisMordeckiExp) {
        if (u <= 0.0 && varrho == 0.0)
            throw ValidationError("solve_root: no positive root at varrho = 0 (process does not drift to -inf)");
        if (u >= upper * (1.0 - 1e-14)) throw ConvergenceError("solve_root: root collapsed onto the jump rate p");
    }
    // safeguarded secant on [lo, hi]
    double flo = f(lo) - varrho, fhi = f(hi) - varrho;
    if (std::isfinite(fhi) && fhi != flo) {
        double s = lo - flo * (hi - lo) / (fhi - flo);
        if (s > lo && s < hi && std::abs(f(s) - varrho) < std::abs(flo)) u = s;
    }
    return u;
}

inline WhFactor make_wh_factor(const ProblemTriple& pb, double q, double varrho) {
    WhFactor w;
    w.family = classify(pb);
    w.q = q;
    w.varrho = varrho;
    CompositeExponent ce(pb, q);
    if (w.family == WhFamily::LewisMordeckiExp) {
        w.jumpRate = *detail::exp_up_jump_rate(pb.x_process);
        w.root = solve_root(ce, varrho, w.family, w.jumpRate);
    } else {
        w.root = solve_root(ce, varrho, w.family);
    }
    return w;
}

/// Positive factor Phi(varrho; z), Im z >= 0.
inline cplx wh_factor(const WhFactor& f, cplx z) {
    if (z.imag() < 0.0) throw DomainError("wh_factor: needs Im z >= 0");
    if (z == cplx(0.0)) return 1.0;
    const cplx I(0.0, 1.0);
    if (f.family == WhFamily::SpectrallyNegative) {
        if (f.root == 0.0) return 0.0;  // supremum infinite
        return f.root / (f.root - I * z);
    }
    cplx u = -I * z;
    return ((u + f.jumpRate) / f.jumpRate) * (f.root / (u + f.root));
}

/// Negative factor as the quotient varrho / ((varrho - Psi_q(z)) Phi(z)), real z or Im z <= 0 in the strip.
inline cplx wh_negative_factor_quotient(const WhFactor& f, const CompositeExponent& ce, cplx z) {
    const cplx I(0.0, 1.0);
    cplx phi;
    if (f.family == WhFamily::SpectrallyNegative)
        phi = f.root / (f.root - I * z);
    else
        phi = ((-I * z + f.jumpRate) / f.jumpRate) * (f.root / (-I * z + f.root));
    return f.varrho / ((f.varrho - ce(z)) * phi);
}

/**
 * @brief E[exp(-q T - v * overshoot)] at an independent Exp(p) level:
 * (p/(p-v)) (1 - Phi(ip)/Phi(iv)) with varrho = phi_Sub(q).
 */
inline double composite_rhs(const ProblemTriple& pb, double q, double p, double v) {
    detail::require(q > 0.0 && std::isfinite(q), "composite_rhs: q must be > 0");
    detail::require(p > 0.0 && std::isfinite(p), "composite_rhs: p must be > 0");
    detail::require(v >= 0.0 && std::isfinite(v), "composite_rhs: v must be >= 0");
    detail::require(v != p, "composite_rhs: v = p is excluded");
    WhFactor f = make_wh_factor(pb, q, pb.time_change.phi(q));
    const cplx I(0.0, 1.0);
    return (p / (p - v)) * (1.0 - (wh_factor(f, I * p) / wh_factor(f, I * v)).real());
}

/// q = 0 limit, requires Xbs drifting to -inf.
inline double composite_rhs_q0(const ProblemTriple& pb, double p, double v) {
    detail::require(p > 0.0 && std::isfinite(p), "composite_rhs_q0: p must be > 0");
    detail::require(v >= 0.0 && std::isfinite(v), "composite_rhs_q0: v must be >= 0");
    detail::require(v != p, "composite_rhs_q0: v = p is excluded");
    if (drifts_to_minus_infinity(pb) != DriftVerdict::Yes)
        throw ValidationError("composite_rhs_q0: Xbs does not drift to -inf, so T_a < inf a.s. and the q=0 limit is trivial");
    WhFactor f = make_wh_factor(pb, 0.0, 0.0);
    const cplx I(0.0, 1.0);
    return (p / (p - v)) * (1.0 - (wh_factor(f, I * p) / wh_factor(f, I * v)).real());
}

}  // namespace subfpt
