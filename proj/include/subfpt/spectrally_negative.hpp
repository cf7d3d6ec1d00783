#pragma once

#include "subfpt/error.hpp"
#include "subfpt/models.hpp"
#include "subfpt/special.hpp"
#include "subfpt/wiener_hopf.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace subfpt {

namespace detail {
inline void require_sn(const ProblemTriple& pb, const char* who) {
    if (!pb.x_process.spectrally_negative())
        throw ValidationError(std::string(who) + ": X has positive jumps (needs a spectrally negative model)");
}
}  // namespace detail

/**
 * T_a < inf with positive probability iff sigma2 > 0, or X has unbounded
 * variation, or the bounded-variation drift d_X - delta*kappa is positive.
 * For compound Poisson X the stored drift is already the bounded-variation
 * drift (jumps are not compensated).
 */
inline bool passage_possible(const ProblemTriple& pb) {
    detail::require_sn(pb, "passage_possible");
    const auto& X = pb.x_process;
    if (X.sigma2() > 0.0 || !X.bounded_variation()) return true;
    return X.drift() - pb.boundary.drift() * pb.time_change.drift() > 0.0;
}

/// Cached inverse varrho -> phi_Ikea(varrho) of u -> Psi_q(-iu) on [theta0, inf).
class BernsteinInverse {
public:
    BernsteinInverse(const ProblemTriple& pb, double q) : ce_(pb, q), cache_(std::make_shared<Cache>()) {
        detail::require_sn(pb, "BernsteinInverse");
    }

    double operator()(double varrho) const {
        {
            std::lock_guard<std::mutex> g(cache_->mu);
            auto it = cache_->values.find(varrho);
            if (it != cache_->values.end()) return it->second;
        }
        double u = solve_root(ce_, varrho, WhFamily::SpectrallyNegative);
        std::lock_guard<std::mutex> g(cache_->mu);
        cache_->values.emplace(varrho, u);
        return u;
    }

    const CompositeExponent& exponent() const { return ce_; }

private:
    struct Cache {
        std::mutex mu;
        std::map<double, double> values;
    };
    CompositeExponent ce_;
    std::shared_ptr<Cache> cache_;
};

/// phi_T(q) = phi_Ikea(phi_Sub(q)): E[exp(-q T_a) 1{T_a < inf}] = exp(-phi_T(q) a).
inline double fpt_laplace_exponent(const ProblemTriple& pb, double q) {
    detail::require(q >= 0.0 && std::isfinite(q), "fpt_laplace_exponent: q must be finite and >= 0");
    if (!passage_possible(pb))
        throw ValidationError("fpt_laplace_exponent: passage is impossible (Xbs is the negative of a subordinator)");
    CompositeExponent ce(pb, q);
    return solve_root(ce, pb.time_change.phi(q), WhFamily::SpectrallyNegative);
}

/// P(T_a < inf) = exp(-phi_T(0) a).
inline double passage_probability(const ProblemTriple& pb, double a) {
    detail::require(a >= 0.0, "passage_probability: a must be >= 0");
    return std::exp(-fpt_laplace_exponent(pb, 0.0) * a);
}

struct ScaleFunctionTable {
    double q = 0.0;
    double p = 0.0;  ///< composed parameter phi_Sub(q)
    std::vector<double> x;
    std::vector<double> W;
    std::vector<double> Z;
    std::vector<double> errW;
    std::vector<double> errZ;

    std::string to_csv() const {
        std::ostringstream os;
        os.precision(12);
        os << "x,W,Z,errW\n";
        for (size_t i = 0; i < x.size(); ++i) os << x[i] << ',' << W[i] << ',' << Z[i] << ',' << errW[i] << '\n';
        return os.str();
    }
};

namespace detail {

/// Closed forms for X = sigma*B + mu*t.
inline std::pair<double, double> brownian_scale(double sigma2, double mu, double p, double x) {
    double disc = std::sqrt(mu * mu + 2.0 * p * sigma2);
    if (disc == 0.0) return {2.0 * x / sigma2, 1.0};
    double sp = (-mu + disc) / sigma2, sm = (-mu - disc) / sigma2;
    double c = 2.0 / (sigma2 * (sp - sm));
    double W = c * (std::exp(sp * x) - std::exp(sm * x));
    auto g = [&](double s) { return s == 0.0 ? x : std::expm1(s * x) / s; };
    double Z = 1.0 + p * c * (g(sp) - g(sm));
    return {W, Z};
}

}  // namespace detail

/**
 * @brief W^(p), Z^(p) of X at p = phi_Sub(q) on a grid (K must vanish).
 *
 * Brownian X uses closed forms (unless closedForms is false); otherwise both are Laplace inversions,
 * W from 1/(psi(s) - p) and Z from 1/s + p/(s (psi(s) - p)), with the
 * contour shifted right of Phi(p).
 */
inline ScaleFunctionTable scale_functions(const ProblemTriple& pb, double q, const std::vector<double>& xGrid,
                                          double relTol = 1e-9, bool closedForms = true) {
    detail::require_sn(pb, "scale_functions");
    detail::require(pb.boundary.identically_zero(), "scale_functions: needs K = 0");
    detail::require(q >= 0.0 && std::isfinite(q), "scale_functions: q must be finite and >= 0");
    detail::require(passage_possible(pb), "scale_functions: X is the negative of a subordinator");
    for (size_t i = 0; i < xGrid.size(); ++i) {
        detail::require(xGrid[i] >= 0.0 && std::isfinite(xGrid[i]), "scale_functions: x must be finite and >= 0");
        if (i > 0) detail::require(xGrid[i] > xGrid[i - 1], "scale_functions: xGrid must be increasing");
    }
    const auto& X = pb.x_process;
    ScaleFunctionTable tab;
    tab.q = q;
    tab.p = pb.time_change.phi(q);
    const double p = tab.p;
    const bool brownian = closedForms && std::holds_alternative<NoJumps>(X.jumps()) && X.sigma2() > 0.0;

    double s0 = 0.0;
    if (!brownian) {
        ProblemTriple bare(X, SubordinatorModel::drift_only(1.0), SubordinatorModel::zero(), 0.0, 0.0);
        s0 = solve_root(CompositeExponent(bare, 0.0), p, WhFamily::SpectrallyNegative);
    }
    auto Fw = [&](cplx s) { return 1.0 / (X.laplace_exponent(s) - p); };
    auto Fz = [&](cplx s) { return 1.0 / s + p / (s * (X.laplace_exponent(s) - p)); };

    for (double x : xGrid) {
        tab.x.push_back(x);
        if (brownian) {
            auto [w, z] = detail::brownian_scale(X.sigma2(), X.drift(), p, x);
            tab.W.push_back(w);
            tab.Z.push_back(z);
            tab.errW.push_back(0.0);
            tab.errZ.push_back(0.0);
            continue;
        }
        if (x == 0.0) {
            tab.W.push_back(X.bounded_variation() ? 1.0 / X.drift() : 0.0);
            tab.Z.push_back(1.0);
            tab.errW.push_back(0.0);
            tab.errZ.push_back(0.0);
            continue;
        }
        AccuracyReport w = laplace_invert(Fw, x, relTol, s0, true);
        tab.W.push_back(w.value);
        tab.errW.push_back(w.absErrorEstimate);
        if (p == 0.0) {
            tab.Z.push_back(1.0);
            tab.errZ.push_back(0.0);
        } else {
            AccuracyReport z = laplace_invert(Fz, x, relTol, s0, true);
            tab.Z.push_back(z.value);
            tab.errZ.push_back(z.absErrorEstimate);
        }
    }
    return tab;
}

/**
 * (E_x[exp(-q T_a); T_a < T0^-], E_x[exp(-q T0^-); T0^- < T_a]) for X_{l_t}
 * started at x in (0, a], K = 0.
 */
inline std::pair<double, double> two_sided_exit(const ProblemTriple& pb, double a, double x, double q) {
    if (!(x > 0.0 && x <= a)) throw DomainError("two_sided_exit: x must lie in (0, a]");
    if (x == a) return {1.0, 0.0};
    ScaleFunctionTable t = scale_functions(pb, q, {x, a});
    double up = t.W[0] / t.W[1];
    double down = t.Z[0] - t.Z[1] / t.W[1] * t.W[0];
    return {up, down};
}

}  // namespace subfpt
