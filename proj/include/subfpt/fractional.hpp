#pragma once

#include "subfpt/error.hpp"
#include "subfpt/models.hpp"
#include "subfpt/rng.hpp"
#include "subfpt/sampler.hpp"
#include "subfpt/special.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace subfpt {

/// exp(w) K_nu(w) for complex order and w > 0, trapezoid on the cosh integral.
inline cplx bessel_k_scaled(cplx nu, double w) {
    if (!(w > 0.0)) throw DomainError("bessel_k_scaled: w must be > 0");
    const double h = std::min(0.15, 7.5 / (40.0 + 1.2 * std::abs(nu.imag())));
    const double rn = std::abs(nu.real());
    cplx sum = 0.5;  // u = 0 term with weight 1/2
    for (int k = 1;; ++k) {
        double u = k * h;
        double e = -w * 2.0 * std::sinh(0.5 * u) * std::sinh(0.5 * u);  // -w (cosh u - 1)
        sum += std::exp(e) * std::cosh(nu * u);
        if (e + rn * u < -42.0 && u > 1.0) break;
        if (k > 200000) throw ConvergenceError("bessel_k_scaled: slow decay");
    }
    return h * sum;
}

/**
 * @brief T0 = inf{t : X_{l_t} > 0} under a stable(alpha) time change,
 * described through the law of the operational passage time T0(X).
 *
 * T0 = Sub_1 * T0(X)^{1/alpha} in law, so E[T0^z] = Gamma(1-z/alpha)/Gamma(1-z) E[T0(X)^{z/alpha}].
 */
struct FractionalProblem {
    double alpha = 0.5;
    std::function<cplx(cplx)> baseMellin;  ///< s -> E[T0(X)^s 1{T0(X) < inf}]
    double sMin = -kInf;                   ///< base transform finite for sMin < Re s < sMax
    double sMax = kInf;
    double mass = 1.0;   ///< P(T0(X) < inf)
    double mean = kInf;  ///< E[T0(X)], infinite when T0(X) = inf with positive probability
    double decay = 0.0;  ///< exponential decay rate of |E[T0^{a+ib}]| in |b|
    std::function<double(RngStream&)> baseSampler;  ///< draws T0(X); may be empty

    void validate() const {
        detail::require(alpha > 0.0 && alpha < 1.0, "FractionalProblem: alpha must lie in (0,1)");
        detail::require(static_cast<bool>(baseMellin), "FractionalProblem: base Mellin transform missing");
        detail::require(sMax > 0.0 && sMin < 0.0, "FractionalProblem: empty strip");
        detail::require(decay > 0.0, "FractionalProblem: decay rate must be > 0");
    }

    /// Open strip (lo, hi) of z where E[T0^z] is finite.
    std::pair<double, double> strip() const {
        return {std::max(alpha * sMin, -kInf), alpha * std::min(1.0, sMax)};
    }

    /// E[T0^z 1{T0 < inf}].
    cplx mellin(cplx z) const {
        auto [lo, hi] = strip();
        if (!(z.real() > lo && z.real() < hi))
            throw DomainError("FractionalProblem::mellin: Re z = " + std::to_string(z.real()) + " outside (" +
                              std::to_string(lo) + ", " + std::to_string(hi) + ")");
        cplx s = z / alpha;
        return std::exp(log_gamma(1.0 - s) - log_gamma(1.0 - z)) * baseMellin(s);
    }

    /**
     * X = mu t + sigma B started at -x: T0(X) is inverse Gaussian for mu > 0,
     * Levy for mu = 0 and defective (mass exp(-2|mu|x/sigma2)) for mu < 0.
     */
    static FractionalProblem brownian_with_drift(double alpha, double mu, double sigma2, double x) {
        detail::require(sigma2 > 0.0 && x > 0.0, "brownian_with_drift: need sigma2 > 0 and x > 0");
        FractionalProblem fp;
        fp.alpha = alpha;
        const double lam = x * x / sigma2;
        if (mu == 0.0) {
            fp.sMax = 0.5;
            fp.mass = 1.0;
            fp.mean = kInf;
            fp.baseMellin = [lam](cplx s) {
                return std::exp(s * std::log(lam / 2.0) + log_gamma(0.5 - s) - 0.5 * std::log(kPi));
            };
            fp.baseSampler = [lam](RngStream& r) {
                double z = r.normal();
                return lam / (z * z);
            };
        } else {
            const double am = std::abs(mu);
            const double m = x / am;
            const double w = lam / m;
            const double mass = mu > 0.0 ? 1.0 : std::exp(-2.0 * am * x / sigma2);
            fp.mass = mass;
            fp.mean = mu > 0.0 ? m : kInf;
            fp.baseMellin = [=](cplx s) {
                cplx nu = s - 0.5;
                return mass * std::sqrt(2.0 * w / kPi) * std::exp(s * std::log(m)) * bessel_k_scaled(nu, w);
            };
            fp.baseSampler = [=](RngStream& r) {
                if (mass < 1.0 && r.uniform() > mass) return kInf;
                // Michael-Schucany-Haas
                double y = r.normal();
                y *= y;
                double xx = m + m * m * y / (2.0 * lam) - (m / (2.0 * lam)) * std::sqrt(4.0 * m * lam * y + m * m * y * y);
                return r.uniform() <= m / (m + xx) ? xx : m * m / xx;
            };
        }
        fp.decay = kPi * (2.0 - alpha) / (2.0 * alpha);
        fp.validate();
        return fp;
    }

    /// Passage below 0 of a spectrally negative stable process (Psi(-iu) = u^a) started at x > 0.
    static FractionalProblem sn_stable(double alpha, double aIndex, double x = 1.0);
    /// Passage below 0 of a stable(a, rho) process started at x > 0 (Barnes G route).
    static FractionalProblem stable(double alpha, double aIndex, double rho, double x = 1.0);
};

/// One draw of T0 = Sub_1 * T0(X)^{1/alpha}.
inline double factorized_sample(const FractionalProblem& fp, RngStream& rng) {
    detail::require(fp.alpha > 0.0 && fp.alpha < 1.0, "factorized_sample: alpha must lie in (0,1)");
    detail::require(static_cast<bool>(fp.baseSampler), "factorized_sample: no sampler for T0(X)");
    double base = fp.baseSampler(rng);
    if (!std::isfinite(base)) return kInf;
    return stable_subordinator_unit(fp.alpha, rng) * std::pow(base, 1.0 / fp.alpha);
}

/**
 * @brief f^{(n)}(t) = (1/2 pi i) int (-1)^n (z+1)_n t^{-z-1-n} E[T0^z] dz on Re z = a.
 *
 * The transform is tabulated once on the line; each t costs one pass.
 * Trapezoid on [0, B] using Hermitian symmetry, error from the nested
 * half grid plus the truncated tail.
 */
class MellinDensity {
public:
    MellinDensity(const FractionalProblem& fp, MellinLine line) : fp_(fp), line_(line) {
        fp_.validate();
        line_.validate();
        auto [lo, hi] = fp_.strip();
        if (!(line_.abscissa > std::max(lo, -1.0) && line_.abscissa < hi))
            throw DomainError("MellinDensity: abscissa " + std::to_string(line_.abscissa) + " outside the strip (" +
                              std::to_string(std::max(lo, -1.0)) + ", " + std::to_string(hi) + ")");
        const int half = line_.nodes / 2;
        h_ = line_.halfWidth / half;
        vals_.resize(half + 1);
        for (int k = 0; k <= half; ++k) vals_[k] = fp_.mellin(cplx(line_.abscissa, k * h_));
        // Hermitian symmetry of the evaluator, spot-checked
        for (int k : {half / 7, half / 3, half / 2}) {
            cplx m = fp_.mellin(cplx(line_.abscissa, -k * h_));
            hermit_ = std::max(hermit_, std::abs(m - std::conj(vals_[k])));
        }
    }

    /// Default line: middle of (max(lo,0), hi), wide enough for the decay rate.
    static MellinLine default_line(const FractionalProblem& fp, int derivativeOrder = 0) {
        auto [lo, hi] = fp.strip();
        double left = std::max(lo, 0.0);
        MellinLine l;
        l.abscissa = 0.5 * (left + hi);
        l.halfWidth = (42.0 + 4.0 * derivativeOrder) / fp.decay + 1.0;
        double d = 0.5 * (hi - left);
        double h = std::min(0.05, d / 6.0);
        int n = static_cast<int>(std::ceil(2.0 * l.halfWidth / h));
        n += (4 - n % 4) % 4;
        l.nodes = std::max(256, n);
        return l;
    }

    const MellinLine& line() const { return line_; }
    const FractionalProblem& problem() const { return fp_; }

    AccuracyReport operator()(double t, int n = 0) const {
        if (!(t > 0.0)) throw DomainError("MellinDensity: t must be > 0");
        detail::require(n >= 0 && n <= 4, "MellinDensity: derivative order must lie in 0..4");
        const double lt = std::log(t);
        const int half = line_.nodes / 2;
        double full = 0.0, coarse = 0.0, edge = 0.0;
        for (int k = 0; k <= half; ++k) {
            cplx z(line_.abscissa, k * h_);
            cplx poch(1.0);
            for (int j = 1; j <= n; ++j) poch *= (z + static_cast<double>(j));
            cplx g = poch * std::exp(-(z + 1.0 + static_cast<double>(n)) * lt) * vals_[k];
            double v = g.real();
            double w = (k == 0 || k == half) ? 0.5 : 1.0;
            full += w * v;
            if (k % 2 == 0) coarse += ((k == 0 || k == half) ? 0.5 : 1.0) * v;
            if (k == half) edge = std::abs(g);
        }
        double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        full *= sgn * h_ / kPi;
        coarse *= sgn * 2.0 * h_ / kPi;
        double tail = edge / (kPi * fp_.decay);
        return {full, std::abs(full - coarse) + tail, hermit_};
    }

private:
    FractionalProblem fp_;
    MellinLine line_;
    double h_ = 0.0;
    std::vector<cplx> vals_;
    double hermit_ = 0.0;
};

inline AccuracyReport density_T0(const FractionalProblem& fp, double t, int n, const MellinLine& line) {
    return MellinDensity(fp, line)(t, n);
}

inline AccuracyReport density_T0(const FractionalProblem& fp, double t, int n = 0) {
    return MellinDensity(fp, MellinDensity::default_line(fp, n))(t, n);
}

/// int_{t0}^{t1} f(t) dt by adaptive Gauss-Kronrod in log t.
inline AccuracyReport density_mass(const MellinDensity& f, double t0, double t1) {
    detail::require(t0 > 0.0 && t1 > t0, "density_mass: need 0 < t0 < t1");
    double pointErr = 0.0;
    auto g = [&](double u) {
        double t = std::exp(u);
        AccuracyReport r = f(t);
        pointErr = std::max(pointErr, r.absErrorEstimate * t);
        return r.value * t;
    };
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, std::log(t0), std::log(t1), 15, 1e-11, &err);
    return {v, err + pointErr * (std::log(t1) - std::log(t0))};
}

/**
 * (m / Gamma(2 - alpha)) t^{1 - alpha}: the large-t level of the truncated
 * mean E[T0 ^ t] = int_0^t P(T0 > s) ds. The survival itself decays like
 * t^{-alpha}, see survival_asymptote.
 */
inline double tail_asymptote(const FractionalProblem& fp, double t) {
    return fp.mean / std::tgamma(2.0 - fp.alpha) * std::pow(t, 1.0 - fp.alpha);
}

/// Same level as a bare formula.
inline double tail_asymptote(double mean, double alpha, double t) {
    return mean / std::tgamma(2.0 - alpha) * std::pow(t, 1.0 - alpha);
}

/// P(T0 > t) ~ m t^{-alpha} / Gamma(1 - alpha).
inline double survival_asymptote(const FractionalProblem& fp, double t) {
    return fp.mean / std::tgamma(1.0 - fp.alpha) * std::pow(t, -fp.alpha);
}

/// f^{(n)}(t) ~ (-1)^n (sin(alpha pi)/pi) Gamma(alpha+1+n) m t^{-alpha-1-n}.
inline double density_asymptote(const FractionalProblem& fp, double t, int n = 0) {
    double s = (n % 2 == 0) ? 1.0 : -1.0;
    return s * std::sin(fp.alpha * kPi) / kPi * std::tgamma(fp.alpha + 1.0 + n) * fp.mean *
           std::pow(t, -fp.alpha - 1.0 - n);
}

/// n-th derivative of the survival asymptote: (-1)^n (sin(alpha pi)/pi) Gamma(alpha+n) m t^{-alpha-n}.
inline double tail_derivative_asymptote(const FractionalProblem& fp, double t, int n) {
    double s = (n % 2 == 0) ? 1.0 : -1.0;
    return s * std::sin(fp.alpha * kPi) / kPi * std::tgamma(fp.alpha + n) * fp.mean * std::pow(t, -fp.alpha - n);
}

// ---- stable processes ---------------------------------------------------------

struct StableParams {
    double aIndex = 1.5;
    double rho = 0.5;
    double x = 1.0;

    void validate() const {
        detail::require(aIndex > 0.0 && aIndex <= 2.0, "StableParams: index must lie in (0,2]");
        detail::require(rho > 0.0 && rho < 1.0, "StableParams: rho must lie in (0,1)");
        detail::require(x > 0.0, "StableParams: x must be > 0");
        if (aIndex > 1.0)
            detail::require(aIndex * rho >= aIndex - 1.0 - 1e-12 && aIndex * rho <= 1.0 + 1e-12,
                            "StableParams: need a - 1 <= a rho <= 1");
        if (aIndex < 1.0) detail::require(rho < 1.0, "StableParams: subordinator case excluded");
    }
};

/// log W^-(w+1) with W^-(1) = 1.
inline cplx log_w_minus_shifted(cplx w, double aIndex, double rho) {
    const double tau = 1.0 / aIndex;
    return barnes_g(cplx(tau + rho), tau) - barnes_g(cplx(tau + 1.0), tau) + barnes_g(w + tau + 1.0, tau) -
           barnes_g(w + tau + rho, tau);
}

/// log W^+(w+1) with W^+(0) = 1.
inline cplx log_w_plus_shifted(cplx w, double aIndex, double rho) {
    const double tau = 1.0 / aIndex;
    return barnes_g(cplx(1.0 - rho), tau) + barnes_g(w + 2.0, tau) - barnes_g(w + 2.0 - rho, tau);
}

/// E_x[T0hat(X)^s], T0hat = inf{t : X_t < 0}, for -1 < Re s < 1 - rho.
inline cplx stable_mellin_base(const StableParams& sp, cplx s) {
    sp.validate();
    if (!(s.real() > -1.0 && s.real() < 1.0 - sp.rho))
        throw DomainError("stable_mellin_base: Re s outside (-1, 1 - rho)");
    cplx l = sp.aIndex * s * std::log(sp.x) + log_gamma(1.0 + s) + log_w_plus_shifted(-s - 1.0, sp.aIndex, sp.rho) -
             log_w_minus_shifted(s, sp.aIndex, sp.rho);
    return std::exp(l);
}

/// E_x[T0hat^z] for the stable(alpha)-time-changed process, -alpha < Re z < alpha (1 - rho).
inline cplx stable_mellin_hatT0(const StableParams& sp, double alpha, cplx z) {
    detail::require(alpha > 0.0 && alpha < 1.0, "stable_mellin_hatT0: alpha must lie in (0,1)");
    if (!(z.real() > -alpha && z.real() < alpha * (1.0 - sp.rho)))
        throw DomainError("stable_mellin_hatT0: Re z outside (-alpha, alpha (1 - rho))");
    cplx s = z / alpha;
    return std::exp(log_gamma(1.0 - s) - log_gamma(1.0 - z)) * stable_mellin_base(sp, s);
}

/// Spectrally negative base transform (closed form), -1 < Re s < 1 - 1/a.
inline cplx sn_stable_mellin_base(double aIndex, double x, cplx s) {
    detail::require(aIndex > 1.0 && aIndex <= 2.0, "sn_stable_mellin_base: index must lie in (1,2]");
    if (!(s.real() > -1.0 && s.real() < 1.0 - 1.0 / aIndex))
        throw DomainError("sn_stable_mellin_base: Re s outside (-1, 1 - 1/a)");
    const double ia = 1.0 / aIndex;
    // Gamma(s + 1/a) / Gamma(1 + a s) has a removable singularity at s = -1/a
    cplx l = aIndex * s * std::log(x) + std::log(std::sin(kPi * ia) / kPi) + log_gamma(1.0 + s) +
             log_gamma(1.0 - ia - s);
    cplx r;
    if (std::abs(s + ia) < 1e-7) {
        // Gamma(e)/Gamma(1 - 1 + a e) -> a as e -> 0
        r = std::exp(l) * aIndex;
    } else {
        r = std::exp(l + log_gamma(s + ia) - log_gamma(1.0 + aIndex * s));
    }
    return r;
}

inline cplx sn_stable_mellin(double aIndex, double alpha, double x, cplx z) {
    detail::require(alpha > 0.0 && alpha < 1.0, "sn_stable_mellin: alpha must lie in (0,1)");
    cplx s = z / alpha;
    return std::exp(log_gamma(1.0 - s) - log_gamma(1.0 - z)) * sn_stable_mellin_base(aIndex, x, s);
}

inline FractionalProblem FractionalProblem::sn_stable(double alpha, double aIndex, double x) {
    detail::require(aIndex > 1.0 && aIndex <= 2.0, "FractionalProblem::sn_stable: index must lie in (1,2]");
    detail::require(x > 0.0, "FractionalProblem::sn_stable: x must be > 0");
    FractionalProblem fp;
    fp.alpha = alpha;
    fp.sMin = -1.0;
    fp.sMax = 1.0 - 1.0 / aIndex;
    fp.mass = 1.0;
    fp.mean = kInf;
    fp.baseMellin = [aIndex, x](cplx s) { return sn_stable_mellin_base(aIndex, x, s); };
    fp.decay = kPi * (4.0 - alpha - aIndex) / (2.0 * alpha);
    fp.validate();
    return fp;
}

inline FractionalProblem FractionalProblem::stable(double alpha, double aIndex, double rho, double x) {
    StableParams sp{aIndex, rho, x};
    sp.validate();
    FractionalProblem fp;
    fp.alpha = alpha;
    fp.sMin = -1.0;
    fp.sMax = 1.0 - rho;
    fp.mass = 1.0;
    fp.mean = kInf;
    fp.baseMellin = [sp](cplx s) { return stable_mellin_base(sp, s); };
    fp.decay = kPi * (2.0 - alpha + aIndex * (2.0 * rho - 1.0)) / (2.0 * alpha);
    fp.validate();
    return fp;
}

namespace detail {

/// Terms of the large-t series for the spectrally negative stable case at x = 1.
struct SnSeriesTerm {
    double a;  ///< coefficient of t^{-alpha(n+1)-1}
    double b;  ///< coefficient of t^{alpha/a - alpha(n+1) - 1}
};

inline SnSeriesTerm sn_series_term(double aIndex, double alpha, int n) {
    const double ia = 1.0 / aIndex;
    const double m = n + 1.0;
    const double pre = alpha / (aIndex * kPi);
    // a_n = -Gamma(alpha m)/Gamma(a m), b_n = -Gamma(alpha (m - 1/a))/Gamma(a m - 1)
    double an = -std::exp(std::lgamma(alpha * m) - std::lgamma(aIndex * m));
    double bn = -std::exp(std::lgamma(alpha * (m - ia)) - std::lgamma(aIndex * m - 1.0));
    return {pre * std::sin(alpha * kPi * m) * an, -pre * std::sin(alpha * kPi * (m - ia)) * bn};
}

}  // namespace detail

/**
 * @brief Series for the density of T0hat (spectrally negative stable X,
 * Psi(-iu) = u^a, started at x), under a stable(alpha) time change:
 * f(t) = (alpha/(a pi)) sum [sin(alpha pi (n+1)) a_n - sin(alpha pi (n+1-1/a)) b_n t^{alpha/a}] t^{-alpha(n+1)-1}
 * at x = 1, scaled by self-similarity otherwise. A large-t expansion: the
 * error estimate includes cancellation, so small t should use the Mellin route.
 */
inline AccuracyReport sn_stable_series_density(double aIndex, double alpha, double t, int N = 200, double x = 1.0) {
    detail::require(aIndex > 1.0 && aIndex <= 2.0, "sn_stable_series_density: index must lie in (1,2]");
    detail::require(alpha > 0.0 && alpha < 1.0, "sn_stable_series_density: alpha must lie in (0,1)");
    detail::require(t > 0.0 && x > 0.0 && N >= 1, "sn_stable_series_density: need t, x > 0 and N >= 1");
    const double scale = std::pow(x, aIndex / alpha);
    const double u = t / scale;
    const double lu = std::log(u);
    double sum = 0.0, big = 0.0, last = 0.0;
    int quiet = 0;
    for (int n = 0; n < N; ++n) {
        auto c = detail::sn_series_term(aIndex, alpha, n);
        double e = -alpha * (n + 1.0) - 1.0;
        double term = c.a * std::exp(e * lu) + c.b * std::exp((e + alpha / aIndex) * lu);
        sum += term;
        big = std::max(big, std::abs(term));
        last = std::abs(term);
        if (last <= 1e-17 * std::abs(sum)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    double err = 4.0 * last + 64.0 * std::numeric_limits<double>::epsilon() * big;
    return {sum / scale, err / scale};
}

/// P(T0hat > t) from termwise integration of the series.
inline AccuracyReport sn_stable_series_survival(double aIndex, double alpha, double t, int N = 200, double x = 1.0) {
    detail::require(t > 0.0 && x > 0.0 && N >= 1, "sn_stable_series_survival: need t, x > 0 and N >= 1");
    const double u = t / std::pow(x, aIndex / alpha);
    const double lu = std::log(u);
    double sum = 0.0, big = 0.0, last = 0.0;
    int quiet = 0;
    for (int n = 0; n < N; ++n) {
        auto c = detail::sn_series_term(aIndex, alpha, n);
        double ea = alpha * (n + 1.0);
        double eb = ea - alpha / aIndex;
        double term = c.a * std::exp(-ea * lu) / ea + c.b * std::exp(-eb * lu) / eb;
        sum += term;
        big = std::max(big, std::abs(term));
        last = std::abs(term);
        if (last <= 1e-17 * std::abs(sum)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    return {sum, 4.0 * last + 64.0 * std::numeric_limits<double>::epsilon() * big};
}

/// n = 0 summand of the series (dominant at large t).
inline double sn_stable_leading_term(double aIndex, double alpha, double t) {
    auto c = detail::sn_series_term(aIndex, alpha, 0);
    return c.a * std::pow(t, -alpha - 1.0) + c.b * std::pow(t, alpha / aIndex - alpha - 1.0);
}

/**
 * Density of T0hat for spectrally negative stable X by two routes: the
 * series where its error estimate beats the Mellin-Barnes estimate, the
 * Mellin-Barnes integral elsewhere.
 */
class SnStableDensity {
public:
    SnStableDensity(double aIndex, double alpha, double x = 1.0)
        : aIndex_(aIndex), alpha_(alpha), x_(x),
          mellin_(std::make_shared<MellinDensity>(FractionalProblem::sn_stable(alpha, aIndex, x),
                                                  MellinDensity::default_line(FractionalProblem::sn_stable(alpha, aIndex, x)))) {}

    struct Value {
        AccuracyReport report;
        bool series = false;
    };

    Value operator()(double t) const {
        AccuracyReport s = sn_stable_series_density(aIndex_, alpha_, t, 400, x_);
        if (s.absErrorEstimate <= 1e-12 * std::abs(s.value)) return {s, true};
        AccuracyReport m = (*mellin_)(t);
        if (std::isfinite(s.value) && s.absErrorEstimate < m.absErrorEstimate) return {s, true};
        return {m, false};
    }

    const MellinDensity& mellin() const { return *mellin_; }

    /// Smallest grid point where the series is selected (the route split).
    double split(double tLo = 1e-3, double tHi = 1e6) const {
        for (double t = tLo; t < tHi; t *= 1.1)
            if ((*this)(t).series) return t;
        return tHi;
    }

private:
    double aIndex_, alpha_, x_;
    std::shared_ptr<MellinDensity> mellin_;
};

/// CSV `t,f,errEstimate` for a density grid.
inline std::string density_csv(const std::vector<double>& ts, const std::vector<AccuracyReport>& fs) {
    std::ostringstream os;
    os.precision(12);
    os << "t,f,errEstimate\n";
    for (size_t i = 0; i < ts.size(); ++i) os << ts[i] << ',' << fs[i].value << ',' << fs[i].absErrorEstimate << '\n';
    return os.str();
}

}  // namespace subfpt
