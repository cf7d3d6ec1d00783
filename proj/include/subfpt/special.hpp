#pragma once

#include "subfpt/error.hpp"
#include "subfpt/models.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>

namespace subfpt {

/// A computed value with an absolute error estimate.
struct AccuracyReport {
    double value = 0.0;
    double absErrorEstimate = 0.0;
    double imagResidual = 0.0;  ///< |Im| of the raw quadrature, for real-valued integrals
};

namespace detail {

// B_2, B_4, ..., B_20
inline constexpr std::array<double, 10> kBernoulli2k = {
    1.0 / 6.0,     -1.0 / 30.0,     1.0 / 42.0,  -1.0 / 30.0,      5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,     -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline constexpr double kHalfLog2Pi = 0.91893853320467274178;

/// Stirling series, |z| >= 15 and Re z > 0.
inline cplx log_gamma_stirling(cplx z) {
    cplx lz = std::log(z);
    cplx r = (z - 0.5) * lz - z + kHalfLog2Pi;
    cplx zinv = 1.0 / z;
    cplx z2inv = zinv * zinv;
    cplx p = zinv;
    for (int k = 1; k <= 8; ++k) {
        r += kBernoulli2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= z2inv;
    }
    return r;
}

/// log sin(w) without overflow for large |Im w| (any branch).
inline cplx log_sin(cplx w) {
    const cplx I(0.0, 1.0);
    if (w.imag() >= 0.0) return -I * w + std::log((std::exp(2.0 * I * w) - 1.0) / (2.0 * I));
    return I * w + std::log((1.0 - std::exp(-2.0 * I * w)) / (2.0 * I));
}

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace detail

/**
 * @brief Complex log Gamma (continuous branch; exp() is always Gamma(z)).
 *
 * Upward shift + Stirling series, reflection for Re z < 0.
 */
inline cplx log_gamma(cplx z) {
    if (detail::is_nonpositive_integer(z)) throw DomainError("log_gamma: pole at nonpositive integer");
    if (z.imag() == 0.0 && z.real() > 0.0) return {std::lgamma(z.real()), 0.0};
    if (z.real() < 0.0) {
        return std::log(kPi) - detail::log_sin(kPi * z) - log_gamma(1.0 - z);
    }
    cplx shift(0.0);
    cplx w = z;
    while (std::abs(w) < 15.0) {
        shift += std::log(w);
        w += 1.0;
    }
    return detail::log_gamma_stirling(w) - shift;
}

inline double log_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) throw DomainError("log_gamma: pole at nonpositive integer");
    return std::lgamma(x);
}

/// Gamma(z) for complex z.
inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

/// Reciprocal Gamma, entire (0 at the poles).
inline cplx rgamma(cplx z) {
    if (detail::is_nonpositive_integer(z)) return 0.0;
    return std::exp(-log_gamma(z));
}

namespace detail {

/// Asymptotic polygamma psi^{(m)}(w), Re w large.
inline cplx polygamma_asymptotic(int m, cplx w) {
    cplx winv = 1.0 / w;
    if (m == 0) {
        cplx r = std::log(w) - 0.5 * winv;
        cplx w2 = winv * winv;
        cplx p = w2;
        for (int k = 1; k <= 8; ++k) {
            r -= kBernoulli2k[k - 1] / (2.0 * k) * p;
            p *= w2;
        }
        return r;
    }
    double sgn = (m % 2 == 1) ? 1.0 : -1.0;
    cplx wm = std::pow(winv, m);
    cplx r = factorial(m - 1) * wm + factorial(m) * 0.5 * wm * winv;
    cplx p = wm * winv * winv;
    for (int k = 1; k <= 8; ++k) {
        r += kBernoulli2k[k - 1] * factorial(2 * k + m - 1) / factorial(2 * k) * p;
        p *= winv * winv;
    }
    return sgn * r;
}

/// Antiderivative of log Gamma, asymptotic, up to a constant.
inline cplx log_gamma_integral_asymptotic(cplx s) {
    cplx ls = std::log(s);
    cplx r = 0.5 * s * s * ls - 0.75 * s * s - 0.5 * s * ls + 0.5 * s + s * kHalfLog2Pi + ls / 12.0;
    cplx s2 = 1.0 / (s * s);
    cplx p = s2;  // s^{2-2k} for k=2
    for (int k = 2; k <= 8; ++k) {
        r += kBernoulli2k[k - 1] / (2.0 * k * (2.0 * k - 1.0) * (2.0 - 2.0 * k)) * p;
        p *= s2;
    }
    return r;
}

/// Euler-Maclaurin antidifference of h(w) = log Gamma(w/tau).
inline cplx barnes_antidifference(cplx w, double tau) {
    cplx y = w / tau;
    cplx r = tau * log_gamma_integral_asymptotic(y) - 0.5 * log_gamma(y);
    for (int j = 1; j <= 7; ++j) {
        int m = 2 * j - 2;
        cplx d = std::pow(tau, -(2.0 * j - 1.0)) * polygamma_asymptotic(m, y);
        r += kBernoulli2k[j - 1] / factorial(2 * j) * d;
    }
    return r;
}

inline cplx barnes_partial(cplx u, double tau, int N) {
    cplx s(0.0);
    for (int k = 0; k < N; ++k) s += log_gamma((u + static_cast<double>(k)) / tau);
    return barnes_antidifference(u + static_cast<double>(N), tau) - s;
}

}  // namespace detail

/**
 * @brief log G_tau(z): the log-convex solution of G(u+1) = Gamma(u/tau) G(u), G(1) = 1.
 *
 * Also satisfies G(z+tau) = (2 pi)^{(tau-1)/2} tau^{-z+1/2} Gamma(z) G(z).
 */
inline cplx barnes_g(cplx z, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("barnes_g: tau must be > 0");
    if (!(z.real() > 0.0)) throw DomainError("barnes_g: needs Re(z) > 0");
    if (z == cplx(1.0)) return 0.0;
    double target = 40.0 * std::max(1.0, tau) + std::abs(z.imag());
    int N = std::max(0, static_cast<int>(std::ceil(target - z.real())));
    int N1 = std::max(0, static_cast<int>(std::ceil(target - 1.0)));
    return detail::barnes_partial(z, tau, N) - detail::barnes_partial(cplx(1.0), tau, N1);
}

/**
 * @brief Mittag-Leffler E_alpha(x), alpha in (0,1].
 *
 * Power series while its largest term is moderate; for large negative x
 * the Laplace representation of the completely monotone E_alpha(-x).
 */
inline AccuracyReport mittag_leffler(double alpha, double x) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("mittag_leffler: alpha must lie in (0,1]");
    if (!std::isfinite(x)) throw DomainError("mittag_leffler: x must be finite");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (alpha == 1.0) return {std::exp(x), 4.0 * eps * std::exp(x)};
    if (x == 0.0) return {1.0, 0.0};

    // size of the largest series term, roughly exp(|x|^{1/alpha})/alpha
    double lx = std::log(std::abs(x));
    double peak = 0.0;
    const double nPeakD = std::pow(std::abs(x), 1.0 / alpha) / alpha;
    if (nPeakD > 1e6) {
        // series hopeless; for x > 0 only the exponential asymptote is left
        peak = kInf;
        if (x > 0.0) {
            double v = std::exp(std::pow(x, 1.0 / alpha)) / alpha;
            return {v, 1e-3 * v};
        }
    } else {
        int nPeak = static_cast<int>(nPeakD) + 2;
        for (int n = std::max(0, nPeak - 3); n <= nPeak + 3; ++n)
            peak = std::max(peak, n * lx - std::lgamma(alpha * n + 1.0));
    }
    if (x > 0.0 || peak < std::log(1e3)) {
        double sum = 0.0, maxTerm = 0.0, last = 0.0;
        for (int n = 0; n < 100000; ++n) {
            double lt = n * lx - std::lgamma(alpha * n + 1.0);
            double term = std::exp(lt);
            if (x < 0.0 && (n % 2 == 1)) term = -term;
            sum += term;
            maxTerm = std::max(maxTerm, std::abs(term));
            last = std::abs(term);
            if (n > 5 && last < 1e-18 * std::max(1.0, std::abs(sum)) && lt < peak) break;
        }
        return {sum, 8.0 * eps * maxTerm + last};
    }
    // x < 0: E(-y) = sin(a pi)/(a pi) int_0^inf exp(-(y w)^{1/a}) / (w^2 + 2 w cos(a pi) + 1) dw
    double y = -x;
    double c = std::cos(alpha * kPi);
    auto f = [&](double w) { return std::exp(-std::pow(y * w, 1.0 / alpha)) / (w * w + 2.0 * w * c + 1.0); };
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    double e1 = 0.0, e2 = 0.0;
    double split = std::min(1.0, 1.0 / y);
    double i1 = ts.integrate(f, 0.0, split, 1e-14, &e1);
    double i2 = ts.integrate(f, split, 1.0, 1e-14, &e2);
    double e3 = 0.0;
    double i3 = es.integrate(f, 1.0, kInf, 1e-14, &e3);
    double pre = std::sin(alpha * kPi) / (alpha * kPi);
    double val = pre * (i1 + i2 + i3);
    return {val, pre * (e1 + e2 + e3) + 8.0 * eps * std::abs(val)};
}

/**
 * @brief Numerical inverse Laplace transform on a shifted cotangent (Talbot-type) contour.
 *
 * F must be analytic right of s0, real on the real axis, with singularities
 * close to the real axis. Nodes double from 16 up to 128. With `relative`
 * the target is scaled by the magnitude of the result.
 */
inline AccuracyReport laplace_invert(const std::function<cplx(cplx)>& F, double t, double target,
                                     double s0 = 0.0, bool relative = false) {
    if (!(t > 0.0)) throw DomainError("laplace_invert: t must be > 0");
    auto level = [&](int N) {
        const double mu = N / t;
        const double a = 0.6407;
        double acc = 0.0;
        const double h = 2.0 * kPi / N;
        for (int k = 0; k < N / 2; ++k) {
            double th = (k + 0.5) * h;  // (0, pi)
            double ct = 1.0 / std::tan(a * th);
            double st = std::sin(a * th);
            cplx s = s0 + mu * cplx(-0.6122 + 0.5017 * th * ct, 0.2645 * th);
            cplx ds = mu * cplx(0.5017 * ct - 0.5017 * a * th / (st * st), 0.2645);
            cplx v = std::exp(s * t) * F(s) * ds;
            acc += v.imag();  // Re(v / i)
        }
        return acc * 2.0 / N;
    };
    double prev = level(16);
    for (int N = 32, d = 0; d < 3; N *= 2, ++d) {
        double cur = level(N);
        double err = std::abs(cur - prev);
        if (!std::isfinite(cur)) break;
        if (err <= target * (relative ? std::abs(cur) : 1.0)) return {cur, err};
        prev = cur;
    }
    throw ConvergenceError("laplace_invert: no agreement within target after 3 doublings at t=" + std::to_string(t));
}

/// Contour Re z = abscissa truncated to |Im z| <= halfWidth, with `nodes` trapezoid panels.
struct MellinLine {
    double abscissa = 0.0;
    double halfWidth = 40.0;
    int nodes = 2048;

    void validate() const {
        detail::require(std::isfinite(abscissa), "MellinLine: abscissa must be finite");
        detail::require(halfWidth > 0.0, "MellinLine: halfWidth must be > 0");
        detail::require(nodes >= 64 && nodes % 2 == 0, "MellinLine: nodes must be even and >= 64");
    }
};

/**
 * @brief (1/2 pi i) * integral of g over the truncated line.
 *
 * decayRate > 0 is the exponential decay rate of |g(a+ib)| in |b|, used to
 * bound the truncated tails; 0 means estimate it from the integrand.
 */
inline AccuracyReport mellin_barnes_integrate(const std::function<cplx(cplx)>& g, const MellinLine& line,
                                              double decayRate = 0.0) {
    line.validate();
    const int N = line.nodes;
    const double h = 2.0 * line.halfWidth / N;
    cplx full(0.0), half(0.0);
    for (int k = 0; k <= N; ++k) {
        double b = -line.halfWidth + k * h;
        double w = (k == 0 || k == N) ? 0.5 : 1.0;
        cplx v = g(cplx(line.abscissa, b));
        full += w * v;
        if (k % 2 == 0) half += ((k == 0 || k == N) ? 0.5 : 1.0) * v;
    }
    full *= h / (2.0 * kPi);
    half *= 2.0 * h / (2.0 * kPi);
    double edge = std::abs(g(cplx(line.abscissa, line.halfWidth))) +
                  std::abs(g(cplx(line.abscissa, -line.halfWidth)));
    double rate = decayRate;
    if (!(rate > 0.0)) {
        double inner = std::abs(g(cplx(line.abscissa, 0.9 * line.halfWidth))) +
                       std::abs(g(cplx(line.abscissa, -0.9 * line.halfWidth)));
        rate = (inner > edge && edge > 0.0) ? std::log(inner / edge) / (0.1 * line.halfWidth) : 0.0;
        if (!(rate > 0.0)) {
            if (edge > 0.0) throw ConvergenceError("mellin_barnes_integrate: integrand not decaying on the line");
            rate = 1.0;
        }
    }
    double tail = edge / (2.0 * kPi * rate);
    return {full.real(), std::abs(full - half) + tail, std::abs(full.imag())};
}

}  // namespace subfpt
