#pragma once

#include "subfpt/error.hpp"
#include "subfpt/rng.hpp"
#include "subfpt/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace subfpt {

/// Sample mean with standard error and censoring bookkeeping.
struct Estimate {
    double value = 0.0;
    double stdError = 0.0;
    std::size_t n = 0;
    double censoredFraction = 0.0;
    double biasBound = 0.0;  ///< upper bound on the contribution of censored draws

    double lower(double z = 1.959963984540054) const { return value - z * stdError; }
    double upper(double z = 1.959963984540054) const { return value + z * stdError; }
    /// |value - target| <= k standard errors plus the censoring bias bound.
    bool agrees(double target, double k = 3.0, double slack = 0.0) const {
        return std::abs(value - target) <= k * stdError + biasBound + slack;
    }
};

inline Estimate estimate_mean(const std::vector<double>& xs) {
    if (xs.empty()) throw ValidationError("estimate_mean: empty batch");
    // Welford
    double mean = 0.0, m2 = 0.0;
    std::size_t k = 0;
    for (double x : xs) {
        ++k;
        double d = x - mean;
        mean += d / k;
        m2 += d * (x - mean);
    }
    Estimate e;
    e.value = mean;
    e.n = xs.size();
    e.stdError = xs.size() > 1 ? std::sqrt(m2 / (xs.size() - 1) / xs.size()) : 0.0;
    return e;
}

/**
 * @brief Mean of exp(-q T - v overshoot) 1{T finite}.
 *
 * Censored draws contribute 0; their possible contribution is bounded by
 * exp(-q * censorBound) each and reported as biasBound.
 */
inline Estimate estimate_lt(const std::vector<FptSample>& samples, double q, double v) {
    if (samples.empty()) throw ValidationError("estimate_lt: empty batch");
    detail::require(q >= 0.0 && v >= 0.0, "estimate_lt: q and v must be >= 0");
    std::vector<double> vals;
    vals.reserve(samples.size());
    std::size_t cens = 0;
    double bias = 0.0;
    for (const auto& s : samples) {
        if (s.finite) {
            double o = v > 0.0 ? v * s.overshoot : 0.0;
            vals.push_back(std::exp(-q * s.time - o));
        } else {
            vals.push_back(0.0);
            if (s.censored) {
                ++cens;
                bias += std::exp(-q * s.censorBound);
            }
        }
    }
    Estimate e = estimate_mean(vals);
    e.censoredFraction = static_cast<double>(cens) / samples.size();
    e.biasBound = bias / samples.size();
    return e;
}

struct KsResult {
    double statistic = 0.0;
    double pValue = 1.0;
    double threshold = 0.0;  ///< critical value at the requested level
    bool reject = false;
};

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double kolmogorov_q(double lambda) {
    if (lambda < 0.2) return 1.0;
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double t = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 == 1 ? 2.0 : -2.0) * t;
        if (t < 1e-18) break;
    }
    return std::clamp(s, 0.0, 1.0);
}

inline double ks_critical(double level) { return std::sqrt(-0.5 * std::log(level / 2.0)); }

/// Two-sample Kolmogorov-Smirnov test (values may include +inf).
inline KsResult ks_two_sample(std::vector<double> x, std::vector<double> y, double level = 0.01) {
    if (x.empty() || y.empty()) throw ValidationError("ks_two_sample: empty batch");
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = x.size(), m = y.size();
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(i / n - j / m));
    }
    KsResult r;
    r.statistic = d;
    double ne = n * m / (n + m);
    double sq = std::sqrt(ne);
    r.pValue = kolmogorov_q((sq + 0.12 + 0.11 / sq) * d);
    r.threshold = ks_critical(level) / sq;
    r.reject = d > r.threshold;
    return r;
}

/// One-sample KS test against a continuous CDF.
inline KsResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf, double level = 0.01) {
    if (x.empty()) throw ValidationError("ks_one_sample: empty batch");
    std::sort(x.begin(), x.end());
    const double n = x.size();
    double d = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double F = cdf(x[i]);
        d = std::max({d, (i + 1) / n - F, F - i / n});
    }
    KsResult r;
    r.statistic = d;
    double sq = std::sqrt(n);
    r.pValue = kolmogorov_q((sq + 0.12 + 0.11 / sq) * d);
    r.threshold = ks_critical(level) / sq;
    r.reject = d > r.threshold;
    return r;
}

/// Pearson correlation with a Fisher-z confidence interval.
struct Correlation {
    double r = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

inline Correlation correlation(const std::vector<double>& x, const std::vector<double>& y, double z = 1.959963984540054) {
    detail::require(x.size() == y.size() && x.size() > 3, "correlation: need matching batches of size > 3");
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    Correlation c;
    c.r = sxy / std::sqrt(sxx * syy);
    double fz = std::atanh(std::clamp(c.r, -0.999999999, 0.999999999));
    double se = 1.0 / std::sqrt(x.size() - 3.0);
    c.lower = std::tanh(fz - z * se);
    c.upper = std::tanh(fz + z * se);
    return c;
}

/// Worker count from SUBFPT_THREADS, else hardware concurrency.
inline unsigned default_workers() {
    if (const char* env = std::getenv("SUBFPT_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1u : h;
}

/**
 * @brief Evaluate fn(rng_i, i) for i < n with rng_i = RngStream(seed, i).
 *
 * Indices are split into contiguous blocks, one per worker, and written in
 * place, so the result does not depend on the number of workers.
 */
template <class T, class F>
std::vector<T> parallel_generate(std::size_t n, unsigned workers, std::uint64_t seed, F fn) {
    std::vector<T> out(n);
    if (workers == 0) workers = default_workers();
    workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(workers, n)));
    auto block = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            RngStream rng(seed, i);
            out[i] = fn(rng, i);
        }
    };
    if (workers == 1) {
        block(0, n);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, w, lo, hi] {
            try {
                block(lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

/// n first-passage draws, sample i on stream i.
inline std::vector<FptSample> run_ensemble(const ProblemTriple& pb, SamplerKind kind, std::size_t n, unsigned workers,
                                           std::uint64_t seed, const SamplerOptions& opts = {}) {
    detail::require(n >= 1, "run_ensemble: n must be >= 1");
    opts.validate();
    return parallel_generate<FptSample>(n, workers, seed, [&](RngStream& rng, std::size_t) {
        return kind == SamplerKind::Direct ? fpt_direct(pb, opts, rng) : fpt_reduced(pb, opts, rng);
    });
}

/// Draws of T at an independent Exp(p) level (level drawn first on each stream).
inline std::vector<FptSample> run_exponential_level_ensemble(const ProblemTriple& pb, double p, std::size_t n,
                                                             unsigned workers, std::uint64_t seed,
                                                             const SamplerOptions& opts = {}) {
    detail::require(p > 0.0, "run_exponential_level_ensemble: p must be > 0");
    return parallel_generate<FptSample>(n, workers, seed, [&](RngStream& rng, std::size_t) {
        double level = rng.exponential() / p;
        ProblemTriple q = pb.with_level(level, 0.0);
        return fpt_reduced(q, opts, rng);
    });
}

}  // namespace subfpt
