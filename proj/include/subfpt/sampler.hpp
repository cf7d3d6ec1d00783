#pragma once

#include "subfpt/error.hpp"
#include "subfpt/models.hpp"
#include "subfpt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace subfpt {

enum class PathKind { Sub, Levy, Inverse, Subdiffusive };

inline const char* to_string(PathKind k) {
    switch (k) {
        case PathKind::Sub: return "sub";
        case PathKind::Levy: return "levy";
        case PathKind::Inverse: return "inverse";
        default: return "subdiffusive";
    }
}

struct PathRecord {
    std::vector<double> times;
    std::vector<double> values;
    PathKind kind = PathKind::Sub;
};

enum class SamplerKind { Direct, Reduced };

inline const char* to_string(SamplerKind k) { return k == SamplerKind::Direct ? "direct" : "reduced"; }

/// One draw of (T, overshoot). Censored draws carry a lower bound on T.
struct FptSample {
    double time = kInf;
    double overshoot = std::numeric_limits<double>::quiet_NaN();
    bool finite = false;
    bool censored = false;
    SamplerKind method = SamplerKind::Reduced;
    double censorBound = 0.0;

    static FptSample hit(double t, double o, SamplerKind m) { return {t, std::max(0.0, o), true, false, m, 0.0}; }
    static FptSample never(SamplerKind m) { return {kInf, std::numeric_limits<double>::quiet_NaN(), false, false, m, kInf}; }
    static FptSample censor(double bound, SamplerKind m) {
        return {kInf, std::numeric_limits<double>::quiet_NaN(), false, true, m, bound};
    }
};

struct SamplerOptions {
    double opStep = 1e-3;       ///< operational-time grid step
    double opHorizon = 100.0;   ///< operational-time horizon
    double physHorizon = kInf;  ///< physical-time horizon (censor beyond)
    double physStep = 0.0;      ///< direct sampler physical grid; 0 means opStep
    bool bridge = false;        ///< Brownian-bridge crossing correction (reduced sampler)
    bool trackSubordinator = false;  ///< simulate Sub along the path even when K = 0
    bool eventExact = true;     ///< event-driven path for eligible compound Poisson X

    void validate() const {
        detail::require(opStep > 0.0 && std::isfinite(opStep), "sampler: opStep must be > 0");
        detail::require(opHorizon > 0.0 && std::isfinite(opHorizon), "sampler: opHorizon must be finite and > 0");
        detail::require(physHorizon > 0.0, "sampler: physHorizon must be > 0");
        detail::require(physStep >= 0.0 && std::isfinite(physStep), "sampler: physStep must be >= 0");
    }
};

/// CSV `t,value,kind`.
inline std::string path_csv(const PathRecord& p) {
    std::ostringstream os;
    os.precision(12);
    os << "t,value,kind\n";
    for (size_t i = 0; i < p.times.size(); ++i) os << p.times[i] << ',' << p.values[i] << ',' << to_string(p.kind) << '\n';
    return os.str();
}

/// CSV `time,overshoot,finite,censored`; censored rows report the censoring bound as time.
inline std::string batch_csv(const std::vector<FptSample>& xs) {
    std::ostringstream os;
    os.precision(12);
    os << "time,overshoot,finite,censored\n";
    for (const auto& s : xs) {
        double t = s.censored ? s.censorBound : s.time;
        os << t << ',' << s.overshoot << ',' << (s.finite ? 1 : 0) << ',' << (s.censored ? 1 : 0) << '\n';
    }
    return os.str();
}

// ---- variates ------------------------------------------------------------

/// Sub_1 with E[exp(-u Sub_1)] = exp(-u^alpha) (Kanter's representation).
inline double stable_subordinator_unit(double alpha, RngStream& rng) {
    double U = kPi * rng.uniform();
    double E = rng.exponential();
    double a = std::sin(alpha * U) / std::pow(std::sin(U), 1.0 / alpha);
    double b = std::pow(std::sin((1.0 - alpha) * U) / E, (1.0 - alpha) / alpha);
    return a * b;
}

inline double stable_subordinator_increment(double alpha, double dt, RngStream& rng) {
    detail::require(alpha > 0.0 && alpha < 1.0, "stable_subordinator_increment: alpha must lie in (0,1)");
    detail::require(dt > 0.0, "stable_subordinator_increment: dt must be > 0");
    return std::pow(dt, 1.0 / alpha) * stable_subordinator_unit(alpha, rng);
}

/// X_1 for Psi(z) = -|z|^a exp(i pi a (1/2 - rho) sgn z), Chambers-Mallows-Stuck.
inline double strictly_stable_unit(double index, double rho, RngStream& rng) {
    double V = kPi * (rng.uniform() - 0.5);
    if (index == 1.0) {
        double th = kPi * (0.5 - rho);
        return std::cos(th) * std::tan(V) - std::sin(th);
    }
    double W = rng.exponential();
    double pth = kPi * index * (0.5 - rho);
    double num = std::sin(index * V - pth) / std::pow(std::cos(V), 1.0 / index);
    return num * std::pow(std::cos(V - index * V + pth) / W, (1.0 - index) / index);
}

/// Jump part of a subordinator increment over dt.
inline double subordinator_jump_increment(const SubordinatorModel& m, double dt, RngStream& rng) {
    if (dt <= 0.0) return 0.0;
    return std::visit(detail::overloaded{
                          [](const SubNoJumps&) { return 0.0; },
                          [&](const SubStable& s) { return std::pow(dt, 1.0 / s.alpha) * stable_subordinator_unit(s.alpha, rng); },
                          [&](const SubTemperedStable& s) {
                              // exponential tilting by rejection, in pieces with acceptance >= e^-1
                              long pieces = std::max(1L, static_cast<long>(std::ceil(dt * std::pow(s.theta, s.alpha))));
                              double h = dt / pieces;
                              double scale = std::pow(h, 1.0 / s.alpha);
                              double sum = 0.0;
                              for (long i = 0; i < pieces; ++i) {
                                  for (;;) {
                                      double x = scale * stable_subordinator_unit(s.alpha, rng);
                                      if (rng.uniform() <= std::exp(-s.theta * x)) {
                                          sum += x;
                                          break;
                                      }
                                  }
                              }
                              return sum;
                          },
                          [&](const SubCompoundPoissonExp& c) {
                              long n = rng.poisson(c.rate * dt);
                              return n > 0 ? rng.gamma(static_cast<double>(n), c.mean) : 0.0;
                          },
                      },
                      m.jumps());
}

inline double subordinator_increment(const SubordinatorModel& m, double dt, RngStream& rng) {
    if (dt <= 0.0) return 0.0;
    return m.drift() * dt + subordinator_jump_increment(m, dt, rng);
}

namespace detail {

inline double draw_jump_law(const JumpLaw& law, RngStream& rng) {
    return std::visit(overloaded{
                          [&](const ExpJumpUp& e) { return rng.exponential() / e.rate; },
                          [&](const ExpJumpDown& e) { return -rng.exponential() / e.rate; },
                          [&](const FixedJump& f) { return f.size; },
                          [&](const NormalJump& n) { return n.mean + n.sd * rng.normal(); },
                      },
                      law);
}

inline double base_jump_increment(const JumpSpec& spec, double dt, RngStream& rng) {
    return std::visit(overloaded{
                          [](const NoJumps&) { return 0.0; },
                          [&](const CompoundPoissonExp& c) {
                              long n = rng.poisson(c.rate * dt);
                              double y = n > 0 ? rng.gamma(static_cast<double>(n), 1.0 / c.jumpRate) : 0.0;
                              return c.sign == JumpSign::Up ? y : -y;
                          },
                          [&](const TwoSidedStable& s) {
                              return std::pow(dt, 1.0 / s.index) * strictly_stable_unit(s.index, s.rho, rng);
                          },
                          [&](const SpectrallyNegativeStable& s) {
                              return std::pow(dt, 1.0 / s.index) * strictly_stable_unit(s.index, 1.0 / s.index, rng);
                          },
                          [&](const CustomFiniteActivity& c) {
                              double sum = 0.0;
                              for (const auto& k : c.classes) {
                                  long n = rng.poisson(k.rate * dt);
                                  for (long i = 0; i < n; ++i) sum += draw_jump_law(k.law, rng);
                              }
                              return sum;
                          },
                      },
                      spec);
}

/// One jump of a finite-activity spec (class chosen by rate).
inline double base_single_jump(const JumpSpec& spec, RngStream& rng) {
    return std::visit(overloaded{
                          [&](const CompoundPoissonExp& c) {
                              double y = rng.exponential() / c.jumpRate;
                              return c.sign == JumpSign::Up ? y : -y;
                          },
                          [&](const CustomFiniteActivity& c) {
                              double total = 0.0;
                              for (const auto& k : c.classes) total += k.rate;
                              double u = rng.uniform() * total;
                              const JumpClass* pick = &c.classes.back();
                              for (const auto& k : c.classes) {
                                  if (u < k.rate) {
                                      pick = &k;
                                      break;
                                  }
                                  u -= k.rate;
                              }
                              return draw_jump_law(pick->law, rng);
                          },
                          [](const auto&) -> double { throw ValidationError("single jump draw needs a finite-activity spec"); },
                      },
                      spec);
}

}  // namespace detail

/// Increment of X over dt split as (Gaussian part, jump part); the drift is left to the caller.
struct LevyStep {
    double gauss = 0.0;
    double jumps = 0.0;
};

inline LevyStep levy_step(const LevyModel& m, double dt, RngStream& rng) {
    double sgn = m.reflected() ? -1.0 : 1.0;
    LevyStep st;
    if (m.sigma2() > 0.0) st.gauss = sgn * std::sqrt(m.sigma2() * dt) * rng.normal();
    st.jumps = sgn * detail::base_jump_increment(m.jumps(), dt, rng);
    return st;
}

inline double levy_increment(const LevyModel& m, double dt, RngStream& rng) {
    LevyStep st = levy_step(m, dt, rng);
    return m.drift() * dt + st.gauss + st.jumps;
}

inline double levy_single_jump(const LevyModel& m, RngStream& rng) {
    double y = detail::base_single_jump(m.jumps(), rng);
    return m.reflected() ? -y : y;
}

/// J with P(J > t) = E_alpha(-lambda t^alpha): J = (E/lambda)^{1/alpha} * Sub_1.
inline double mittag_leffler_waiting_time(double alpha, double lambda, RngStream& rng) {
    detail::require(alpha > 0.0 && alpha < 1.0, "mittag_leffler_waiting_time: alpha must lie in (0,1)");
    detail::require(lambda > 0.0, "mittag_leffler_waiting_time: lambda must be > 0");
    double e = rng.exponential();
    return std::pow(e / lambda, 1.0 / alpha) * stable_subordinator_unit(alpha, rng);
}

// ---- paths ------------------------------------------------------------------

/**
 * Grid path of a subordinator on [0, horizon]. Compound Poisson jump
 * epochs are added to the grid as extra nodes.
 */
inline PathRecord simulate_subordinator(const SubordinatorModel& model, double horizon, double step, RngStream& rng,
                                        bool timeChangeRole = true) {
    detail::require(horizon > 0.0 && step > 0.0, "simulate_subordinator: horizon and step must be > 0");
    if (timeChangeRole) model.validate_time_change();
    PathRecord p;
    p.kind = PathKind::Sub;
    long n = static_cast<long>(std::ceil(horizon / step - 1e-9));
    p.times.reserve(n + 1);
    p.values.reserve(n + 1);
    p.times.push_back(0.0);
    p.values.push_back(0.0);
    if (auto* cp = std::get_if<SubCompoundPoissonExp>(&model.jumps())) {
        double jumps = 0.0;
        double nextEvent = rng.exponential() / cp->rate;
        for (long k = 1; k <= n; ++k) {
            double t = std::min(horizon, k * step);
            while (nextEvent < t) {
                jumps += cp->mean * rng.exponential();
                p.times.push_back(nextEvent);
                p.values.push_back(model.drift() * nextEvent + jumps);
                nextEvent += rng.exponential() / cp->rate;
            }
            p.times.push_back(t);
            p.values.push_back(model.drift() * t + jumps);
        }
        return p;
    }
    double jumps = 0.0;
    double prev = 0.0;
    for (long k = 1; k <= n; ++k) {
        double t = std::min(horizon, k * step);
        jumps += subordinator_jump_increment(model, t - prev, rng);
        p.times.push_back(t);
        p.values.push_back(model.drift() * t + jumps);
        prev = t;
    }
    return p;
}

/// Grid path of X on [0, horizon], started at 0.
inline PathRecord simulate_levy(const LevyModel& model, double horizon, double step, RngStream& rng) {
    detail::require(horizon > 0.0 && step > 0.0, "simulate_levy: horizon and step must be > 0");
    PathRecord p;
    p.kind = PathKind::Levy;
    long n = static_cast<long>(std::ceil(horizon / step - 1e-9));
    p.times.push_back(0.0);
    p.values.push_back(0.0);
    double noise = 0.0, prev = 0.0;
    for (long k = 1; k <= n; ++k) {
        double t = std::min(horizon, k * step);
        LevyStep st = levy_step(model, t - prev, rng);
        noise += st.gauss + st.jumps;
        p.times.push_back(t);
        p.values.push_back(model.drift() * t + noise);
        prev = t;
    }
    return p;
}

/**
 * Right-continuous inverse l_t = inf{s : Sub_s > t} of a stored Sub path,
 * on the physical grid 0, physStep, ... <= physHorizon. Path values are
 * read at the stored operational nodes.
 */
inline PathRecord invert_path(const PathRecord& sub, double physStep, double physHorizon) {
    detail::require(sub.kind == PathKind::Sub, "invert_path: expects a subordinator path");
    detail::require(physStep > 0.0 && physHorizon >= 0.0, "invert_path: bad physical grid");
    detail::require(!sub.times.empty() && sub.times.size() == sub.values.size(), "invert_path: empty path");
    for (size_t i = 1; i < sub.values.size(); ++i)
        detail::require(sub.values[i] >= sub.values[i - 1], "invert_path: path must be nondecreasing");
    if (!(physHorizon < sub.values.back()))
        throw DomainError("invert_path: requested time exceeds the terminal Sub value");
    PathRecord inv;
    inv.kind = PathKind::Inverse;
    long n = static_cast<long>(std::floor(physHorizon / physStep + 1e-9));
    size_t k = 0;
    for (long j = 0; j <= n; ++j) {
        double t = j * physStep;
        while (sub.values[k] <= t) ++k;
        inv.times.push_back(t);
        inv.values.push_back(sub.times[k]);
    }
    return inv;
}

/// The time-changed path X_{l_t} on a physical grid, started at problem.start.
inline PathRecord simulate_subdiffusive(const ProblemTriple& pb, double physHorizon, double physStep, double opStep,
                                        RngStream& rng, long maxOpSteps = 100000000L) {
    detail::require(physHorizon > 0.0 && physStep > 0.0 && opStep > 0.0, "simulate_subdiffusive: bad grid");
    std::vector<double> subv{0.0}, xv{pb.start};
    double subJumps = 0.0, noise = 0.0;
    long k = 0;
    while (subv.back() <= physHorizon) {
        if (++k > maxOpSteps) throw ConvergenceError("simulate_subdiffusive: Sub did not reach the horizon");
        double s = k * opStep;
        LevyStep st = levy_step(pb.x_process, opStep, rng);
        noise += st.gauss + st.jumps;
        subJumps += subordinator_jump_increment(pb.time_change, opStep, rng);
        subv.push_back(pb.time_change.drift() * s + subJumps);
        xv.push_back(pb.start + pb.x_process.drift() * s + noise);
    }
    PathRecord out;
    out.kind = PathKind::Subdiffusive;
    long n = static_cast<long>(std::floor(physHorizon / physStep + 1e-9));
    size_t idx = 0;
    for (long j = 0; j <= n; ++j) {
        double t = j * physStep;
        while (subv[idx] <= t) ++idx;
        out.times.push_back(t);
        out.values.push_back(xv[idx]);
    }
    return out;
}

// ---- first passage samplers --------------------------------------------------

namespace detail {

inline bool creeps_upward(const LevyModel& x) { return !x.has_positive_jumps(); }

inline bool event_exact_eligible(const ProblemTriple& pb) {
    const auto& X = pb.x_process;
    return X.sigma2() == 0.0 && X.finite_activity() && (X.drift() <= 0.0 || pb.boundary.identically_zero());
}

/// Sub evaluated at operational times for the K = 0 fast path, from a child stream.
class OneShotSub {
public:
    OneShotSub(const SubordinatorModel& sub, const RngStream& parent) : sub_(sub), rng_(parent.child(1)) {
        if (sub_.pure_stable()) unit_ = stable_subordinator_unit(sub_.stable_alpha(), rng_);
    }
    double at(double s) {
        if (s <= 0.0) return 0.0;
        if (unit_) return std::pow(s, 1.0 / sub_.stable_alpha()) * *unit_;
        return subordinator_increment(sub_, s, rng_);
    }
    /// Largest s with Sub_s <= bound, when known without further draws.
    double op_cap(double bound) const {
        if (unit_ && std::isfinite(bound)) return std::pow(bound / *unit_, sub_.stable_alpha());
        return kInf;
    }

private:
    SubordinatorModel sub_;
    RngStream rng_;
    std::optional<double> unit_;
};

struct Monitor {
    int stride = 1;
    double x0 = 0.0;      // Xbs without drift at the last macro node
    double accGauss = 0.0;
    double accJump = 0.0;
    bool done = false;
    FptSample out;
};

/// Grid engine for Xbs = X - K(Sub); each monitor checks crossings on its own stride.
inline void reduced_grid(const ProblemTriple& pb, const SamplerOptions& o, RngStream& rng, std::vector<Monitor>& mons) {
    const auto& X = pb.x_process;
    const auto& S = pb.time_change;
    const auto& K = pb.boundary;
    const double L = pb.effective_level();
    const double d = X.drift();
    const double ds = o.opStep;
    const bool coupled = !K.identically_zero() || o.trackSubordinator;
    const bool creep = creeps_upward(X);
    const bool useBridge = o.bridge && X.sigma2() > 0.0;

    std::optional<OneShotSub> oneShot;
    double opEnd = o.opHorizon;
    if (!coupled) {
        oneShot.emplace(S, rng);
        opEnd = std::min(opEnd, oneShot->op_cap(o.physHorizon));
    }
    long nSteps = static_cast<long>(std::floor(opEnd / ds + 1e-9));

    double subJumps = 0.0, sub = 0.0;
    double accK = 0.0;
    std::vector<double> kAcc(mons.size(), 0.0);
    for (auto& m : mons) {
        m.x0 = 0.0;
        m.accGauss = m.accJump = 0.0;
        m.done = false;
    }
    size_t alive = mons.size();

    auto finish = [&](Monitor& m, double sNew, double over) {
        double T = coupled ? sub : oneShot->at(sNew);
        if (T > o.physHorizon)
            m.out = FptSample::censor(o.physHorizon, SamplerKind::Reduced);
        else
            m.out = FptSample::hit(T, creep ? 0.0 : over, SamplerKind::Reduced);
        m.done = true;
        --alive;
    };

    for (long k = 0; k < nSteps && alive > 0; ++k) {
        const double sNew = (k + 1) * ds;
        LevyStep st = levy_step(X, ds, rng);
        double dK = 0.0;
        if (coupled) {
            double before = sub;
            subJumps += subordinator_jump_increment(S, ds, rng);
            sub = S.drift() * sNew + subJumps;
            if (!K.identically_zero()) dK = subordinator_increment(K, sub - before, rng);
        }
        double u = useBridge ? rng.uniform() : 1.0;
        accK = dK;
        for (size_t i = 0; i < mons.size(); ++i) {
            Monitor& m = mons[i];
            if (m.done) continue;
            m.accGauss += st.gauss;
            m.accJump += st.jumps;
            kAcc[i] += accK;
            if ((k + 1) % m.stride != 0) continue;
            const double dt = ds * m.stride;
            const double xStart = d * (sNew - dt) + m.x0;
            const double xg = d * sNew + m.x0 + m.accGauss;
            bool crossed = false;
            double over = 0.0;
            if (xg > L) {
                crossed = true;
                over = xg - L;
            } else if (useBridge && xStart < L) {
                double p = std::exp(-2.0 * (L - xStart) * (L - xg) / (X.sigma2() * dt));
                if (u < p) crossed = true;
            }
            double xEnd = m.x0 + m.accGauss + m.accJump - kAcc[i];
            if (!crossed && d * sNew + xEnd > L) {
                crossed = true;
                over = d * sNew + xEnd - L;
            }
            m.x0 = xEnd;
            m.accGauss = m.accJump = 0.0;
            kAcc[i] = 0.0;
            if (crossed) finish(m, sNew, over);
        }
        if (coupled && sub > o.physHorizon) {
            for (auto& m : mons)
                if (!m.done) {
                    m.out = FptSample::censor(sub, SamplerKind::Reduced);
                    m.done = true;
                }
            alive = 0;
        }
    }
    if (alive > 0) {
        double bound;
        if (coupled)
            bound = sub;
        else if (opEnd < o.opHorizon)
            bound = o.physHorizon;
        else
            bound = oneShot->at(o.opHorizon);
        for (auto& m : mons)
            if (!m.done) {
                m.out = FptSample::censor(bound, SamplerKind::Reduced);
                m.done = true;
            }
    }
}

/// Event-driven reduced sampler: sigma2 = 0, finite-activity X, Xbs monotone between jumps
/// (drift <= 0) or K = 0 (linear creep between jumps).
inline FptSample reduced_events(const ProblemTriple& pb, const SamplerOptions& o, RngStream& rng) {
    const auto& X = pb.x_process;
    const auto& S = pb.time_change;
    const auto& K = pb.boundary;
    const double L = pb.effective_level();
    const double d = X.drift();
    const double lam = X.jump_intensity();
    const bool kZero = K.identically_zero();

    double s = 0.0, sub = 0.0, xb = 0.0;
    for (;;) {
        double gap = lam > 0.0 ? rng.exponential() / lam : kInf;
        if (kZero && d > 0.0) {
            double sStar = s + (L - xb) / d;
            if (sStar <= s + gap) {
                if (sStar > o.opHorizon) return FptSample::censor(sub + subordinator_increment(S, o.opHorizon - s, rng), SamplerKind::Reduced);
                sub += subordinator_increment(S, sStar - s, rng);
                if (sub > o.physHorizon) return FptSample::censor(o.physHorizon, SamplerKind::Reduced);
                return FptSample::hit(sub, 0.0, SamplerKind::Reduced);
            }
        } else if (lam == 0.0) {
            return FptSample::never(SamplerKind::Reduced);
        }
        if (s + gap > o.opHorizon)
            return FptSample::censor(sub + subordinator_increment(S, o.opHorizon - s, rng), SamplerKind::Reduced);
        double dS = subordinator_increment(S, gap, rng);
        double dK = kZero ? 0.0 : subordinator_increment(K, dS, rng);
        s += gap;
        sub += dS;
        xb += d * gap - dK;
        if (sub > o.physHorizon) return FptSample::censor(o.physHorizon, SamplerKind::Reduced);
        xb += levy_single_jump(X, rng);
        if (xb > L) return FptSample::hit(sub, xb - L, SamplerKind::Reduced);
    }
}

}  // namespace detail

/**
 * @brief First passage via the reduced process Xbs = X - K(Sub): T = Sub at the passage of Xbs.
 *
 * Event-exact for compound Poisson X without Gaussian part when Xbs cannot
 * creep between events; grid-based otherwise (crossing detected at the right
 * end of each operational step, T read there).
 */
inline FptSample fpt_reduced(const ProblemTriple& pb, const SamplerOptions& o, RngStream& rng) {
    o.validate();
    double L = pb.effective_level();
    if (L < 0.0) return FptSample::hit(0.0, -L, SamplerKind::Reduced);
    if (o.eventExact && detail::event_exact_eligible(pb)) return detail::reduced_events(pb, o, rng);
    std::vector<detail::Monitor> mons(1);
    detail::reduced_grid(pb, o, rng, mons);
    return mons[0].out;
}

inline FptSample fpt_reduced(const ProblemTriple& pb, double opStep, double opHorizon, RngStream& rng) {
    SamplerOptions o;
    o.opStep = opStep;
    o.opHorizon = opHorizon;
    return fpt_reduced(pb, o, rng);
}

/// Grid reduced sampler at step h and 2h on shared increments (step-halving bias probe).
inline std::pair<FptSample, FptSample> fpt_reduced_pair(const ProblemTriple& pb, const SamplerOptions& o,
                                                        RngStream& rng) {
    o.validate();
    double L = pb.effective_level();
    if (L < 0.0) {
        auto h = FptSample::hit(0.0, -L, SamplerKind::Reduced);
        return {h, h};
    }
    std::vector<detail::Monitor> mons(2);
    mons[1].stride = 2;
    detail::reduced_grid(pb, o, rng, mons);
    return {mons[0].out, mons[1].out};
}

/// Dual passage inf{t : X_{l_t} < -a - K_t}, i.e. the primal problem for -X.
inline FptSample fpt_reduced_dual(const ProblemTriple& pb, const SamplerOptions& o, RngStream& rng) {
    ProblemTriple q = pb;
    q.x_process = pb.x_process.negated();
    q.start = -pb.start;
    return fpt_reduced(q, o, rng);
}

/**
 * @brief Direct discretization: simulate X and Sub on the operational grid,
 * read X_{l_t} on a physical grid, K simulated independently in physical time.
 *
 * Returns the first physical node with X_{l_t} > a + K_t. Only the first
 * physical node inside each Sub step is examined (X_{l} is constant there
 * and K nondecreasing).
 */
inline FptSample fpt_direct(const ProblemTriple& pb, const SamplerOptions& o, RngStream& rng) {
    o.validate();
    const auto& X = pb.x_process;
    const auto& S = pb.time_change;
    const auto& K = pb.boundary;
    const double L = pb.effective_level();
    if (L < 0.0) return FptSample::hit(0.0, -L, SamplerKind::Direct);
    const double ds = o.opStep;
    const double h = o.physStep > 0.0 ? o.physStep : o.opStep;
    const double d = X.drift();
    const bool creep = detail::creeps_upward(X);
    long nSteps = static_cast<long>(std::floor(o.opHorizon / ds + 1e-9));

    double noise = 0.0, subJumps = 0.0, sub = 0.0;
    double kVal = 0.0, tK = 0.0;
    long jNext = 0;
    for (long k = 0; k < nSteps; ++k) {
        const double sNew = (k + 1) * ds;
        LevyStep st = levy_step(X, ds, rng);
        noise += st.gauss + st.jumps;
        subJumps += subordinator_jump_increment(S, ds, rng);
        const double subOld = sub;
        sub = S.drift() * sNew + subJumps;
        const double y = d * sNew + noise;
        long j0 = std::max(jNext, static_cast<long>(std::ceil(subOld / h - 1e-9)));
        double t = j0 * h;
        if (t < sub) {
            if (t > o.physHorizon) return FptSample::censor(o.physHorizon, SamplerKind::Direct);
            kVal += subordinator_increment(K, t - tK, rng);
            tK = t;
            if (y - kVal > L) return FptSample::hit(t, creep ? 0.0 : y - kVal - L, SamplerKind::Direct);
            jNext = std::max(j0 + 1, static_cast<long>(std::ceil(sub / h - 1e-9)));
        }
        if (sub > o.physHorizon) return FptSample::censor(o.physHorizon, SamplerKind::Direct);
    }
    return FptSample::censor(sub, SamplerKind::Direct);
}

inline FptSample fpt_direct(const ProblemTriple& pb, double opStep, double opHorizon, RngStream& rng) {
    SamplerOptions o;
    o.opStep = opStep;
    o.opHorizon = opHorizon;
    return fpt_direct(pb, o, rng);
}

/// Exit of X_{l_t} from (0, a) started at x (K = 0).
struct ExitSample {
    double time = kInf;
    bool up = false;
    bool censored = true;
};

/**
 * Two-barrier variant of the reduced sampler: exit time of X from (0,a) on
 * the operational grid (bridge-corrected on both sides when enabled), then
 * T = Sub at that operational time.
 */
inline ExitSample exit_two_sided(const ProblemTriple& pb, double a, double x, const SamplerOptions& o, RngStream& rng) {
    o.validate();
    detail::require(pb.boundary.identically_zero(), "exit_two_sided: needs K = 0");
    detail::require(x > 0.0 && x <= a, "exit_two_sided: need 0 < x <= a");
    const auto& X = pb.x_process;
    if (x == a && detail::creeps_upward(X) && (X.sigma2() > 0.0 || !X.bounded_variation()))
        return {0.0, true, false};
    detail::OneShotSub oneShot(pb.time_change, rng);
    const double ds = o.opStep;
    const double d = X.drift();
    const bool useBridge = o.bridge && X.sigma2() > 0.0;
    double opEnd = std::min(o.opHorizon, oneShot.op_cap(o.physHorizon));
    long nSteps = static_cast<long>(std::floor(opEnd / ds + 1e-9));
    double noise = 0.0;
    for (long k = 0; k < nSteps; ++k) {
        const double sNew = (k + 1) * ds;
        LevyStep st = levy_step(X, ds, rng);
        double u1 = useBridge ? rng.uniform() : 1.0;
        double u2 = useBridge ? rng.uniform() : 1.0;
        double y0 = x + d * (sNew - ds) + noise;
        double yg = x + d * sNew + noise + st.gauss;
        noise += st.gauss + st.jumps;
        double y1 = x + d * sNew + noise;
        int hit = 0;  // +1 up, -1 down
        if (yg > a)
            hit = 1;
        else if (yg < 0.0)
            hit = -1;
        else if (useBridge) {
            double v = X.sigma2() * ds;
            double pu = std::exp(-2.0 * (a - y0) * (a - yg) / v);
            double pd = std::exp(-2.0 * y0 * yg / v);
            bool bu = u1 < pu, bd = u2 < pd;
            if (bu && bd)
                hit = pu >= pd ? 1 : -1;
            else if (bu)
                hit = 1;
            else if (bd)
                hit = -1;
        }
        if (hit == 0) {
            if (y1 > a)
                hit = 1;
            else if (y1 < 0.0)
                hit = -1;
        }
        if (hit != 0) {
            double T = oneShot.at(sNew);
            if (T > o.physHorizon) return {kInf, false, true};
            return {T, hit > 0, false};
        }
    }
    return {kInf, false, true};
}

}  // namespace subfpt
