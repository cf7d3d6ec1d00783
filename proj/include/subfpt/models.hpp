#pragma once

#include "subfpt/error.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace subfpt {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class JumpSign { Up, Down };

// ---- jump specifications of X -------------------------------------------

struct NoJumps {};

/// Jumps of size ±Exp(jumpRate) arriving at rate `rate`.
struct CompoundPoissonExp {
    double rate;
    double jumpRate;
    JumpSign sign;
};

/// Strictly stable, index in (0,2), positivity parameter rho = P(X_1 > 0).
struct TwoSidedStable {
    double index;
    double rho;
};

/// Psi(-iu) = u^index, index in (1,2].
struct SpectrallyNegativeStable {
    double index;
};

struct ExpJumpUp { double rate; };
struct ExpJumpDown { double rate; };
struct FixedJump { double size; };
struct NormalJump { double mean; double sd; };
using JumpLaw = std::variant<ExpJumpUp, ExpJumpDown, FixedJump, NormalJump>;

struct JumpClass {
    double rate;
    JumpLaw law;
};

struct CustomFiniteActivity {
    std::vector<JumpClass> classes;
};

using JumpSpec = std::variant<NoJumps, CompoundPoissonExp, TwoSidedStable,
                              SpectrallyNegativeStable, CustomFiniteActivity>;

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

inline void check_lower_half(cplx z, double bound, const char* what) {
    // analytic for Im z > -bound (bound may be +inf)
    if (!(z.imag() > -bound)) throw DomainError(std::string(what) + ": Im(z) outside the analytic strip");
}
inline void check_upper_half(cplx z, double bound, const char* what) {
    if (!(z.imag() < bound)) throw DomainError(std::string(what) + ": Im(z) outside the analytic strip");
}
}  // namespace detail

/**
 * @brief Parametric Levy process X: Gaussian variance, linear drift and a jump spec.
 *
 * The drift is the bounded-variation drift for finite-activity jump specs
 * (jumps are not compensated). `negated()` gives the dual process -X; it is
 * carried as a reflection flag so that sampling -X consumes randomness
 * exactly like sampling X.
 */
class LevyModel {
public:
    LevyModel(double sigma2, double drift, JumpSpec jumps = NoJumps{})
        : sigma2_(sigma2), drift_(drift), jumps_(std::move(jumps)) {
        validate();
        // SN stable of index 2 is BM with variance 2
        if (auto* sn = std::get_if<SpectrallyNegativeStable>(&jumps_); sn && sn->index == 2.0) {
            sigma2_ += 2.0;
            jumps_ = NoJumps{};
        }
    }

    static LevyModel brownian(double sigma2, double drift = 0.0) { return {sigma2, drift}; }
    static LevyModel compound_poisson_exp(double rate, double jumpRate, JumpSign sign, double sigma2 = 0.0,
                                          double drift = 0.0) {
        return {sigma2, drift, CompoundPoissonExp{rate, jumpRate, sign}};
    }
    static LevyModel stable(double index, double rho) { return {0.0, 0.0, TwoSidedStable{index, rho}}; }
    static LevyModel spectrally_negative_stable(double index) {
        return {0.0, 0.0, SpectrallyNegativeStable{index}};
    }

    double sigma2() const { return sigma2_; }
    /// Drift as seen by X (sign-adjusted for reflection).
    double drift() const { return reflected_ ? -drift_ : drift_; }
    const JumpSpec& jumps() const { return jumps_; }
    bool reflected() const { return reflected_; }

    LevyModel negated() const {
        LevyModel m = *this;
        m.reflected_ = !reflected_;
        return m;
    }

    bool has_positive_jumps() const { return reflected_ ? base_negative_jumps() : base_positive_jumps(); }
    bool has_negative_jumps() const { return reflected_ ? base_positive_jumps() : base_negative_jumps(); }
    bool spectrally_negative() const { return !has_positive_jumps(); }

    bool finite_activity() const {
        return std::holds_alternative<NoJumps>(jumps_) || std::holds_alternative<CompoundPoissonExp>(jumps_) ||
               std::holds_alternative<CustomFiniteActivity>(jumps_);
    }
    bool is_stable() const {
        return std::holds_alternative<TwoSidedStable>(jumps_) ||
               std::holds_alternative<SpectrallyNegativeStable>(jumps_);
    }
    double stable_index() const {
        if (auto* s = std::get_if<TwoSidedStable>(&jumps_)) return s->index;
        if (auto* s = std::get_if<SpectrallyNegativeStable>(&jumps_)) return s->index;
        return 0.0;
    }

    bool bounded_variation() const {
        if (sigma2_ > 0.0) return false;
        if (finite_activity()) return true;
        if (auto* s = std::get_if<TwoSidedStable>(&jumps_)) return s->index < 1.0;
        return false;
    }

    /// Total jump intensity for finite-activity specs (0 when no jumps).
    double jump_intensity() const {
        return std::visit(detail::overloaded{
                              [](const NoJumps&) { return 0.0; },
                              [](const CompoundPoissonExp& c) { return c.rate; },
                              [](const CustomFiniteActivity& c) {
                                  double r = 0.0;
                                  for (const auto& k : c.classes) r += k.rate;
                                  return r;
                              },
                              [](const auto&) { return kInf; },
                          },
                          jumps_);
    }

    /// E[X_1]; +-inf for one-sided infinite means, NaN when undefined.
    double mean() const {
        double m = drift_ + std::visit(detail::overloaded{
                                           [](const NoJumps&) { return 0.0; },
                                           [](const CompoundPoissonExp& c) {
                                               return (c.sign == JumpSign::Up ? 1.0 : -1.0) * c.rate / c.jumpRate;
                                           },
                                           [](const TwoSidedStable& s) {
                                               if (s.index > 1.0) return 0.0;
                                               if (s.index < 1.0 && s.rho == 1.0) return kInf;
                                               if (s.index < 1.0 && s.rho == 0.0) return -kInf;
                                               return std::numeric_limits<double>::quiet_NaN();
                                           },
                                           [](const SpectrallyNegativeStable&) { return 0.0; },
                                           [](const CustomFiniteActivity& c) {
                                               double r = 0.0;
                                               for (const auto& k : c.classes) r += k.rate * law_mean(k.law);
                                               return r;
                                           },
                                       },
                                       jumps_);
        return reflected_ ? -m : m;
    }

    /// Characteristic exponent: E[exp(i z X_1)] = exp(Psi(z)).
    cplx psi(cplx z) const { return reflected_ ? base_psi(-z) : base_psi(z); }

    /**
     * Laplace exponent psi(s) = log E[exp(s X_1)] of a spectrally negative
     * model, analytically continued to complex s (principal powers).
     * Throws ValidationError when X has positive jumps.
     */
    cplx laplace_exponent(cplx s) const {
        if (has_positive_jumps()) throw ValidationError("laplace_exponent: X has positive jumps");
        const double eps = reflected_ ? -1.0 : 1.0;
        cplx r = 0.5 * sigma2_ * s * s + drift() * s;
        auto sn_power = [&](double index, bool negSub) {
            if (s == cplx(0.0)) return cplx(0.0);
            cplx v = std::pow(s, index);
            return negSub ? -v : v;
        };
        r += std::visit(detail::overloaded{
                            [](const NoJumps&) { return cplx(0.0); },
                            [&](const CompoundPoissonExp& c) { return -c.rate * s / (c.jumpRate + s); },
                            [&](const TwoSidedStable& t) { return sn_power(t.index, t.index < 1.0); },
                            [&](const SpectrallyNegativeStable& t) { return sn_power(t.index, false); },
                            [&](const CustomFiniteActivity& c) {
                                cplx acc(0.0);
                                for (const auto& k : c.classes) {
                                    cplx m = std::visit(detail::overloaded{
                                                            [&](const ExpJumpUp& e) { return e.rate / (e.rate + s); },
                                                            [&](const ExpJumpDown& e) { return e.rate / (e.rate + s); },
                                                            [&](const FixedJump& f) { return std::exp(s * (eps * f.size)); },
                                                            [&](const NormalJump& n) { return std::exp(s * (eps * n.mean)); },
                                                        },
                                                        k.law);
                                    acc += k.rate * (m - 1.0);
                                }
                                return acc;
                            },
                        },
                        jumps_);
        return r;
    }

    static double law_mean(const JumpLaw& law) {
        return std::visit(detail::overloaded{
                              [](const ExpJumpUp& e) { return 1.0 / e.rate; },
                              [](const ExpJumpDown& e) { return -1.0 / e.rate; },
                              [](const FixedJump& f) { return f.size; },
                              [](const NormalJump& n) { return n.mean; },
                          },
                          law);
    }

private:
    void validate() const {
        detail::require(std::isfinite(sigma2_) && sigma2_ >= 0.0, "LevyModel: sigma2 must be finite and >= 0");
        detail::require(std::isfinite(drift_), "LevyModel: drift must be finite");
        std::visit(detail::overloaded{
                       [](const NoJumps&) {},
                       [](const CompoundPoissonExp& c) {
                           detail::require(c.rate > 0.0 && std::isfinite(c.rate), "CompoundPoissonExp: rate must be > 0");
                           detail::require(c.jumpRate > 0.0 && std::isfinite(c.jumpRate),
                                           "CompoundPoissonExp: jumpRate must be > 0");
                       },
                       [](const TwoSidedStable& s) {
                           detail::require(s.index > 0.0 && s.index < 2.0, "TwoSidedStable: index must lie in (0,2)");
                           detail::require(s.rho >= 0.0 && s.rho <= 1.0, "TwoSidedStable: rho must lie in [0,1]");
                           if (s.index > 1.0) {
                               detail::require(s.index * s.rho >= s.index - 1.0 - 1e-12 &&
                                                   s.index * (1.0 - s.rho) >= s.index - 1.0 - 1e-12,
                                               "TwoSidedStable: need 1-1/index <= rho <= 1/index for index in (1,2)");
                           }
                           if (s.index == 1.0)
                               detail::require(s.rho > 0.0 && s.rho < 1.0, "TwoSidedStable: index 1 needs rho in (0,1)");
                       },
                       [](const SpectrallyNegativeStable& s) {
                           detail::require(s.index > 1.0 && s.index <= 2.0,
                                           "SpectrallyNegativeStable: index must lie in (1,2]");
                       },
                       [](const CustomFiniteActivity& c) {
                           for (const auto& k : c.classes) {
                               detail::require(k.rate > 0.0 && std::isfinite(k.rate), "CustomFiniteActivity: rate must be > 0");
                               std::visit(detail::overloaded{
                                              [](const ExpJumpUp& e) { detail::require(e.rate > 0.0, "exp_up: rate must be > 0"); },
                                              [](const ExpJumpDown& e) { detail::require(e.rate > 0.0, "exp_down: rate must be > 0"); },
                                              [](const FixedJump& f) { detail::require(std::isfinite(f.size) && f.size != 0.0, "fixed: size must be finite and nonzero"); },
                                              [](const NormalJump& n) { detail::require(n.sd >= 0.0 && std::isfinite(n.mean), "normal: sd must be >= 0"); },
                                          },
                                          k.law);
                           }
                       },
                   },
                   jumps_);
    }

    bool base_positive_jumps() const {
        return std::visit(detail::overloaded{
                              [](const NoJumps&) { return false; },
                              [](const CompoundPoissonExp& c) { return c.sign == JumpSign::Up; },
                              [](const TwoSidedStable& s) {
                                  if (s.index > 1.0 && detail::near(s.rho, 1.0 / s.index)) return false;
                                  if (s.index < 1.0 && s.rho == 0.0) return false;
                                  return true;
                              },
                              [](const SpectrallyNegativeStable&) { return false; },
                              [](const CustomFiniteActivity& c) {
                                  for (const auto& k : c.classes) {
                                      bool up = std::visit(detail::overloaded{
                                                               [](const ExpJumpUp&) { return true; },
                                                               [](const ExpJumpDown&) { return false; },
                                                               [](const FixedJump& f) { return f.size > 0.0; },
                                                               [](const NormalJump& n) { return n.sd > 0.0 || n.mean > 0.0; },
                                                           },
                                                           k.law);
                                      if (up) return true;
                                  }
                                  return false;
                              },
                          },
                          jumps_);
    }

    bool base_negative_jumps() const {
        return std::visit(detail::overloaded{
                              [](const NoJumps&) { return false; },
                              [](const CompoundPoissonExp& c) { return c.sign == JumpSign::Down; },
                              [](const TwoSidedStable& s) {
                                  if (s.index > 1.0 && detail::near(s.rho, 1.0 - 1.0 / s.index)) return false;
                                  if (s.index < 1.0 && s.rho == 1.0) return false;
                                  return true;
                              },
                              [](const SpectrallyNegativeStable&) { return true; },
                              [](const CustomFiniteActivity& c) {
                                  for (const auto& k : c.classes) {
                                      bool down = std::visit(detail::overloaded{
                                                                 [](const ExpJumpUp&) { return false; },
                                                                 [](const ExpJumpDown&) { return true; },
                                                                 [](const FixedJump& f) { return f.size < 0.0; },
                                                                 [](const NormalJump& n) { return n.sd > 0.0 || n.mean < 0.0; },
                                                             },
                                                             k.law);
                                      if (down) return true;
                                  }
                                  return false;
                              },
                          },
                          jumps_);
    }

    cplx base_psi(cplx z) const {
        const cplx I(0.0, 1.0);
        cplx g = -0.5 * sigma2_ * z * z + I * drift_ * z;
        cplx j = std::visit(
            detail::overloaded{
                [](const NoJumps&) { return cplx(0.0); },
                [&](const CompoundPoissonExp& c) {
                    if (c.sign == JumpSign::Up) {
                        detail::check_lower_half(z, c.jumpRate, "psi(CompoundPoissonExp+)");
                        return I * c.rate * z / (c.jumpRate - I * z);
                    }
                    detail::check_upper_half(z, c.jumpRate, "psi(CompoundPoissonExp-)");
                    return -I * c.rate * z / (c.jumpRate + I * z);
                },
                [&](const TwoSidedStable& s) {
                    if (z.imag() != 0.0) throw DomainError("psi(TwoSidedStable): defined for real z only");
                    double x = z.real();
                    if (x == 0.0) return cplx(0.0);
                    double sg = x > 0.0 ? 1.0 : -1.0;
                    return -std::pow(std::abs(x), s.index) * std::exp(I * (kPi * s.index * (0.5 - s.rho) * sg));
                },
                [&](const SpectrallyNegativeStable& s) {
                    if (z.imag() > 0.0) throw DomainError("psi(SpectrallyNegativeStable): needs Im(z) <= 0");
                    cplx w = I * z;
                    if (w == cplx(0.0)) return cplx(0.0);
                    return std::pow(w, s.index);
                },
                [&](const CustomFiniteActivity& c) {
                    cplx acc(0.0);
                    for (const auto& k : c.classes) {
                        cplx cf = std::visit(detail::overloaded{
                                                 [&](const ExpJumpUp& e) {
                                                     detail::check_lower_half(z, e.rate, "psi(exp_up)");
                                                     return e.rate / (e.rate - I * z);
                                                 },
                                                 [&](const ExpJumpDown& e) {
                                                     detail::check_upper_half(z, e.rate, "psi(exp_down)");
                                                     return e.rate / (e.rate + I * z);
                                                 },
                                                 [&](const FixedJump& f) { return std::exp(I * z * f.size); },
                                                 [&](const NormalJump& n) {
                                                     return std::exp(I * z * n.mean - 0.5 * n.sd * n.sd * z * z);
                                                 },
                                             },
                                             k.law);
                        acc += k.rate * (cf - 1.0);
                    }
                    return acc;
                },
            },
            jumps_);
        return g + j;
    }

    double sigma2_;
    double drift_;
    JumpSpec jumps_;
    bool reflected_ = false;
};

// ---- subordinators -------------------------------------------------------

struct SubNoJumps {};
struct SubStable { double alpha; };
struct SubTemperedStable { double alpha; double theta; };
struct SubCompoundPoissonExp { double rate; double mean; };

using SubJumpSpec = std::variant<SubNoJumps, SubStable, SubTemperedStable, SubCompoundPoissonExp>;

/**
 * @brief Subordinator with Laplace exponent phi(u) = drift*u + jump part.
 *
 * Jump parts: stable u^a, tempered stable (u+theta)^a - theta^a,
 * compound Poisson with Exp(mean) jumps rate*mean*u/(1+mean*u).
 * A model with no jumps is the degenerate subordinator drift*t.
 */
class SubordinatorModel {
public:
    explicit SubordinatorModel(double drift = 0.0, SubJumpSpec jumps = SubNoJumps{})
        : drift_(drift), jumps_(jumps) {
        detail::require(std::isfinite(drift_) && drift_ >= 0.0, "SubordinatorModel: drift must be finite and >= 0");
        std::visit(detail::overloaded{
                       [](const SubNoJumps&) {},
                       [](const SubStable& s) {
                           detail::require(s.alpha > 0.0 && s.alpha < 1.0, "Stable subordinator: alpha must lie in (0,1)");
                       },
                       [](const SubTemperedStable& s) {
                           detail::require(s.alpha > 0.0 && s.alpha < 1.0,
                                           "TemperedStable subordinator: alpha must lie in (0,1)");
                           detail::require(s.theta > 0.0 && std::isfinite(s.theta),
                                           "TemperedStable subordinator: theta must be > 0");
                       },
                       [](const SubCompoundPoissonExp& c) {
                           detail::require(c.rate > 0.0 && std::isfinite(c.rate), "CompoundPoissonExp subordinator: rate must be > 0");
                           detail::require(c.mean > 0.0 && std::isfinite(c.mean), "CompoundPoissonExp subordinator: mean must be > 0");
                       },
                   },
                   jumps_);
    }

    static SubordinatorModel drift_only(double drift) { return SubordinatorModel(drift); }
    static SubordinatorModel zero() { return SubordinatorModel(0.0); }
    static SubordinatorModel stable(double alpha, double drift = 0.0) { return SubordinatorModel(drift, SubStable{alpha}); }
    static SubordinatorModel tempered_stable(double alpha, double theta, double drift = 0.0) {
        return SubordinatorModel(drift, SubTemperedStable{alpha, theta});
    }
    static SubordinatorModel compound_poisson_exp(double rate, double mean, double drift = 0.0) {
        return SubordinatorModel(drift, SubCompoundPoissonExp{rate, mean});
    }

    double drift() const { return drift_; }
    const SubJumpSpec& jumps() const { return jumps_; }
    bool drift_only() const { return std::holds_alternative<SubNoJumps>(jumps_); }
    bool identically_zero() const { return drift_only() && drift_ == 0.0; }
    bool infinite_activity() const {
        return std::holds_alternative<SubStable>(jumps_) || std::holds_alternative<SubTemperedStable>(jumps_);
    }
    /// Pure stable subordinator with no drift (self-similar).
    bool pure_stable() const { return std::holds_alternative<SubStable>(jumps_) && drift_ == 0.0; }
    double stable_alpha() const {
        if (auto* s = std::get_if<SubStable>(&jumps_)) return s->alpha;
        if (auto* s = std::get_if<SubTemperedStable>(&jumps_)) return s->alpha;
        return 0.0;
    }

    /// Standing assumption for the time-change role: drift > 0 or infinite activity.
    void validate_time_change() const {
        detail::require(drift_ > 0.0 || infinite_activity(),
                        "time change: need drift > 0 or an infinite-activity jump part");
    }

    cplx phi(cplx u) const {
        if (u.real() < -1e-14 * std::max(1.0, std::abs(u))) throw DomainError("phi: needs Re(u) >= 0");
        if (u == cplx(0.0)) return cplx(0.0);
        cplx j = std::visit(detail::overloaded{
                                [](const SubNoJumps&) { return cplx(0.0); },
                                [&](const SubStable& s) { return std::pow(u, s.alpha); },
                                [&](const SubTemperedStable& s) {
                                    return std::pow(u + s.theta, s.alpha) - std::pow(s.theta, s.alpha);
                                },
                                [&](const SubCompoundPoissonExp& c) { return c.rate * c.mean * u / (1.0 + c.mean * u); },
                            },
                            jumps_);
        return drift_ * u + j;
    }

    double phi(double u) const {
        if (u < 0.0) throw DomainError("phi: needs u >= 0");
        if (u == 0.0) return 0.0;
        double j = std::visit(detail::overloaded{
                                  [](const SubNoJumps&) { return 0.0; },
                                  [&](const SubStable& s) { return std::pow(u, s.alpha); },
                                  [&](const SubTemperedStable& s) {
                                      return std::pow(u + s.theta, s.alpha) - std::pow(s.theta, s.alpha);
                                  },
                                  [&](const SubCompoundPoissonExp& c) { return c.rate * c.mean * u / (1.0 + c.mean * u); },
                              },
                              jumps_);
        return drift_ * u + j;
    }

    /// phi'(0) = E[Sub_1]; +inf for the stable jump part.
    double phi_prime0() const {
        double j = std::visit(detail::overloaded{
                                  [](const SubNoJumps&) { return 0.0; },
                                  [](const SubStable&) { return kInf; },
                                  [](const SubTemperedStable& s) { return s.alpha * std::pow(s.theta, s.alpha - 1.0); },
                                  [](const SubCompoundPoissonExp& c) { return c.rate * c.mean; },
                              },
                              jumps_);
        return drift_ + j;
    }

private:
    double drift_;
    SubJumpSpec jumps_;
};

// ---- problems and composite exponent ---------------------------------------

/// First passage of X_{l_t} (l inverse of Sub) above level + K_t, started at `start`.
struct ProblemTriple {
    LevyModel x_process;
    SubordinatorModel time_change;
    SubordinatorModel boundary;
    double level = 0.0;
    double start = 0.0;

    ProblemTriple(LevyModel x, SubordinatorModel sub, SubordinatorModel k = SubordinatorModel::zero(),
                  double a = 0.0, double x0 = 0.0)
        : x_process(std::move(x)), time_change(sub), boundary(k), level(a), start(x0) {
        time_change.validate_time_change();
        detail::require(std::isfinite(level) && level >= 0.0, "ProblemTriple: level must be finite and >= 0");
        detail::require(std::isfinite(start), "ProblemTriple: start must be finite");
    }

    double effective_level() const { return level - start; }

    ProblemTriple with_level(double a, double x0 = 0.0) const {
        ProblemTriple p = *this;
        detail::require(std::isfinite(a) && a >= 0.0, "ProblemTriple: level must be finite and >= 0");
        p.level = a;
        p.start = x0;
        return p;
    }
};

/// E[K o Sub at time 1] = phi_Sub'(0) * phi_K'(0), with inf * 0 = 0.
inline double boundary_drift_rate(const ProblemTriple& pb) {
    double a = pb.time_change.phi_prime0();
    double b = pb.boundary.phi_prime0();
    if (a == 0.0 || b == 0.0) return 0.0;
    return a * b;
}

/// Psi_q(z) = Psi(z) - phi_Sub(phi_K(iz) + q) + phi_Sub(q).
struct CompositeExponent {
    ProblemTriple base;
    double q = 0.0;

    CompositeExponent(ProblemTriple pb, double qq) : base(std::move(pb)), q(qq) {
        detail::require(std::isfinite(q) && q >= 0.0, "CompositeExponent: q must be finite and >= 0");
    }

    cplx operator()(cplx z) const {
        const cplx I(0.0, 1.0);
        const auto& K = base.boundary;
        const auto& S = base.time_change;
        cplx kz;
        if (K.drift_only())
            kz = K.drift() * I * z;  // entire
        else
            kz = K.phi(I * z);
        cplx arg = kz + q;
        cplx s;
        if (S.drift_only())
            s = S.drift() * arg;
        else
            s = S.phi(arg);
        return base.x_process.psi(z) - s + S.phi(q);
    }

    /// u -> Psi_q(-iu), real for spectrally negative X or LM-type X on its strip.
    double at_minus_iu(double u) const { return (*this)(cplx(0.0, -u)).real(); }
};

inline cplx composite_psi(const CompositeExponent& ce, cplx z) { return ce(z); }

enum class DriftVerdict { Yes, No, Undetermined };

inline const char* to_string(DriftVerdict v) {
    switch (v) {
        case DriftVerdict::Yes: return "yes";
        case DriftVerdict::No: return "no";
        default: return "zero-mean-undetermined";
    }
}

/// Does Xbs = X - K(Sub) drift to -inf?
inline DriftVerdict drifts_to_minus_infinity(const ProblemTriple& pb) {
    double mx = pb.x_process.mean();
    double mk = boundary_drift_rate(pb);
    if (std::isnan(mx)) return std::isinf(mk) ? DriftVerdict::Undetermined : DriftVerdict::No;
    if (std::isinf(mx) && std::isinf(mk)) return mx < 0 ? DriftVerdict::Yes : DriftVerdict::Undetermined;
    double m = mx - mk;
    return m < 0.0 ? DriftVerdict::Yes : DriftVerdict::No;
}

inline DriftVerdict drifts_to_minus_infinity(const CompositeExponent& ce) { return drifts_to_minus_infinity(ce.base); }

/// psi_eval / phi_eval free-function spellings.
inline cplx psi_eval(const LevyModel& m, cplx z) { return m.psi(z); }
inline cplx phi_eval(const SubordinatorModel& m, cplx u) { return m.phi(u); }

}  // namespace subfpt
