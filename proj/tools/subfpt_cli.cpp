// subfpt: command-line front end.
//
// Exit status: 0 ok, 1 selftest failure or unexpected error, 2 bad input
// (flags, JSON, parameters), 3 numerical non-convergence.

#include "subfpt/subfpt.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace subfpt;

namespace {

/// "a:step:b" (inclusive) or "x1,x2,..." or a single number.
std::vector<double> parse_grid(const std::string& spec, const std::string& flag) {
    auto to_num = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ValidationError(flag + ": cannot parse '" + s + "' as a number");
        }
    };
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw ValidationError(flag + ": expected a:step:b");
        double a = to_num(parts[0]), h = to_num(parts[1]), b = to_num(parts[2]);
        if (!(h > 0.0) || !(b >= a)) throw ValidationError(flag + ": need step > 0 and b >= a");
        long n = static_cast<long>(std::floor((b - a) / h + 1e-9));
        if (n > 10000000) throw ValidationError(flag + ": grid too large");
        for (long k = 0; k <= n; ++k) out.push_back(a + k * h);
        return out;
    }
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(to_num(p));
    if (out.empty()) throw ValidationError(flag + ": empty grid");
    return out;
}

struct Common {
    std::string config;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::size_t n = 0;
    std::string out = "-";
};

void add_common(CLI::App* app, Common& c, bool withConfig = true) {
    if (withConfig) app->add_option("--config", c.config, "problem JSON file");
    app->add_option("--seed", c.seed, "master seed")->capture_default_str();
    app->add_option("--workers", c.workers, "worker threads (0: SUBFPT_THREADS or hardware)");
    app->add_option("--n", c.n, "Monte Carlo sample size");
    app->add_option("--out", c.out, "output file, - for stdout")->capture_default_str();
}

Json load_config(const Common& c) {
    if (c.config.empty()) throw ValidationError("--config is required");
    return load_json_file(c.config);
}

/// Every CSV starts with the provenance comment, then the header row.
void emit(const Common& c, const std::string& command, const Json& cfg, const std::map<std::string, std::string>& params,
          const std::string& body) {
    Json canon;
    canon["command"] = command;
    canon["config"] = cfg;
    canon["params"] = params;
    std::string text = csv_provenance(canon.dump(), c.seed) + "\n" + body;
    if (c.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw ValidationError(c.out + ": cannot open for writing");
    f << text;
}

SamplerOptions sampler_options(double opStep, double opHorizon, double physHorizon, bool bridge) {
    SamplerOptions o;
    o.opStep = opStep;
    o.opHorizon = opHorizon;
    o.physHorizon = physHorizon;
    o.bridge = bridge;
    o.validate();
    return o;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

/// Risk model from an x_process of kind compound_poisson_exp with upward jumps.
RiskModel risk_from_problem(const ProblemTriple& pb) {
    const auto& X = pb.x_process;
    auto* cp = std::get_if<CompoundPoissonExp>(&X.jumps());
    bool up = cp && ((cp->sign == JumpSign::Up) != X.reflected());
    if (!up || X.sigma2() != 0.0 || X.drift() != 0.0)
        throw ValidationError("ruin: x_process must be compound_poisson_exp with upward jumps, no drift, no sigma2");
    return RiskModel(cp->rate, cp->jumpRate, pb.boundary, pb.time_change);
}

/// Fractional problem from a config: stable time change without drift, K = 0,
/// passage of X upward over level - start.
struct DensityModel {
    FractionalProblem fp;
    std::optional<std::pair<double, double>> snStable;  // (index, distance) for the dual route
};

DensityModel density_model(const Json& cfg) {
    ProblemTriple pb = parse_problem(cfg);  // full validation, unknown keys rejected
    if (!pb.time_change.pure_stable()) throw ValidationError("density: time_change must be stable with zero drift");
    if (!pb.boundary.identically_zero()) throw ValidationError("density: boundary must be zero");
    const double alpha = pb.time_change.stable_alpha();
    const double x = pb.level - pb.start;
    if (!(x > 0.0)) throw ValidationError("density: need level > start");
    const Json& xj = cfg.at("x_process");
    const std::string kind = xj.at("kind").get<std::string>();
    const bool neg = xj.value("negate", false);
    const auto& X = pb.x_process;
    if (kind == "bm") return {FractionalProblem::brownian_with_drift(alpha, X.drift(), X.sigma2(), x), std::nullopt};
    if (kind == "stable") {
        double a = xj.at("index").get<double>(), rho = xj.at("rho").get<double>();
        // upward passage of X = downward passage of -X, whose positivity is 1 - rho
        return {FractionalProblem::stable(alpha, a, neg ? rho : 1.0 - rho, x), std::nullopt};
    }
    if (kind == "sn_stable" && neg && X.sigma2() == 0.0 && X.drift() == 0.0) {
        double a = xj.at("index").get<double>();
        return {FractionalProblem::sn_stable(alpha, a, x), std::make_pair(a, x)};
    }
    throw ValidationError("density: x_process must be bm, stable, or sn_stable with negate=true (no drift, no sigma2)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"First passage times of time-changed Levy processes over subordinator boundaries"};
    app.require_subcommand(1);

    // simulate
    Common sim;
    std::string samplerKind = "reduced", pathKind;
    double opStep = 1e-3, opHorizon = 100.0, physHorizon = kInf, pathHorizon = 10.0, pathStep = 0.01;
    bool bridge = true;
    auto* cSim = app.add_subcommand("simulate", "first-passage batch (time,overshoot,finite,censored) or one path (t,value,kind)");
    add_common(cSim, sim);
    cSim->add_option("--sampler", samplerKind, "reduced | direct")->check(CLI::IsMember({"reduced", "direct"}));
    cSim->add_option("--op-step", opStep, "operational-time step");
    cSim->add_option("--op-horizon", opHorizon, "operational-time horizon");
    cSim->add_option("--phys-horizon", physHorizon, "physical-time censoring horizon");
    cSim->add_flag("--bridge,!--no-bridge", bridge, "Brownian-bridge crossing correction (default on)");
    cSim->add_option("--path", pathKind, "dump one path instead: sub | levy | inverse | subdiffusive")
        ->check(CLI::IsMember({"sub", "levy", "inverse", "subdiffusive"}));
    cSim->add_option("--horizon", pathHorizon, "path horizon");
    cSim->add_option("--step", pathStep, "path grid step");

    // fpt-lt
    Common lt;
    std::string qGrid = "1", vGrid = "0";
    double ltOpStep = 1e-3, ltOpHorizon = 100.0, ltPhys = kInf;
    bool ltBridge = true;
    auto* cLt = app.add_subcommand("fpt-lt", "E[exp(-qT - v overshoot)]: q,v,analytic,mc,mcStdError,mcBiasBound");
    add_common(cLt, lt);
    cLt->add_option("--q", qGrid, "q grid");
    cLt->add_option("--v", vGrid, "v grid");
    cLt->add_option("--op-step", ltOpStep, "operational-time step");
    cLt->add_option("--op-horizon", ltOpHorizon, "operational-time horizon");
    cLt->add_option("--phys-horizon", ltPhys, "physical-time censoring horizon");
    cLt->add_flag("--bridge,!--no-bridge", ltBridge, "Brownian-bridge crossing correction (default on)");

    // wh-check
    Common wh;
    std::string whQ = "1", whP = "1", whV = "0";
    double whOpStep = 1e-3, whOpHorizon = 200.0;
    auto* cWh = app.add_subcommand("wh-check", "composite identity at exponential levels: q,p,v,rhs,mc,mcStdError,z");
    add_common(cWh, wh);
    cWh->add_option("--q", whQ, "q values (list)");
    cWh->add_option("--p", whP, "p values (same length, or one)");
    cWh->add_option("--v", whV, "v values (same length, or one)");
    cWh->add_option("--op-step", whOpStep, "operational-time step");
    cWh->add_option("--op-horizon", whOpHorizon, "operational-time horizon");

    // scale-fn
    Common sc;
    double scQ = 0.0, scTol = 1e-9;
    std::string xGrid = "0:0.1:2";
    auto* cSc = app.add_subcommand("scale-fn", "W and Z at p = phi_Sub(q): x,W,Z,errW");
    add_common(cSc, sc);
    cSc->add_option("--q", scQ, "q >= 0");
    cSc->add_option("--x", xGrid, "x grid");
    cSc->add_option("--tol", scTol, "relative inversion tolerance");

    // density
    Common de;
    std::string tGrid = "0.1:0.1:5";
    int deriv = 0;
    bool tails = false;
    auto* cDe = app.add_subcommand("density", "density of the passage time: t,f,errEstimate (--tails: t,survivalAsymptote,truncatedMeanAsymptote,densityAsymptote)");
    add_common(cDe, de);
    cDe->add_option("--t", tGrid, "t grid");
    cDe->add_option("--derivative", deriv, "derivative order 0..4")->check(CLI::Range(0, 4));
    cDe->add_flag("--tails", tails, "tabulate large-t asymptotes instead");

    // ruin
    Common ru;
    std::optional<double> lam, pj, del, alp;
    std::string aGrid = "0:1:5";
    auto* cRu = app.add_subcommand("ruin", "ruin probability sweep: a,ruinProb (with --n: a,ruinProb,mc,mcStdError)");
    add_common(cRu, ru);
    cRu->add_option("--lambda", lam, "claim rate");
    cRu->add_option("--p", pj, "claim size rate");
    cRu->add_option("--delta", del, "premium rate");
    cRu->add_option("--alpha", alp, "stable index of the time change");
    cRu->add_option("--a", aGrid, "initial capital grid");

    // selftest
    unsigned stWorkers = 0;
    auto* cSt = app.add_subcommand("selftest", "run the invariant suite");
    cSt->add_option("--workers", stWorkers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*cSim) {
            Json cfg = load_config(sim);
            ProblemTriple pb = parse_problem(cfg);
            std::map<std::string, std::string> par{{"sampler", samplerKind}, {"opStep", fmt(opStep)},
                                                   {"opHorizon", fmt(opHorizon)}, {"physHorizon", fmt(physHorizon)},
                                                   {"bridge", bridge ? "1" : "0"}, {"n", std::to_string(sim.n)},
                                                   {"path", pathKind}, {"horizon", fmt(pathHorizon)}, {"step", fmt(pathStep)}};
            if (!pathKind.empty()) {
                RngStream rng(sim.seed, 0);
                PathRecord rec;
                if (pathKind == "sub") {
                    rec = simulate_subordinator(pb.time_change, pathHorizon, pathStep, rng);
                } else if (pathKind == "levy") {
                    rec = simulate_levy(pb.x_process, pathHorizon, pathStep, rng);
                } else if (pathKind == "inverse") {
                    double opH = 1.0;
                    PathRecord s = simulate_subordinator(pb.time_change, opH, opStep, rng);
                    while (!(s.values.back() > pathHorizon)) {
                        if (opH > 1e6) throw ConvergenceError("simulate: Sub did not reach the horizon");
                        opH *= 2.0;
                        s = simulate_subordinator(pb.time_change, opH, opStep, rng);
                    }
                    rec = invert_path(s, pathStep, pathHorizon);
                } else {
                    rec = simulate_subdiffusive(pb, pathHorizon, pathStep, opStep, rng);
                }
                emit(sim, "simulate", cfg, par, path_csv(rec));
                return 0;
            }
            if (sim.n == 0) throw ValidationError("simulate: --n must be >= 1");
            auto xs = run_ensemble(pb, samplerKind == "direct" ? SamplerKind::Direct : SamplerKind::Reduced, sim.n,
                                   sim.workers, sim.seed, sampler_options(opStep, opHorizon, physHorizon, bridge));
            emit(sim, "simulate", cfg, par, batch_csv(xs));
            return 0;
        }

        if (*cLt) {
            Json cfg = load_config(lt);
            ProblemTriple pb = parse_problem(cfg);
            auto qs = parse_grid(qGrid, "--q"), vs = parse_grid(vGrid, "--v");
            std::vector<FptSample> xs;
            if (lt.n > 0)
                xs = run_ensemble(pb, SamplerKind::Reduced, lt.n, lt.workers, lt.seed,
                                  sampler_options(ltOpStep, ltOpHorizon, ltPhys, ltBridge));
            // closed form only where X creeps upward and K = 0 (zero overshoot)
            const bool closed = pb.x_process.spectrally_negative() && pb.boundary.identically_zero();
            std::ostringstream os;
            os.precision(12);
            os << "q,v,analytic,mc,mcStdError,mcBiasBound\n";
            for (double q : qs)
                for (double v : vs) {
                    os << q << ',' << v << ',';
                    if (closed) os << std::exp(-fpt_laplace_exponent(pb, q) * pb.effective_level());
                    os << ',';
                    if (!xs.empty()) {
                        Estimate e = estimate_lt(xs, q, v);
                        os << e.value << ',' << e.stdError << ',' << e.biasBound;
                    } else {
                        os << ",,";
                    }
                    os << '\n';
                }
            emit(lt, "fpt-lt", cfg, {{"q", qGrid}, {"v", vGrid}, {"n", std::to_string(lt.n)}, {"opStep", fmt(ltOpStep)},
                                     {"opHorizon", fmt(ltOpHorizon)}, {"physHorizon", fmt(ltPhys)},
                                     {"bridge", ltBridge ? "1" : "0"}},
                 os.str());
            return 0;
        }

        if (*cWh) {
            Json cfg = load_config(wh);
            ProblemTriple pb = parse_problem(cfg);
            auto qs = parse_grid(whQ, "--q"), ps = parse_grid(whP, "--p"), vs = parse_grid(whV, "--v");
            std::size_t m = std::max({qs.size(), ps.size(), vs.size()});
            for (auto* g : {&qs, &ps, &vs}) {
                if (g->size() == 1) g->resize(m, g->front());
                if (g->size() != m) throw ValidationError("wh-check: --q, --p, --v must have equal lengths (or one value)");
            }
            SamplerOptions o = sampler_options(whOpStep, whOpHorizon, kInf, true);
            std::ostringstream os;
            os.precision(12);
            os << "q,p,v,rhs,mc,mcStdError,z\n";
            for (std::size_t i = 0; i < m; ++i) {
                double rhs = composite_rhs(pb, qs[i], ps[i], vs[i]);
                os << qs[i] << ',' << ps[i] << ',' << vs[i] << ',' << rhs << ',';
                if (wh.n > 0) {
                    auto xs = run_exponential_level_ensemble(pb, ps[i], wh.n, wh.workers, wh.seed + i, o);
                    Estimate e = estimate_lt(xs, qs[i], vs[i]);
                    os << e.value << ',' << e.stdError << ',' << (e.value - rhs) / e.stdError;
                } else {
                    os << ",,";
                }
                os << '\n';
            }
            emit(wh, "wh-check", cfg, {{"q", whQ}, {"p", whP}, {"v", whV}, {"n", std::to_string(wh.n)},
                                       {"opStep", fmt(whOpStep)}, {"opHorizon", fmt(whOpHorizon)}},
                 os.str());
            return 0;
        }

        if (*cSc) {
            Json cfg = load_config(sc);
            ProblemTriple pb = parse_problem(cfg);
            auto tab = scale_functions(pb, scQ, parse_grid(xGrid, "--x"), scTol);
            emit(sc, "scale-fn", cfg, {{"q", fmt(scQ)}, {"x", xGrid}, {"tol", fmt(scTol)}}, tab.to_csv());
            return 0;
        }

        if (*cDe) {
            Json cfg = load_config(de);
            DensityModel dm = density_model(cfg);
            auto ts = parse_grid(tGrid, "--t");
            for (double t : ts)
                if (!(t > 0.0)) throw ValidationError("density: t must be > 0");
            std::map<std::string, std::string> par{{"t", tGrid}, {"derivative", std::to_string(deriv)},
                                                   {"tails", tails ? "1" : "0"}};
            if (tails) {
                std::ostringstream os;
                os.precision(12);
                os << "t,survivalAsymptote,truncatedMeanAsymptote,densityAsymptote\n";
                for (double t : ts)
                    os << t << ',' << survival_asymptote(dm.fp, t) << ',' << tail_asymptote(dm.fp, t) << ','
                       << density_asymptote(dm.fp, t, deriv) << '\n';
                emit(de, "density", cfg, par, os.str());
                return 0;
            }
            std::vector<AccuracyReport> fs;
            if (dm.snStable && deriv == 0) {
                SnStableDensity f(dm.snStable->first, dm.fp.alpha, dm.snStable->second);
                for (double t : ts) fs.push_back(f(t).report);
            } else {
                MellinDensity f(dm.fp, MellinDensity::default_line(dm.fp, deriv));
                for (double t : ts) fs.push_back(f(t, deriv));
            }
            emit(de, "density", cfg, par, density_csv(ts, fs));
            return 0;
        }

        if (*cRu) {
            Json cfg;
            std::optional<RiskModel> m;
            if (!ru.config.empty()) {
                if (lam || pj || del || alp) throw ValidationError("ruin: give either --config or --lambda/--p/--delta/--alpha");
                cfg = load_config(ru);
                m = risk_from_problem(parse_problem(cfg));
            } else {
                if (!(lam && pj && del && alp)) throw ValidationError("ruin: need --lambda, --p, --delta and --alpha (or --config)");
                m = RiskModel::fractional_poisson(*lam, *pj, *del, *alp);
                cfg = Json{{"lambda", *lam}, {"p", *pj}, {"delta", *del}, {"alpha", *alp}};
            }
            auto as = parse_grid(aGrid, "--a");
            std::string body;
            if (ru.n == 0) {
                body = ruin_csv(*m, as);
            } else {
                std::ostringstream os;
                os.precision(12);
                os << "a,ruinProb,mc,mcStdError\n";
                for (std::size_t i = 0; i < as.size(); ++i) {
                    double a = as[i];
                    auto rs = parallel_generate<double>(ru.n, ru.workers, ru.seed + i, [&](RngStream& r, std::size_t) {
                        return simulate_ruin(*m, a, r).ruined ? 1.0 : 0.0;
                    });
                    Estimate e = estimate_mean(rs);
                    os << a << ',' << ruin_probability(*m, a) << ',' << e.value << ',' << e.stdError << '\n';
                }
                body = os.str();
            }
            emit(ru, "ruin", cfg, {{"a", aGrid}, {"n", std::to_string(ru.n)}}, body);
            return 0;
        }

        if (*cSt) {
            auto rs = run_selftest(stWorkers);
            return print_selftest(rs, std::cout) ? 0 : 1;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
