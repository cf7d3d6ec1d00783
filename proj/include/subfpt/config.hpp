#pragma once

#include "subfpt/error.hpp"
#include "subfpt/models.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

namespace subfpt {

using Json = nlohmann::json;

namespace detail {

inline void reject_unknown(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw ValidationError(where + "." + it.key() + ": unknown key");
}

inline double num(const Json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) throw ValidationError(where + "." + key + ": missing");
    const Json& v = j.at(key);
    if (!v.is_number()) throw ValidationError(where + "." + key + ": expected a number");
    return v.get<double>();
}

inline double num_or(const Json& j, const std::string& where, const char* key, double dflt) {
    return j.contains(key) ? num(j, where, key) : dflt;
}

inline std::string kind_of(const Json& j, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw ValidationError(where + ".kind: missing or not a string");
    return j.at("kind").get<std::string>();
}

inline JumpLaw parse_law(const Json& j, const std::string& w) {
    std::string k = kind_of(j, w);
    if (k == "exp_up") {
        reject_unknown(j, w, {"kind", "rate"});
        return ExpJumpUp{num(j, w, "rate")};
    }
    if (k == "exp_down") {
        reject_unknown(j, w, {"kind", "rate"});
        return ExpJumpDown{num(j, w, "rate")};
    }
    if (k == "fixed") {
        reject_unknown(j, w, {"kind", "size"});
        return FixedJump{num(j, w, "size")};
    }
    if (k == "normal") {
        reject_unknown(j, w, {"kind", "mean", "sd"});
        return NormalJump{num(j, w, "mean"), num(j, w, "sd")};
    }
    throw ValidationError(w + ".kind: unknown jump law '" + k + "'");
}

}  // namespace detail

/// Levy model from {"kind": bm | compound_poisson_exp | stable | sn_stable | custom, ...}.
inline LevyModel parse_levy(const Json& j, const std::string& w = "x_process") {
    using namespace detail;
    std::string k = kind_of(j, w);
    LevyModel m = [&]() -> LevyModel {
        if (k == "bm") {
            reject_unknown(j, w, {"kind", "sigma2", "drift", "negate"});
            return LevyModel(num(j, w, "sigma2"), num_or(j, w, "drift", 0.0));
        }
        if (k == "compound_poisson_exp") {
            reject_unknown(j, w, {"kind", "rate", "jump_rate", "sign", "sigma2", "drift", "negate"});
            std::string s = j.value("sign", std::string("up"));
            if (s != "up" && s != "down") throw ValidationError(w + ".sign: expected \"up\" or \"down\"");
            return LevyModel(num_or(j, w, "sigma2", 0.0), num_or(j, w, "drift", 0.0),
                             CompoundPoissonExp{num(j, w, "rate"), num(j, w, "jump_rate"),
                                                s == "up" ? JumpSign::Up : JumpSign::Down});
        }
        if (k == "stable") {
            reject_unknown(j, w, {"kind", "index", "rho", "negate"});
            return LevyModel(0.0, 0.0, TwoSidedStable{num(j, w, "index"), num(j, w, "rho")});
        }
        if (k == "sn_stable") {
            reject_unknown(j, w, {"kind", "index", "sigma2", "drift", "negate"});
            return LevyModel(num_or(j, w, "sigma2", 0.0), num_or(j, w, "drift", 0.0),
                             SpectrallyNegativeStable{num(j, w, "index")});
        }
        if (k == "custom") {
            reject_unknown(j, w, {"kind", "classes", "sigma2", "drift", "negate"});
            if (!j.contains("classes") || !j.at("classes").is_array())
                throw ValidationError(w + ".classes: expected an array");
            CustomFiniteActivity c;
            int i = 0;
            for (const auto& cl : j.at("classes")) {
                std::string wi = w + ".classes[" + std::to_string(i++) + "]";
                reject_unknown(cl, wi, {"rate", "law"});
                if (!cl.contains("law")) throw ValidationError(wi + ".law: missing");
                c.classes.push_back(JumpClass{num(cl, wi, "rate"), parse_law(cl.at("law"), wi + ".law")});
            }
            return LevyModel(num_or(j, w, "sigma2", 0.0), num_or(j, w, "drift", 0.0), c);
        }
        throw ValidationError(w + ".kind: unknown Levy model '" + k + "'");
    }();
    if (j.contains("negate")) {
        if (!j.at("negate").is_boolean()) throw ValidationError(w + ".negate: expected a boolean");
        if (j.at("negate").get<bool>()) m = m.negated();
    }
    return m;
}

/// Subordinator from {"kind": stable | tempered_stable | compound_poisson_exp | drift | zero | none, ...}.
inline SubordinatorModel parse_subordinator(const Json& j, const std::string& w) {
    using namespace detail;
    std::string k = kind_of(j, w);
    if (k == "stable") {
        reject_unknown(j, w, {"kind", "alpha", "drift"});
        return SubordinatorModel::stable(num(j, w, "alpha"), num_or(j, w, "drift", 0.0));
    }
    if (k == "tempered_stable") {
        reject_unknown(j, w, {"kind", "alpha", "theta", "drift"});
        return SubordinatorModel::tempered_stable(num(j, w, "alpha"), num(j, w, "theta"), num_or(j, w, "drift", 0.0));
    }
    if (k == "compound_poisson_exp") {
        reject_unknown(j, w, {"kind", "rate", "mean", "drift"});
        return SubordinatorModel::compound_poisson_exp(num(j, w, "rate"), num(j, w, "mean"), num_or(j, w, "drift", 0.0));
    }
    if (k == "drift") {
        reject_unknown(j, w, {"kind", "delta", "drift"});
        if (j.contains("delta") && j.contains("drift")) throw ValidationError(w + ": give either delta or drift");
        return SubordinatorModel::drift_only(j.contains("delta") ? num(j, w, "delta") : num(j, w, "drift"));
    }
    if (k == "zero" || k == "none") {
        reject_unknown(j, w, {"kind"});
        return SubordinatorModel::zero();
    }
    throw ValidationError(w + ".kind: unknown subordinator '" + k + "'");
}

inline ProblemTriple parse_problem(const Json& j) {
    detail::reject_unknown(j, "config", {"x_process", "time_change", "boundary", "level", "start"});
    for (const char* k : {"x_process", "time_change"})
        if (!j.contains(k)) throw ValidationError(std::string("config.") + k + ": missing");
    SubordinatorModel K = j.contains("boundary") ? parse_subordinator(j.at("boundary"), "boundary")
                                                 : SubordinatorModel::zero();
    return ProblemTriple(parse_levy(j.at("x_process")), parse_subordinator(j.at("time_change"), "time_change"), K,
                         detail::num_or(j, "config", "level", 1.0), detail::num_or(j, "config", "start", 0.0));
}

/// Parse JSON text; syntax errors report line and column.
inline Json parse_json_text(const std::string& text, const std::string& source = "config") {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t pos = e.byte == 0 ? 0 : e.byte - 1;
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ValidationError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                              e.what() + ")");
    }
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// "# config_hash=<16 hex digits> seed=<seed>"
inline std::string csv_provenance(const std::string& canonical, std::uint64_t seed) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical)));
    return std::string("# config_hash=") + buf + " seed=" + std::to_string(seed);
}

}  // namespace subfpt
