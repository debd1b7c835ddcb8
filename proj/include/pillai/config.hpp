#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pillai/errors.hpp"
#include "pillai/parse.hpp"
#include "pillai/recurrence.hpp"

namespace pillai {

struct RecTermSpec {
    std::string a;
    std::string alpha;
};

// One problem per config file. Expressions follow the CLI grammar; the target
// f is present exactly for the fixed-target modes.
struct ProblemConfig {
    std::string mode;  // "T1" | "T2" | "T3" | "COROLLARY"
    long genus = 0;
    Rational window_multiplier = 3;
    std::optional<std::string> f;
    std::vector<RecTermSpec> g_terms;
    std::vector<RecTermSpec> h_terms;

    static ProblemConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("malformed config " + path + ": " + e.what());
        }
        return from_json(j);
    }

    static ProblemConfig from_json(const nlohmann::json& j) {
        ProblemConfig cfg;
        try {
            cfg.mode = j.at("mode").get<std::string>();
            if (j.contains("genus")) cfg.genus = j.at("genus").get<long>();
            if (j.contains("window_multiplier")) {
                cfg.window_multiplier = parse_rational_field(j.at("window_multiplier"));
            }
            if (j.contains("f")) cfg.f = j.at("f").get<std::string>();
            cfg.g_terms = parse_terms(j.at("G"));
            cfg.h_terms = parse_terms(j.at("H"));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config field error: ") + e.what());
        }
        cfg.validate();
        return cfg;
    }

    void validate() const {
        if (mode != "T1" && mode != "T2" && mode != "T3" && mode != "COROLLARY") {
            throw ConfigError("mode must be one of T1, T2, T3, COROLLARY (got " + mode + ")");
        }
        bool needs_f = (mode == "T1" || mode == "COROLLARY");
        if (needs_f && !f) throw ConfigError("mode " + mode + " requires the target f");
        if (!needs_f && f) throw ConfigError("mode " + mode + " does not accept a target f");
        if (genus < 0) throw ConfigError("genus must be nonnegative");
        if (window_multiplier <= 0) throw ConfigError("window_multiplier must be positive");
        if (g_terms.empty() || h_terms.empty()) {
            throw ConfigError("G and H each need at least one term");
        }
        if (mode == "COROLLARY") {
            if (g_terms.size() != 1 || h_terms.size() != 1 || g_terms[0].a != "1" ||
                h_terms[0].a != "1") {
                throw ConfigError("COROLLARY mode expects single terms with coefficient 1");
            }
        }
        build_g();
        build_h();
        if (f) build_f();
    }

    Recurrence build_g() const { return build(g_terms, "G"); }
    Recurrence build_h() const { return build(h_terms, "H"); }

    RatFunc build_f() const {
        if (!f) throw ConfigError("config has no target f");
        return parse_config_expr(*f, "f");
    }

private:
    static Rational parse_rational_field(const nlohmann::json& j) {
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_string()) {
            Rational q;
            if (q.set_str(j.get<std::string>(), 10) != 0) {
                throw ConfigError("not a rational: " + j.get<std::string>());
            }
            q.canonicalize();
            return q;
        }
        throw ConfigError("rational fields take an integer or a \"p/q\" string");
    }

    static std::vector<RecTermSpec> parse_terms(const nlohmann::json& j) {
        if (!j.is_array()) throw ConfigError("recurrence spec must be an array of terms");
        std::vector<RecTermSpec> out;
        for (const auto& item : j) {
            out.push_back(RecTermSpec{item.at("a").get<std::string>(),
                                      item.at("alpha").get<std::string>()});
        }
        return out;
    }

    static RatFunc parse_config_expr(const std::string& text, const std::string& where) {
        try {
            return parse_expression(text);
        } catch (const ParseError& e) {
            throw ConfigError("in " + where + " expression \"" + text + "\": " + e.what());
        } catch (const DomainError& e) {
            throw ConfigError("in " + where + " expression \"" + text + "\": " + e.what());
        }
    }

    static Recurrence build(const std::vector<RecTermSpec>& specs, const std::string& name) {
        std::vector<Term> terms;
        terms.reserve(specs.size());
        for (std::size_t i = 0; i < specs.size(); ++i) {
            std::string where = name + "[" + std::to_string(i) + "]";
            // members built as locals so a throwing second parse unwinds the
            // first (gcc does not destroy partially built aggregate temporaries)
            RatFunc coeff = parse_config_expr(specs[i].a, where + ".a");
            RatFunc root = parse_config_expr(specs[i].alpha, where + ".alpha");
            terms.push_back(Term{std::move(coeff), std::move(root)});
        }
        try {
            return Recurrence(std::move(terms));
        } catch (const DomainError& e) {
            throw ConfigError("invalid recurrence " + name + ": " + e.what());
        }
    }
};

}  // namespace pillai
