#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pillai/config.hpp"
#include "pillai/report_json.hpp"
#include "pillai/solver.hpp"

namespace pillai {

// Exit codes: 0 success, 2 hypothesis violation (report still emitted),
// 3 parse or config error, 4 internal invariant failure.
namespace cli_detail {

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

struct CorollaryInputs {
    Poly p, q, f;
};

inline Poly require_polynomial(const std::string& text, const char* name) {
    RatFunc v = parse_expression(text);
    if (!v.is_polynomial()) {
        throw ConfigError(std::string(name) + " must be a polynomial, got " + v.str());
    }
    return v.num();
}

inline CorollaryInputs corollary_inputs_from_config(const ProblemConfig& cfg) {
    CorollaryInputs in;
    in.p = require_polynomial(cfg.g_terms[0].alpha, "p");
    in.q = require_polynomial(cfg.h_terms[0].alpha, "q");
    in.f = require_polynomial(*cfg.f, "f");
    return in;
}

inline Json corollary_inputs_json(const CorollaryInputs& in) {
    Json j;
    j["mode"] = "COROLLARY";
    j["p"] = in.p.str();
    j["q"] = in.q.str();
    j["f"] = in.f.str();
    return j;
}

inline PreparedPair prepare_for_mode(const ProblemConfig& cfg) {
    Recurrence g = cfg.build_g();
    Recurrence h = cfg.build_h();
    if (cfg.mode == "T1") return prepare_theorem1(g, h);
    if (cfg.mode == "T2") return prepare_theorem2(g, h);
    if (cfg.mode == "T3") return prepare_theorem3(g, h);
    throw ConfigError("mode " + cfg.mode + " has no hypothesis check");
}

inline long verify_window(const ProblemConfig& cfg, long limit) {
    return std::max(limit, floor_to_long(cfg.window_multiplier * Rational(limit)));
}

// Re-derives the solution set from the plain oracle; disagreement with the
// enumerated set is an internal invariant failure.
inline Json verify_fixed(const Recurrence& g, const Recurrence& h, const RatFunc& f,
                         const SolutionSet& s, long window) {
    std::vector<std::pair<long, long>> oracle;
    if (window >= 1) oracle = brute_force_oracle(g, h, f, window);
    std::vector<std::pair<long, long>> inside;
    bool beyond = false;
    for (const auto& pair : oracle) {
        if (pair.first <= s.bound.enumeration_limit && pair.second <= s.bound.enumeration_limit) {
            inside.push_back(pair);
        } else {
            beyond = true;
        }
    }
    if (inside != s.solutions) {
        throw InternalError("oracle disagrees with the enumerated solution set");
    }
    if (beyond) {
        throw InternalError("oracle found a solution beyond the enumeration bound");
    }
    Json j;
    j["window"] = window;
    j["oracle_matches"] = true;
    j["no_solutions_beyond_bound"] = true;
    return j;
}

// Exact pairwise recomputation of the collision map over the bound square,
// fingerprint-free.
inline Json verify_double(const Recurrence& g, const Recurrence& h, const DoubleRepSet& s) {
    long limit = s.bound.enumeration_limit;
    std::map<RatFunc, std::vector<std::pair<long, long>>> groups;
    if (limit >= 1) {
        std::vector<RatFunc> gv, hv;
        ExactSeq gs(g);
        for (long n = 1; n <= limit; ++n) {
            gv.push_back(gs.value());
            if (n < limit) gs.advance();
        }
        ExactSeq hs(h);
        for (long m = 1; m <= limit; ++m) {
            hv.push_back(hs.value());
            if (m < limit) hs.advance();
        }
        for (long n = 1; n <= limit; ++n) {
            for (long m = 1; m <= limit; ++m) {
                groups[gv[static_cast<std::size_t>(n - 1)] - hv[static_cast<std::size_t>(m - 1)]]
                    .emplace_back(n, m);
            }
        }
    }
    std::vector<DoubleRep> expected;
    for (auto& [value, reps] : groups) {
        if (reps.size() < 2) continue;
        expected.push_back(DoubleRep{value, reps});
    }
    std::sort(expected.begin(), expected.end(), [](const DoubleRep& a, const DoubleRep& b) {
        return a.representations < b.representations;
    });
    bool match = expected.size() == s.collisions.size();
    for (std::size_t i = 0; match && i < expected.size(); ++i) {
        match = expected[i].value == s.collisions[i].value &&
                expected[i].representations == s.collisions[i].representations;
    }
    if (!match) throw InternalError("exact rescan disagrees with the collision map");
    Json j;
    j["window"] = limit;
    j["exact_rescan_matches"] = true;
    return j;
}

}  // namespace cli_detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact bounds and certified enumeration for Pillai-type equations over Q(x)"};
    app.require_subcommand(1);

    std::string config_path;
    int threads = 1;
    bool verify = false;
    std::string expr_a, expr_b;
    std::string p_text, q_text, f_text;

    auto add_common = [&](CLI::App* cmd, bool enumerates) {
        cmd->add_option("-c,--config", config_path, "problem config (JSON)")->required();
        if (enumerates) {
            cmd->add_option("--threads", threads, "enumeration threads");
            cmd->add_flag("--verify", verify, "cross-check the result against an exact rescan");
        }
    };

    CLI::App* cmd_bound = app.add_subcommand("bound", "compute the enumeration bound report");
    add_common(cmd_bound, false);
    CLI::App* cmd_solve = app.add_subcommand("solve", "enumerate all solutions below the bound");
    add_common(cmd_solve, true);
    CLI::App* cmd_double =
        app.add_subcommand("double-rep", "enumerate all targets with two or more representations");
    add_common(cmd_double, true);
    CLI::App* cmd_check = app.add_subcommand("check", "evaluate the mode hypotheses");
    add_common(cmd_check, false);

    CLI::App* cmd_height = app.add_subcommand("height", "height of an expression");
    cmd_height->add_option("expr", expr_a, "expression")->required();
    CLI::App* cmd_indep = app.add_subcommand("indep", "multiplicative independence test");
    cmd_indep->add_option("gamma", expr_a, "first expression")->required();
    cmd_indep->add_option("delta", expr_b, "second expression")->required();
    CLI::App* cmd_corollary = app.add_subcommand("corollary", "solve p^n - q^m = f over polynomials");
    cmd_corollary->add_option("-p", p_text, "base p")->required();
    cmd_corollary->add_option("-q", q_text, "base q")->required();
    cmd_corollary->add_option("-f", f_text, "target f")->required();
    cmd_corollary->add_option("--threads", threads, "enumeration threads");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("pillai");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 3;
    }

    SolverOptions opts;
    opts.threads = threads;

    try {
        if (cmd_height->parsed()) {
            RatFunc value = parse_expression(expr_a);
            Height h = height(value);
            Json j;
            j["kind"] = "height";
            j["expression"] = value.str();
            j["value"] = h.is_infinite() ? std::string("inf") : std::to_string(h.value());
            cli_detail::emit(out, j);
            return 0;
        }
        if (cmd_indep->parsed()) {
            RatFunc gamma = parse_expression(expr_a);
            RatFunc delta = parse_expression(expr_b);
            Json j;
            j["kind"] = "multiplicative_independence";
            j["gamma"] = gamma.str();
            j["delta"] = delta.str();
            j["independent"] = is_mult_independent(gamma, delta);
            cli_detail::emit(out, j);
            return 0;
        }
        if (cmd_corollary->parsed()) {
            cli_detail::CorollaryInputs in;
            in.p = cli_detail::require_polynomial(p_text, "p");
            in.q = cli_detail::require_polynomial(q_text, "q");
            in.f = cli_detail::require_polynomial(f_text, "f");
            SolutionSet s = corollary_solve(in.p, in.q, in.f, opts);
            Json j;
            j["kind"] = "solution_set";
            j["inputs"] = cli_detail::corollary_inputs_json(in);
            j["bound"] = bound_json(s.bound);
            j["offsets"] = offsets_json(s.offsets);
            j["solutions"] = pairs_json(s.solutions);
            cli_detail::emit(out, j);
            return 0;
        }

        ProblemConfig cfg = ProblemConfig::load(config_path);

        if (cmd_check->parsed()) {
            if (cfg.mode == "COROLLARY") {
                throw ConfigError("COROLLARY mode has no hypothesis check");
            }
            PreparedPair prep = cli_detail::prepare_for_mode(cfg);
            Json j;
            j["kind"] = "hypothesis_report";
            j["inputs"] = inputs_json(cfg);
            j["hypotheses"] = hypothesis_json(prep.report);
            cli_detail::emit(out, j);
            return prep.report.passed ? 0 : 2;
        }

        if (cmd_bound->parsed()) {
            Json j;
            j["kind"] = "bound_report";
            if (cfg.mode == "COROLLARY") {
                cli_detail::CorollaryInputs in = cli_detail::corollary_inputs_from_config(cfg);
                Rational c = corollary_bound(in.p, in.q, in.f);
                BoundReport report;
                report.theorem = "Corollary";
                report.set_constant("deg_p", Rational(in.p.degree()));
                report.set_constant("deg_q", Rational(in.q.degree()));
                report.set_constant("deg_f", Rational(in.f.degree()));
                report.set_constant("C", c);
                report.case_trace.push_back("pure_powers");
                report.finalize(c);
                j["inputs"] = cli_detail::corollary_inputs_json(in);
                j["bound"] = bound_json(report);
            } else {
                PreparedPair prep = cli_detail::prepare_for_mode(cfg);
                if (!prep.report.passed) throw HypothesisViolation(prep.report);
                BoundReport report;
                if (cfg.mode == "T1") {
                    report = theorem1_bound_prepared(prep, cfg.build_f(), cfg.genus);
                } else if (cfg.mode == "T2") {
                    report = theorem2_bound_prepared(prep, cfg.genus);
                } else {
                    report = theorem3_bound_prepared(prep, cfg.genus);
                }
                j["inputs"] = inputs_json(cfg);
                j["hypotheses"] = hypothesis_json(prep.report);
                j["bound"] = bound_json(report);
            }
            cli_detail::emit(out, j);
            return 0;
        }

        if (cmd_solve->parsed()) {
            if (cfg.mode == "COROLLARY") {
                cli_detail::CorollaryInputs in = cli_detail::corollary_inputs_from_config(cfg);
                SolutionSet s = corollary_solve(in.p, in.q, in.f, opts);
                Json j;
                j["kind"] = "solution_set";
                j["inputs"] = cli_detail::corollary_inputs_json(in);
                j["bound"] = bound_json(s.bound);
                j["offsets"] = offsets_json(s.offsets);
                j["solutions"] = pairs_json(s.solutions);
                if (verify) {
                    Recurrence g({Term{RatFunc(Poly(Rational(1))), RatFunc(in.p)}});
                    Recurrence h({Term{RatFunc(Poly(Rational(1))), RatFunc(in.q)}});
                    j["verification"] = cli_detail::verify_fixed(
                        g, h, RatFunc(in.f), s,
                        cli_detail::verify_window(cfg, s.bound.enumeration_limit));
                }
                cli_detail::emit(out, j);
                return 0;
            }
            if (cfg.mode != "T1") {
                throw ConfigError("solve needs mode T1 or COROLLARY; use double-rep for " + cfg.mode);
            }
            Recurrence g = cfg.build_g();
            Recurrence h = cfg.build_h();
            RatFunc f = cfg.build_f();
            SolutionSet s = solve_fixed_f(g, h, f, cfg.genus, opts);
            Json j = solution_set_json(cfg, s);
            if (verify) {
                j["verification"] = cli_detail::verify_fixed(
                    g, h, f, s, cli_detail::verify_window(cfg, s.bound.enumeration_limit));
            }
            cli_detail::emit(out, j);
            return 0;
        }

        if (cmd_double->parsed()) {
            if (cfg.mode != "T2" && cfg.mode != "T3") {
                throw ConfigError("double-rep needs mode T2 or T3");
            }
            Recurrence g = cfg.build_g();
            Recurrence h = cfg.build_h();
            DoubleRepMode mode = cfg.mode == "T2" ? DoubleRepMode::T2 : DoubleRepMode::T3;
            DoubleRepSet s = solve_double_rep(g, h, mode, cfg.genus, opts);
            Json j = double_rep_json(cfg, s);
            if (verify) {
                PreparedPair prep =
                    mode == DoubleRepMode::T2 ? prepare_theorem2(g, h) : prepare_theorem3(g, h);
                j["verification"] = cli_detail::verify_double(prep.g, prep.h, s);
            }
            cli_detail::emit(out, j);
            return 0;
        }

        throw InternalError("no subcommand dispatched");
    } catch (const HypothesisViolation& e) {
        Json j;
        j["kind"] = "hypothesis_report";
        j["hypotheses"] = hypothesis_json(e.report());
        cli_detail::emit(out, j);
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace pillai
