#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "pillai/cli.hpp"
#include "testutil.hpp"

using namespace pillai;
using testutil::rf;
using testutil::thrown_kind;

namespace {

std::string src_path(const std::string& rel) {
    return std::string(PILLAI_SOURCE_DIR) + "/" + rel;
}

std::pair<int, std::string> run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string write_temp_config(const std::string& name, const std::string& body) {
    std::string path = "/tmp/pillai_test_" + name + ".cfg";
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("expression grammar") {
    CHECK(parse_expression("x^2 - x - 1") == RatFunc(testutil::pl("x^2 - x - 1")));
    CHECK(parse_expression("(x^2-1)/(x-1)") == rf("x + 1"));
    CHECK(parse_expression("3/2*x") == RatFunc::constant(Rational(3, 2)) * rf("x"));
    CHECK(parse_expression("-x^2 + 1") == rf("1 - x^2"));
    CHECK(parse_expression("x^-1") == rf("1/x"));

    try {
        parse_expression("x^^2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
    CHECK_THROWS_AS(parse_expression("x + "), ParseError);
    CHECK_THROWS_AS(parse_expression("(x"), ParseError);
    CHECK_THROWS_AS(parse_expression("x y"), ParseError);

    CHECK(thrown_kind([] { parse_expression("1/(x - x)"); }) ==
          ErrorKind::DivisionByZeroInExpression);
    CHECK(thrown_kind([] { parse_expression("(x - x)^-2"); }) ==
          ErrorKind::DivisionByZeroInExpression);
}

TEST_CASE("printed canonical forms parse back to themselves") {
    std::mt19937_64 rng(701);
    for (int i = 0; i < 200; ++i) {
        RatFunc f = testutil::random_ratfunc(rng, 6, 30);
        CHECK(parse_expression(f.str()) == f);
    }
    CHECK(parse_expression(RatFunc().str()) == RatFunc());
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(ProblemConfig::load("/nonexistent/path.cfg"), ConfigError);

    std::string missing_f = write_temp_config(
        "missing_f", R"({"mode": "T1", "G": [{"a": "1", "alpha": "x"}], "H": [{"a": "1", "alpha": "x+1"}]})");
    CHECK_THROWS_AS(ProblemConfig::load(missing_f), ConfigError);

    std::string stray_f = write_temp_config(
        "stray_f",
        R"({"mode": "T2", "f": "x", "G": [{"a": "1", "alpha": "x"}], "H": [{"a": "1", "alpha": "x+1"}]})");
    CHECK_THROWS_AS(ProblemConfig::load(stray_f), ConfigError);

    std::string bad_mode = write_temp_config(
        "bad_mode", R"({"mode": "T9", "G": [{"a": "1", "alpha": "x"}], "H": [{"a": "1", "alpha": "x"}]})");
    CHECK_THROWS_AS(ProblemConfig::load(bad_mode), ConfigError);

    std::string bad_expr = write_temp_config(
        "bad_expr",
        R"({"mode": "T2", "G": [{"a": "1", "alpha": "x^^2"}], "H": [{"a": "1", "alpha": "x"}]})");
    CHECK_THROWS_AS(ProblemConfig::load(bad_expr), ConfigError);

    std::string good = write_temp_config(
        "good",
        R"({"mode": "T1", "f": "x^2-x-1", "G": [{"a": "1", "alpha": "x"}], "H": [{"a": "1", "alpha": "x+1"}]})");
    ProblemConfig cfg = ProblemConfig::load(good);
    CHECK(cfg.mode == "T1");
    CHECK(cfg.window_multiplier == Rational(3));
    CHECK(cfg.build_f() == rf("x^2 - x - 1"));
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli({"solve", "-c", "/nonexistent.cfg"}).first == 3);
    CHECK(run_cli({"height", "x^^2"}).first == 3);
    CHECK(run_cli({"height", "x^2"}).first == 0);
    CHECK(run_cli({"nonsense"}).first == 3);

    auto [inf_code, inf_out] = run_cli({"height", "0"});
    CHECK(inf_code == 0);
    CHECK(inf_out.find("\"inf\"") != std::string::npos);

    std::string dependent = write_temp_config(
        "dependent",
        R"({"mode": "T2", "G": [{"a": "1", "alpha": "x"}], "H": [{"a": "1", "alpha": "x^2"}]})");
    auto [code, out] = run_cli({"double-rep", "-c", dependent});
    CHECK(code == 2);
    CHECK(out.find("hypothesis_report") != std::string::npos);
    CHECK(out.find("multiplicatively dependent") != std::string::npos);

    std::string wrong_cmd = write_temp_config(
        "wrong_cmd",
        R"({"mode": "T2", "G": [{"a": "1", "alpha": "x"}], "H": [{"a": "1", "alpha": "x+1"}]})");
    CHECK(run_cli({"solve", "-c", wrong_cmd}).first == 3);

    std::string corollary_rational = write_temp_config(
        "cor_rat",
        R"({"mode": "COROLLARY", "f": "x", "G": [{"a": "1", "alpha": "1/x"}], "H": [{"a": "1", "alpha": "x"}]})");
    CHECK(run_cli({"solve", "-c", corollary_rational}).first == 3);
}

TEST_CASE("check subcommand reports hypothesis state") {
    std::string passing = write_temp_config(
        "check_pass",
        R"({"mode": "T2", "G": [{"a": "1", "alpha": "x"}], "H": [{"a": "1", "alpha": "x+1"}]})");
    auto [code, out] = run_cli({"check", "-c", passing});
    CHECK(code == 0);
    CHECK(out.find("\"passed\": true") != std::string::npos);

    std::string failing = write_temp_config(
        "check_fail",
        R"({"mode": "T1", "f": "x", "G": [{"a": "1", "alpha": "x"}, {"a": "1", "alpha": "2*x"}], "H": [{"a": "1", "alpha": "x+1"}]})");
    auto [code2, out2] = run_cli({"check", "-c", failing});
    CHECK(code2 == 2);
    CHECK(out2.find("ratio alpha_1/alpha_2 in C") != std::string::npos);
}

TEST_CASE("reports are byte-stable and match the golden files") {
    std::string config = src_path("configs/pillai_example.cfg");

    auto solve_one = run_cli({"solve", "-c", config});
    auto solve_two = run_cli({"solve", "-c", config});
    auto solve_threaded = run_cli({"solve", "-c", config, "--threads", "4"});
    REQUIRE(solve_one.first == 0);
    CHECK(solve_one.second == solve_two.second);
    CHECK(solve_one.second == solve_threaded.second);
    CHECK(solve_one.second == slurp(src_path("tests/golden/solve_example.json")));

    auto height_one = run_cli({"height", "x^2/(x+1)"});
    auto height_two = run_cli({"height", "x^2/(x+1)"});
    REQUIRE(height_one.first == 0);
    CHECK(height_one.second == height_two.second);
    CHECK(height_one.second == slurp(src_path("tests/golden/height_example.json")));

    auto indep_one = run_cli({"indep", "x^2", "x^3"});
    auto indep_two = run_cli({"indep", "x^2", "x^3"});
    REQUIRE(indep_one.first == 0);
    CHECK(indep_one.second == indep_two.second);
    CHECK(indep_one.second == slurp(src_path("tests/golden/indep_example.json")));
}

TEST_CASE("reports reproduce from their own recorded inputs") {
    std::string config = src_path("configs/pillai_example.cfg");
    auto [code, report_text] = run_cli({"solve", "-c", config});
    REQUIRE(code == 0);

    auto report = nlohmann::json::parse(report_text);
    nlohmann::ordered_json echoed;
    echoed["mode"] = report["inputs"]["mode"];
    echoed["genus"] = report["inputs"]["genus"];
    echoed["f"] = report["inputs"]["f"];
    echoed["G"] = report["inputs"]["G"];
    echoed["H"] = report["inputs"]["H"];
    std::string rerun_path = "/tmp/pillai_test_rerun.cfg";
    {
        std::ofstream out(rerun_path);
        out << echoed.dump(2);
    }
    auto [code2, report_text2] = run_cli({"solve", "-c", rerun_path});
    CHECK(code2 == 0);
    CHECK(report_text2 == report_text);
}

TEST_CASE("verification flag cross-checks the enumeration") {
    std::string config = src_path("configs/pillai_example.cfg");
    auto [code, out] = run_cli({"solve", "-c", config, "--verify"});
    CHECK(code == 0);
    CHECK(out.find("\"oracle_matches\": true") != std::string::npos);

    std::string planted = write_temp_config(
        "planted",
        R"({"mode": "T2", "G": [{"a": "x+1", "alpha": "x"}], "H": [{"a": "x-1", "alpha": "x+1"}]})");
    auto [code2, out2] = run_cli({"double-rep", "-c", planted, "--verify"});
    CHECK(code2 == 0);
    CHECK(out2.find("\"exact_rescan_matches\": true") != std::string::npos);
}
