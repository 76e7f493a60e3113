#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dsl.hpp"
#include "helpers.hpp"
#include "selfcheck.hpp"

using namespace topo;
using namespace testutil;
namespace dsl = topo::dsl;

namespace {

std::string read_script(const char* name) {
    std::ifstream f(std::string(TOPOPHASE_SCRIPTS_DIR) + "/" + name, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

dsl::Ast parse_text(const std::string& text) { return dsl::parse({text, "<test>"}); }

} // namespace

TEST_CASE("a minimal script parses into three statements") {
    const dsl::Ast ast = parse_text(
        "prepare x\n"
        "path { s: ramp(0,1,to=-pi), o: ramp(0,1,to=-pi), i: ramp(0,1,to=-pi) }\n"
        "emit phase\n");
    REQUIRE(ast.stmts.size() == 3);
    CHECK(std::holds_alternative<dsl::PrepareStmt>(ast.stmts[0]));
    CHECK(std::holds_alternative<dsl::PathStmt>(ast.stmts[1]));
    CHECK(std::holds_alternative<dsl::EmitStmt>(ast.stmts[2]));
    const auto& path = std::get<dsl::PathStmt>(ast.stmts[1]);
    REQUIRE(path.lines.size() == 3);
    CHECK(path.lines[0].qubit == 's');
    CHECK(path.lines[2].qubit == 'i');
}

TEST_CASE("prepare arguments are parsed as named expressions") {
    const dsl::Ast ast = parse_text("prepare bghz(alpha=0.5, beta=0.8660254)");
    const auto& prep = std::get<dsl::PrepareStmt>(ast.stmts[0]);
    CHECK(prep.target == "bghz");
    REQUIRE(prep.args.size() == 2);
    CHECK(prep.args[0].name == "alpha");
    CHECK(prep.args[0].value.eval() == 0.5);
    CHECK(prep.args[1].name == "beta");
    CHECK(std::fabs(prep.args[1].value.eval() - 0.8660254) < 1e-15);
}

TEST_CASE("syntax errors carry position, token and expectation") {
    try {
        parse_text("path { s: raamp(0,1,to=0) }");
        FAIL("expected a parse error");
    } catch (const ScriptError& e) {
        CHECK(e.code() == Errc::ParseError);
        CHECK(e.line() == 1);
        CHECK(e.col() == 11);
        CHECK(std::string(e.what()).find("raamp") != std::string::npos);
        CHECK(std::string(e.what()).find("ramp") != std::string::npos);
    }
}

TEST_CASE("lexical errors carry position") {
    try {
        parse_text("prepare x\npath @");
        FAIL("expected a lexical error");
    } catch (const ScriptError& e) {
        CHECK(e.line() == 2);
        CHECK(e.col() == 6);
        CHECK(std::string(e.what()).find("lexical") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_text("prepare x # fine\n\"unterminated"), ScriptError);
    CHECK_THROWS_AS(parse_text("prepare 1.x"), ScriptError);
    CHECK_THROWS_AS(parse_text("prepare 2pix"), ScriptError);
    CHECK_THROWS_AS(parse_text(std::string(70000, 'a')), ScriptError);
}

TEST_CASE("pi literal arithmetic") {
    CHECK(dsl::parse_number("pi") == kPi);
    CHECK(dsl::parse_number("-pi/2") == -kPi / 2.0);
    CHECK(dsl::parse_number("2pi/3") == 2.0 * kPi / 3.0);
    CHECK(dsl::parse_number("0.5pi") == 0.5 * kPi);
    CHECK(dsl::parse_number("1/4") == 0.25);
    CHECK(dsl::parse_number("1 + 1/2") == 1.5);
    CHECK(dsl::parse_number("1 - 2") == -1.0);
    CHECK_THROWS_AS(dsl::parse_number("pi pi"), Error);
    CHECK_THROWS_AS(dsl::parse_number("2*pi"), Error);
    CHECK_THROWS_AS(dsl::parse_number("1/0"), Error);
}

TEST_CASE("bundled scripts compile to the named paths exactly") {
    const struct {
        const char* file;
        NamedPath id;
    } cases[] = {{"ux1.topo", NamedPath::UX1},
                 {"ux2.topo", NamedPath::UX2},
                 {"ubghz.topo", NamedPath::UBghz}};
    for (const auto& c : cases) {
        const dsl::ExperimentPlan plan = dsl::compile(parse_text(read_script(c.file)));
        CHECK(breakpoints_identical(plan.path, named_path(c.id)));
    }
}

TEST_CASE("gap filling holds the last value") {
    const dsl::ExperimentPlan plan = dsl::compile(parse_text(
        "prepare x\n"
        "path { s: ramp(0.25, 0.5, to=1), o: ramp(0, 1, to=0), i: ramp(0, 1, to=0) }\n"));
    const auto& bps = plan.path.s();
    REQUIRE(bps.size() == 4);
    CHECK(bps[0].t == 0.0);
    CHECK(bps[1].t == 0.25);
    CHECK(bps[1].value == 0.0);
    CHECK(bps[2].t == 0.5);
    CHECK(bps[2].value == 1.0);
    CHECK(bps[3].t == 1.0);
    CHECK(bps[3].value == 1.0);
}

TEST_CASE("semantic errors name the failing construct") {
    const auto expect_semantic = [](const std::string& script, const char* needle) {
        try {
            dsl::compile(parse_text(script));
            FAIL_CHECK("expected a semantic error for: " << script);
        } catch (const ScriptError& e) {
            CHECK(e.code() == Errc::SemanticError);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    const std::string path_block =
        "path { s: ramp(0,1,to=0), o: ramp(0,1,to=0), i: ramp(0,1,to=0) }\n";

    expect_semantic("path { s: ramp(0,1,to=0), o: ramp(0,1,to=0), i: ramp(0,1,to=0) }",
                    "missing prepare");
    expect_semantic("prepare x", "missing path");
    expect_semantic("prepare x\nprepare ghz\n" + path_block, "duplicate prepare");
    expect_semantic("prepare x\npath { s: ramp(0,1,to=0), o: ramp(0,1,to=0) }", "missing qubit line 'i'");
    expect_semantic("prepare x\npath { s: ramp(0,1,to=0), s: ramp(0,1,to=0), i: ramp(0,1,to=0) }",
                    "duplicate qubit line 's'");
    expect_semantic("prepare bghz(alpha=1, beta=1)\n" + path_block, "normalization violated");
    expect_semantic("prepare nope\n" + path_block, "unknown state recipe");
    expect_semantic("prepare x(alpha=1)\n" + path_block, "takes no arguments");
    expect_semantic("prepare bghz(alpha=0.5)\n" + path_block, "requires arguments alpha and beta");
    expect_semantic("prepare bghz(alpha=0.5, gamma=1)\n" + path_block, "unknown argument");
    expect_semantic(
        "prepare x\npath { s: ramp(0,0.6,to=1), ramp(0.5,1,to=0), o: ramp(0,1,to=0), i: ramp(0,1,to=0) }",
        "overlapping");
    expect_semantic(
        "prepare x\npath { s: ramp(0,1.5,to=1), o: ramp(0,1,to=0), i: ramp(0,1,to=0) }",
        "outside [0, 1]");
    expect_semantic("prepare x\n" + path_block + "sweep t = [2] theta = [0:2pi:8]",
                    "sweep t value outside");
    expect_semantic("prepare x\n" + path_block + "sweep t = [0] theta = [0:2pi:2.5]",
                    "theta count");
    expect_semantic("prepare x\n" + path_block + "sweep t = [0] theta = [1:0:8]",
                    "stop > start");
    expect_semantic("prepare bghz(alpha=1/0, beta=1)\n" + path_block, "non-finite");
}

TEST_CASE("formatting is canonical and preserves symbolic numbers") {
    const std::string script =
        "# leading comment\n"
        "prepare x # trailing comment\n"
        "path { s: ramp(0,1,to=-pi), o: ramp(0, 1, to=-pi), i: ramp(0,1,to=2pi/3) }\n"
        "sweep t = [0, 0.5, 1] theta = [0:2pi:64]\n"
        "emit fringes \"out.csv\"\n"
        "emit phase\n";
    const dsl::Ast ast = parse_text(script);
    const std::string formatted = dsl::format(ast);
    CHECK(formatted.find("-pi") != std::string::npos);
    CHECK(formatted.find("2pi/3") != std::string::npos);
    CHECK(formatted.find("3.14159") == std::string::npos);
    CHECK(formatted.find('#') == std::string::npos);
    CHECK(formatted.find("emit fringes \"out.csv\"") != std::string::npos);
    CHECK(dsl::ast_equal(parse_text(formatted), ast));
    // Canonical output is a fixed point of format(parse(.)).
    CHECK(dsl::format(parse_text(formatted)) == formatted);
}

TEST_CASE("round trip holds across a generated corpus") {
    std::mt19937 rng(51);
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const char* recipes[] = {"x", "ghz", "prod_x", "bghz(alpha=0.5, beta=0.8660254)",
                             "prod_bghz(alpha=0.6, beta=0.8)"};
    const char* numbers[] = {"-pi", "pi/2", "2pi/3", "-pi/4", "0.75", "1/3", "0.5pi"};

    for (int trial = 0; trial < 50; ++trial) {
        std::ostringstream script;
        script << "# corpus case " << trial << "\n";
        script << "prepare " << recipes[pick(rng)] << "\n";
        script << "path {\n";
        const char* qubits = "soi";
        for (int q = 0; q < 3; ++q) {
            script << "  " << qubits[q] << ": ";
            const int segments = 1 + pick(rng) % 2;
            double t = 0.0;
            for (int s = 0; s < segments; ++s) {
                const double t1 = t + (1.0 - t) * (0.3 + 0.5 * unit(rng));
                if (s) script << ", ";
                script << "ramp(" << t << ", " << t1 << ", to=" << numbers[pick(rng)] << ")";
                t = t1;
            }
            script << (q < 2 ? ",\n" : "\n");
        }
        script << "}\n";
        if (trial % 2) script << "sweep t = [0, 0.5, 1] theta = [0:2pi:32]\n";
        script << "emit " << (trial % 3 == 0 ? "phase" : trial % 3 == 1 ? "invariants" : "fringes")
               << "\n";

        const dsl::Ast first = parse_text(script.str());
        const dsl::Ast second = parse_text(dsl::format(first));
        CHECK(dsl::ast_equal(first, second));
        CHECK(dsl::format(second) == dsl::format(first));
    }
}

TEST_CASE("parser fuzzing never crashes") {
    CHECK(fuzz_parser(10000, 0xfeedbeef) == 0);
}

TEST_CASE("compiled plans execute every emit kind") {
    const dsl::ExperimentPlan plan = dsl::compile(parse_text(
        "prepare x\n"
        "path { s: ramp(0,1,to=-pi), o: ramp(0,1,to=-pi), i: ramp(0,1,to=-pi) }\n"
        "sweep t = [0, 1] theta = [0:2pi:16]\n"
        "emit phase\n"
        "emit invariants\n"
        "emit fringes \"fringes.csv\"\n"));
    const auto outputs = dsl::run_plan(plan);
    REQUIRE(outputs.size() == 3);

    CHECK(outputs[0].format == "json");
    CHECK(outputs[0].content.find("\"topological_phase\":1.57079633") != std::string::npos);
    CHECK(outputs[1].content.find("\"tangle\":1.0") != std::string::npos);
    CHECK(outputs[2].dest == "fringes.csv");
    const auto lines = std::count(outputs[2].content.begin(), outputs[2].content.end(), '\n');
    CHECK(lines == 17); // header + 16 grid rows
    CHECK(outputs[2].content.rfind("theta,t/T=0,t/T=1", 0) == 0);
}

TEST_CASE("default sweep is applied when the statement is missing") {
    const dsl::ExperimentPlan plan = dsl::compile(parse_text(
        "prepare x\npath { s: ramp(0,1,to=0), o: ramp(0,1,to=0), i: ramp(0,1,to=0) }"));
    CHECK(plan.sweep.t_values == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(plan.sweep.theta_count == 256);
    CHECK(plan.sweep.theta().size() == 256);
    CHECK(plan.outputs.empty());
}
