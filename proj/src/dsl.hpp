// Line-oriented experiment description language: preparation, phase
// path, sweep request, and emit directives, compiled to an executable
// plan. Scripts use the .topo extension.
//
// Grammar (comments start with '#'; strings are double-quoted, no
// escapes; numbers allow 'pi' literals such as pi, 2pi, 0.5pi):
//
//   script     := stmt*
//   stmt       := prepare | path | sweep | emit
//   prepare    := "prepare" IDENT [ "(" arg { "," arg } ")" ]
//   arg        := IDENT "=" expr
//   path       := "path" "{" qubit_line { "," qubit_line } "}"
//   qubit_line := ("s" | "o" | "i") ":" segment { "," segment }
//   segment    := "ramp" "(" expr "," expr "," "to" "=" expr ")"
//   sweep      := "sweep" "t" "=" list "theta" "=" range
//   list       := "[" expr { "," expr } "]"
//   range      := "[" expr ":" expr ":" expr "]"   -- start : stop : count
//   emit       := "emit" ("fringes" | "invariants" | "phase") [ STRING ]
//   expr       := term { ("+" | "-") term }
//   term       := factor { "/" factor }
//   factor     := [ "-" ] atom
//   atom       := NUMBER | PI_LITERAL
//
// ramp(t0, t1, to=v) drives the component linearly from its current
// value to v over [t0, t1]; gaps are filled by holding the last value,
// so every component starts at 0 and covers [0, 1].

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "elements.hpp"
#include "paths.hpp"

namespace topo::dsl {

struct SetupScript {
    std::string text;
    std::string name = "<script>";
};

inline constexpr std::size_t kMaxScriptBytes = 64 * 1024;

// Symbolic numeric expression; literals keep their spelling so the
// formatter can reproduce them ("-pi" never becomes 3.14159...).
struct NumExpr {
    enum class Kind { Literal, PiLiteral, Neg, Add, Sub, Div };
    Kind kind = Kind::Literal;
    std::string lexeme;         // Literal "0.25"; PiLiteral "pi" or "2pi"
    std::vector<NumExpr> kids;

    double eval() const;
};

struct SourceLoc {
    int line = 1;
    int col = 1;
};

struct PrepareArg {
    std::string name;
    NumExpr value;
};

struct PrepareStmt {
    std::string target;
    std::vector<PrepareArg> args;
    SourceLoc loc;
};

struct Segment {
    NumExpr t0, t1, target;
    SourceLoc loc;
};

struct QubitLine {
    char qubit = 's'; // 's' | 'o' | 'i'
    std::vector<Segment> segments;
    SourceLoc loc;
};

struct PathStmt {
    std::vector<QubitLine> lines;
    SourceLoc loc;
};

struct SweepStmt {
    std::vector<NumExpr> t_values;
    NumExpr theta_start, theta_stop, theta_count;
    SourceLoc loc;
};

enum class EmitKind { Fringes, Invariants, Phase };

struct EmitStmt {
    EmitKind kind = EmitKind::Fringes;
    std::string dest; // empty: caller's default sink
    SourceLoc loc;
};

using Stmt = std::variant<PrepareStmt, PathStmt, SweepStmt, EmitStmt>;

struct Ast {
    std::vector<Stmt> stmts;
};

// Throws ScriptError (ParseError) with 1-based line/column, the
// offending token, and what was expected.
Ast parse(const SetupScript& script);

// Structural equality, ignoring source locations.
bool ast_equal(const Ast& a, const Ast& b);

// Canonical pretty-print; parse(format(ast)) is structurally equal to
// ast. Comments are dropped, statement order preserved.
std::string format(const Ast& ast);

struct SweepSpec {
    std::vector<double> t_values;
    double theta_start = 0.0;
    double theta_stop = 0.0;
    int theta_count = 0;

    std::vector<double> theta() const;
};

struct EmitSpec {
    EmitKind kind = EmitKind::Fringes;
    std::string dest;
};

struct ExperimentPlan {
    PreparationRecipe recipe;
    PhasePath path;
    SweepSpec sweep;
    std::vector<EmitSpec> outputs;
};

// Semantic analysis: exactly one prepare, one path with all three qubit
// lines, segments ordered and inside [0,1], recipe parameters valid.
// Throws ScriptError (SemanticError) with the statement's location.
ExperimentPlan compile(const Ast& ast);

struct PlanOutput {
    EmitKind kind = EmitKind::Fringes;
    std::string dest;
    std::string format; // "csv" or "json"
    std::string content;
};

std::vector<PlanOutput> run_plan(const ExperimentPlan& plan);

// One-expression convenience ("-pi/2" -> -1.5707...); used by CLI flags.
double parse_number(const std::string& text);

const char* emit_kind_name(EmitKind k);

} // namespace topo::dsl
