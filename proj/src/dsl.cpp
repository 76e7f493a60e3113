#include "dsl.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "fringes.hpp"
#include "invariants.hpp"
#include "serialize.hpp"

namespace topo::dsl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Tok {
    Ident,
    Number,
    PiLit,
    String,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Equals,
    Plus,
    Minus,
    Slash,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

std::string token_desc(const Token& t) {
    switch (t.kind) {
        case Tok::Ident: return "identifier '" + t.text + "'";
        case Tok::Number: return "number '" + t.text + "'";
        case Tok::PiLit: return "pi literal '" + t.text + "'";
        case Tok::String: return "string \"" + t.text + "\"";
        case Tok::End: return "end of script";
        default: return "'" + t.text + "'";
    }
}

[[noreturn]] void lex_error(const std::string& name, int line, int col, const std::string& msg) {
    throw ScriptError(Errc::ParseError,
                      name + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": lexical error: " + msg,
                      line, col);
}

std::vector<Token> lex(const SetupScript& script) {
    if (script.text.size() > kMaxScriptBytes)
        lex_error(script.name, 1, 1,
                  "script exceeds " + std::to_string(kMaxScriptBytes) + " bytes");
    std::vector<Token> toks;
    int line = 1, col = 1;
    std::size_t i = 0;
    const std::string& s = script.text;

    const auto push = [&](Tok kind, std::string text, int l, int c) {
        toks.push_back(Token{kind, std::move(text), l, c});
    };

    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
            continue;
        }
        const int tl = line, tc = col;
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && s[j] == '.') {
                ++j;
                if (j >= s.size() || !std::isdigit(static_cast<unsigned char>(s[j])))
                    lex_error(script.name, tl, tc, "malformed number: expected digits after '.'");
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            std::size_t k = j;
            while (k < s.size() && (std::isalpha(static_cast<unsigned char>(s[k])) || s[k] == '_')) ++k;
            if (k > j) {
                const std::string suffix = s.substr(j, k - j);
                if (suffix != "pi")
                    lex_error(script.name, tl, tc, "malformed number: unexpected suffix '" + suffix + "'");
                push(Tok::PiLit, s.substr(i, k - i), tl, tc);
                col += static_cast<int>(k - i);
                i = k;
                continue;
            }
            push(Tok::Number, s.substr(i, j - i), tl, tc);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            const std::string word = s.substr(i, j - i);
            push(word == "pi" ? Tok::PiLit : Tok::Ident, word, tl, tc);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < s.size() && s[j] != '"' && s[j] != '\n') ++j;
            if (j >= s.size() || s[j] == '\n')
                lex_error(script.name, tl, tc, "unterminated string");
            push(Tok::String, s.substr(i + 1, j - i - 1), tl, tc);
            col += static_cast<int>(j + 1 - i);
            i = j + 1;
            continue;
        }
        Tok kind;
        switch (c) {
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '{': kind = Tok::LBrace; break;
            case '}': kind = Tok::RBrace; break;
            case '[': kind = Tok::LBracket; break;
            case ']': kind = Tok::RBracket; break;
            case ',': kind = Tok::Comma; break;
            case ':': kind = Tok::Colon; break;
            case '=': kind = Tok::Equals; break;
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '/': kind = Tok::Slash; break;
            default: {
                char buf[8];
                if (c >= 0x20 && c < 0x7f)
                    std::snprintf(buf, sizeof buf, "%c", c);
                else
                    std::snprintf(buf, sizeof buf, "\\x%02x", c);
                lex_error(script.name, tl, tc, std::string("unexpected character '") + buf + "'");
            }
        }
        push(kind, std::string(1, static_cast<char>(c)), tl, tc);
        ++col;
        ++i;
    }
    toks.push_back(Token{Tok::End, "", line, col});
    return toks;
}

class Parser {
public:
    Parser(std::vector<Token> toks, std::string name)
        : toks_(std::move(toks)), name_(std::move(name)) {}

    Ast parse_script() {
        Ast ast;
        while (peek().kind != Tok::End) {
            const Token& t = peek();
            if (t.kind != Tok::Ident)
                fail(t, "a statement ('prepare', 'path', 'sweep' or 'emit')");
            if (t.text == "prepare")
                ast.stmts.emplace_back(parse_prepare());
            else if (t.text == "path")
                ast.stmts.emplace_back(parse_path());
            else if (t.text == "sweep")
                ast.stmts.emplace_back(parse_sweep());
            else if (t.text == "emit")
                ast.stmts.emplace_back(parse_emit());
            else
                fail(t, "a statement ('prepare', 'path', 'sweep' or 'emit')");
        }
        return ast;
    }

    NumExpr parse_single_expr() {
        NumExpr e = parse_expr();
        if (peek().kind != Tok::End) fail(peek(), "end of expression");
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t j = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[j];
    }
    const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const Token& t, const std::string& expected) const {
        throw ScriptError(Errc::ParseError,
                          name_ + ":" + std::to_string(t.line) + ":" + std::to_string(t.col) +
                              ": syntax error: unexpected " + token_desc(t) + "; expected " +
                              expected,
                          t.line, t.col);
    }

    Token expect(Tok kind, const std::string& expected) {
        if (peek().kind != kind) fail(peek(), expected);
        return advance();
    }

    Token expect_keyword(const std::string& word) {
        if (peek().kind != Tok::Ident || peek().text != word) fail(peek(), "'" + word + "'");
        return advance();
    }

    bool at_qubit_line(std::size_t ahead) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Ident && (t.text == "s" || t.text == "o" || t.text == "i") &&
               peek(ahead + 1).kind == Tok::Colon;
    }

    NumExpr parse_expr() {
        NumExpr e = parse_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const bool add = advance().kind == Tok::Plus;
            NumExpr rhs = parse_term();
            NumExpr node;
            node.kind = add ? NumExpr::Kind::Add : NumExpr::Kind::Sub;
            node.kids = {std::move(e), std::move(rhs)};
            e = std::move(node);
        }
        return e;
    }

    NumExpr parse_term() {
        NumExpr e = parse_factor();
        while (peek().kind == Tok::Slash) {
            advance();
            NumExpr rhs = parse_factor();
            NumExpr node;
            node.kind = NumExpr::Kind::Div;
            node.kids = {std::move(e), std::move(rhs)};
            e = std::move(node);
        }
        return e;
    }

    NumExpr parse_factor() {
        if (peek().kind == Tok::Minus) {
            advance();
            NumExpr node;
            node.kind = NumExpr::Kind::Neg;
            node.kids = {parse_atom()};
            return node;
        }
        return parse_atom();
    }

    NumExpr parse_atom() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            advance();
            return NumExpr{NumExpr::Kind::Literal, t.text, {}};
        }
        if (t.kind == Tok::PiLit) {
            advance();
            return NumExpr{NumExpr::Kind::PiLiteral, t.text, {}};
        }
        fail(t, "a number or pi literal");
    }

    PrepareStmt parse_prepare() {
        const Token kw = expect_keyword("prepare");
        PrepareStmt stmt;
        stmt.loc = {kw.line, kw.col};
        stmt.target = expect(Tok::Ident, "a state name").text;
        if (peek().kind == Tok::LParen) {
            advance();
            for (;;) {
                PrepareArg arg;
                arg.name = expect(Tok::Ident, "an argument name").text;
                expect(Tok::Equals, "'='");
                arg.value = parse_expr();
                stmt.args.push_back(std::move(arg));
                if (peek().kind == Tok::Comma) {
                    advance();
                    continue;
                }
                expect(Tok::RParen, "',' or ')'");
                break;
            }
        }
        return stmt;
    }

    Segment parse_segment() {
        const Token kw = peek();
        if (kw.kind != Tok::Ident || kw.text != "ramp") fail(kw, "'ramp'");
        advance();
        Segment seg;
        seg.loc = {kw.line, kw.col};
        expect(Tok::LParen, "'('");
        seg.t0 = parse_expr();
        expect(Tok::Comma, "','");
        seg.t1 = parse_expr();
        expect(Tok::Comma, "','");
        expect_keyword("to");
        expect(Tok::Equals, "'='");
        seg.target = parse_expr();
        expect(Tok::RParen, "')'");
        return seg;
    }

    QubitLine parse_qubit_line() {
        const Token& t = peek();
        if (!at_qubit_line(0)) fail(t, "a qubit line ('s:', 'o:' or 'i:')");
        QubitLine line;
        line.qubit = t.text[0];
        line.loc = {t.line, t.col};
        advance();
        expect(Tok::Colon, "':'");
        line.segments.push_back(parse_segment());
        while (peek().kind == Tok::Comma && !at_qubit_line(1)) {
            advance();
            line.segments.push_back(parse_segment());
        }
        return line;
    }

    PathStmt parse_path() {
        const Token kw = expect_keyword("path");
        PathStmt stmt;
        stmt.loc = {kw.line, kw.col};
        expect(Tok::LBrace, "'{'");
        for (;;) {
            stmt.lines.push_back(parse_qubit_line());
            if (peek().kind == Tok::Comma && at_qubit_line(1)) {
                advance();
                continue;
            }
            expect(Tok::RBrace, "',' followed by a qubit line, or '}'");
            break;
        }
        return stmt;
    }

    SweepStmt parse_sweep() {
        const Token kw = expect_keyword("sweep");
        SweepStmt stmt;
        stmt.loc = {kw.line, kw.col};
        expect_keyword("t");
        expect(Tok::Equals, "'='");
        expect(Tok::LBracket, "'['");
        for (;;) {
            stmt.t_values.push_back(parse_expr());
            if (peek().kind == Tok::Comma) {
                advance();
                continue;
            }
            expect(Tok::RBracket, "',' or ']'");
            break;
        }
        expect_keyword("theta");
        expect(Tok::Equals, "'='");
        expect(Tok::LBracket, "'['");
        stmt.theta_start = parse_expr();
        expect(Tok::Colon, "':'");
        stmt.theta_stop = parse_expr();
        expect(Tok::Colon, "':'");
        stmt.theta_count = parse_expr();
        expect(Tok::RBracket, "']'");
        return stmt;
    }

    EmitStmt parse_emit() {
        const Token kw = expect_keyword("emit");
        EmitStmt stmt;
        stmt.loc = {kw.line, kw.col};
        const Token& kind = peek();
        if (kind.kind != Tok::Ident) fail(kind, "'fringes', 'invariants' or 'phase'");
        if (kind.text == "fringes")
            stmt.kind = EmitKind::Fringes;
        else if (kind.text == "invariants")
            stmt.kind = EmitKind::Invariants;
        else if (kind.text == "phase")
            stmt.kind = EmitKind::Phase;
        else
            fail(kind, "'fringes', 'invariants' or 'phase'");
        advance();
        if (peek().kind == Tok::String) stmt.dest = advance().text;
        return stmt;
    }

    std::vector<Token> toks_;
    std::string name_;
    std::size_t pos_ = 0;
};

} // namespace

double NumExpr::eval() const {
    switch (kind) {
        case Kind::Literal: return std::strtod(lexeme.c_str(), nullptr);
        case Kind::PiLiteral: {
            if (lexeme == "pi") return std::numbers::pi;
            const std::string coeff = lexeme.substr(0, lexeme.size() - 2);
            return std::strtod(coeff.c_str(), nullptr) * std::numbers::pi;
        }
        case Kind::Neg: return -kids[0].eval();
        case Kind::Add: return kids[0].eval() + kids[1].eval();
        case Kind::Sub: return kids[0].eval() - kids[1].eval();
        case Kind::Div: return kids[0].eval() / kids[1].eval();
    }
    return 0.0;
}

Ast parse(const SetupScript& script) {
    Parser parser(lex(script), script.name);
    return parser.parse_script();
}

double parse_number(const std::string& text) {
    try {
        Parser parser(lex(SetupScript{text, "<number>"}), "<number>");
        const double v = parser.parse_single_expr().eval();
        if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "number '" + text + "' is not finite");
        return v;
    } catch (const ScriptError& e) {
        throw Error(Errc::InvalidArgument, "invalid number '" + text + "': " + e.what());
    }
}

namespace {

bool expr_equal(const NumExpr& a, const NumExpr& b) {
    if (a.kind != b.kind || a.lexeme != b.lexeme || a.kids.size() != b.kids.size()) return false;
    for (std::size_t j = 0; j < a.kids.size(); ++j)
        if (!expr_equal(a.kids[j], b.kids[j])) return false;
    return true;
}

bool segment_equal(const Segment& a, const Segment& b) {
    return expr_equal(a.t0, b.t0) && expr_equal(a.t1, b.t1) && expr_equal(a.target, b.target);
}

struct StmtEqual {
    bool operator()(const PrepareStmt& a, const PrepareStmt& b) const {
        if (a.target != b.target || a.args.size() != b.args.size()) return false;
        for (std::size_t j = 0; j < a.args.size(); ++j)
            if (a.args[j].name != b.args[j].name || !expr_equal(a.args[j].value, b.args[j].value))
                return false;
        return true;
    }
    bool operator()(const PathStmt& a, const PathStmt& b) const {
        if (a.lines.size() != b.lines.size()) return false;
        for (std::size_t j = 0; j < a.lines.size(); ++j) {
            if (a.lines[j].qubit != b.lines[j].qubit ||
                a.lines[j].segments.size() != b.lines[j].segments.size())
                return false;
            for (std::size_t k = 0; k < a.lines[j].segments.size(); ++k)
                if (!segment_equal(a.lines[j].segments[k], b.lines[j].segments[k])) return false;
        }
        return true;
    }
    bool operator()(const SweepStmt& a, const SweepStmt& b) const {
        if (a.t_values.size() != b.t_values.size()) return false;
        for (std::size_t j = 0; j < a.t_values.size(); ++j)
            if (!expr_equal(a.t_values[j], b.t_values[j])) return false;
        return expr_equal(a.theta_start, b.theta_start) && expr_equal(a.theta_stop, b.theta_stop) &&
               expr_equal(a.theta_count, b.theta_count);
    }
    bool operator()(const EmitStmt& a, const EmitStmt& b) const {
        return a.kind == b.kind && a.dest == b.dest;
    }
    template <typename A, typename B>
    bool operator()(const A&, const B&) const {
        return false;
    }
};

} // namespace

bool ast_equal(const Ast& a, const Ast& b) {
    if (a.stmts.size() != b.stmts.size()) return false;
    for (std::size_t j = 0; j < a.stmts.size(); ++j)
        if (!std::visit(StmtEqual{}, a.stmts[j], b.stmts[j])) return false;
    return true;
}

namespace {

std::string print_expr(const NumExpr& e) {
    switch (e.kind) {
        case NumExpr::Kind::Literal:
        case NumExpr::Kind::PiLiteral: return e.lexeme;
        case NumExpr::Kind::Neg: return "-" + print_expr(e.kids[0]);
        case NumExpr::Kind::Add: return print_expr(e.kids[0]) + " + " + print_expr(e.kids[1]);
        case NumExpr::Kind::Sub: return print_expr(e.kids[0]) + " - " + print_expr(e.kids[1]);
        case NumExpr::Kind::Div: return print_expr(e.kids[0]) + "/" + print_expr(e.kids[1]);
    }
    return {};
}

std::string print_segment(const Segment& seg) {
    return "ramp(" + print_expr(seg.t0) + ", " + print_expr(seg.t1) + ", to=" +
           print_expr(seg.target) + ")";
}

struct StmtPrinter {
    std::string operator()(const PrepareStmt& s) const {
        std::string out = "prepare " + s.target;
        if (!s.args.empty()) {
            out += '(';
            for (std::size_t j = 0; j < s.args.size(); ++j) {
                if (j) out += ", ";
                out += s.args[j].name + "=" + print_expr(s.args[j].value);
            }
            out += ')';
        }
        return out;
    }
    std::string operator()(const PathStmt& s) const {
        std::string out = "path {\n";
        for (std::size_t j = 0; j < s.lines.size(); ++j) {
            out += "  ";
            out += s.lines[j].qubit;
            out += ": ";
            for (std::size_t k = 0; k < s.lines[j].segments.size(); ++k) {
                if (k) out += ", ";
                out += print_segment(s.lines[j].segments[k]);
            }
            if (j + 1 < s.lines.size()) out += ',';
            out += '\n';
        }
        out += "}";
        return out;
    }
    std::string operator()(const SweepStmt& s) const {
        std::string out = "sweep t = [";
        for (std::size_t j = 0; j < s.t_values.size(); ++j) {
            if (j) out += ", ";
            out += print_expr(s.t_values[j]);
        }
        out += "] theta = [" + print_expr(s.theta_start) + ":" + print_expr(s.theta_stop) + ":" +
               print_expr(s.theta_count) + "]";
        return out;
    }
    std::string operator()(const EmitStmt& s) const {
        std::string out = std::string("emit ") + emit_kind_name(s.kind);
        if (!s.dest.empty()) out += " \"" + s.dest + "\"";
        return out;
    }
};

[[noreturn]] void sem_error(const std::string& msg, SourceLoc loc) {
    throw ScriptError(Errc::SemanticError,
                      std::to_string(loc.line) + ":" + std::to_string(loc.col) +
                          ": semantic error: " + msg,
                      loc.line, loc.col);
}

double eval_checked(const NumExpr& e, const char* what, SourceLoc loc) {
    const double v = e.eval();
    if (!std::isfinite(v)) sem_error(std::string(what) + " evaluates to a non-finite value", loc);
    return v;
}

BreakpointList build_component(const QubitLine& line) {
    BreakpointList bps{{0.0, 0.0}};
    double cur_t = 0.0, cur_v = 0.0;
    for (const auto& seg : line.segments) {
        const double t0 = eval_checked(seg.t0, "segment start", seg.loc);
        const double t1 = eval_checked(seg.t1, "segment end", seg.loc);
        const double target = eval_checked(seg.target, "segment target", seg.loc);
        if (t0 < 0.0 || t1 > 1.0) sem_error("segment lies outside [0, 1]", seg.loc);
        if (!(t1 > t0)) sem_error("segment is empty or reversed", seg.loc);
        if (t0 < cur_t) sem_error("overlapping or unordered segments", seg.loc);
        if (t0 > cur_t) bps.push_back({t0, cur_v}); // hold at the last value
        bps.push_back({t1, target});
        cur_t = t1;
        cur_v = target;
    }
    if (cur_t < 1.0) bps.push_back({1.0, cur_v});
    return bps;
}

} // namespace

const char* emit_kind_name(EmitKind k) {
    switch (k) {
        case EmitKind::Fringes: return "fringes";
        case EmitKind::Invariants: return "invariants";
        default: return "phase";
    }
}

std::string format(const Ast& ast) {
    std::string out;
    for (const auto& stmt : ast.stmts) {
        out += std::visit(StmtPrinter{}, stmt);
        out += '\n';
    }
    return out;
}

std::vector<double> SweepSpec::theta() const {
    std::vector<double> grid(static_cast<std::size_t>(theta_count));
    const double step = (theta_stop - theta_start) / theta_count;
    for (int j = 0; j < theta_count; ++j) grid[static_cast<std::size_t>(j)] = theta_start + j * step;
    return grid;
}

ExperimentPlan compile(const Ast& ast) {
    const PrepareStmt* prep = nullptr;
    const PathStmt* path_stmt = nullptr;
    const SweepStmt* sweep_stmt = nullptr;
    std::vector<const EmitStmt*> emits;

    for (const auto& stmt : ast.stmts) {
        if (const auto* p = std::get_if<PrepareStmt>(&stmt)) {
            if (prep) sem_error("duplicate prepare statement", p->loc);
            prep = p;
        } else if (const auto* p2 = std::get_if<PathStmt>(&stmt)) {
            if (path_stmt) sem_error("duplicate path statement", p2->loc);
            path_stmt = p2;
        } else if (const auto* sw = std::get_if<SweepStmt>(&stmt)) {
            if (sweep_stmt) sem_error("duplicate sweep statement", sw->loc);
            sweep_stmt = sw;
        } else if (const auto* em = std::get_if<EmitStmt>(&stmt)) {
            emits.push_back(em);
        }
    }
    if (!prep) sem_error("missing prepare statement", {1, 1});
    if (!path_stmt) sem_error("missing path statement", {1, 1});

    // Recipe.
    RecipeKind kind = RecipeKind::X;
    try {
        kind = recipe_from_name(prep->target);
    } catch (const Error& e) {
        sem_error(e.what(), prep->loc);
    }
    const bool takes_args = kind == RecipeKind::Bghz || kind == RecipeKind::ProdBghz;
    Complex alpha{}, beta{};
    if (!takes_args) {
        if (!prep->args.empty())
            sem_error("recipe '" + prep->target + "' takes no arguments", prep->loc);
    } else {
        bool has_alpha = false, has_beta = false;
        for (const auto& arg : prep->args) {
            const double v = eval_checked(arg.value, "argument", prep->loc);
            if (arg.name == "alpha") {
                if (has_alpha) sem_error("duplicate argument 'alpha'", prep->loc);
                has_alpha = true;
                alpha = v;
            } else if (arg.name == "beta") {
                if (has_beta) sem_error("duplicate argument 'beta'", prep->loc);
                has_beta = true;
                beta = v;
            } else {
                sem_error("unknown argument '" + arg.name + "' for recipe '" + prep->target + "'",
                          prep->loc);
            }
        }
        if (!has_alpha || !has_beta)
            sem_error("recipe '" + prep->target + "' requires arguments alpha and beta", prep->loc);
    }
    PreparationRecipe recipe;
    try {
        recipe = make_recipe(kind, alpha, beta);
    } catch (const Error& e) {
        sem_error(e.what(), prep->loc);
    }

    // Path.
    const QubitLine* lines[3] = {nullptr, nullptr, nullptr};
    for (const auto& line : path_stmt->lines) {
        const int slot = line.qubit == 's' ? 0 : line.qubit == 'o' ? 1 : 2;
        if (lines[slot]) sem_error(std::string("duplicate qubit line '") + line.qubit + "'", line.loc);
        lines[slot] = &line;
    }
    const char* slot_names = "soi";
    for (int k = 0; k < 3; ++k)
        if (!lines[k])
            sem_error(std::string("missing qubit line '") + slot_names[k] + "'", path_stmt->loc);

    BreakpointList s_bps = build_component(*lines[0]);
    BreakpointList o_bps = build_component(*lines[1]);
    BreakpointList i_bps = build_component(*lines[2]);
    ExperimentPlan plan{recipe, PhasePath(std::move(s_bps), std::move(o_bps), std::move(i_bps)),
                        {}, {}};

    // Sweep (defaults: the five highlighted instants, 256-point theta grid).
    if (sweep_stmt) {
        for (const auto& tv : sweep_stmt->t_values) {
            const double v = eval_checked(tv, "sweep t value", sweep_stmt->loc);
            if (v < 0.0 || v > 1.0) sem_error("sweep t value outside [0, 1]", sweep_stmt->loc);
            plan.sweep.t_values.push_back(v);
        }
        plan.sweep.theta_start = eval_checked(sweep_stmt->theta_start, "theta start", sweep_stmt->loc);
        plan.sweep.theta_stop = eval_checked(sweep_stmt->theta_stop, "theta stop", sweep_stmt->loc);
        if (!(plan.sweep.theta_stop > plan.sweep.theta_start))
            sem_error("theta range must have stop > start", sweep_stmt->loc);
        const double count = eval_checked(sweep_stmt->theta_count, "theta count", sweep_stmt->loc);
        const double rounded = std::round(count);
        if (std::fabs(count - rounded) > 1e-9 || rounded < 2.0 || rounded > 65536.0)
            sem_error("theta count must be an integer in [2, 65536]", sweep_stmt->loc);
        plan.sweep.theta_count = static_cast<int>(rounded);
    } else {
        plan.sweep.t_values = {0.0, 0.25, 0.5, 0.75, 1.0};
        plan.sweep.theta_start = 0.0;
        plan.sweep.theta_stop = kTwoPi;
        plan.sweep.theta_count = 256;
    }

    for (const auto* em : emits) plan.outputs.push_back(EmitSpec{em->kind, em->dest});
    return plan;
}

std::vector<PlanOutput> run_plan(const ExperimentPlan& plan) {
    const ThreeQubitState psi = prepare(plan.recipe);
    const std::vector<double> theta = plan.sweep.theta();

    std::vector<PlanOutput> outputs;
    for (const auto& emit : plan.outputs) {
        PlanOutput out;
        out.kind = emit.kind;
        out.dest = emit.dest;
        switch (emit.kind) {
            case EmitKind::Fringes: {
                out.format = "csv";
                std::string csv = "theta";
                for (const double t : plan.sweep.t_values) csv += ",t/T=" + fmt9(t);
                csv += '\n';
                std::vector<FringeCurve> curves;
                for (const double t : plan.sweep.t_values)
                    curves.push_back(coincidence_curve(psi, plan.path, t, theta, 1.0));
                char buf[48];
                for (std::size_t row = 0; row < theta.size(); ++row) {
                    std::snprintf(buf, sizeof buf, "%.9f", theta[row]);
                    csv += buf;
                    for (const auto& curve : curves) {
                        csv += ',';
                        csv += fmt9(curve.samples[row]);
                    }
                    csv += '\n';
                }
                out.content = std::move(csv);
                break;
            }
            case EmitKind::Invariants: {
                out.format = "json";
                std::optional<FamilySpec> family;
                switch (plan.recipe.kind) {
                    case RecipeKind::X: family = x_class_family(0.5, 0.5, 0.5, 0.5); break;
                    case RecipeKind::Ghz: family = ghz_family(); break;
                    case RecipeKind::Bghz:
                        family = bghz_family(plan.recipe.alpha, plan.recipe.beta);
                        break;
                    case RecipeKind::ProdX:
                    case RecipeKind::ProdBghz: family = product_family(); break;
                }
                out.content = invariants_to_json(psi, family);
                break;
            }
            case EmitKind::Phase: {
                out.format = "json";
                const PancharatnamSample end = pancharatnam(psi, plan.path, 1.0);
                const bool cyclic = is_cyclic(psi, plan.path, 1e-9);
                std::optional<SnappedPhase> snapped;
                if (cyclic) snapped = topological_phase(psi, plan.path);
                out.content = phase_report_to_json(end, cyclic, snapped);
                break;
            }
        }
        outputs.push_back(std::move(out));
    }
    return outputs;
}

} // namespace topo::dsl
