// Command-line front end. Talks to the simulator exclusively through
// the public C API (topophase.h).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "topophase.h"

namespace {

struct CliError {
    int code = 1;
    std::string message;
};

struct StringHandle {
    char* p = nullptr;
    ~StringHandle() { topo_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

struct StateHandle {
    topo_state* p = nullptr;
    ~StateHandle() { topo_state_free(p); }
};

struct PathHandle {
    topo_path* p = nullptr;
    ~PathHandle() { topo_path_free(p); }
};

struct PlanHandle {
    topo_plan* p = nullptr;
    ~PlanHandle() { topo_plan_free(p); }
};

void check_rc(topo_status rc, const std::string& what) {
    if (rc != TOPO_OK) throw CliError{1, what + ": " + topo_last_error()};
}

std::string fmt9(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    std::string s = buf;
    // Keep JSON number output recognizably floating point.
    if (s.find_first_of(".einf") == std::string::npos) s += ".0";
    return s;
}

double parse_num(const std::string& text) {
    double v = 0.0;
    check_rc(topo_parse_number(text.c_str(), &v), "invalid number '" + text + "'");
    return v;
}

// "RE,IM" or bare "RE" (imaginary part 0); both parts take pi literals.
void parse_complex(const std::string& text, double& re, double& im) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        re = parse_num(text);
        im = 0.0;
        return;
    }
    re = parse_num(text.substr(0, comma));
    im = parse_num(text.substr(comma + 1));
}

std::vector<double> parse_num_list(const std::string& text) {
    std::vector<double> values;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) values.push_back(parse_num(item));
    if (values.empty()) throw CliError{2, "expected at least one value in '" + text + "'"};
    return values;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw CliError{1, "cannot read file " + path};
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw CliError{1, "cannot write file " + path};
    f << content;
}

// Empty path: stdout.
void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(content.c_str(), stdout);
        if (content.empty() || content.back() != '\n') std::fputc('\n', stdout);
        return;
    }
    write_file(out_path, content);
}

struct StateFlags {
    std::string state;
    std::string alpha;
    std::string beta;
};

void add_state_flags(CLI::App* cmd, StateFlags& flags) {
    cmd->add_option("--state", flags.state, "State recipe: x|ghz|bghz|prod-x|prod-bghz")
        ->required();
    cmd->add_option("--alpha", flags.alpha, "Recipe coefficient alpha as RE[,IM] (bghz, prod-bghz)");
    cmd->add_option("--beta", flags.beta, "Recipe coefficient beta as RE[,IM] (bghz, prod-bghz)");
}

topo_state* make_state(const StateFlags& flags) {
    double are = 0.0, aim = 0.0, bre = 0.0, bim = 0.0;
    const bool biased = flags.state == "bghz" || flags.state == "prod-bghz" ||
                        flags.state == "prod_bghz";
    if (biased) {
        // Defaults: the worked example coefficients 1/2 and sqrt(3)/2.
        are = 0.5;
        bre = std::sqrt(3.0) / 2.0;
        if (!flags.alpha.empty()) parse_complex(flags.alpha, are, aim);
        if (!flags.beta.empty()) parse_complex(flags.beta, bre, bim);
    } else if (!flags.alpha.empty() || !flags.beta.empty()) {
        throw CliError{2, "--alpha/--beta only apply to bghz and prod-bghz"};
    }
    topo_state* s = nullptr;
    check_rc(topo_state_prepare(flags.state.c_str(), are, aim, bre, bim, &s),
             "cannot prepare state '" + flags.state + "'");
    return s;
}

topo_path* make_path(const std::string& spec) {
    topo_path* p = nullptr;
    if (!spec.empty() && spec[0] == '@') {
        const std::string text = read_file(spec.substr(1));
        check_rc(topo_path_from_json(text.c_str(), &p), "cannot load path " + spec.substr(1));
    } else {
        check_rc(topo_path_named(spec.c_str(), &p), "unknown path '" + spec + "'");
    }
    return p;
}

double env_tolerance() {
    const char* env = std::getenv("TOPOPHASE_TOL");
    if (!env || !*env) return 0.0; // library default
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || v <= 0.0) throw CliError{2, "TOPOPHASE_TOL must be a positive number"};
    return v;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Three-qubit topological-phase simulator"};
    app.require_subcommand(1);

    // prepare
    auto* prepare_cmd = app.add_subcommand("prepare", "Emit a prepared state as JSON");
    StateFlags prepare_flags;
    std::string prepare_out, prepare_format = "json";
    add_state_flags(prepare_cmd, prepare_flags);
    prepare_cmd->add_option("--format", prepare_format, "Output format (json)")
        ->check(CLI::IsMember({"json"}));
    prepare_cmd->add_option("--out", prepare_out, "Output file (default stdout)");

    // invariants
    auto* invariants_cmd =
        app.add_subcommand("invariants", "Emit tangle, purities, SLOCC class and phase spectrum");
    StateFlags invariants_flags;
    std::string invariants_out;
    add_state_flags(invariants_cmd, invariants_flags);
    invariants_cmd->add_option("--out", invariants_out, "Output file (default stdout)");

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "Visibility and Pancharatnam phase along a path");
    StateFlags evolve_flags;
    std::string evolve_path = "ux1", evolve_t = "0,0.25,0.5,0.75,1", evolve_out;
    add_state_flags(evolve_cmd, evolve_flags);
    evolve_cmd->add_option("--path", evolve_path, "Path: ux1|ux2|ubghz|@file.json");
    evolve_cmd->add_option("--t", evolve_t, "Normalized time(s), comma separated");
    evolve_cmd->add_option("--out", evolve_out, "Output file (default stdout)");

    // fringes
    auto* fringes_cmd = app.add_subcommand("fringes", "Coincidence curve at one instant");
    StateFlags fringes_flags;
    std::string fringes_path = "ux1", fringes_t = "1", fringes_format = "json", fringes_out;
    int fringes_points = 256;
    std::string fringes_c0 = "1";
    add_state_flags(fringes_cmd, fringes_flags);
    fringes_cmd->add_option("--path", fringes_path, "Path: ux1|ux2|ubghz|@file.json");
    fringes_cmd->add_option("--t", fringes_t, "Normalized time");
    fringes_cmd->add_option("--theta-points", fringes_points, "Grid points over [0, 2pi)")
        ->check(CLI::PositiveNumber);
    fringes_cmd->add_option("--c0", fringes_c0, "Coincidence offset C0");
    fringes_cmd->add_option("--format", fringes_format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    fringes_cmd->add_option("--out", fringes_out, "Output file (default stdout)");

    // figures
    auto* figures_cmd = app.add_subcommand("figures", "Write the three reference fringe datasets");
    std::string figures_dir = ".", figures_format = "csv";
    figures_cmd->add_option("--out", figures_dir, "Output directory (default .)");
    figures_cmd->add_option("--format", figures_format, "Dataset format")
        ->check(CLI::IsMember({"csv", "json"}));

    // run
    auto* run_cmd = app.add_subcommand("run", "Compile and execute a .topo script");
    std::string run_file, run_dir = ".";
    run_cmd->add_option("script", run_file, "Script file (.topo)")->required();
    run_cmd->add_option("--out-dir", run_dir, "Directory for emits with a destination");

    // fmt
    auto* fmt_cmd = app.add_subcommand("fmt", "Canonically format a .topo script");
    std::string fmt_file, fmt_out;
    fmt_cmd->add_option("script", fmt_file, "Script file (.topo)")->required();
    fmt_cmd->add_option("--out", fmt_out, "Output file (default stdout)");

    // check
    auto* check_cmd = app.add_subcommand("check", "Run the full verification matrix");
    std::string check_format = "table", check_out;
    check_cmd->add_option("--format", check_format, "Report format")
        ->check(CLI::IsMember({"table", "json"}));
    check_cmd->add_option("--out", check_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (app.got_subcommand(prepare_cmd)) {
        StateHandle s{make_state(prepare_flags)};
        StringHandle json;
        check_rc(topo_state_to_json(s.p, &json.p), "cannot serialize state");
        write_output(json.str(), prepare_out);
        return 0;
    }

    if (app.got_subcommand(invariants_cmd)) {
        StateHandle s{make_state(invariants_flags)};
        StringHandle json;
        check_rc(topo_invariants_json(s.p, &json.p), "cannot compute invariants");
        write_output(json.str(), invariants_out);
        return 0;
    }

    if (app.got_subcommand(evolve_cmd)) {
        StateHandle s{make_state(evolve_flags)};
        PathHandle p{make_path(evolve_path)};
        const std::vector<double> ts = parse_num_list(evolve_t);
        std::string out;
        if (ts.size() == 1) {
            double v = 0.0, phi = 0.0;
            int defined = 0;
            check_rc(topo_pancharatnam(s.p, p.p, ts[0], &v, &phi, &defined), "evolve failed");
            out = "{\"V\": " + fmt9(v) + ", \"Phi\": " + (defined ? fmt9(phi) : "null") + "}";
        } else {
            out = "{\"samples\": [";
            for (std::size_t j = 0; j < ts.size(); ++j) {
                double v = 0.0, phi = 0.0;
                int defined = 0;
                check_rc(topo_pancharatnam(s.p, p.p, ts[j], &v, &phi, &defined), "evolve failed");
                if (j) out += ", ";
                out += "{\"t\": " + fmt9(ts[j]) + ", \"V\": " + fmt9(v) + ", \"Phi\": " +
                       (defined ? fmt9(phi) : "null") + "}";
            }
            out += "]}";
        }
        write_output(out, evolve_out);
        return 0;
    }

    if (app.got_subcommand(fringes_cmd)) {
        StateHandle s{make_state(fringes_flags)};
        PathHandle p{make_path(fringes_path)};
        StringHandle data;
        check_rc(topo_fringe_curve(s.p, p.p, parse_num(fringes_t), fringes_points,
                                   parse_num(fringes_c0), fringes_format.c_str(), &data.p),
                 "cannot compute fringe curve");
        write_output(data.str(), fringes_out);
        return 0;
    }

    if (app.got_subcommand(figures_cmd)) {
        for (const char* figure : {"balgor3", "balgor4", "balgor5"}) {
            StringHandle data;
            check_rc(topo_figure_data(figure, figures_format.c_str(), &data.p),
                     std::string("cannot build dataset ") + figure);
            const std::string path =
                figures_dir + "/" + figure + "." + figures_format;
            write_file(path, data.str());
            std::printf("wrote %s\n", path.c_str());
        }
        return 0;
    }

    if (app.got_subcommand(run_cmd)) {
        const std::string text = read_file(run_file);
        PlanHandle plan;
        check_rc(topo_plan_compile(text.c_str(), run_file.c_str(), &plan.p), "cannot compile script");
        StringHandle outputs;
        check_rc(topo_plan_run(plan.p, &outputs.p), "cannot run script");
        const auto j = nlohmann::json::parse(outputs.str());
        for (const auto& item : j.at("outputs")) {
            const std::string content = item.at("content").get<std::string>();
            if (item.at("dest").is_null()) {
                std::fputs(content.c_str(), stdout);
                if (content.empty() || content.back() != '\n') std::fputc('\n', stdout);
            } else {
                const std::string path = run_dir + "/" + item.at("dest").get<std::string>();
                write_file(path, content);
                std::printf("wrote %s\n", path.c_str());
            }
        }
        return 0;
    }

    if (app.got_subcommand(fmt_cmd)) {
        const std::string text = read_file(fmt_file);
        StringHandle formatted;
        check_rc(topo_script_format(text.c_str(), fmt_file.c_str(), &formatted.p),
                 "cannot format script");
        write_output(formatted.str(), fmt_out);
        return 0;
    }

    if (app.got_subcommand(check_cmd)) {
        StringHandle report;
        const topo_status rc =
            topo_check_run(env_tolerance(), check_format.c_str(), &report.p);
        if (rc != TOPO_OK && rc != TOPO_ERR_CHECK_FAILED)
            throw CliError{1, std::string("cannot run checks: ") + topo_last_error()};
        write_output(report.str(), check_out);
        return rc == TOPO_OK ? 0 : 1;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const CliError& e) {
        std::fprintf(stderr, "topophase: error: %s\n", e.message.c_str());
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "topophase: error: %s\n", e.what());
        return 1;
    }
}
