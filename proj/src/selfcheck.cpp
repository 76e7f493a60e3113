#include "selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include <json.hpp>

#include "dsl.hpp"
#include "elements.hpp"
#include "fringes.hpp"
#include "invariants.hpp"
#include "paths.hpp"
#include "serialize.hpp"

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr const char* kUx1Script =
    "# Simultaneous ramps to -pi on all three qubits.\n"
    "prepare x\n"
    "path {\n"
    "  s: ramp(0, 1, to=-pi),\n"
    "  o: ramp(0, 1, to=-pi),\n"
    "  i: ramp(0, 1, to=-pi)\n"
    "}\n"
    "sweep t = [0, 0.25, 0.5, 0.75, 1] theta = [0:2pi:256]\n"
    "emit phase\n";

constexpr const char* kUx2Script =
    "# Sequential ramps: one qubit per third of the interval.\n"
    "prepare x\n"
    "path {\n"
    "  s: ramp(0, 1/3, to=-pi),\n"
    "  o: ramp(1/3, 2/3, to=-pi),\n"
    "  i: ramp(2/3, 1, to=-pi)\n"
    "}\n"
    "sweep t = [0, 0.25, 0.5, 0.75, 1] theta = [0:2pi:256]\n"
    "emit phase\n";

constexpr const char* kUbghzScript =
    "# Simultaneous ramps to 2pi/3; endpoint sum 2pi.\n"
    "prepare ghz\n"
    "path {\n"
    "  s: ramp(0, 1, to=2pi/3),\n"
    "  o: ramp(0, 1, to=2pi/3),\n"
    "  i: ramp(0, 1, to=2pi/3)\n"
    "}\n"
    "sweep t = [0, 0.25, 0.5, 0.75, 1] theta = [0:2pi:256]\n"
    "emit phase\n";

double circular_distance(double a, double b) {
    return std::fabs(std::remainder(a - b, 2.0 * kPi));
}

// Max entrywise deviation between two gates after stripping the global
// phase of the first relative to the second.
double gate_phase_deviation(const SingleQubitGate& a, const SingleQubitGate& b) {
    std::size_t imax = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        if (std::abs(b.m.a[i]) > best) {
            best = std::abs(b.m.a[i]);
            imax = i;
        }
    const Complex phase = a.m.a[imax] / b.m.a[imax];
    return a.m.max_abs_diff(b.m * phase);
}

struct Collector {
    std::vector<CheckRow> rows;

    void bounded(const std::string& name, double value, double threshold, std::string note = "") {
        rows.push_back(CheckRow{name, value, threshold,
                                value <= threshold ? CheckStatus::Pass : CheckStatus::Fail,
                                std::move(note)});
    }
    void recorded(const std::string& name, double value, std::string note) {
        rows.push_back(CheckRow{name, value, std::numeric_limits<double>::infinity(),
                                CheckStatus::Recorded, std::move(note)});
    }
};

} // namespace

int fuzz_parser(int n, unsigned seed) {
    std::mt19937 rng(seed);
    const std::string bases[3] = {kUx1Script, kUx2Script, kUbghzScript};
    int unexpected = 0;
    for (int iter = 0; iter < n; ++iter) {
        std::string s = bases[rng() % 3];
        const int edits = 1 + static_cast<int>(rng() % 8);
        for (int e = 0; e < edits; ++e) {
            if (s.empty()) {
                s.push_back(static_cast<char>(rng() & 0xff));
                continue;
            }
            const std::size_t pos = rng() % s.size();
            switch (rng() % 3) {
                case 0: s[pos] = static_cast<char>(rng() & 0xff); break;
                case 1: s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos),
                                 static_cast<char>(rng() & 0xff)); break;
                default: s.erase(s.begin() + static_cast<std::ptrdiff_t>(pos)); break;
            }
        }
        try {
            const dsl::Ast ast = dsl::parse(dsl::SetupScript{s, "<fuzz>"});
            (void)dsl::compile(ast);
        } catch (const ScriptError&) {
            // structured, carries line:col
        } catch (...) {
            ++unexpected;
        }
    }
    return unexpected;
}

CheckReport run_checks(double default_tol) {
    const auto started = std::chrono::steady_clock::now();
    Collector c;
    const double tol = default_tol;

    const ThreeQubitState x = prepare(make_recipe(RecipeKind::X));
    const ThreeQubitState ghz = prepare(make_recipe(RecipeKind::Ghz));
    const ThreeQubitState bghz = prepare(make_recipe(RecipeKind::Bghz, 0.5, std::sqrt(3.0) / 2.0));
    const ThreeQubitState prod = prepare(make_recipe(RecipeKind::ProdX));
    const ThreeQubitState prodb =
        prepare(make_recipe(RecipeKind::ProdBghz, 0.5, std::sqrt(3.0) / 2.0));
    const PhasePath ux1 = named_path(NamedPath::UX1);
    const PhasePath ux2 = named_path(NamedPath::UX2);
    const PhasePath ubghz = named_path(NamedPath::UBghz);

    // Endpoint phase and visibility for the simultaneous-ramp loop.
    {
        const PancharatnamSample end = pancharatnam(x, ux1, 1.0);
        c.bounded("x ux1 endpoint (V, Phi) = (1, pi/2)",
                  std::max(std::fabs(end.visibility - 1.0), circular_distance(*end.phase, kPi / 2)),
                  tol);
    }

    // Sequential-ramp loop: same endpoint, dark middle third.
    {
        const PancharatnamSample end = pancharatnam(x, ux2, 1.0);
        c.bounded("x ux2 endpoint (V, Phi) = (1, pi/2)",
                  std::max(std::fabs(end.visibility - 1.0), circular_distance(*end.phase, kPi / 2)),
                  tol);
        double vmax = 0.0;
        for (const double t : {0.35, 0.5, 0.65})
            vmax = std::max(vmax, pancharatnam(x, ux2, t).visibility);
        c.bounded("x ux2 visibility vanishes on the middle third", vmax, 1e-12);
    }

    // Visibility floor of the simultaneous ramp: min V = 0.5 at t = 0.5.
    {
        double vmin = std::numeric_limits<double>::infinity();
        double argmin = 0.0;
        for (int j = 0; j < 10000; ++j) {
            const double t = static_cast<double>(j) / 9999.0;
            const double v = pancharatnam(x, ux1, t).visibility;
            if (v < vmin) {
                vmin = v;
                argmin = t;
            }
        }
        c.bounded("x ux1 visibility floor value 0.5", std::fabs(vmin - 0.5), 1e-6);
        c.bounded("x ux1 visibility floor at t = 0.5", std::fabs(argmin - 0.5), 1e-3);
    }

    // Product-state contrasts.
    c.bounded("prod_x ux1 endpoint visibility is zero",
              pancharatnam(prod, ux1, 1.0).visibility, 1e-12);
    c.bounded("prod_bghz ubghz endpoint visibility stays below 1",
              pancharatnam(prodb, ubghz, 1.0).visibility, 1.0 - 1e-3);

    // GHZ-family pi shift.
    for (const auto& [name, state] : {std::pair<const char*, const ThreeQubitState*>{"ghz", &ghz},
                                      {"bghz", &bghz}}) {
        const SnappedPhase sp = topological_phase(*state, ubghz);
        c.bounded(std::string(name) + " ubghz topological phase pi",
                  std::max(circular_distance(sp.value, kPi), sp.residual), tol);
    }

    // Closed-form cross-validation.
    {
        const struct {
            FormulaId id;
            const ThreeQubitState* psi;
            const PhasePath* path;
        } cases[] = {
            {FormulaId::C0XGeneral, &x, &ux1},  {FormulaId::C1XUx1, &x, &ux1},
            {FormulaId::C2XUx2, &x, &ux2},      {FormulaId::CpProd, &prod, &ux1},
            {FormulaId::C31Ghz, &ghz, &ubghz},  {FormulaId::C3pProdBghz, &prodb, &ubghz},
        };
        for (const auto& k : cases) {
            const ValidationReport r = cross_validate(*k.psi, *k.path, k.id, {}, tol);
            c.bounded(std::string("formula ") + formula_name(k.id) + " matches simulation",
                      r.max_abs_dev, tol);
        }
        const ValidationReport r3 = cross_validate(bghz, ubghz, FormulaId::C3Bghz, {}, tol);
        c.bounded("formula C3_BGHZ with sin(theta) term negated", r3.sign_flip_dev, tol);
        c.recorded("formula C3_BGHZ as printed", r3.max_abs_dev,
                   "printed sin(theta) sign differs from simulation; sign-negated deviation " +
                       fmt9(r3.sign_flip_dev));
    }

    // Extra formula identity: the simultaneous-ramp curve is the general
    // X formula specialized to phi_s = phi_o = phi_i = -pi t.
    {
        double dev = 0.0;
        const auto thetas = theta_grid(128);
        for (int j = 0; j <= 32; ++j) {
            const double t = static_cast<double>(j) / 32.0;
            FormulaParams p;
            p.phi = {{-kPi * t, -kPi * t, -kPi * t}};
            for (const double th : thetas)
                dev = std::max(dev, std::fabs(closed_form(FormulaId::C1XUx1, {}, t, th) -
                                              closed_form(FormulaId::C0XGeneral, p, 0.0, th)));
        }
        c.bounded("formula C1_X_UX1 equals specialized C0_X_GENERAL", dev, 1e-12);
    }

    // Three-tangle values.
    {
        const auto w_amp = 1.0 / std::sqrt(3.0);
        std::array<Complex, 8> w{};
        w[1] = w_amp; // ++-
        w[2] = w_amp; // +-+
        w[4] = w_amp; // -++
        const ThreeQubitState wstate = ThreeQubitState::from_amplitudes(w, kAllCircular);
        c.bounded("three-tangle of ghz is 1", std::fabs(three_tangle(ghz) - 1.0), tol);
        c.bounded("three-tangle of x is 1", std::fabs(three_tangle(x) - 1.0), tol);
        c.bounded("three-tangle of bghz(1/2, sqrt3/2) is 0.75",
                  std::fabs(three_tangle(bghz) - 0.75), tol);
        c.bounded("three-tangle of prod_x is 0", three_tangle(prod), tol);
        c.bounded("three-tangle of W is 0", three_tangle(wstate), tol);
    }

    // Attainable phase spectra.
    {
        const auto spec_x = diagonal_phase_spectrum(x_class_family(0.5, 0.5, 0.5, 0.5));
        const auto spec_b = diagonal_phase_spectrum(bghz_family(0.5, std::sqrt(3.0) / 2.0));
        const double expected_x[4] = {0.0, kPi / 2, kPi, 3 * kPi / 2};
        const double expected_b[2] = {0.0, kPi};
        double dev = spec_x.size() == 4 && spec_b.size() == 2
                         ? 0.0
                         : std::numeric_limits<double>::infinity();
        if (dev == 0.0) {
            for (int j = 0; j < 4; ++j)
                dev = std::max(dev, std::fabs(spec_x[static_cast<std::size_t>(j)] - expected_x[j]));
            for (int j = 0; j < 2; ++j)
                dev = std::max(dev, std::fabs(spec_b[static_cast<std::size_t>(j)] - expected_b[j]));
        }
        c.bounded("phase spectra: x quadruple, bghz double", dev, tol);
    }

    // Preparation pipelines against the closed forms.
    for (const auto& [name, recipe] :
         {std::pair<const char*, PreparationRecipe>{"x", make_recipe(RecipeKind::X)},
          {"bghz", make_recipe(RecipeKind::Bghz, 0.5, std::sqrt(3.0) / 2.0)}}) {
        const ThreeQubitState built = pipeline_state(recipe);
        const ThreeQubitState target = closed_form_state(recipe);
        c.bounded(std::string("pipeline for ") + name + " matches its closed form",
                  1.0 - std::abs(overlap(built, target)), tol);
    }

    // Wave-pair calibration against the diagonal gate, 100 random draws.
    {
        std::mt19937 rng(20260808u);
        std::uniform_real_distribution<double> angle(-kPi, kPi);
        std::uniform_real_distribution<double> phase(-2.0 * kPi, 2.0 * kPi);
        double dev = 0.0;
        for (int j = 0; j < 100; ++j) {
            const double theta = angle(rng);
            const double phi = phase(rng);
            const WavePairKind kind = (j % 2 == 0) ? WavePairKind::DHWP : WavePairKind::DDP;
            const SingleQubitGate pair = wave_pair(kind, theta, calibrate_offset(phi));
            dev = std::max(dev, gate_phase_deviation(pair, diagonal_phase(phi)));
        }
        c.bounded("wave pair with calibrated offset realizes the diagonal gate", dev, tol);
    }

    // DSL conformance: the bundled loops compile to the named paths.
    {
        const struct {
            const char* name;
            const char* text;
            NamedPath id;
        } scripts[] = {{"ux1", kUx1Script, NamedPath::UX1},
                       {"ux2", kUx2Script, NamedPath::UX2},
                       {"ubghz", kUbghzScript, NamedPath::UBghz}};
        int mismatches = 0;
        for (const auto& s : scripts) {
            const dsl::ExperimentPlan plan = dsl::compile(dsl::parse({s.text, s.name}));
            if (!breakpoints_identical(plan.path, named_path(s.id))) ++mismatches;
        }
        c.bounded("bundled scripts compile to the named paths", mismatches, 0.0);
        c.bounded("parser fuzzing: unexpected failures in 10k inputs",
                  fuzz_parser(10000, 0xc0ffee), 0.0);
    }

    // Output determinism.
    c.bounded("figure dataset is deterministic",
              figure_csv(FigureId::Balgor4) == figure_csv(FigureId::Balgor4) ? 0.0 : 1.0, 0.0);

    CheckReport report;
    report.rows = std::move(c.rows);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report.rows.push_back(CheckRow{"full check runtime below 30 s", report.elapsed_seconds, 30.0,
                                   report.elapsed_seconds <= 30.0 ? CheckStatus::Pass
                                                                  : CheckStatus::Fail,
                                   ""});
    return report;
}

bool CheckReport::all_passed() const {
    for (const auto& row : rows)
        if (row.status == CheckStatus::Fail) return false;
    return true;
}

std::string check_table(const CheckReport& report) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-58s %-14s %-14s %s\n", "check", "value", "threshold",
                  "status");
    out += line;
    for (const auto& row : report.rows) {
        const char* status = row.status == CheckStatus::Pass     ? "PASS"
                             : row.status == CheckStatus::Fail   ? "FAIL"
                                                                 : "RECORDED";
        const std::string threshold =
            row.status == CheckStatus::Recorded ? "-" : fmt9(row.threshold);
        std::snprintf(line, sizeof line, "%-58s %-14s %-14s %s\n", row.name.c_str(),
                      fmt9(row.value).c_str(), threshold.c_str(), status);
        out += line;
        if (!row.note.empty()) {
            out += "    note: ";
            out += row.note;
            out += '\n';
        }
    }
    out += report.all_passed() ? "result: PASS\n" : "result: FAIL\n";
    return out;
}

std::string check_json(const CheckReport& report) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["name"] = row.name;
        r["value"] = round9(row.value);
        if (row.status != CheckStatus::Recorded) r["threshold"] = round9(row.threshold);
        r["status"] = row.status == CheckStatus::Pass     ? "pass"
                      : row.status == CheckStatus::Fail   ? "fail"
                                                          : "recorded";
        if (!row.note.empty()) r["note"] = row.note;
        rows.push_back(r);
    }
    nlohmann::ordered_json j;
    j["rows"] = rows;
    j["elapsed_seconds"] = round9(report.elapsed_seconds);
    j["all_passed"] = report.all_passed();
    return j.dump(2);
}

} // namespace topo
