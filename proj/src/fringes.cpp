#include "fringes.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "elements.hpp"

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHighlighted[5] = {0.0, 0.25, 0.5, 0.75, 1.0};

double heaviside(double x) { return x > 0.0 ? 1.0 : 0.0; }

std::string fmt_theta(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    return buf;
}

std::string fmt_value(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string fmt_t_label(double t) {
    if (t == 0.0) return "0";
    if (t == 0.25) return "0.25";
    if (t == 0.5) return "0.5";
    if (t == 0.75) return "0.75";
    if (t == 1.0) return "1";
    return fmt_value(t);
}

} // namespace

std::vector<double> theta_grid(int n) {
    if (n < 2) throw Error(Errc::InvalidArgument, "theta grid needs at least two points");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(j)] = kTwoPi * j / n;
    return g;
}

FringeCurve coincidence_curve(const ThreeQubitState& psi, const PhasePath& path, double t,
                              std::span<const double> theta, double c0) {
    if (!(c0 > 0.0)) throw Error(Errc::InvalidArgument, "coincidence offset C0 must be positive");
    if (theta.empty()) throw Error(Errc::InvalidArgument, "theta grid is empty");
    for (std::size_t j = 1; j < theta.size(); ++j)
        if (!(theta[j] > theta[j - 1]))
            throw Error(Errc::InvalidArgument, "theta grid must be strictly increasing");

    const Complex o = path_overlap(psi, path, t);
    FringeCurve curve;
    curve.t = t;
    curve.c0 = c0;
    curve.theta.assign(theta.begin(), theta.end());
    curve.samples.resize(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        const Complex rot = std::exp(Complex(0.0, theta[j]));
        curve.samples[j] = c0 * (1.0 + (o * rot).real());
    }
    return curve;
}

FormulaId formula_from_name(const std::string& name) {
    if (name == "c0" || name == "C0_X_GENERAL") return FormulaId::C0XGeneral;
    if (name == "c1" || name == "C1_X_UX1") return FormulaId::C1XUx1;
    if (name == "c2" || name == "C2_X_UX2") return FormulaId::C2XUx2;
    if (name == "cp" || name == "CP_PROD") return FormulaId::CpProd;
    if (name == "c31" || name == "C31_GHZ") return FormulaId::C31Ghz;
    if (name == "c3" || name == "C3_BGHZ") return FormulaId::C3Bghz;
    if (name == "c3p" || name == "C3P_PRODBGHZ") return FormulaId::C3pProdBghz;
    throw Error(Errc::InvalidArgument, "unknown formula id '" + name + "'");
}

const char* formula_name(FormulaId id) {
    switch (id) {
        case FormulaId::C0XGeneral: return "C0_X_GENERAL";
        case FormulaId::C1XUx1: return "C1_X_UX1";
        case FormulaId::C2XUx2: return "C2_X_UX2";
        case FormulaId::CpProd: return "CP_PROD";
        case FormulaId::C31Ghz: return "C31_GHZ";
        case FormulaId::C3Bghz: return "C3_BGHZ";
        default: return "C3P_PRODBGHZ";
    }
}

double closed_form(FormulaId id, const FormulaParams& params, double t, double theta) {
    const bool needs_phi = id == FormulaId::C0XGeneral || id == FormulaId::CpProd;
    if (needs_phi && !params.phi)
        throw Error(Errc::InvalidArgument,
                    std::string(formula_name(id)) + " takes the phase triple (phi_s, phi_o, phi_i)");
    if (!needs_phi && params.phi)
        throw Error(Errc::InvalidArgument,
                    std::string(formula_name(id)) + " is parameterized by t, not by a phase triple");

    switch (id) {
        case FormulaId::C0XGeneral: {
            const auto& p = *params.phi;
            return 1.0 + 0.5 * std::cos(theta + p[0] / 2.0) * std::cos((p[1] + p[2]) / 2.0) +
                   0.5 * std::cos(theta - p[0] / 2.0) * std::cos((p[1] - p[2]) / 2.0);
        }
        case FormulaId::C1XUx1:
            return 1.0 + 0.25 * std::cos(theta - 3.0 * kPi * t / 2.0) +
                   0.75 * std::cos(theta + kPi * t / 2.0);
        case FormulaId::C2XUx2:
            return 1.0 +
                   heaviside(1.0 - 3.0 * t) * std::cos(theta) * std::cos(3.0 * kPi * t / 2.0) +
                   heaviside(3.0 * t - 2.0) * std::sin(theta) * std::sin(3.0 * kPi * t / 2.0);
        case FormulaId::CpProd: {
            const auto& p = *params.phi;
            return 1.0 + std::cos(theta) * std::cos(p[0] / 2.0) * std::cos(p[1] / 2.0) *
                             std::cos(p[2] / 2.0);
        }
        case FormulaId::C31Ghz:
            return 1.0 + std::cos(theta) * std::cos(kPi * t);
        case FormulaId::C3Bghz:
            return 1.0 + std::cos(theta) * std::cos(kPi * t) -
                   0.5 * std::sin(theta) * std::sin(kPi * t);
        case FormulaId::C3pProdBghz: {
            const double s = std::sin(kPi * t / 3.0);
            return 1.0 +
                   std::cos(theta) * std::cos(kPi * t / 3.0) * (1.0 - 7.0 / 4.0 * s * s) +
                   1.5 * std::sin(theta) * s * (1.0 - 13.0 / 12.0 * s * s);
        }
    }
    throw Error(Errc::InvalidArgument, "unreachable formula id");
}

namespace {

struct Scenario {
    RecipeKind recipe;
    std::optional<NamedPath> path; // empty: any diagonal path is valid
    bool phi_parameterized;
};

Scenario scenario_for(FormulaId id) {
    switch (id) {
        case FormulaId::C0XGeneral: return {RecipeKind::X, std::nullopt, true};
        case FormulaId::C1XUx1: return {RecipeKind::X, NamedPath::UX1, false};
        case FormulaId::C2XUx2: return {RecipeKind::X, NamedPath::UX2, false};
        case FormulaId::CpProd: return {RecipeKind::ProdX, std::nullopt, true};
        case FormulaId::C31Ghz: return {RecipeKind::Ghz, NamedPath::UBghz, false};
        case FormulaId::C3Bghz: return {RecipeKind::Bghz, NamedPath::UBghz, false};
        default: return {RecipeKind::ProdBghz, NamedPath::UBghz, false};
    }
}

PreparationRecipe scenario_recipe(RecipeKind kind) {
    if (kind == RecipeKind::Bghz || kind == RecipeKind::ProdBghz)
        return make_recipe(kind, 0.5, std::sqrt(3.0) / 2.0);
    return make_recipe(kind);
}

} // namespace

ValidationReport cross_validate(const ThreeQubitState& psi, const PhasePath& path, FormulaId id,
                                const GridSpec& grid, double tol) {
    const Scenario sc = scenario_for(id);
    const ThreeQubitState circ = psi.basis() == kAllCircular ? psi : change_basis(psi, kAllCircular);
    const ThreeQubitState expected = closed_form_state(scenario_recipe(sc.recipe));
    if (!equal_up_to_global_phase(circ, expected, 1e-9))
        throw Error(Errc::ScenarioMismatch, std::string("state does not match the ") +
                                                formula_name(id) + " scenario (expected " +
                                                recipe_name(sc.recipe) + ")");
    if (sc.path && !breakpoints_identical(path, named_path(*sc.path)))
        throw Error(Errc::ScenarioMismatch,
                    std::string(formula_name(id)) + " is specific to one named path");
    if (grid.t_points < 2 || grid.theta_points < 2)
        throw Error(Errc::InvalidArgument, "validation grid needs at least 2x2 points");

    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(grid.t_points) + 5);
    for (int j = 0; j < grid.t_points; ++j)
        ts.push_back(static_cast<double>(j) / (grid.t_points - 1));
    ts.insert(ts.end(), std::begin(kHighlighted), std::end(kHighlighted));
    const std::vector<double> thetas = theta_grid(grid.theta_points);

    ValidationReport report;
    for (const double t : ts) {
        const Complex o = path_overlap(circ, path, t);
        FormulaParams params;
        if (sc.phi_parameterized) params.phi = path.eval(t);
        for (const double theta : thetas) {
            const double sim = 1.0 + (o * std::exp(Complex(0.0, theta))).real();
            const double printed = closed_form(id, params, t, theta);
            const double flipped = closed_form(id, params, t, -theta);
            report.max_abs_dev = std::max(report.max_abs_dev, std::fabs(sim - printed));
            report.sign_flip_dev = std::max(report.sign_flip_dev, std::fabs(sim - flipped));
        }
    }
    report.pass = report.max_abs_dev <= tol;
    return report;
}

FigureId figure_from_name(const std::string& name) {
    if (name == "balgor4") return FigureId::Balgor4;
    if (name == "balgor5") return FigureId::Balgor5;
    if (name == "balgor3") return FigureId::Balgor3;
    throw Error(Errc::InvalidArgument, "unknown figure id '" + name + "' (expected balgor3|balgor4|balgor5)");
}

const char* figure_name(FigureId id) {
    switch (id) {
        case FigureId::Balgor4: return "balgor4";
        case FigureId::Balgor5: return "balgor5";
        default: return "balgor3";
    }
}

std::span<const double> highlighted_times() { return {kHighlighted, 5}; }

namespace {

struct FigurePanel {
    PreparationRecipe recipe;
    NamedPath path;
};

std::vector<FigurePanel> figure_panels(FigureId id) {
    switch (id) {
        case FigureId::Balgor4:
            return {{scenario_recipe(RecipeKind::X), NamedPath::UX1},
                    {scenario_recipe(RecipeKind::ProdX), NamedPath::UX1}};
        case FigureId::Balgor5:
            return {{scenario_recipe(RecipeKind::X), NamedPath::UX2},
                    {scenario_recipe(RecipeKind::ProdX), NamedPath::UX2}};
        default:
            return {{scenario_recipe(RecipeKind::Bghz), NamedPath::UBghz},
                    {scenario_recipe(RecipeKind::ProdBghz), NamedPath::UBghz},
                    {scenario_recipe(RecipeKind::Ghz), NamedPath::UBghz},
                    {scenario_recipe(RecipeKind::ProdX), NamedPath::UBghz}};
    }
}

struct FigureData {
    std::vector<double> theta;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> columns;
};

FigureData figure_data(FigureId id) {
    FigureData data;
    data.theta = theta_grid(256);
    for (const auto& panel : figure_panels(id)) {
        const ThreeQubitState psi = prepare(panel.recipe);
        const PhasePath path = named_path(panel.path);
        for (const double t : kHighlighted) {
            const FringeCurve curve = coincidence_curve(psi, path, t, data.theta, 1.0);
            data.labels.push_back(std::string(recipe_name(panel.recipe.kind)) + ":t/T=" + fmt_t_label(t));
            data.columns.push_back(curve.samples);
        }
    }
    return data;
}

} // namespace

std::string figure_csv(FigureId id) {
    const FigureData data = figure_data(id);
    std::string out = "theta";
    for (const auto& label : data.labels) {
        out += ',';
        out += label;
    }
    out += '\n';
    for (std::size_t row = 0; row < data.theta.size(); ++row) {
        out += fmt_theta(data.theta[row]);
        for (const auto& col : data.columns) {
            out += ',';
            out += fmt_value(col[row]);
        }
        out += '\n';
    }
    return out;
}

std::string figure_json(FigureId id) {
    const FigureData data = figure_data(id);
    std::string out = "{\n  \"theta\": [";
    for (std::size_t j = 0; j < data.theta.size(); ++j) {
        if (j) out += ", ";
        out += fmt_value(data.theta[j]);
    }
    out += "],\n  \"curves\": {";
    for (std::size_t c = 0; c < data.columns.size(); ++c) {
        if (c) out += ',';
        out += "\n    \"" + data.labels[c] + "\": [";
        for (std::size_t j = 0; j < data.columns[c].size(); ++j) {
            if (j) out += ", ";
            out += fmt_value(data.columns[c][j]);
        }
        out += ']';
    }
    out += "\n  }\n}\n";
    return out;
}

} // namespace topo
