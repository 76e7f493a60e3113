// Coincidence-fringe synthesis for the two-photon interferometer, the
// closed-form intensity formulas for the named evolutions, and the
// simulation-vs-formula cross-validation harness.
//
// Convention: with O(t) the Pancharatnam overlap, the synthesized curve
// is C(theta) = C0 * (1 + Re(O(t) e^{i theta})) = C0 (1 + V cos(theta + Phi)).

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paths.hpp"

namespace topo {

struct FringeCurve {
    double t = 0.0;
    std::vector<double> theta;
    std::vector<double> samples;
    double c0 = 1.0;
};

// n uniform points over [0, 2*pi).
std::vector<double> theta_grid(int n = 256);

FringeCurve coincidence_curve(const ThreeQubitState& psi, const PhasePath& path, double t,
                              std::span<const double> theta, double c0);

enum class FormulaId { C0XGeneral, C1XUx1, C2XUx2, CpProd, C31Ghz, C3Bghz, C3pProdBghz };

FormulaId formula_from_name(const std::string& name);
const char* formula_name(FormulaId id);

struct FormulaParams {
    // Phase triple (phi_s, phi_o, phi_i); required by C0XGeneral and
    // CpProd, rejected by the time-parameterized formulas.
    std::optional<std::array<double, 3>> phi;
};

// Exact transcription of the printed intensity formulas, normalized to
// C0 = 1. C3Bghz keeps its printed sign on the sin(theta) term.
double closed_form(FormulaId id, const FormulaParams& params, double t, double theta);

struct GridSpec {
    int t_points = 64;      // uniform in [0,1]; the five highlighted values are added
    int theta_points = 256; // uniform in [0, 2*pi)
};

struct ValidationReport {
    double max_abs_dev = 0.0;  // simulation vs formula as printed
    double sign_flip_dev = 0.0; // simulation vs formula with the sin(theta) term negated
    bool pass = false;          // max_abs_dev <= tol
};

// Simulates the formula's intended scenario over the grid and compares
// against the printed formula. Throws when (psi, path) is not the
// scenario the formula was derived for.
ValidationReport cross_validate(const ThreeQubitState& psi, const PhasePath& path, FormulaId id,
                                const GridSpec& grid = {}, double tol = 1e-9);

enum class FigureId { Balgor4, Balgor5, Balgor3 };

FigureId figure_from_name(const std::string& name);
const char* figure_name(FigureId id);

// Full theta-sweep dataset for one figure: every state/path pair of the
// figure at t/T in {0, 1/4, 1/2, 3/4, 1}, C0 = 1. Column labels are
// "<state>:t/T=<value>". Output is deterministic, byte for byte.
std::string figure_csv(FigureId id);
std::string figure_json(FigureId id);

// The five highlighted sweep instants.
std::span<const double> highlighted_times();

} // namespace topo
