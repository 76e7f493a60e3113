// Jones-calculus models of the bench elements and the state-preparation
// pipelines built from them.
//
// Conventions (linear basis, fast axis angle theta from horizontal):
//   HWP(theta)  = [[cos 2t,  sin 2t], [sin 2t, -cos 2t]]      (det -1)
//   QWP(theta)  = R(theta) diag(1, i) R(-theta)
//   Dove prism  = same matrix form as the HWP, acting on the OAM slot
//   Mode converter(theta): quarter-wave retarder for the OAM Poincare
//     sphere oriented at theta + pi/4, so LG+1 maps to the HG mode
//     oriented at theta (up to a phase).
// In the circular basis HWP/Dove become antidiag(e^{-2it}, e^{+2it}),
// so a pair at relative orientation d composes to the diagonal gate
// diag(e^{-2id}, e^{+2id}).

#pragma once

#include "qstate.hpp"

namespace topo {

enum class ElementKind { HWP, QWP, DovePrism, ModeConverter, DiagonalPhase, SpinOrbitCNOT };

enum class RecipeKind { X, Ghz, Bghz, ProdX, ProdBghz };

struct PreparationRecipe {
    RecipeKind kind = RecipeKind::X;
    Complex alpha{};
    Complex beta{};
};

// Validates parameters: |alpha|^2 + |beta|^2 = 1 (within param_tol, then
// renormalized) where applicable, and |alpha| != |beta| for Bghz.
PreparationRecipe make_recipe(RecipeKind kind, Complex alpha = {}, Complex beta = {},
                              double param_tol = 1e-6);

RecipeKind recipe_from_name(const std::string& name);
const char* recipe_name(RecipeKind k);

// Jones matrix of an angle-bearing element, in the linear basis of its
// slot. DiagonalPhase and SpinOrbitCNOT are rejected (wrong arity).
SingleQubitGate element_gate(ElementKind kind, double angle);

// diag(e^{i phi/2}, e^{-i phi/2}) in the circular basis.
SingleQubitGate diagonal_phase(double phi);

enum class WavePairKind { DHWP, DDP };

// Composite of two identical-retarder elements at theta and theta + delta,
// returned in the circular basis (where it is diagonal).
SingleQubitGate wave_pair(WavePairKind kind, double theta, double delta);

// Relative orientation delta such that wave_pair(., theta, delta) equals
// diagonal_phase(phi) up to a global phase: delta = -phi/4.
double calibrate_offset(double phi);

// Interferometric CNOT: identity on |H .>, flips |h> <-> |v> on |V .>.
// Declared in the (pol HV) x (OAM hv) basis.
TwoQubitGate spin_orbit_cnot();

// Variant with the Dove prism in the V arm reoriented to flip LG
// handedness; the pi/2 orientation makes the conditional flip carry a
// -1 phase, which cancels the i's the downstream QWPs put on the V
// branch. Declared in the (pol HV) x (OAM LG) basis.
TwoQubitGate spin_orbit_cnot_lg();

// Raw output of the bench pipeline for the recipe, in the circular
// basis. Carries whatever global phase the elements produce.
ThreeQubitState pipeline_state(const PreparationRecipe& recipe);

// Closed-form targets in the circular basis.
ThreeQubitState closed_form_state(const PreparationRecipe& recipe);

// Builds the state through the pipeline, checks it against the closed
// form (up to global phase, within 1e-9), and returns the closed form.
ThreeQubitState prepare(const PreparationRecipe& recipe);

} // namespace topo
