#include "elements.hpp"

#include <cmath>
#include <numbers>

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;

Mat2 rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return mat2(c, -s, s, c);
}

Mat2 half_wave(double theta) {
    const double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
    return mat2(c, s, s, -c);
}

Mat2 quarter_wave(double theta) {
    return rotation(theta) * mat2(1.0, 0.0, 0.0, Complex(0.0, 1.0)) * rotation(-theta);
}

std::array<Complex, 8> tensor_cube(const std::array<Complex, 2>& q) {
    std::array<Complex, 8> amps{};
    for (int i = 0; i < 8; ++i)
        amps[static_cast<std::size_t>(i)] = q[(i >> 2) & 1] * q[(i >> 1) & 1] * q[i & 1];
    return amps;
}

void require_finite_angle(double angle) {
    if (!std::isfinite(angle)) throw Error(Errc::InvalidArgument, "angle must be finite");
}

} // namespace

PreparationRecipe make_recipe(RecipeKind kind, Complex alpha, Complex beta, double param_tol) {
    PreparationRecipe r{kind, alpha, beta};
    if (kind != RecipeKind::Bghz && kind != RecipeKind::ProdBghz) return r;
    if (!is_finite(alpha) || !is_finite(beta))
        throw Error(Errc::InvalidArgument, "recipe parameters must be finite");
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1.0) > param_tol)
        throw Error(Errc::InvalidArgument,
                    "normalization violated: |alpha|^2 + |beta|^2 = " + std::to_string(n2));
    const double inv = 1.0 / std::sqrt(n2);
    r.alpha *= inv;
    r.beta *= inv;
    if (kind == RecipeKind::Bghz) {
        if (std::abs(r.alpha) <= 1e-9 || std::abs(r.beta) <= 1e-9)
            throw Error(Errc::InvalidArgument, "bghz requires both coefficients nonzero");
        if (std::abs(std::abs(r.alpha) - std::abs(r.beta)) <= 1e-9)
            throw Error(Errc::InvalidArgument,
                        "bghz requires |alpha| != |beta|; use ghz for the balanced case");
    }
    return r;
}

RecipeKind recipe_from_name(const std::string& name) {
    if (name == "x") return RecipeKind::X;
    if (name == "ghz") return RecipeKind::Ghz;
    if (name == "bghz") return RecipeKind::Bghz;
    if (name == "prod_x" || name == "prod-x") return RecipeKind::ProdX;
    if (name == "prod_bghz" || name == "prod-bghz") return RecipeKind::ProdBghz;
    throw Error(Errc::InvalidArgument, "unknown state recipe '" + name + "'");
}

const char* recipe_name(RecipeKind k) {
    switch (k) {
        case RecipeKind::X: return "x";
        case RecipeKind::Ghz: return "ghz";
        case RecipeKind::Bghz: return "bghz";
        case RecipeKind::ProdX: return "prod_x";
        default: return "prod_bghz";
    }
}

SingleQubitGate element_gate(ElementKind kind, double angle) {
    require_finite_angle(angle);
    switch (kind) {
        case ElementKind::HWP:
        case ElementKind::DovePrism:
            return make_gate(half_wave(angle), Basis::Linear);
        case ElementKind::QWP:
            return make_gate(quarter_wave(angle), Basis::Linear);
        case ElementKind::ModeConverter:
            return make_gate(quarter_wave(angle + kPi / 4.0), Basis::Linear);
        default:
            throw Error(Errc::InvalidArgument,
                        "element_gate handles angle-bearing kinds only (HWP, QWP, DovePrism, ModeConverter)");
    }
}

SingleQubitGate diagonal_phase(double phi) {
    require_finite_angle(phi);
    const Complex up = std::exp(Complex(0.0, 0.5 * phi));
    const Complex dn = std::exp(Complex(0.0, -0.5 * phi));
    return make_gate(mat2(up, 0.0, 0.0, dn), Basis::Circular);
}

SingleQubitGate wave_pair(WavePairKind kind, double theta, double delta) {
    require_finite_angle(theta);
    require_finite_angle(delta);
    const ElementKind element = kind == WavePairKind::DHWP ? ElementKind::HWP : ElementKind::DovePrism;
    const SingleQubitGate first = element_gate(element, theta);
    const SingleQubitGate second = element_gate(element, theta + delta);
    const SingleQubitGate composite = make_gate(second.m * first.m, Basis::Linear);
    return gate_in_basis(composite, Basis::Circular);
}

double calibrate_offset(double phi) {
    require_finite_angle(phi);
    // Composite eigenphases are e^{-+ 2i delta}; matching e^{+- i phi/2}
    // of the diagonal gate gives delta = -phi/4.
    return -phi / 4.0;
}

TwoQubitGate spin_orbit_cnot() {
    Mat4 m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return make_two_qubit_gate(m, TargetPair::SignalPolSignalOam, {Basis::Linear, Basis::Linear});
}

TwoQubitGate spin_orbit_cnot_lg() {
    Mat4 m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = -1.0;
    m(3, 2) = -1.0;
    return make_two_qubit_gate(m, TargetPair::SignalPolSignalOam, {Basis::Linear, Basis::Circular});
}

ThreeQubitState closed_form_state(const PreparationRecipe& recipe) {
    const double half = 0.5;
    const double s = 1.0 / std::numbers::sqrt2;
    std::array<Complex, 8> amps{};
    switch (recipe.kind) {
        case RecipeKind::X:
            amps[0] = half;
            amps[3] = half;
            amps[5] = half;
            amps[6] = half;
            break;
        case RecipeKind::Ghz:
            amps[0] = s;
            amps[7] = s;
            break;
        case RecipeKind::Bghz:
            amps[0] = recipe.alpha;
            amps[7] = recipe.beta;
            break;
        case RecipeKind::ProdX: {
            const Complex plus = std::exp(Complex(0.0, -kPi / 4.0)) * s;
            const Complex minus = std::exp(Complex(0.0, kPi / 4.0)) * s;
            amps = tensor_cube({plus, minus});
            break;
        }
        case RecipeKind::ProdBghz:
            amps = tensor_cube({recipe.alpha, recipe.beta});
            break;
    }
    return ThreeQubitState::from_amplitudes(amps, kAllCircular, 1e-9);
}

namespace {

// Two-crystal source output, before any signal/idler optics. The OAM
// slot starts in the LG basis.
ThreeQubitState source_state(Complex h_coeff, Complex v_coeff) {
    std::array<Complex, 8> amps{};
    amps[0] = h_coeff; // |H + H>
    amps[5] = v_coeff; // |V + V>
    return ThreeQubitState::from_amplitudes(amps, {Basis::Linear, Basis::Circular, Basis::Linear}, 1e-9);
}

ThreeQubitState pipeline_x() {
    const double s = 1.0 / std::numbers::sqrt2;
    ThreeQubitState psi = source_state(s, Complex(0.0, -s));
    psi = change_basis(psi, kAllLinear);
    psi = apply_local(identity_gate(Basis::Linear), element_gate(ElementKind::ModeConverter, 0.0),
                      identity_gate(Basis::Linear), psi);
    psi = apply_two_qubit(spin_orbit_cnot(), psi);
    return change_basis(psi, kAllCircular);
}

ThreeQubitState pipeline_ghz_like(Complex alpha, Complex beta) {
    ThreeQubitState psi = source_state(alpha, beta);
    psi = apply_two_qubit(spin_orbit_cnot_lg(), psi);
    const SingleQubitGate qwp = element_gate(ElementKind::QWP, -kPi / 4.0);
    psi = apply_local(qwp, identity_gate(Basis::Circular), qwp, psi);
    return change_basis(psi, kAllCircular);
}

ThreeQubitState pipeline_prod_x() {
    ThreeQubitState psi = source_state(1.0, 0.0);
    psi = change_basis(psi, kAllLinear);
    psi = apply_local(identity_gate(Basis::Linear), element_gate(ElementKind::ModeConverter, kPi / 4.0),
                      identity_gate(Basis::Linear), psi);
    psi = apply_two_qubit(spin_orbit_cnot(), psi);
    const SingleQubitGate hwp = element_gate(ElementKind::HWP, kPi / 8.0);
    psi = apply_local(hwp, identity_gate(Basis::Linear), hwp, psi);
    return change_basis(psi, kAllCircular);
}

} // namespace

ThreeQubitState pipeline_state(const PreparationRecipe& recipe) {
    switch (recipe.kind) {
        case RecipeKind::X: return pipeline_x();
        case RecipeKind::Ghz: {
            const double s = 1.0 / std::numbers::sqrt2;
            return pipeline_ghz_like(s, s);
        }
        case RecipeKind::Bghz: return pipeline_ghz_like(recipe.alpha, recipe.beta);
        case RecipeKind::ProdX: return pipeline_prod_x();
        case RecipeKind::ProdBghz:
            // Produced by tailoring the pump mode so signal and idler are
            // born in the target product state; no bench elements.
            return closed_form_state(recipe);
    }
    throw Error(Errc::InvalidArgument, "unreachable recipe kind");
}

ThreeQubitState prepare(const PreparationRecipe& recipe) {
    const ThreeQubitState built = pipeline_state(recipe);
    const ThreeQubitState target = closed_form_state(recipe);
    if (!equal_up_to_global_phase(built, target, 1e-9))
        throw Error(Errc::InvalidArgument, "pipeline output does not match the closed-form target");
    return target;
}

} // namespace topo
