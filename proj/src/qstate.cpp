#include "qstate.hpp"

#include <cmath>
#include <numbers>

namespace topo {

namespace {

constexpr double kUnitaryTol = 1e-12;

const char* slot_name(int k) {
    switch (k) {
        case 0: return "signal-pol";
        case 1: return "signal-oam";
        default: return "idler-pol";
    }
}

} // namespace

const char* basis_name(Basis b) {
    return b == Basis::Circular ? "circular" : "linear";
}

Basis basis_from_name(const std::string& name) {
    if (name == "circular") return Basis::Circular;
    if (name == "linear") return Basis::Linear;
    throw Error(Errc::InvalidArgument, "unknown basis tag '" + name + "' (expected circular|linear)");
}

SingleQubitGate make_gate(const Mat2& m, Basis basis, bool normalize_su) {
    if (!m.finite()) throw Error(Errc::InvalidArgument, "gate matrix has non-finite entries");
    if (!m.is_unitary(kUnitaryTol)) throw Error(Errc::NotUnitary, "gate matrix is not unitary within 1e-12");
    Mat2 out = m;
    if (normalize_su) {
        const Complex d = det(m);
        // d has unit modulus for a unitary; divide by a square root of it.
        out = m * std::exp(Complex(0.0, -0.5 * std::arg(d)));
    }
    return SingleQubitGate{out, basis};
}

SingleQubitGate identity_gate(Basis basis) {
    return SingleQubitGate{Mat2::identity(), basis};
}

Mat2 basis_transform(Basis from, Basis to) {
    const double s = 1.0 / std::numbers::sqrt2;
    if (from == to) return Mat2::identity();
    if (from == Basis::Linear) {
        // (cH, cV) -> (c+, c-)
        return mat2({s, 0}, {0, -s}, {s, 0}, {0, s});
    }
    // (c+, c-) -> (cH, cV)
    return mat2({s, 0}, {s, 0}, {0, s}, {0, -s});
}

SingleQubitGate gate_in_basis(const SingleQubitGate& g, Basis target) {
    if (g.basis == target) return g;
    const Mat2 fwd = basis_transform(g.basis, target);
    const Mat2 back = basis_transform(target, g.basis);
    return SingleQubitGate{fwd * g.m * back, target};
}

TwoQubitGate make_two_qubit_gate(const Mat4& m, TargetPair target, std::array<Basis, 2> basis) {
    if (!m.finite()) throw Error(Errc::InvalidArgument, "gate matrix has non-finite entries");
    if (!m.is_unitary(kUnitaryTol)) throw Error(Errc::NotUnitary, "two-qubit gate is not unitary within 1e-12");
    return TwoQubitGate{m, target, basis};
}

ThreeQubitState ThreeQubitState::from_amplitudes(const std::array<Complex, 8>& amps,
                                                 const QubitBasis& basis, double norm_tol) {
    double n2 = 0.0;
    for (const auto& a : amps) {
        if (!is_finite(a)) throw Error(Errc::InvalidArgument, "state amplitude is not finite");
        n2 += std::norm(a);
    }
    if (std::abs(n2 - 1.0) > norm_tol)
        throw Error(Errc::InvalidArgument,
                    "state is not normalized: sum of |amp|^2 = " + std::to_string(n2));
    ThreeQubitState s;
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t i = 0; i < 8; ++i) s.amps_[i] = amps[i] * inv;
    s.basis_ = basis;
    return s;
}

double ThreeQubitState::norm_error() const {
    double n2 = 0.0;
    for (const auto& a : amps_) n2 += std::norm(a);
    return std::abs(n2 - 1.0);
}

namespace {

// Applies a 2x2 matrix on the qubit at bit position (2 - slot).
void apply_on_slot(std::array<Complex, 8>& v, const Mat2& m, int slot) {
    const int bit = 2 - slot; // slot 0 = signal-pol = most significant bit
    const int stride = 1 << bit;
    for (int base = 0; base < 8; ++base) {
        if (base & stride) continue;
        const Complex a0 = v[static_cast<std::size_t>(base)];
        const Complex a1 = v[static_cast<std::size_t>(base | stride)];
        v[static_cast<std::size_t>(base)] = m(0, 0) * a0 + m(0, 1) * a1;
        v[static_cast<std::size_t>(base | stride)] = m(1, 0) * a0 + m(1, 1) * a1;
    }
}

} // namespace

ThreeQubitState apply_local(const SingleQubitGate& g_s, const SingleQubitGate& g_o,
                            const SingleQubitGate& g_i, const ThreeQubitState& psi) {
    const SingleQubitGate* gates[3] = {&g_s, &g_o, &g_i};
    for (int k = 0; k < 3; ++k) {
        if (gates[k]->basis != psi.basis()[static_cast<std::size_t>(k)])
            throw Error(Errc::BasisMismatch,
                        std::string("gate basis does not match state basis on slot ") + slot_name(k));
        if (!gates[k]->m.is_unitary(kUnitaryTol))
            throw Error(Errc::NotUnitary, std::string("gate on slot ") + slot_name(k) + " is not unitary");
    }
    std::array<Complex, 8> v = psi.amps();
    apply_on_slot(v, g_s.m, 0);
    apply_on_slot(v, g_o.m, 1);
    apply_on_slot(v, g_i.m, 2);
    return ThreeQubitState::from_amplitudes(v, psi.basis(), 1e-9);
}

ThreeQubitState apply_two_qubit(const TwoQubitGate& g, const ThreeQubitState& psi) {
    if (g.target != TargetPair::SignalPolSignalOam)
        throw Error(Errc::InvalidArgument, "two-qubit gates target (signal-pol, signal-oam)");
    if (g.basis[0] != psi.basis()[0] || g.basis[1] != psi.basis()[1])
        throw Error(Errc::BasisMismatch, "two-qubit gate basis does not match state basis");
    if (!g.m.is_unitary(1e-12))
        throw Error(Errc::NotUnitary, "two-qubit gate is not unitary");
    std::array<Complex, 8> v{};
    // Pair index = 2*bit2 + bit1; idler bit is untouched.
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) {
            const Complex m = g.m(static_cast<std::size_t>(p), static_cast<std::size_t>(q));
            if (m == Complex{}) continue;
            for (int idler = 0; idler < 2; ++idler)
                v[static_cast<std::size_t>(2 * p + idler)] +=
                    m * psi.amps()[static_cast<std::size_t>(2 * q + idler)];
        }
    return ThreeQubitState::from_amplitudes(v, psi.basis(), 1e-9);
}

Complex overlap(const ThreeQubitState& psi, const ThreeQubitState& chi) {
    if (psi.basis() != chi.basis())
        throw Error(Errc::BasisMismatch, "overlap requires both states in the same basis");
    Complex r{};
    for (std::size_t i = 0; i < 8; ++i) r += std::conj(psi.amps()[i]) * chi.amps()[i];
    return r;
}

ThreeQubitState change_basis(const ThreeQubitState& psi, const QubitBasis& target) {
    std::array<Complex, 8> v = psi.amps();
    for (int k = 0; k < 3; ++k) {
        const Basis from = psi.basis()[static_cast<std::size_t>(k)];
        const Basis to = target[static_cast<std::size_t>(k)];
        if (from == to) continue;
        apply_on_slot(v, basis_transform(from, to), k);
    }
    return ThreeQubitState::from_amplitudes(v, target, 1e-9);
}

bool approx_equal(const ThreeQubitState& a, const ThreeQubitState& b, double tol) {
    if (a.basis() != b.basis()) return false;
    for (std::size_t i = 0; i < 8; ++i)
        if (std::abs(a.amps()[i] - b.amps()[i]) > tol) return false;
    return true;
}

bool equal_up_to_global_phase(const ThreeQubitState& a, const ThreeQubitState& b, double tol) {
    if (a.basis() != b.basis()) return false;
    return std::abs(overlap(a, b)) >= 1.0 - tol;
}

} // namespace topo
