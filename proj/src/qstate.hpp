// Exact state-vector algebra for the three-qubit register
// (signal polarization, signal OAM, idler polarization).
//
// Each qubit slot carries a basis tag. "Circular" means {|+>,|->}
// (circular polarization, or the LG+1/LG-1 modes for the OAM slot);
// "Linear" means {|H>,|V>} (or the HG modes |h>,|v>). The two are
// related per slot by |+-> = (|H> +- i|V>)/sqrt(2).
//
// Amplitude index order is fixed: bit2 = signal polarization,
// bit1 = signal OAM, bit0 = idler polarization; bit value 0 selects
// the first basis vector (|+> or |H>).

#pragma once

#include <array>
#include <string>

#include "errors.hpp"
#include "matrices.hpp"

namespace topo {

enum class Basis { Circular, Linear };

using QubitBasis = std::array<Basis, 3>;

inline constexpr QubitBasis kAllCircular{Basis::Circular, Basis::Circular, Basis::Circular};
inline constexpr QubitBasis kAllLinear{Basis::Linear, Basis::Linear, Basis::Linear};

const char* basis_name(Basis b);
Basis basis_from_name(const std::string& name);

// A 2x2 unitary together with the basis its matrix is written in.
// Operators never change a state's basis tag; change_basis does.
struct SingleQubitGate {
    Mat2 m;
    Basis basis = Basis::Circular;
};

// Checks unitarity (1e-12). With normalize_su, rescales to det = 1.
SingleQubitGate make_gate(const Mat2& m, Basis basis, bool normalize_su = false);
SingleQubitGate identity_gate(Basis basis);

// Change-of-basis matrix for one qubit slot; amplitudes expressed in
// `from` become amplitudes expressed in `to`.
Mat2 basis_transform(Basis from, Basis to);

// Re-express a gate's matrix in another basis (same operator).
SingleQubitGate gate_in_basis(const SingleQubitGate& g, Basis target);

enum class TargetPair { SignalPolSignalOam };

// 4x4 unitary on the declared qubit pair; basis[0] tags the signal
// polarization slot, basis[1] the signal OAM slot.
struct TwoQubitGate {
    Mat4 m;
    TargetPair target = TargetPair::SignalPolSignalOam;
    std::array<Basis, 2> basis{Basis::Linear, Basis::Linear};
};

TwoQubitGate make_two_qubit_gate(const Mat4& m, TargetPair target, std::array<Basis, 2> basis);

class ThreeQubitState {
public:
    // Validates finiteness and the norm (within norm_tol), then
    // renormalizes to machine precision.
    static ThreeQubitState from_amplitudes(const std::array<Complex, 8>& amps,
                                           const QubitBasis& basis,
                                           double norm_tol = 1e-6);

    const std::array<Complex, 8>& amps() const { return amps_; }
    const QubitBasis& basis() const { return basis_; }
    Complex amp(int i) const { return amps_[static_cast<std::size_t>(i)]; }

    double norm_error() const; // |sum of |amp|^2 - 1|

private:
    ThreeQubitState() = default;
    std::array<Complex, 8> amps_{};
    QubitBasis basis_{kAllCircular};
};

// (g_s tensor g_o tensor g_i) applied to psi. Gate bases must match the
// state's slot tags; gates must be unitary.
ThreeQubitState apply_local(const SingleQubitGate& g_s, const SingleQubitGate& g_o,
                            const SingleQubitGate& g_i, const ThreeQubitState& psi);

// Gate on (signal pol, signal OAM), identity on the idler.
ThreeQubitState apply_two_qubit(const TwoQubitGate& g, const ThreeQubitState& psi);

// <psi|chi>; both states must share a basis.
Complex overlap(const ThreeQubitState& psi, const ThreeQubitState& chi);

// Passive per-slot re-expression via the sqrt(2) relations.
ThreeQubitState change_basis(const ThreeQubitState& psi, const QubitBasis& target);

// Exact comparison, amplitude by amplitude.
bool approx_equal(const ThreeQubitState& a, const ThreeQubitState& b, double tol);

// Ray comparison: |<a|b>| >= 1 - tol.
bool equal_up_to_global_phase(const ThreeQubitState& a, const ThreeQubitState& b, double tol);

} // namespace topo
