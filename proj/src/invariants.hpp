// Polynomial entanglement invariants, single-qubit reduced states,
// SLOCC classification, and the phase spectra attainable by cyclic
// evolutions diagonal in the circular basis.

#pragma once

#include <vector>

#include "qstate.hpp"

namespace topo {

struct DensityMatrix2 {
    Mat2 m;

    double purity() const;                   // tr(rho^2), real part
    std::array<double, 2> eigenvalues() const; // ascending
};

// Partial trace over the two other qubits; k in {0,1,2} with the fixed
// slot order (signal-pol, signal-oam, idler-pol).
DensityMatrix2 reduced_density(const ThreeQubitState& psi, int k);

// Degree-4 polynomial invariant tau = 4 |d1 - 2 d2 + 4 d3| over the
// eight amplitudes; 1 on the GHZ state, 0 on products and W states,
// invariant under local unitaries and basis changes.
double three_tangle(const ThreeQubitState& psi);

enum class SloccClass { Product, BiseparableA, BiseparableB, BiseparableC, WClass, GhzClass };

const char* slocc_name(SloccClass c);

// Classifies a pure state: GhzClass iff tangle > tol, else WClass iff
// every local purity < 1 - tol, else biseparable at the unique pure
// qubit, else Product. Discriminants falling inside the decade band
// [tol/10, 10*tol] raise a borderline error instead of guessing.
SloccClass classify_slocc(const ThreeQubitState& psi, double tol = 1e-9);

enum class StateFamily { XClass, BiasedGhz, Ghz, Product };

struct FamilySpec {
    StateFamily family = StateFamily::XClass;
    // XClass: a,b,c,d (all nonzero, normalized). BiasedGhz: alpha,beta.
    std::vector<Complex> params;
};

FamilySpec x_class_family(Complex a, Complex b, Complex c, Complex d);
FamilySpec bghz_family(Complex alpha, Complex beta);
FamilySpec ghz_family();
FamilySpec product_family();

// Topological phases attainable by cyclic evolutions diagonal in the
// circular basis, derived from the endpoint congruences of the family
// orbit. Sorted ascending, values in [0, 2*pi).
std::vector<double> diagonal_phase_spectrum(const FamilySpec& spec);

} // namespace topo
