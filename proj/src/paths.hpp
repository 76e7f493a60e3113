// Piecewise-linear diagonal SU(2) evolution paths over normalized time,
// the Pancharatnam overlap along them, cyclicity tests, and extraction
// of the snapped topological phase at the endpoint.

#pragma once

#include <optional>
#include <vector>

#include "qstate.hpp"

namespace topo {

struct Breakpoint {
    double t = 0.0;
    double value = 0.0;
};

using BreakpointList = std::vector<Breakpoint>;

// Three piecewise-linear phase functions phi_s, phi_o, phi_i of
// normalized time in [0,1]. Every component starts at (0, 0); the value
// holds constant after the last breakpoint.
class PhasePath {
public:
    PhasePath(BreakpointList s, BreakpointList o, BreakpointList i);

    std::array<double, 3> eval(double t) const;
    std::array<double, 3> endpoints() const { return eval(1.0); }

    const BreakpointList& s() const { return s_; }
    const BreakpointList& o() const { return o_; }
    const BreakpointList& i() const { return i_; }
    const BreakpointList& component(int k) const;

private:
    BreakpointList s_, o_, i_;
};

bool breakpoints_identical(const PhasePath& a, const PhasePath& b);

enum class NamedPath { UX1, UX2, UBghz };

NamedPath named_path_from_string(const std::string& id);

// UX1: three simultaneous ramps 0 -> -pi.
// UX2: sequential ramps, one slot per third of the interval.
// UBghz: three simultaneous ramps 0 -> 2*pi/3.
PhasePath named_path(NamedPath id);

struct PancharatnamSample {
    double t = 0.0;
    double visibility = 0.0;
    std::optional<double> phase; // in [0, 2*pi); empty when visibility < 1e-9
};

// Overlap <psi| U(phi_s(t)) x U(phi_o(t)) x U(phi_i(t)) |psi> computed
// by evolving the state vector. States in any basis are accepted; the
// diagonal gates act in the circular basis.
Complex path_overlap(const ThreeQubitState& psi, const PhasePath& path, double t);

PancharatnamSample pancharatnam(const ThreeQubitState& psi, const PhasePath& path, double t);

// True when the visibility has returned to 1 - tol at t = 1.
bool is_cyclic(const ThreeQubitState& psi, const PhasePath& path, double tol = 1e-9);

struct SnappedPhase {
    double value = 0.0;    // one of {0, pi/2, pi, 3*pi/2}
    double residual = 0.0; // circular distance from the raw phase
};

// Endpoint phase snapped to the nearest quarter of 2*pi. Throws
// NonCyclic when visibility has not returned, SnapFailure when the
// residual exceeds snap_tol.
SnappedPhase topological_phase(const ThreeQubitState& psi, const PhasePath& path,
                               double snap_tol = 1e-6);

enum class OrbitFamily { XClass, GhzLike };

// Homotopy class label of a diagonal loop, from the endpoint congruences
// alone. XClass: every phi_k(1) in pi*Z with pairwise sums in 2*pi*Z;
// GhzLike: sum of endpoints in 2*pi*Z. The label is
// (sum of endpoints / 2) mod 2*pi. Throws when a congruence fails,
// naming it.
double homotopy_class_diagonal(OrbitFamily family, const PhasePath& path, double tol = 1e-9);

} // namespace topo
