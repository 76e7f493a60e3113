#include "paths.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "elements.hpp"

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPhaseVisibilityFloor = 1e-9;

void validate_component(const BreakpointList& bps, const char* name) {
    if (bps.empty()) throw Error(Errc::InvalidArgument, std::string("path component ") + name + " is empty");
    if (bps.front().t != 0.0 || bps.front().value != 0.0)
        throw Error(Errc::InvalidArgument,
                    std::string("path component ") + name + " must start at breakpoint (0, 0)");
    double prev = -1.0;
    for (const auto& bp : bps) {
        if (!std::isfinite(bp.t) || !std::isfinite(bp.value))
            throw Error(Errc::InvalidArgument, std::string("path component ") + name + " has non-finite breakpoints");
        if (bp.t < 0.0 || bp.t > 1.0)
            throw Error(Errc::InvalidArgument,
                        std::string("path component ") + name + " has a breakpoint outside [0, 1]");
        if (bp.t <= prev)
            throw Error(Errc::InvalidArgument,
                        std::string("path component ") + name + " breakpoints must be strictly increasing");
        prev = bp.t;
    }
}

double eval_component(const BreakpointList& bps, double t) {
    if (t <= bps.front().t) return bps.front().value;
    for (std::size_t j = 1; j < bps.size(); ++j) {
        if (t <= bps[j].t) {
            const auto& lo = bps[j - 1];
            const auto& hi = bps[j];
            if (t == hi.t) return hi.value;
            const double f = (t - lo.t) / (hi.t - lo.t);
            return lo.value + f * (hi.value - lo.value);
        }
    }
    return bps.back().value; // hold after the last breakpoint
}

double wrap_two_pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r == kTwoPi) r = 0.0;
    return r;
}

// Distance to the nearest multiple of `unit`.
double congruence_residual(double x, double unit) {
    const double r = std::fabs(std::remainder(x, unit));
    return r;
}

} // namespace

PhasePath::PhasePath(BreakpointList s, BreakpointList o, BreakpointList i)
    : s_(std::move(s)), o_(std::move(o)), i_(std::move(i)) {
    validate_component(s_, "s");
    validate_component(o_, "o");
    validate_component(i_, "i");
}

std::array<double, 3> PhasePath::eval(double t) const {
    if (!std::isfinite(t) || t < 0.0 || t > 1.0)
        throw Error(Errc::InvalidArgument, "normalized time must lie in [0, 1]");
    return {eval_component(s_, t), eval_component(o_, t), eval_component(i_, t)};
}

const BreakpointList& PhasePath::component(int k) const {
    switch (k) {
        case 0: return s_;
        case 1: return o_;
        case 2: return i_;
        default: throw Error(Errc::InvalidArgument, "path component index must be 0, 1 or 2");
    }
}

bool breakpoints_identical(const PhasePath& a, const PhasePath& b) {
    for (int k = 0; k < 3; ++k) {
        const auto& x = a.component(k);
        const auto& y = b.component(k);
        if (x.size() != y.size()) return false;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j].t != y[j].t || x[j].value != y[j].value) return false;
    }
    return true;
}

NamedPath named_path_from_string(const std::string& id) {
    if (id == "ux1") return NamedPath::UX1;
    if (id == "ux2") return NamedPath::UX2;
    if (id == "ubghz") return NamedPath::UBghz;
    throw Error(Errc::InvalidArgument, "unknown path id '" + id + "' (expected ux1|ux2|ubghz)");
}

PhasePath named_path(NamedPath id) {
    const double third = 1.0 / 3.0;
    const double two_thirds = 2.0 / 3.0;
    switch (id) {
        case NamedPath::UX1:
            return PhasePath({{0.0, 0.0}, {1.0, -kPi}},
                             {{0.0, 0.0}, {1.0, -kPi}},
                             {{0.0, 0.0}, {1.0, -kPi}});
        case NamedPath::UX2:
            return PhasePath({{0.0, 0.0}, {third, -kPi}, {1.0, -kPi}},
                             {{0.0, 0.0}, {third, 0.0}, {two_thirds, -kPi}, {1.0, -kPi}},
                             {{0.0, 0.0}, {two_thirds, 0.0}, {1.0, -kPi}});
        case NamedPath::UBghz: {
            const double target = 2.0 * kPi / 3.0;
            return PhasePath({{0.0, 0.0}, {1.0, target}},
                             {{0.0, 0.0}, {1.0, target}},
                             {{0.0, 0.0}, {1.0, target}});
        }
    }
    throw Error(Errc::InvalidArgument, "unreachable path id");
}

Complex path_overlap(const ThreeQubitState& psi, const PhasePath& path, double t) {
    const ThreeQubitState base =
        psi.basis() == kAllCircular ? psi : change_basis(psi, kAllCircular);
    const auto phi = path.eval(t);
    const ThreeQubitState evolved = apply_local(diagonal_phase(phi[0]), diagonal_phase(phi[1]),
                                                diagonal_phase(phi[2]), base);
    return overlap(base, evolved);
}

PancharatnamSample pancharatnam(const ThreeQubitState& psi, const PhasePath& path, double t) {
    const Complex o = path_overlap(psi, path, t);
    PancharatnamSample sample;
    sample.t = t;
    sample.visibility = std::abs(o);
    if (sample.visibility >= kPhaseVisibilityFloor) sample.phase = wrap_two_pi(std::arg(o));
    return sample;
}

bool is_cyclic(const ThreeQubitState& psi, const PhasePath& path, double tol) {
    return pancharatnam(psi, path, 1.0).visibility >= 1.0 - tol;
}

SnappedPhase topological_phase(const ThreeQubitState& psi, const PhasePath& path, double snap_tol) {
    if (!is_cyclic(psi, path, 1e-9))
        throw Error(Errc::NonCyclic, "evolution is not cyclic: visibility did not return to 1 at t = 1");
    const double phi = *pancharatnam(psi, path, 1.0).phase;
    const double quarter = kPi / 2.0;
    const long k = std::lround(phi / quarter);
    const double snapped = wrap_two_pi(static_cast<double>(k) * quarter);
    const double residual = std::fabs(std::remainder(phi - static_cast<double>(k) * quarter, kTwoPi));
    if (residual > snap_tol)
        throw Error(Errc::SnapFailure, "endpoint phase " + std::to_string(phi) +
                                           " is not a quarter multiple of 2*pi (residual " +
                                           std::to_string(residual) + ")");
    return SnappedPhase{snapped, residual};
}

double homotopy_class_diagonal(OrbitFamily family, const PhasePath& path, double tol) {
    const auto end = path.endpoints();
    const char* names[3] = {"phi_s(1)", "phi_o(1)", "phi_i(1)"};
    const double sum = end[0] + end[1] + end[2];

    if (family == OrbitFamily::XClass) {
        for (int k = 0; k < 3; ++k) {
            const double r = congruence_residual(end[k], kPi);
            if (r > tol)
                throw Error(Errc::NonCyclic, std::string("endpoint congruence violated: ") + names[k] +
                                                 " = " + std::to_string(end[k]) +
                                                 " is not a multiple of pi");
        }
        const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (const auto& p : pairs) {
            const double pair_sum = end[p[0]] + end[p[1]];
            if (congruence_residual(pair_sum, kTwoPi) > tol)
                throw Error(Errc::NonCyclic, std::string("endpoint congruence violated: ") + names[p[0]] +
                                                 " + " + names[p[1]] + " = " + std::to_string(pair_sum) +
                                                 " is not a multiple of 2*pi");
        }
    } else {
        if (congruence_residual(sum, kTwoPi) > tol)
            throw Error(Errc::NonCyclic,
                        "endpoint congruence violated: phi_s(1) + phi_o(1) + phi_i(1) = " +
                            std::to_string(sum) + " is not a multiple of 2*pi");
    }

    // Snap the label onto the exact grid so callers can compare directly.
    const double raw = wrap_two_pi(sum / 2.0);
    const double quarter = kPi / 2.0;
    return wrap_two_pi(static_cast<double>(std::lround(raw / quarter)) * quarter);
}

} // namespace topo
