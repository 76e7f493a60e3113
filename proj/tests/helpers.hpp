// Shared test utilities and independent oracles. Everything here stays
// out of the library: the oracles deliberately recompute results along
// routes the implementation does not use.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "elements.hpp"
#include "invariants.hpp"
#include "paths.hpp"
#include "qstate.hpp"

namespace testutil {

using topo::Complex;

inline constexpr double kPi = std::numbers::pi;

inline bool cnear(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

// Full 8x8 Kronecker-product route for a local gate triple; the library
// applies gates slot by slot instead.
inline std::array<Complex, 8> kron_apply(const topo::Mat2& s, const topo::Mat2& o,
                                         const topo::Mat2& i,
                                         const std::array<Complex, 8>& v) {
    std::array<Complex, 64> m{};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            const auto bit = [](int x, int k) { return (x >> k) & 1; };
            m[static_cast<std::size_t>(8 * r + c)] =
                s(static_cast<std::size_t>(bit(r, 2)), static_cast<std::size_t>(bit(c, 2))) *
                o(static_cast<std::size_t>(bit(r, 1)), static_cast<std::size_t>(bit(c, 1))) *
                i(static_cast<std::size_t>(bit(r, 0)), static_cast<std::size_t>(bit(c, 0)));
        }
    std::array<Complex, 8> out{};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            out[static_cast<std::size_t>(r)] +=
                m[static_cast<std::size_t>(8 * r + c)] * v[static_cast<std::size_t>(c)];
    return out;
}

// Haar-ish SU(2) from a random unit quaternion.
inline topo::Mat2 random_su2(std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    double q[4];
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (double& x : q) {
            x = gauss(rng);
            n2 += x * x;
        }
    } while (n2 < 1e-12);
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : q) x *= inv;
    return topo::mat2(Complex(q[0], q[1]), Complex(q[2], q[3]), Complex(-q[2], q[3]),
                      Complex(q[0], -q[1]));
}

inline topo::ThreeQubitState random_state(std::mt19937& rng,
                                          const topo::QubitBasis& basis = topo::kAllCircular) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::array<Complex, 8> amps{};
    double n2 = 0.0;
    for (auto& a : amps) {
        a = Complex(gauss(rng), gauss(rng));
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps) a *= inv;
    return topo::ThreeQubitState::from_amplitudes(amps, basis, 1e-9);
}

inline topo::ThreeQubitState basis_state(int index,
                                         const topo::QubitBasis& basis = topo::kAllCircular) {
    std::array<Complex, 8> amps{};
    amps[static_cast<std::size_t>(index)] = 1.0;
    return topo::ThreeQubitState::from_amplitudes(amps, basis);
}

inline topo::ThreeQubitState w_state() {
    const double a = 1.0 / std::sqrt(3.0);
    std::array<Complex, 8> amps{};
    amps[1] = a;
    amps[2] = a;
    amps[4] = a;
    return topo::ThreeQubitState::from_amplitudes(amps, topo::kAllCircular);
}

// Closed-form Pancharatnam overlap for the equal-coefficient X state:
// the mean of the four sign-pattern phase factors.
inline Complex x_overlap_oracle(double phi_s, double phi_o, double phi_i) {
    const auto e = [](double x) { return std::exp(Complex(0.0, x)); };
    return 0.25 * (e((phi_s + phi_o + phi_i) / 2.0) + e((phi_s - phi_o - phi_i) / 2.0) +
                   e((-phi_s + phi_o - phi_i) / 2.0) + e((-phi_s - phi_o + phi_i) / 2.0));
}

// Independent single-qubit reduced density matrix: forms the full 8x8
// density matrix and contracts index by index.
inline topo::Mat2 reduced_density_oracle(const topo::ThreeQubitState& psi, int k) {
    const int bit = 2 - k;
    topo::Mat2 rho;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            const int rk = (r >> bit) & 1, ck = (c >> bit) & 1;
            const int r_rest = r & ~(1 << bit), c_rest = c & ~(1 << bit);
            if (r_rest != c_rest) continue;
            rho(static_cast<std::size_t>(rk), static_cast<std::size_t>(ck)) +=
                psi.amps()[static_cast<std::size_t>(r)] *
                std::conj(psi.amps()[static_cast<std::size_t>(c)]);
        }
    return rho;
}

// Max entrywise deviation between two states after stripping the global
// phase of `a` relative to `b`.
inline double state_phase_deviation(const topo::ThreeQubitState& a,
                                    const topo::ThreeQubitState& b) {
    std::size_t imax = 0;
    double best = 0.0;
    for (std::size_t j = 0; j < 8; ++j)
        if (std::abs(b.amps()[j]) > best) {
            best = std::abs(b.amps()[j]);
            imax = j;
        }
    const Complex phase = a.amps()[imax] / b.amps()[imax];
    double dev = std::abs(std::abs(phase) - 1.0);
    for (std::size_t j = 0; j < 8; ++j)
        dev = std::max(dev, std::abs(a.amps()[j] - phase * b.amps()[j]));
    return dev;
}

inline double circ_dist(double a, double b) {
    return std::fabs(std::remainder(a - b, 2.0 * kPi));
}

} // namespace testutil
