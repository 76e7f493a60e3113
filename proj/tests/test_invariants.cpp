#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace topo;
using namespace testutil;

namespace {

ThreeQubitState bghz_state(double alpha, double beta) {
    std::array<Complex, 8> amps{};
    amps[0] = alpha;
    amps[7] = beta;
    return ThreeQubitState::from_amplitudes(amps, kAllCircular, 1e-9);
}

} // namespace

TEST_CASE("reduced densities of the reference states") {
    const ThreeQubitState x = closed_form_state(make_recipe(RecipeKind::X));
    for (int k = 0; k < 3; ++k) {
        const Mat2 rho = reduced_density(x, k).m;
        CHECK(cnear(rho(0, 0), 0.5, 1e-12));
        CHECK(cnear(rho(1, 1), 0.5, 1e-12));
        CHECK(cnear(rho(0, 1), 0.0, 1e-12));
    }

    const ThreeQubitState prod = closed_form_state(make_recipe(RecipeKind::ProdX));
    CHECK(std::fabs(reduced_density(prod, 0).purity() - 1.0) < 1e-12);

    const ThreeQubitState bghz = bghz_state(0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
        const Mat2 rho = reduced_density(bghz, k).m;
        CHECK(cnear(rho(0, 0), 0.25, 1e-12));
        CHECK(cnear(rho(1, 1), 0.75, 1e-12));
        CHECK(cnear(rho(0, 1), 0.0, 1e-12));
    }
}

TEST_CASE("reduced density agrees with the full density-matrix contraction") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const ThreeQubitState psi = random_state(rng);
        for (int k = 0; k < 3; ++k) {
            const Mat2 impl = reduced_density(psi, k).m;
            const Mat2 oracle = reduced_density_oracle(psi, k);
            CHECK(impl.max_abs_diff(oracle) < 1e-12);
        }
    }
}

TEST_CASE("reduced density invariants hold on random states") {
    std::mt19937 rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const ThreeQubitState psi = random_state(rng);
        for (int k = 0; k < 3; ++k) {
            const DensityMatrix2 rho = reduced_density(psi, k);
            const auto ev = rho.eigenvalues();
            CHECK(std::fabs(ev[0] + ev[1] - 1.0) < 1e-12);
            CHECK(ev[0] > -1e-12);
            CHECK(ev[1] < 1.0 + 1e-12);
            CHECK(std::abs(rho.m(0, 1) - std::conj(rho.m(1, 0))) < 1e-12);
        }
    }
    CHECK_THROWS_AS(reduced_density(random_state(rng), 3), Error);
}

TEST_CASE("three-tangle reference values") {
    CHECK(std::fabs(three_tangle(closed_form_state(make_recipe(RecipeKind::Ghz))) - 1.0) < 1e-12);
    CHECK(std::fabs(three_tangle(closed_form_state(make_recipe(RecipeKind::X))) - 1.0) < 1e-12);
    CHECK(std::fabs(three_tangle(bghz_state(0.5, std::sqrt(3.0) / 2.0)) - 0.75) < 1e-12);
    CHECK(three_tangle(closed_form_state(make_recipe(RecipeKind::ProdX))) < 1e-12);
    CHECK(three_tangle(w_state()) < 1e-12);
}

TEST_CASE("three-tangle on Schmidt-form states is 4|alpha beta|^2") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 100; ++trial) {
        const double p = unit(rng);
        const Complex alpha = std::sqrt(p) * std::exp(Complex(0.0, angle(rng)));
        const Complex beta = std::sqrt(1.0 - p) * std::exp(Complex(0.0, angle(rng)));
        std::array<Complex, 8> amps{};
        amps[0] = alpha;
        amps[7] = beta;
        const ThreeQubitState psi = ThreeQubitState::from_amplitudes(amps, kAllCircular, 1e-9);
        CHECK(std::fabs(three_tangle(psi) - 4.0 * std::norm(alpha) * std::norm(beta)) < 1e-12);
    }
}

TEST_CASE("three-tangle is invariant under local unitaries and basis changes") {
    std::mt19937 rng(24);
    const ThreeQubitState x = closed_form_state(make_recipe(RecipeKind::X));
    for (int trial = 0; trial < 100; ++trial) {
        const ThreeQubitState psi = trial % 2 ? random_state(rng) : x;
        const double before = three_tangle(psi);
        const ThreeQubitState rotated =
            apply_local({random_su2(rng), Basis::Circular}, {random_su2(rng), Basis::Circular},
                        {random_su2(rng), Basis::Circular}, psi);
        CHECK(std::fabs(three_tangle(rotated) - before) < 1e-9);
        CHECK(std::fabs(three_tangle(change_basis(psi, kAllLinear)) - before) < 1e-9);
    }
}

TEST_CASE("slocc classification of the reference states") {
    CHECK(classify_slocc(closed_form_state(make_recipe(RecipeKind::Ghz))) == SloccClass::GhzClass);
    CHECK(classify_slocc(closed_form_state(make_recipe(RecipeKind::X))) == SloccClass::GhzClass);
    CHECK(classify_slocc(w_state()) == SloccClass::WClass);
    CHECK(classify_slocc(closed_form_state(make_recipe(RecipeKind::ProdX))) == SloccClass::Product);

    // |+> (x) Bell pair on the last two qubits: qubit 0 pure.
    std::array<Complex, 8> amps{};
    amps[0] = 1.0 / std::numbers::sqrt2; // |+> |++>
    amps[3] = 1.0 / std::numbers::sqrt2; // |+> |-->
    CHECK(classify_slocc(ThreeQubitState::from_amplitudes(amps, kAllCircular)) ==
          SloccClass::BiseparableA);

    std::array<Complex, 8> amps_b{};
    amps_b[0] = 1.0 / std::numbers::sqrt2; // |+ + +>
    amps_b[5] = 1.0 / std::numbers::sqrt2; // |- + ->  (qubit 1 pure)
    CHECK(classify_slocc(ThreeQubitState::from_amplitudes(amps_b, kAllCircular)) ==
          SloccClass::BiseparableB);

    std::array<Complex, 8> amps_c{};
    amps_c[0] = 1.0 / std::numbers::sqrt2; // |+ + +>
    amps_c[6] = 1.0 / std::numbers::sqrt2; // |- - +>  (qubit 2 pure)
    CHECK(classify_slocc(ThreeQubitState::from_amplitudes(amps_c, kAllCircular)) ==
          SloccClass::BiseparableC);
}

TEST_CASE("classification is basis independent") {
    const ThreeQubitState x = closed_form_state(make_recipe(RecipeKind::X));
    CHECK(classify_slocc(change_basis(x, kAllLinear)) == SloccClass::GhzClass);
    CHECK(classify_slocc(change_basis(w_state(), kAllLinear)) == SloccClass::WClass);
}

TEST_CASE("borderline discriminants are refused") {
    // Tangle right at the default tolerance: 4 |alpha beta|^2 = 1e-9.
    const double alpha = std::sqrt(std::sqrt(1e-9 / 4.0));
    const double a2 = alpha * alpha;
    const ThreeQubitState nearly = bghz_state(a2, std::sqrt(1.0 - a2 * a2));
    CHECK_THROWS_AS(classify_slocc(nearly), Error);
    CHECK_THROWS_AS(classify_slocc(nearly, -1.0), Error); // bad tolerance
    // With a coarse tolerance the state is indistinguishable from |--->.
    CHECK(classify_slocc(nearly, 1e-3) == SloccClass::Product);
}

TEST_CASE("attainable phase spectra per family") {
    const auto spec_x = diagonal_phase_spectrum(x_class_family(0.5, 0.5, 0.5, 0.5));
    REQUIRE(spec_x.size() == 4);
    CHECK(spec_x[0] == 0.0);
    CHECK(std::fabs(spec_x[1] - kPi / 2.0) < 1e-15);
    CHECK(std::fabs(spec_x[2] - kPi) < 1e-15);
    CHECK(std::fabs(spec_x[3] - 3.0 * kPi / 2.0) < 1e-15);

    const auto spec_b = diagonal_phase_spectrum(bghz_family(0.5, std::sqrt(3.0) / 2.0));
    REQUIRE(spec_b.size() == 2);
    CHECK(spec_b[0] == 0.0);
    CHECK(std::fabs(spec_b[1] - kPi) < 1e-15);

    const auto spec_g = diagonal_phase_spectrum(ghz_family());
    REQUIRE(spec_g.size() == 2);
    CHECK(std::fabs(spec_g[1] - kPi) < 1e-15);

    const auto spec_p = diagonal_phase_spectrum(product_family());
    REQUIRE(spec_p.size() == 1);
    CHECK(spec_p[0] == 0.0);
}

TEST_CASE("endpoint-lattice enumeration confirms the entangled-family spectra") {
    // X family: endpoints on pi Z with equal parity; collect the overlap
    // phase of the X state over a small lattice window.
    std::vector<double> seen_x;
    for (int ms = -2; ms <= 2; ++ms)
        for (int mo = -2; mo <= 2; ++mo)
            for (int mi = -2; mi <= 2; ++mi) {
                const Complex o = x_overlap_oracle(kPi * ms, kPi * mo, kPi * mi);
                if (std::fabs(std::abs(o) - 1.0) > 1e-12) continue; // not cyclic
                const double phi = std::remainder(std::arg(o), 2.0 * kPi);
                bool known = false;
                for (const double v : seen_x)
                    if (circ_dist(v, phi) < 1e-9) known = true;
                if (!known) seen_x.push_back(phi);
            }
    CHECK(seen_x.size() == 4);

    // Biased GHZ: cyclic iff the endpoint sum is a multiple of 2 pi.
    std::vector<double> seen_b;
    const double a2 = 0.25, b2 = 0.75;
    for (int n = -3; n <= 3; ++n) {
        const double sum = 2.0 * kPi * n;
        const Complex o = a2 * std::exp(Complex(0.0, sum / 2.0)) +
                          b2 * std::exp(Complex(0.0, -sum / 2.0));
        CHECK(std::fabs(std::abs(o) - 1.0) < 1e-12);
        const double phi = std::remainder(std::arg(o), 2.0 * kPi);
        bool known = false;
        for (const double v : seen_b)
            if (circ_dist(v, phi) < 1e-9) known = true;
        if (!known) seen_b.push_back(phi);
    }
    CHECK(seen_b.size() == 2);
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(x_class_family(0.0, 0.5, 0.5, std::sqrt(0.5)), Error); // zero coefficient
    CHECK_THROWS_AS(x_class_family(0.9, 0.9, 0.9, 0.9), Error);            // unnormalized
    CHECK_THROWS_AS(bghz_family(1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2), Error);
}
