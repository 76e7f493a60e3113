#include "invariants.hpp"

#include <cmath>
#include <numbers>

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;

Complex amp(const ThreeQubitState& psi, int s, int o, int i) {
    return psi.amps()[static_cast<std::size_t>(4 * s + 2 * o + i)];
}

} // namespace

double DensityMatrix2::purity() const {
    const Mat2 sq = m * m;
    return sq(0, 0).real() + sq(1, 1).real();
}

std::array<double, 2> DensityMatrix2::eigenvalues() const {
    // Hermitian 2x2: eigenvalues from trace and determinant.
    const double tr = m(0, 0).real() + m(1, 1).real();
    const double dt = det(m).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * dt));
    return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

DensityMatrix2 reduced_density(const ThreeQubitState& psi, int k) {
    if (k < 0 || k > 2) throw Error(Errc::InvalidArgument, "qubit index must be 0, 1 or 2");
    const int bit = 2 - k;
    int other[2];
    int n = 0;
    for (int q = 2; q >= 0; --q)
        if (q != bit) other[n++] = q;

    Mat2 rho;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Complex sum{};
            for (int rest = 0; rest < 4; ++rest) {
                const int common = (((rest >> 1) & 1) << other[0]) | ((rest & 1) << other[1]);
                const int ia = common | (a << bit);
                const int ib = common | (b << bit);
                sum += psi.amps()[static_cast<std::size_t>(ia)] *
                       std::conj(psi.amps()[static_cast<std::size_t>(ib)]);
            }
            rho(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = sum;
        }
    return DensityMatrix2{rho};
}

double three_tangle(const ThreeQubitState& psi) {
    const Complex a000 = amp(psi, 0, 0, 0), a001 = amp(psi, 0, 0, 1);
    const Complex a010 = amp(psi, 0, 1, 0), a011 = amp(psi, 0, 1, 1);
    const Complex a100 = amp(psi, 1, 0, 0), a101 = amp(psi, 1, 0, 1);
    const Complex a110 = amp(psi, 1, 1, 0), a111 = amp(psi, 1, 1, 1);

    const Complex d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 +
                       a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011;
    const Complex d2 = a000 * a111 * (a011 * a100 + a101 * a010 + a110 * a001) +
                       a011 * a100 * a101 * a010 + a011 * a100 * a110 * a001 +
                       a101 * a010 * a110 * a001;
    const Complex d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;

    return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

const char* slocc_name(SloccClass c) {
    switch (c) {
        case SloccClass::Product: return "product";
        case SloccClass::BiseparableA: return "biseparable-a";
        case SloccClass::BiseparableB: return "biseparable-b";
        case SloccClass::BiseparableC: return "biseparable-c";
        case SloccClass::WClass: return "w-class";
        default: return "ghz-class";
    }
}

SloccClass classify_slocc(const ThreeQubitState& psi, double tol) {
    if (tol <= 0.0) throw Error(Errc::InvalidArgument, "classification tolerance must be positive");
    const double band_lo = tol / 10.0, band_hi = tol * 10.0;
    const auto ambiguous = [&](double discriminant) {
        return discriminant >= band_lo && discriminant <= band_hi;
    };

    const double tau = three_tangle(psi);
    if (ambiguous(tau))
        throw Error(Errc::Borderline, "borderline classification: three-tangle " + std::to_string(tau) +
                                          " falls inside the tolerance band around " + std::to_string(tol));
    if (tau > tol) return SloccClass::GhzClass;

    std::array<double, 3> deficit{};
    for (int k = 0; k < 3; ++k) {
        deficit[static_cast<std::size_t>(k)] = 1.0 - reduced_density(psi, k).purity();
        if (ambiguous(deficit[static_cast<std::size_t>(k)]))
            throw Error(Errc::Borderline, "borderline classification: qubit " + std::to_string(k) +
                                              " purity sits inside the tolerance band");
    }
    const auto mixed = [&](int k) { return deficit[static_cast<std::size_t>(k)] > tol; };

    if (mixed(0) && mixed(1) && mixed(2)) return SloccClass::WClass;
    if (!mixed(0) && mixed(1) && mixed(2)) return SloccClass::BiseparableA;
    if (mixed(0) && !mixed(1) && mixed(2)) return SloccClass::BiseparableB;
    if (mixed(0) && mixed(1) && !mixed(2)) return SloccClass::BiseparableC;
    if (!mixed(0) && !mixed(1) && !mixed(2)) return SloccClass::Product;
    // A pure three-qubit state cannot have exactly two pure marginals.
    throw Error(Errc::Borderline, "borderline classification: inconsistent marginal purities");
}

FamilySpec x_class_family(Complex a, Complex b, Complex c, Complex d) {
    double n2 = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    if (std::abs(n2 - 1.0) > 1e-6)
        throw Error(Errc::InvalidArgument, "x_class coefficients must be normalized");
    for (Complex z : {a, b, c, d})
        if (std::abs(z) <= 1e-9)
            throw Error(Errc::InvalidArgument, "x_class requires all four coefficients nonzero");
    return FamilySpec{StateFamily::XClass, {a, b, c, d}};
}

FamilySpec bghz_family(Complex alpha, Complex beta) {
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1.0) > 1e-6)
        throw Error(Errc::InvalidArgument, "bghz coefficients must be normalized");
    if (std::abs(alpha) <= 1e-9 || std::abs(beta) <= 1e-9)
        throw Error(Errc::InvalidArgument, "bghz requires both coefficients nonzero");
    if (std::abs(std::abs(alpha) - std::abs(beta)) <= 1e-9)
        throw Error(Errc::InvalidArgument, "bghz requires |alpha| != |beta|");
    return FamilySpec{StateFamily::BiasedGhz, {alpha, beta}};
}

FamilySpec ghz_family() { return FamilySpec{StateFamily::Ghz, {}}; }

FamilySpec product_family() { return FamilySpec{StateFamily::Product, {}}; }

std::vector<double> diagonal_phase_spectrum(const FamilySpec& spec) {
    switch (spec.family) {
        case StateFamily::XClass:
            if (spec.params.size() != 4)
                throw Error(Errc::InvalidArgument, "x_class family takes four coefficients");
            // Cyclic endpoints lie on the lattice phi_k in pi*Z with equal
            // parity; the common overlap phase sweeps all four quarters.
            return {0.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0};
        case StateFamily::BiasedGhz:
            if (spec.params.size() != 2)
                throw Error(Errc::InvalidArgument, "bghz family takes two coefficients");
            return {0.0, kPi};
        case StateFamily::Ghz:
            // Diagonal evolutions only reach the even classes; the quarter
            // phases of this orbit need non-diagonal loops.
            return {0.0, kPi};
        case StateFamily::Product:
            // Simply connected orbit: only the trivial class is protected.
            return {0.0};
    }
    throw Error(Errc::InvalidArgument, "unreachable family");
}

} // namespace topo
