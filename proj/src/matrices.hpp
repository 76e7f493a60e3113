// Small dense complex matrices (2x2 and 4x4), enough for single- and
// two-qubit operators. Row-major, value semantics throughout.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace topo {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <std::size_t N>
struct Mat {
    std::array<Complex, N * N> a{};

    static constexpr std::size_t dim = N;

    Complex& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

    static Mat identity() {
        Mat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    Mat operator*(const Mat& o) const {
        Mat r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const Complex v = (*this)(i, k);
                if (v == Complex{}) continue;
                for (std::size_t j = 0; j < N; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }

    Mat operator*(Complex s) const {
        Mat r = *this;
        for (auto& x : r.a) x *= s;
        return r;
    }

    Mat adjoint() const {
        Mat r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    std::array<Complex, N> apply(const std::array<Complex, N>& v) const {
        std::array<Complex, N> r{};
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    double max_abs_diff(const Mat& o) const {
        double d = 0.0;
        for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(a[i] - o.a[i]));
        return d;
    }

    bool is_unitary(double tol) const {
        return (adjoint() * *this).max_abs_diff(identity()) <= tol;
    }

    bool finite() const {
        for (const auto& x : a)
            if (!is_finite(x)) return false;
        return true;
    }
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

inline Mat2 mat2(Complex m00, Complex m01, Complex m10, Complex m11) {
    Mat2 m;
    m(0, 0) = m00;
    m(0, 1) = m01;
    m(1, 0) = m10;
    m(1, 1) = m11;
    return m;
}

inline Complex det(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

inline Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

// True when a == e^{i*delta} * b for some real delta.
template <std::size_t N>
bool equal_up_to_phase(const Mat<N>& a, const Mat<N>& b, double tol) {
    std::size_t imax = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < N * N; ++i)
        if (std::abs(b.a[i]) > best) {
            best = std::abs(b.a[i]);
            imax = i;
        }
    if (best < tol) return a.max_abs_diff(b) <= tol;
    const Complex phase = a.a[imax] / b.a[imax];
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    return a.max_abs_diff(b * phase) <= tol;
}

} // namespace topo
