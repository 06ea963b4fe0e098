#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace blochsep {

using Complex = std::complex<double>;

/// Dense N x N complex matrix with value semantics, row-major storage.
/// Sized for the two cases this code needs (N = 2 reduced states, N = 4 full states).
template <int N>
struct CMat {
    std::array<Complex, static_cast<std::size_t>(N) * N> a{};

    Complex& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * N + j]; }
    const Complex& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * N + j]; }

    static CMat zero() { return CMat{}; }

    static CMat identity() {
        CMat m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    CMat& operator+=(const CMat& o) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += o.a[k];
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] -= o.a[k];
        return *this;
    }
    CMat& operator*=(Complex s) {
        for (auto& x : a) x *= s;
        return *this;
    }

    friend CMat operator+(CMat l, const CMat& r) { return l += r; }
    friend CMat operator-(CMat l, const CMat& r) { return l -= r; }
    friend CMat operator*(CMat l, Complex s) { return l *= s; }
    friend CMat operator*(Complex s, CMat r) { return r *= s; }

    friend CMat operator*(const CMat& l, const CMat& r) {
        CMat out;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const Complex lik = l(i, k);
                if (lik == Complex{}) continue;
                for (int j = 0; j < N; ++j) out(i, j) += lik * r(k, j);
            }
        return out;
    }

    CMat adjoint() const {
        CMat out;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    CMat transpose() const {
        CMat out;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (int i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    /// max_{ij} |a_ij - conj(a_ji)|
    double hermiticity_defect() const {
        double d = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j)
                d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return d;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& x : a) s += std::norm(x);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& x : a) m = std::max(m, std::abs(x));
        return m;
    }

    bool all_finite() const {
        for (const auto& x : a)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
        return true;
    }
};

using CMat2 = CMat<2>;
using CMat4 = CMat<4>;

inline CMat4 kron(const CMat2& l, const CMat2& r) {
    CMat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int m = 0; m < 2; ++m) out(2 * i + k, 2 * j + m) = l(i, j) * r(k, m);
    return out;
}

}  // namespace blochsep
