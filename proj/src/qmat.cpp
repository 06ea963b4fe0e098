#include "blochsep/qmat.hpp"

#include <algorithm>
#include <cmath>

#include "blochsep/errors.hpp"

namespace blochsep {

Qubit2 partial_trace(const Density4& rho, Subsystem keep) {
    Qubit2 q;
    if (keep == Subsystem::A) {
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c) q.m(a, c) = rho.m(2 * a + 0, 2 * c + 0) + rho.m(2 * a + 1, 2 * c + 1);
    } else {
        for (int b = 0; b < 2; ++b)
            for (int d = 0; d < 2; ++d) q.m(b, d) = rho.m(0 + b, 0 + d) + rho.m(2 + b, 2 + d);
    }
    q.bx = 2.0 * q.m(0, 1).real();
    q.by = -2.0 * q.m(0, 1).imag();
    q.bz = (q.m(0, 0) - q.m(1, 1)).real();
    return q;
}

double bloch_radius(const Qubit2& q) {
    double purity = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) purity += (q.m(i, j) * q.m(j, i)).real();
    const double r2 = 2.0 * purity - 1.0;
    return std::sqrt(std::clamp(r2, 0.0, 1.0));
}

CMat4 partial_transpose(const Density4& rho) {
    CMat4 out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) out(2 * a + b, 2 * c + d) = rho.m(2 * a + d, 2 * c + b);
    return out;
}

Complex det4(const CMat4& m) {
    // LU with partial pivoting on a local copy.
    CMat4 u = m;
    int sign = 1;
    for (int k = 0; k < 4; ++k) {
        int piv = k;
        double best = std::abs(u(k, k));
        for (int i = k + 1; i < 4; ++i) {
            const double v = std::abs(u(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < 4; ++j) std::swap(u(k, j), u(piv, j));
            sign = -sign;
        }
        const Complex inv = 1.0 / u(k, k);
        for (int i = k + 1; i < 4; ++i) {
            const Complex f = u(i, k) * inv;
            u(i, k) = f;
            for (int j = k + 1; j < 4; ++j) u(i, j) -= f * u(k, j);
        }
    }
    Complex det = u(0, 0) * u(1, 1) * u(2, 2) * u(3, 3);
    return static_cast<double>(sign) * det;
}

double fano_mzz(const Density4& rho) {
    return (rho.m(0, 0) - rho.m(1, 1) - rho.m(2, 2) + rho.m(3, 3)).real();
}

double product_distance(const Density4& rho) {
    const Qubit2 qa = partial_trace(rho, Subsystem::A);
    const Qubit2 qb = partial_trace(rho, Subsystem::B);
    const CMat4 diff = rho.m - kron(qa.m, qb.m);
    return diff.frobenius_norm();
}

namespace {

// Cyclic Jacobi sweeps for a complex Hermitian matrix. The off-diagonal pivot
// is phased real, then annihilated by the classic symmetric rotation.
template <int N>
std::array<double, N> jacobi_eigenvalues(CMat<N> a) {
    const double scale = std::max(a.max_abs(), 1e-300);
    if (a.hermiticity_defect() > 1e-10 * std::max(1.0, scale))
        throw NonHermitianInput("eig_hermitian: matrix is not Hermitian within tolerance");

    // Work on the Hermitian average so rounding asymmetry cannot accumulate.
    for (int i = 0; i < N; ++i) {
        a(i, i) = Complex(a(i, i).real(), 0.0);
        for (int j = i + 1; j < N; ++j) {
            const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }

    const double tol = 1e-15 * std::max(1.0, scale);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= tol) break;

        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag <= tol * 1e-2) continue;
                const Complex phase = a(p, q) / mag;  // a_pq = mag * phase
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // J(p,p)=c, J(p,q)=s, J(q,p)=-s*conj(phase), J(q,q)=c*conj(phase)
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);
                for (int r = 0; r < N; ++r) {  // A <- A J
                    const Complex arp = a(r, p), arq = a(r, q);
                    a(r, p) = arp * c + arq * jqp;
                    a(r, q) = arp * s + arq * jqq;
                }
                for (int r = 0; r < N; ++r) {  // A <- J^H A
                    const Complex apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr + std::conj(jqp) * aqr;
                    a(q, r) = s * apr + std::conj(jqq) * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);
            }
        }
    }

    std::array<double, N> ev;
    for (int i = 0; i < N; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

std::array<double, 2> eig_hermitian(const CMat2& m) { return jacobi_eigenvalues<2>(m); }
std::array<double, 4> eig_hermitian(const CMat4& m) { return jacobi_eigenvalues<4>(m); }

DensityCheck check_density(const Density4& rho) {
    DensityCheck c;
    c.finite = rho.m.all_finite();
    if (!c.finite) return c;
    c.hermiticity_defect = rho.m.hermiticity_defect();
    const Complex tr = rho.m.trace();
    c.trace_defect = std::max(std::abs(tr.real() - 1.0), std::abs(tr.imag()));
    c.min_eigenvalue = eig_hermitian(rho.m)[0];
    double mi = 0.0;
    for (const auto& x : rho.m.a) mi = std::max(mi, std::abs(x.imag()));
    c.max_imag = mi;
    return c;
}

}  // namespace blochsep
