#include "blochsep/measures.hpp"

#include <cmath>

#include "blochsep/errors.hpp"

namespace blochsep {

void MeasureSpec::validate() const {
    switch (family) {
        case MeasureFamily::Induced:
            if (k < 3) throw UnsupportedMeasure("induced measure requires K >= 3");
            break;
        case MeasureFamily::XStateInduced:
            if (k < 5)
                throw UnsupportedMeasure("xstate-induced requires K >= 5 (the det^(K-4) weight is unbounded below K=5)");
            break;
        default:
            break;
    }
}

std::string MeasureSpec::to_string() const {
    switch (family) {
        case MeasureFamily::HilbertSchmidt: return "hs";
        case MeasureFamily::Induced: return "induced:" + std::to_string(k);
        case MeasureFamily::Bures: return "bures";
        case MeasureFamily::RebitHS: return "rebit";
        case MeasureFamily::XStateHS: return "xstate-hs";
        case MeasureFamily::XStateInduced: return "xstate-induced:" + std::to_string(k);
    }
    return "?";
}

MeasureSpec MeasureSpec::parse(const std::string& token) {
    auto with_k = [&](const std::string& prefix, MeasureFamily fam) -> MeasureSpec {
        const std::string digits = token.substr(prefix.size());
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ConfigError("bad ancilla dimension in measure token: " + token);
        MeasureSpec s{fam, std::stoi(digits)};
        s.validate();
        return s;
    };
    if (token == "hs") return hilbert_schmidt();
    if (token == "bures") return bures();
    if (token == "rebit") return rebit_hs();
    if (token == "xstate-hs") return xstate_hs();
    if (token.rfind("induced:", 0) == 0) return with_k("induced:", MeasureFamily::Induced);
    if (token.rfind("xstate-induced:", 0) == 0) return with_k("xstate-induced:", MeasureFamily::XStateInduced);
    throw ConfigError("unknown measure token: " + token);
}

GinibreMatrix ginibre(int rows, int cols, bool real_only, RngStream& rng) {
    GinibreMatrix g;
    g.rows = rows;
    g.cols = cols;
    g.a.resize(static_cast<std::size_t>(rows) * cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            if (real_only) {
                g(i, j) = Complex(rng.normal(), 0.0);
            } else {
                double re, im;
                rng.normal_pair(re, im);
                g(i, j) = Complex(re, im);
            }
        }
    return g;
}

namespace {

// W += a a^dag for a column a of the Ginibre matrix. Accumulating columns
// keeps sample_induced O(1) in memory for any K and makes the K = 4 path
// draw-for-draw identical to sample_hs.
Density4 wishart_normalized(int cols, bool real_only, RngStream& rng) {
    for (;;) {
        CMat4 w;
        Complex col[4];
        for (int j = 0; j < cols; ++j) {
            for (int i = 0; i < 4; ++i) {
                if (real_only) {
                    col[i] = Complex(rng.normal(), 0.0);
                } else {
                    double re, im;
                    rng.normal_pair(re, im);
                    col[i] = Complex(re, im);
                }
            }
            for (int i = 0; i < 4; ++i)
                for (int m = 0; m < 4; ++m) w(i, m) += col[i] * std::conj(col[m]);
        }
        const double tr = w.trace().real();
        if (tr < 1e-300) continue;  // degenerate draw: resample silently
        const double inv = 1.0 / tr;
        Density4 rho;
        rho.real_only = real_only;
        if (real_only) {
            for (std::size_t i = 0; i < w.a.size(); ++i) rho.m.a[i] = Complex(w.a[i].real() * inv, 0.0);
        } else {
            for (std::size_t i = 0; i < w.a.size(); ++i) rho.m.a[i] = w.a[i] * inv;
        }
        for (int i = 0; i < 4; ++i) rho.m(i, i) = Complex(rho.m(i, i).real(), 0.0);
        return rho;
    }
}

}  // namespace

Density4 sample_hs(RngStream& rng) { return wishart_normalized(4, false, rng); }

Density4 sample_induced(int k, RngStream& rng) {
    if (k < 3) throw UnsupportedMeasure("induced measure requires K >= 3");
    return wishart_normalized(k, false, rng);
}

CMat4 haar_unitary(RngStream& rng) {
    // Modified Gram-Schmidt, applied twice for orthogonality at the 1e-14
    // level. MGS yields the QR representative with a real-positive R diagonal,
    // which is exactly the phase convention the Haar construction needs.
    const GinibreMatrix z = ginibre(4, 4, false, rng);
    Complex q[4][4];
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) q[i][j] = z(i, j);

    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < 4; ++j) {
            for (int kcol = 0; kcol < j; ++kcol) {
                Complex dot = 0.0;
                for (int i = 0; i < 4; ++i) dot += std::conj(q[i][kcol]) * q[i][j];
                for (int i = 0; i < 4; ++i) q[i][j] -= dot * q[i][kcol];
            }
            double nrm = 0.0;
            for (int i = 0; i < 4; ++i) nrm += std::norm(q[i][j]);
            const double inv = 1.0 / std::sqrt(nrm);
            for (int i = 0; i < 4; ++i) q[i][j] *= inv;
        }
    }
    CMat4 u;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) u(i, j) = q[i][j];
    return u;
}

Density4 sample_bures(RngStream& rng) {
    for (;;) {
        const GinibreMatrix g = ginibre(4, 4, false, rng);
        const CMat4 u = haar_unitary(rng);

        CMat4 iu = CMat4::identity();
        for (std::size_t i = 0; i < iu.a.size(); ++i) iu.a[i] += u.a[i];

        CMat4 m;  // m = (I+U) G
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Complex s = 0.0;
                for (int kk = 0; kk < 4; ++kk) s += iu(i, kk) * g(kk, j);
                m(i, j) = s;
            }

        CMat4 w = m * m.adjoint();
        const double tr = w.trace().real();
        if (tr < 1e-300) continue;
        const double inv = 1.0 / tr;
        Density4 rho;
        for (std::size_t i = 0; i < w.a.size(); ++i) rho.m.a[i] = w.a[i] * inv;
        for (int i = 0; i < 4; ++i) rho.m(i, i) = Complex(rho.m(i, i).real(), 0.0);
        // enforce exact Hermitian symmetry of the accumulated products
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                const Complex v = 0.5 * (rho.m(i, j) + std::conj(rho.m(j, i)));
                rho.m(i, j) = v;
                rho.m(j, i) = std::conj(v);
            }
        return rho;
    }
}

Density4 sample_rebit(RngStream& rng) { return wishart_normalized(5, true, rng); }

XStateCoords sample_xstate_hs(RngStream& rng, SamplerCounters* counters) {
    for (;;) {
        if (counters) {
            ++counters->attempts;
        }
        XStateCoords x;
        // uniform simplex: four iid Exp(1), normalized
        const double e1 = -std::log(rng.uniform_open());
        const double e2 = -std::log(rng.uniform_open());
        const double e3 = -std::log(rng.uniform_open());
        const double e4 = -std::log(rng.uniform_open());
        const double inv = 1.0 / (e1 + e2 + e3 + e4);
        x.p1 = e1 * inv;
        x.p2 = e2 * inv;
        x.p3 = e3 * inv;
        x.p4 = e4 * inv;
        x.x14 = rng.uniform01() - 0.5;
        x.y14 = rng.uniform01() - 0.5;
        x.x23 = rng.uniform01() - 0.5;
        x.y23 = rng.uniform01() - 0.5;
        if (x.p1 * x.p4 >= x.x14 * x.x14 + x.y14 * x.y14 &&
            x.p2 * x.p3 >= x.x23 * x.x23 + x.y23 * x.y23) {
            if (counters) ++counters->candidates;
            return x;
        }
    }
}

XStateCoords sample_xstate_induced(int k, RngStream& rng, SamplerCounters* counters) {
    if (k < 5) throw UnsupportedMeasure("xstate-induced requires K >= 5");
    for (;;) {
        const XStateCoords x = sample_xstate_hs(rng, counters);
        // det rho <= 1/256 on the body, so the weight is a valid probability
        double w = 256.0 * xstate_det(x);
        double accept = w;
        for (int i = 1; i < k - 4; ++i) accept *= w;
        if (rng.uniform01() < accept) return x;
    }
}

double xstate_det(const XStateCoords& x) {
    return (x.p1 * x.p4 - x.x14 * x.x14 - x.y14 * x.y14) *
           (x.p2 * x.p3 - x.x23 * x.x23 - x.y23 * x.y23);
}

bool xstate_separable(const XStateCoords& x) {
    return x.p1 * x.p4 >= x.x23 * x.x23 + x.y23 * x.y23 &&
           x.p2 * x.p3 >= x.x14 * x.x14 + x.y14 * x.y14;
}

void xstate_radii(const XStateCoords& x, double& r_a, double& r_b) {
    r_a = std::abs(x.p1 + x.p2 - x.p3 - x.p4);
    r_b = std::abs(x.p1 + x.p3 - x.p2 - x.p4);
}

Density4 materialize(const XStateCoords& x) {
    Density4 rho;
    rho.m(0, 0) = x.p1;
    rho.m(1, 1) = x.p2;
    rho.m(2, 2) = x.p3;
    rho.m(3, 3) = x.p4;
    rho.m(0, 3) = Complex(x.x14, x.y14);
    rho.m(3, 0) = Complex(x.x14, -x.y14);
    rho.m(1, 2) = Complex(x.x23, x.y23);
    rho.m(2, 1) = Complex(x.x23, -x.y23);
    return rho;
}

Density4 sample_dispatch(const MeasureSpec& spec, RngStream& rng, SamplerCounters* counters) {
    spec.validate();
    auto count_one = [&] {
        if (counters) {
            ++counters->attempts;
            ++counters->candidates;
        }
    };
    switch (spec.family) {
        case MeasureFamily::HilbertSchmidt:
            count_one();
            return sample_hs(rng);
        case MeasureFamily::Induced:
            count_one();
            return sample_induced(spec.k, rng);
        case MeasureFamily::Bures:
            count_one();
            return sample_bures(rng);
        case MeasureFamily::RebitHS:
            count_one();
            return sample_rebit(rng);
        case MeasureFamily::XStateHS:
            return materialize(sample_xstate_hs(rng, counters));
        case MeasureFamily::XStateInduced:
            return materialize(sample_xstate_induced(spec.k, rng, counters));
    }
    throw ConfigError("unreachable measure family");
}

}  // namespace blochsep
