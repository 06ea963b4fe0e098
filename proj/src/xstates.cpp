#include "blochsep/xstates.hpp"

#include <cmath>

#include "blochsep/errors.hpp"
#include "blochsep/quadrature.hpp"

namespace blochsep {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kPi2 = kPi * kPi;
const double kLog2Sq = std::log(2.0) * std::log(2.0);

double pow_int(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace

double complex_rule_separability(int k) {
    if (k < -1) throw DomainError("complex_rule_separability: k >= -1 required");
    const double kk = k;
    const double log_num = std::log(3.0) + (kk + 3.0) * std::log(4.0) +
                           std::log(2.0 * kk * (kk + 7.0) + 25.0) + std::lgamma(kk + 3.5) +
                           std::lgamma(2.0 * kk + 9.0);
    const double log_den = 0.5 * std::log(kPi) + std::lgamma(3.0 * kk + 13.0);
    return 1.0 - std::exp(log_num - log_den);
}

double cfd_separability(int k) {
    if (k < 0) throw DomainError("cfd_separability: k >= 0 required");
    const double kk = k;
    const double log_ratio = std::log(2.0) + 2.0 * std::lgamma(2.0 * kk + 4.0) -
                             std::lgamma(kk + 2.0) - std::lgamma(3.0 * kk + 6.0);
    return 1.0 - std::exp(log_ratio);
}

double BranchedSurface::diagonal_defect(double r) const { return std::abs(above(r, r) - below(r, r)); }

// ---------- flat HS X-state model ----------

namespace {

double vtot_hs_above(double ra, double rb) {
    return -(kPi2 / 960.0) * pow_int(ra - 1.0, 3) * (ra * (ra + 3.0) - 5.0 * rb * rb + 1.0);
}

double vsep_hs_above(double ra, double rb) {
    const double rb2 = rb * rb;
    const double poly = 5.0 * (ra + 3.0) * rb2 * rb2 - 10.0 * (3.0 * ra + 1.0) * rb2 +
                        8.0 * ra * ra + 9.0 * ra + 3.0;
    return -(kPi2 / 7680.0) * pow_int(ra - 1.0, 3) * poly;
}

double pbiv_hs_above(double ra, double rb) {
    const double rb2 = rb * rb;
    const double num = 5.0 * (ra + 3.0) * rb2 * rb2 - 10.0 * (3.0 * ra + 1.0) * rb2 +
                       8.0 * ra * ra + 9.0 * ra + 3.0;
    const double den = 8.0 * (ra * (ra + 3.0) - 5.0 * rb2 + 1.0);
    if (den == 0.0) return 0.0;  // only the (1,1) corner; the limit is 0
    return num / den;
}

}  // namespace

BranchedSurface v_tot_hs_surface() {
    return {vtot_hs_above, [](double ra, double rb) { return vtot_hs_above(rb, ra); }};
}
BranchedSurface v_sep_hs_surface() {
    return {vsep_hs_above, [](double ra, double rb) { return vsep_hs_above(rb, ra); }};
}
BranchedSurface p_biv_hs_surface() {
    return {pbiv_hs_above, [](double ra, double rb) { return pbiv_hs_above(rb, ra); }};
}

double v_tot_hs(double r_a, double r_b) { return r_a >= r_b ? vtot_hs_above(r_a, r_b) : vtot_hs_above(r_b, r_a); }
double v_sep_hs(double r_a, double r_b) { return r_a >= r_b ? vsep_hs_above(r_a, r_b) : vsep_hs_above(r_b, r_a); }
double p_biv_hs(double r_a, double r_b) { return r_a >= r_b ? pbiv_hs_above(r_a, r_b) : pbiv_hs_above(r_b, r_a); }

double p_diag_hs(double r) {
    return -(r - 1.0) * (5.0 * r * (r * (r + 5.0) + 3.0) + 3.0) / (32.0 * r + 8.0);
}

double p_antidiag_hs(double r_a) {
    if (2.0 * r_a > 1.0) {
        const double num = (r_a - 2.0) * r_a * (5.0 * r_a * (r_a * r_a + r_a - 10.0) + 28.0) + 8.0;
        return -num / (8.0 * (r_a * (4.0 * r_a - 13.0) + 4.0));
    }
    const double num = r_a * (r_a * (5.0 * r_a * ((r_a - 4.0) * r_a - 6.0) + 32.0) + 25.0) - 20.0;
    return num / (8.0 * (r_a * (4.0 * r_a + 5.0) - 5.0));
}

double p_fixed_rb_hs(double r_a, double r_b) {
    if (r_b == 0.0) {
        return (r_a * (8.0 * r_a + 9.0) + 3.0) / (8.0 * (r_a * (r_a + 3.0) + 1.0));
    }
    if (r_b == 0.5) {
        if (r_a > 0.5)
            return (r_a * (128.0 * r_a + 29.0) + 23.0) / (32.0 * (4.0 * r_a * (r_a + 3.0) - 1.0));
        const double ra2 = r_a * r_a;
        return (35.0 * ra2 * ra2 - 50.0 * ra2 + 19.0) / (44.0 - 80.0 * ra2);
    }
    if (r_b == 1.0) return 0.0;
    throw DomainError("p_fixed_rb_hs: closed forms exist for rb in {0, 1/2, 1}");
}

// ---------- induced K = 5 X-state model ----------

namespace {

double vtot_k5_above(double ra, double rb) {
    const double rb2 = rb * rb;
    const double poly = -6.0 * ra * (ra + 5.0) * rb2 + ra * (ra + 1.0) * (ra * (ra + 4.0) + 5.0) +
                        21.0 * rb2 * rb2 - 6.0 * rb2 + 1.0;
    return -(kPi2 / 1290240.0) * pow_int(ra - 1.0, 5) * poly;
}

double vsep_k5_above(double ra, double rb) {
    const double rb2 = rb * rb;
    const double rb4 = rb2 * rb2;
    const double poly = -21.0 * (ra + 5.0) * rb4 * rb2 + 63.0 * (5.0 * ra + 1.0) * rb4 -
                        27.0 * ra * (8.0 * ra + 5.0) * rb2 +
                        ra * (8.0 * ra * (ra + 2.0) * (ra + 3.0) + 25.0) - 27.0 * rb2 + 5.0;
    return -(kPi2 / 10321920.0) * pow_int(ra - 1.0, 5) * poly;
}

double pbiv_k5_above(double ra, double rb) {
    const double rb2 = rb * rb;
    const double rb4 = rb2 * rb2;
    const double num = -21.0 * (ra + 5.0) * rb4 * rb2 + 63.0 * (5.0 * ra + 1.0) * rb4 -
                       27.0 * ra * (8.0 * ra + 5.0) * rb2 +
                       ra * (8.0 * ra * (ra + 2.0) * (ra + 3.0) + 25.0) - 27.0 * rb2 + 5.0;
    const double den = 8.0 * (-6.0 * ra * (ra + 5.0) * rb2 + ra * (ra + 1.0) * (ra * (ra + 4.0) + 5.0) +
                              21.0 * rb4 - 6.0 * rb2 + 1.0);
    if (den == 0.0) return 0.0;
    return num / den;
}

}  // namespace

BranchedSurface v_tot_k5_surface() {
    return {vtot_k5_above, [](double ra, double rb) { return vtot_k5_above(rb, ra); }};
}
BranchedSurface v_sep_k5_surface() {
    return {vsep_k5_above, [](double ra, double rb) { return vsep_k5_above(rb, ra); }};
}
BranchedSurface p_biv_k5_surface() {
    return {pbiv_k5_above, [](double ra, double rb) { return pbiv_k5_above(rb, ra); }};
}

double v_tot_k5(double r_a, double r_b) { return r_a >= r_b ? vtot_k5_above(r_a, r_b) : vtot_k5_above(r_b, r_a); }
double v_sep_k5(double r_a, double r_b) { return r_a >= r_b ? vsep_k5_above(r_a, r_b) : vsep_k5_above(r_b, r_a); }
double p_biv_k5(double r_a, double r_b) { return r_a >= r_b ? pbiv_k5_above(r_a, r_b) : pbiv_k5_above(r_b, r_a); }

double p_diag_k5(double r) {
    return (1.0 - r) * (r * (21.0 * r * (r * (r + 8.0) + 6.0) + 40.0) + 5.0) /
           (8.0 * (r * (16.0 * r + 7.0) + 1.0));
}

// ---------- induced K = 3 X-state model ----------

namespace {
double vtot_k3_above(double ra, double /*rb*/) { return -2.0 * kPi2 * kLog2Sq * (ra - 1.0); }
}  // namespace

BranchedSurface v_tot_k3_surface() {
    return {vtot_k3_above, [](double ra, double rb) { return vtot_k3_above(rb, ra); }};
}

double v_tot_k3(double r_a, double r_b) { return r_a >= r_b ? vtot_k3_above(r_a, r_b) : vtot_k3_above(r_b, r_a); }

double k3_total_volume() { return (2.0 / 3.0) * kPi2 * kLog2Sq; }
double k3_sep_probability() { return 1.0 / 3.0; }

double marginal_volume(int k_dim, double r) {
    const double u = 1.0 - r * r;
    switch (k_dim) {
        case 3: return kPi2 * u * kLog2Sq;
        case 4: return kPi2 / 2304.0 * pow_int(u, 3);
        case 5: return kPi2 * pow_int(u, 5) / 3686400.0;
        case 6: return kPi2 * pow_int(u, 7) / 2890137600.0;  // 2^18 3^2 5^2 7^2
        case 7: return kPi2 * pow_int(u, 9) / 1664719257600.0;
        default: throw DomainError("marginal_volume: K in {3,4,5,6,7}");
    }
}

double marginal_volume_sep_k5(double r) {
    const double u = 1.0 - r * r;
    return kPi2 * pow_int(u, 5) / 5734400.0;
}

double total_volume(int k_dim) {
    switch (k_dim) {
        case 3: return k3_total_volume();
        case 4: return kPi2 / 5040.0;
        case 5: return kPi2 / 9979200.0;
        case 6: return kPi2 / 9081072000.0;
        case 7: return kPi2 / 5866372512000.0;
        default: throw DomainError("total_volume: K in {3,4,5,6,7}");
    }
}

double mzz_curve_negative(double m) {
    if (m < -1.0 || m > 0.0) throw DomainError("mzz_curve_negative: M in [-1, 0]");
    return 3.0 * (m + 1.0) * (m + 1.0) / (2.0 * (m - 2.0) * (2.0 * m - 1.0));
}

double diag_continuum_sepprob(ContinuumLocus locus) {
    if (locus == ContinuumLocus::Diagonal) {
        const double num = quad1d([](double r) { return v_sep_hs(r, r); }, 0.0, 1.0, 1e-13);
        const double den = quad1d([](double r) { return v_tot_hs(r, r); }, 0.0, 1.0, 1e-13);
        return num / den;
    }
    // the branch switches at r = 1/2 on the antidiagonal; integrate each half
    auto num_f = [](double r) { return v_sep_hs(r, 1.0 - r); };
    auto den_f = [](double r) { return v_tot_hs(r, 1.0 - r); };
    const double num = quad1d(num_f, 0.0, 0.5, 1e-13) + quad1d(num_f, 0.5, 1.0, 1e-13);
    const double den = quad1d(den_f, 0.0, 0.5, 1e-13) + quad1d(den_f, 0.5, 1.0, 1e-13);
    return num / den;
}

Extremum maximize(const std::function<double(double)>& f, double a, double b, double xtol) {
    const double phi = 0.6180339887498948482;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

double find_root(const std::function<double(double)>& f, double a, double b, double xtol) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) throw DomainError("find_root: endpoints do not bracket a root");
    while (b - a > xtol) {
        const double c = 0.5 * (a + b);
        const double fc = f(c);
        if (fc == 0.0) return c;
        if ((fc > 0.0) == (fa > 0.0)) {
            a = c;
            fa = fc;
        } else {
            b = c;
            fb = fc;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace blochsep
