#include "blochsep/quadrature.hpp"

#include <cmath>

#include "blochsep/errors.hpp"

namespace blochsep {

namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double fsum = f(c - x) + f(c + x);
        res_k += kWgk[j] * fsum;
        if (j % 2 == 1) res_g += kWg[j / 2] * fsum;
    }
    res_g *= h;
    res_k *= h;
    // |K - G| is a conservative error bound; fine for these cheap integrands.
    return {res_k, std::abs(res_k - res_g)};
}

double adaptive(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
    const PanelResult r = gk15(f, a, b);
    if (r.error <= tol || r.error <= 1e-17 * std::abs(r.kronrod)) return r.kronrod;
    if (depth > 48) throw NoConvergence("quad1d: refinement budget exhausted");
    const double c = 0.5 * (a + b);
    return adaptive(f, a, c, 0.5 * tol, depth + 1) + adaptive(f, c, b, 0.5 * tol, depth + 1);
}

}  // namespace

double quad1d(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    if (tol < 1e-15) tol = 1e-15;
    return adaptive(f, a, b, tol, 0);
}

double quad2d(const std::function<double(double, double)>& f, double tol) {
    // lower triangle: rB in [0, rA]; upper: rB in [rA, 1]
    const double inner_tol = tol * 0.05;
    auto lower = [&](double ra) {
        if (ra <= 0.0) return 0.0;
        return quad1d([&](double rb) { return f(ra, rb); }, 0.0, ra, inner_tol);
    };
    auto upper = [&](double ra) {
        if (ra >= 1.0) return 0.0;
        return quad1d([&](double rb) { return f(ra, rb); }, ra, 1.0, inner_tol);
    };
    const double lo = quad1d(lower, 0.0, 1.0, tol * 0.5);
    const double hi = quad1d(upper, 0.0, 1.0, tol * 0.5);
    return lo + hi;
}

}  // namespace blochsep
