#pragma once

#include <functional>

namespace blochsep {

/// Two-qubit separability probability under random induced measure with
/// ancilla dimension K = k + 4 (k = 0 is Hilbert-Schmidt). Evaluated through
/// log-gamma; exact rationals at small k. Throws DomainError for k < -1.
double complex_rule_separability(int k);

/// X-state separability probability under induced measure with K = k + 4
/// (k >= 1): 1 - 2 Gamma(2k+4)^2 / (Gamma(k+2) Gamma(3k+6)).
/// Throws DomainError for k < 0.
double cfd_separability(int k);

/// A surface over [0,1]^2 defined by two closed-form branches meeting on the
/// diagonal. The branches are kept distinct so the diagonal-agreement
/// contract can be checked directly.
struct BranchedSurface {
    std::function<double(double, double)> above;  // valid for rA >= rB
    std::function<double(double, double)> below;  // valid for rA <= rB

    double operator()(double r_a, double r_b) const {
        return r_a >= r_b ? above(r_a, r_b) : below(r_a, r_b);
    }
    double diagonal_defect(double r) const;
};

// --- flat (Hilbert-Schmidt) X-state model ---
BranchedSurface v_tot_hs_surface();
BranchedSurface v_sep_hs_surface();
BranchedSurface p_biv_hs_surface();
double v_tot_hs(double r_a, double r_b);
double v_sep_hs(double r_a, double r_b);
double p_biv_hs(double r_a, double r_b);

/// Cross-sections of p_biv_hs in closed form.
double p_diag_hs(double r);           // rA = rB = r
double p_antidiag_hs(double r_a);     // rB = 1 - rA
double p_fixed_rb_hs(double r_a, double r_b);  // rb in {0, 1/2, 1}; DomainError otherwise

// --- induced K = 5 X-state model ---
BranchedSurface v_tot_k5_surface();
BranchedSurface v_sep_k5_surface();
BranchedSurface p_biv_k5_surface();
double v_tot_k5(double r_a, double r_b);
double v_sep_k5(double r_a, double r_b);
double p_biv_k5(double r_a, double r_b);
double p_diag_k5(double r);

// --- induced K = 3 X-state model (total volume only; no closed separable form) ---
BranchedSurface v_tot_k3_surface();
double v_tot_k3(double r_a, double r_b);
double k3_total_volume();       // (2/3) pi^2 log^2 2
double k3_sep_probability();    // 1/3

/// Univariate total-volume marginal for K in {3,4,5,6,7}.
/// (K=6 uses denominator 2^18 3^2 5^2 7^2; K=7 uses (1-r^2)^9.)
double marginal_volume(int k_dim, double r);
/// Separable-volume marginal of the K = 5 model.
double marginal_volume_sep_k5(double r);

/// Stated total volumes of the induced X-state models.
double total_volume(int k_dim);  // K in {3,4,5,6,7}

/// Separability probability at fixed Fano correlation M_zz on the negative
/// branch: 3 (M+1)^2 / (2 (M-2)(2M-1)), M in [-1, 0].
double mzz_curve_negative(double m);

enum class ContinuumLocus { Diagonal, Antidiagonal };

/// Separability probability of the rA = rB (or rA + rB = 1) continuum of
/// X-states under the flat measure, as a ratio of quadratures of the
/// separable and total volume surfaces restricted to the locus.
double diag_continuum_sepprob(ContinuumLocus locus);

/// Golden-section maximization on [a, b]; returns (argmax, max).
struct Extremum {
    double x = 0;
    double value = 0;
};
Extremum maximize(const std::function<double(double)>& f, double a, double b, double xtol = 1e-10);

/// Bisection root of f on [a, b] (f(a), f(b) must bracket a sign change).
double find_root(const std::function<double(double)>& f, double a, double b, double xtol = 1e-12);

}  // namespace blochsep
