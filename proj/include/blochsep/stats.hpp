#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "blochsep/measures.hpp"
#include "blochsep/qmat.hpp"

namespace blochsep {

/// 95% two-sided normal quantile used for every confidence band.
inline constexpr double kZ95 = 1.959964;

enum class SepClass {
    Entangled,       // det rho^PT < 0
    SepPtDominant,   // det rho^PT >= det rho and det rho^PT >= 0
    SepRhoDominant,  // 0 <= det rho^PT < det rho
};

struct SampleRecord {
    double r_a = 0, r_b = 0;
    double det_rho = 0, det_rho_pt = 0;
    SepClass cls = SepClass::Entangled;
    double mzz = 0;
    double prod_dist = 0;
};

/// Full per-state reduction: radii of both subsystems, both determinants,
/// separability class, Fano zz correlation and product distance.
SampleRecord classify(const Density4& rho);

/// floor(100 r) with r >= 1 clamped into the last bin.
/// Throws OutOfRange outside [0, 1 + 1e-9].
int bin_index(double r);

struct Moments {
    double sr_a = 0, sr_b = 0, sr_a2 = 0, sr_b2 = 0, sr_ab = 0;

    void add(double r_a, double r_b) {
        sr_a += r_a;
        sr_b += r_b;
        sr_a2 += r_a * r_a;
        sr_b2 += r_b * r_b;
        sr_ab += r_a * r_b;
    }
    void merge(const Moments& o) {
        sr_a += o.sr_a;
        sr_b += o.sr_b;
        sr_a2 += o.sr_a2;
        sr_b2 += o.sr_b2;
        sr_ab += o.sr_ab;
    }
};

/// Mergeable accumulator for one run: exact integer counters over the
/// (r_A, r_B) grid, Bloch-radius moment sums, and the two auxiliary 1D
/// histograms (product distance and M_zz).
struct JointHistogram {
    static constexpr int kBins = 100;
    static constexpr int kCells = kBins * kBins;
    // sqrt(3)/2 (the Bell-state distance, near-extremal) plus headroom;
    // larger values clamp into the top bin.
    static constexpr double kProdDistMax = 0.96602540378443865;

    MeasureSpec measure;
    std::uint64_t base_seed = 0;

    std::uint64_t n_samples = 0;
    std::uint64_t n_sep = 0;
    std::uint64_t n_sep_pt_dom = 0;

    std::vector<std::uint64_t> total = std::vector<std::uint64_t>(kCells, 0);
    std::vector<std::uint64_t> sep = std::vector<std::uint64_t>(kCells, 0);
    std::vector<std::uint64_t> sep_pt_dom = std::vector<std::uint64_t>(kCells, 0);

    Moments mom_all, mom_sep;

    std::array<std::uint64_t, kBins> pd_total{}, pd_sep{};
    std::array<std::uint64_t, kBins> mzz_total{}, mzz_sep{};

    // diagnostics
    std::uint64_t draw_attempts = 0;
    std::uint64_t draw_candidates = 0;
    std::uint64_t near_zero_det_pt = 0;  // |det rho^PT| < 1e-13
    double max_abs_det_rho = 0.0;

    void accumulate(const SampleRecord& rec);

    /// Counter part of accumulate() only. The parallel runner uses this and
    /// carries moment sums per work chunk so that the final moment reduction
    /// happens in a fixed order, independent of the worker count.
    void accumulate_counters(const SampleRecord& rec);

    /// Exact counter addition; moments add in call order. Throws ConfigError
    /// on meta mismatch.
    void merge(const JointHistogram& other);
};

/// out[i][j] = in[i][j] + in[j][i]; used for surface rendering and count
/// fits only, never for probability estimates.
struct SymmetrizedGrid {
    std::vector<std::uint64_t> total, sep, sep_pt_dom;
};
SymmetrizedGrid symmetrize(const JointHistogram& h);

struct ProfileBin {
    double r_mid = 0;
    std::uint64_t n_tot = 0, n_num = 0;
    double p_hat = 0;           // meaningful only when occupied
    double ci_lo = 0, ci_hi = 0;  // conjecture-centered band
    bool occupied = false;
};

struct RadialProfile {
    double p0 = 0;  // band center (the conjectured probability)
    std::array<ProfileBin, JointHistogram::kBins> bins{};
};

/// Pools rows and columns (both Bloch radii). Band: p0 +- z95 sqrt(p0(1-p0)/n).
RadialProfile marginal_profile(const JointHistogram& h, double p0);

/// Same pooling with the PT-dominant separable counter in the numerator.
RadialProfile split_profile(const JointHistogram& h, double p0);

struct CurvePoint {
    double r_mid = 0;
    std::uint64_t n_tot = 0, n_sep = 0;
    double p_hat = 0;
};

/// Cells (i, i) of the raw grid.
std::vector<CurvePoint> diagonal_curve(const JointHistogram& h);
/// Cells (i, 99 - i): bin-center pairs summing to exactly 1.
std::vector<CurvePoint> antidiagonal_curve(const JointHistogram& h);

enum class Subset { All, Separable };

/// Pearson correlation of (r_A, r_B) from the streaming moments.
/// Throws InsufficientData when n < 2 or a variance vanishes.
double correlation(const JointHistogram& h, Subset subset);

struct FitResult {
    double c = 0;
    double p = 0;
    double rss = 0;
    int n_bins_used = 0;
    bool reliable = false;  // n_bins_used >= 10
};

/// Weighted least squares of ln(n_i) - (d-1) ln(r_i) on ln(1 - r_i^2), weights
/// n_i, bins with r_mid > 0.99 excluded. d is the dimensionality of the Bloch
/// vector (3 for qubits, 2 for rebits, 1 for X-states).
/// Throws InsufficientBins unless >= 10 bins hold at least 100 counts.
FitResult fit_exponent(std::span<const std::uint64_t> counts, int area_dim);

enum class Surface {
    QNull,  // 16 pi^2 rA^2 rB^2 (1-rA^2)^6 (1-rB^2)^6
    QAlt,   // 16 pi^2 rA^2 rB^2 (1-rA^2)^8 (1-rB^2)^8 / (1-rA^2 rB^2)^13
    Tung,   // 2 rA + 2 rB - 4 rA rB          (uniform marginals)
    Tung2,  // degree-3 refinement with the same marginal property
};

double reference_surface(Surface s, double r_a, double r_b);

/// Fitted models for the Hilbert-Schmidt diagonal / antidiagonal sections.
double hs_diag_model(double r);
double hs_antidiag_model(double r_a);

/// Least-squares scale fit of the surface to a symmetrized count grid;
/// returns counts - a* surface(bin centers).
std::vector<double> residual_grid(const std::vector<std::uint64_t>& sym_counts, Surface s);

/// pHat grid minus scale * surface; cells with no data are NaN.
std::vector<double> residual_grid_prob(const JointHistogram& h, Surface s, double scale);

/// ratio_i = pQubit_i / pRebit_i^2 on aligned diagonal cells; bins where
/// either curve has no data (or no separable rebit counts) are skipped.
std::vector<std::pair<double, double>> dyson_ratio(const std::vector<CurvePoint>& qubit_diag,
                                                   const std::vector<CurvePoint>& rebit_diag);

/// Spearman rank correlation with midrank ties.
double spearman(std::span<const double> xs, std::span<const double> ys);

}  // namespace blochsep
