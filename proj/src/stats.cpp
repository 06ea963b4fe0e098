#include "blochsep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "blochsep/errors.hpp"

namespace blochsep {

SampleRecord classify(const Density4& rho) {
    SampleRecord rec;
    const Qubit2 qa = partial_trace(rho, Subsystem::A);
    const Qubit2 qb = partial_trace(rho, Subsystem::B);
    rec.r_a = bloch_radius(qa);
    rec.r_b = bloch_radius(qb);
    rec.det_rho = det4(rho.m).real();
    rec.det_rho_pt = det4(partial_transpose(rho)).real();
    if (rec.det_rho_pt < 0.0)
        rec.cls = SepClass::Entangled;
    else if (rec.det_rho_pt >= rec.det_rho)
        rec.cls = SepClass::SepPtDominant;
    else
        rec.cls = SepClass::SepRhoDominant;
    rec.mzz = fano_mzz(rho);
    const CMat4 diff = rho.m - kron(qa.m, qb.m);
    rec.prod_dist = diff.frobenius_norm();
    return rec;
}

int bin_index(double r) {
    if (r < 0.0 || r > 1.0 + 1e-9) throw OutOfRange("bin_index: radius outside [0, 1]");
    if (r >= 1.0) return JointHistogram::kBins - 1;
    return static_cast<int>(r * JointHistogram::kBins);
}

namespace {

int clamped_bin(double v, double lo, double hi) {
    const double t = (v - lo) / (hi - lo);
    int i = static_cast<int>(t * JointHistogram::kBins);
    return std::clamp(i, 0, JointHistogram::kBins - 1);
}

}  // namespace

void JointHistogram::accumulate_counters(const SampleRecord& rec) {
    const int ia = bin_index(rec.r_a);
    const int ib = bin_index(rec.r_b);
    const int cell = ia * kBins + ib;
    const bool is_sep = rec.cls != SepClass::Entangled;

    ++n_samples;
    ++total[cell];

    const int pd = clamped_bin(rec.prod_dist, 0.0, kProdDistMax);
    const int mz = clamped_bin(rec.mzz, -1.0, 1.0);
    ++pd_total[pd];
    ++mzz_total[mz];

    if (is_sep) {
        ++n_sep;
        ++sep[cell];
        ++pd_sep[pd];
        ++mzz_sep[mz];
        if (rec.cls == SepClass::SepPtDominant) {
            ++n_sep_pt_dom;
            ++sep_pt_dom[cell];
        }
    }

    if (std::abs(rec.det_rho_pt) < 1e-13) ++near_zero_det_pt;
    max_abs_det_rho = std::max(max_abs_det_rho, std::abs(rec.det_rho));
}

void JointHistogram::accumulate(const SampleRecord& rec) {
    accumulate_counters(rec);
    mom_all.add(rec.r_a, rec.r_b);
    if (rec.cls != SepClass::Entangled) mom_sep.add(rec.r_a, rec.r_b);
}

void JointHistogram::merge(const JointHistogram& other) {
    if (!(measure == other.measure) || base_seed != other.base_seed)
        throw ConfigError("JointHistogram::merge: meta mismatch");
    n_samples += other.n_samples;
    n_sep += other.n_sep;
    n_sep_pt_dom += other.n_sep_pt_dom;
    for (int i = 0; i < kCells; ++i) {
        total[i] += other.total[i];
        sep[i] += other.sep[i];
        sep_pt_dom[i] += other.sep_pt_dom[i];
    }
    mom_all.merge(other.mom_all);
    mom_sep.merge(other.mom_sep);
    for (int i = 0; i < kBins; ++i) {
        pd_total[i] += other.pd_total[i];
        pd_sep[i] += other.pd_sep[i];
        mzz_total[i] += other.mzz_total[i];
        mzz_sep[i] += other.mzz_sep[i];
    }
    draw_attempts += other.draw_attempts;
    draw_candidates += other.draw_candidates;
    near_zero_det_pt += other.near_zero_det_pt;
    max_abs_det_rho = std::max(max_abs_det_rho, other.max_abs_det_rho);
}

SymmetrizedGrid symmetrize(const JointHistogram& h) {
    SymmetrizedGrid g;
    g.total.resize(JointHistogram::kCells);
    g.sep.resize(JointHistogram::kCells);
    g.sep_pt_dom.resize(JointHistogram::kCells);
    constexpr int n = JointHistogram::kBins;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g.total[i * n + j] = h.total[i * n + j] + h.total[j * n + i];
            g.sep[i * n + j] = h.sep[i * n + j] + h.sep[j * n + i];
            g.sep_pt_dom[i * n + j] = h.sep_pt_dom[i * n + j] + h.sep_pt_dom[j * n + i];
        }
    return g;
}

namespace {

RadialProfile pooled_profile(const JointHistogram& h, const std::vector<std::uint64_t>& numerator, double p0) {
    RadialProfile prof;
    prof.p0 = p0;
    constexpr int n = JointHistogram::kBins;
    for (int i = 0; i < n; ++i) {
        ProfileBin& b = prof.bins[i];
        b.r_mid = (i + 0.5) / n;
        std::uint64_t tot = 0, num = 0;
        for (int j = 0; j < n; ++j) {
            tot += h.total[i * n + j] + h.total[j * n + i];
            num += numerator[i * n + j] + numerator[j * n + i];
        }
        b.n_tot = tot;
        b.n_num = num;
        b.occupied = tot > 0;
        if (b.occupied) {
            b.p_hat = static_cast<double>(num) / static_cast<double>(tot);
            const double half = kZ95 * std::sqrt(p0 * (1.0 - p0) / static_cast<double>(tot));
            b.ci_lo = p0 - half;
            b.ci_hi = p0 + half;
        }
    }
    return prof;
}

}  // namespace

RadialProfile marginal_profile(const JointHistogram& h, double p0) {
    if (h.n_samples == 0) throw InsufficientData("marginal_profile: empty histogram");
    return pooled_profile(h, h.sep, p0);
}

RadialProfile split_profile(const JointHistogram& h, double p0) {
    if (h.n_samples == 0) throw InsufficientData("split_profile: empty histogram");
    return pooled_profile(h, h.sep_pt_dom, p0);
}

std::vector<CurvePoint> diagonal_curve(const JointHistogram& h) {
    constexpr int n = JointHistogram::kBins;
    std::vector<CurvePoint> out(n);
    for (int i = 0; i < n; ++i) {
        const int cell = i * n + i;
        out[i].r_mid = (i + 0.5) / n;
        out[i].n_tot = h.total[cell];
        out[i].n_sep = h.sep[cell];
        out[i].p_hat = out[i].n_tot ? static_cast<double>(out[i].n_sep) / static_cast<double>(out[i].n_tot) : 0.0;
    }
    return out;
}

std::vector<CurvePoint> antidiagonal_curve(const JointHistogram& h) {
    constexpr int n = JointHistogram::kBins;
    std::vector<CurvePoint> out(n);
    for (int i = 0; i < n; ++i) {
        const int cell = i * n + (n - 1 - i);
        out[i].r_mid = (i + 0.5) / n;
        out[i].n_tot = h.total[cell];
        out[i].n_sep = h.sep[cell];
        out[i].p_hat = out[i].n_tot ? static_cast<double>(out[i].n_sep) / static_cast<double>(out[i].n_tot) : 0.0;
    }
    return out;
}

double correlation(const JointHistogram& h, Subset subset) {
    const Moments& m = (subset == Subset::All) ? h.mom_all : h.mom_sep;
    const double n = static_cast<double>(subset == Subset::All ? h.n_samples : h.n_sep);
    if (n < 2.0) throw InsufficientData("correlation: fewer than two samples in subset");
    const double cov = n * m.sr_ab - m.sr_a * m.sr_b;
    const double va = n * m.sr_a2 - m.sr_a * m.sr_a;
    const double vb = n * m.sr_b2 - m.sr_b * m.sr_b;
    if (va <= 0.0 || vb <= 0.0) throw InsufficientData("correlation: degenerate variance");
    return cov / std::sqrt(va * vb);
}

FitResult fit_exponent(std::span<const std::uint64_t> counts, int area_dim) {
    constexpr int n = JointHistogram::kBins;
    int rich = 0;
    for (int i = 0; i < std::min<int>(n, counts.size()); ++i)
        if (counts[i] >= 100) ++rich;
    if (rich < 10) throw InsufficientBins("fit_exponent: need >= 10 bins with >= 100 counts");

    // ln n_i - (d-1) ln r_i = ln c + p ln(1 - r_i^2), weights n_i
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    int used = 0;
    for (int i = 0; i < std::min<int>(n, counts.size()); ++i) {
        if (counts[i] == 0) continue;
        const double r = (i + 0.5) / n;
        if (r > 0.99) continue;
        const double w = static_cast<double>(counts[i]);
        const double x = std::log1p(-r * r);
        const double y = std::log(w) - (area_dim - 1) * std::log(r);
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
        ++used;
    }
    const double det = sw * sxx - sx * sx;
    if (det <= 0.0) throw InsufficientBins("fit_exponent: degenerate design");
    FitResult fit;
    fit.p = (sw * sxy - sx * sy) / det;
    const double lnc = (sy - fit.p * sx) / sw;
    fit.c = std::exp(lnc);
    fit.n_bins_used = used;
    fit.reliable = used >= 10;
    double rss = 0;
    for (int i = 0; i < std::min<int>(n, counts.size()); ++i) {
        if (counts[i] == 0) continue;
        const double r = (i + 0.5) / n;
        if (r > 0.99) continue;
        const double w = static_cast<double>(counts[i]);
        const double x = std::log1p(-r * r);
        const double y = std::log(w) - (area_dim - 1) * std::log(r);
        const double e = y - (lnc + fit.p * x);
        rss += w * e * e;
    }
    fit.rss = rss;
    return fit;
}

double reference_surface(Surface s, double r_a, double r_b) {
    constexpr double pi2_16 = 157.91367041742973790135185599802;  // 16 pi^2
    const double a2 = r_a * r_a, b2 = r_b * r_b;
    switch (s) {
        case Surface::QNull: {
            const double ua = 1.0 - a2, ub = 1.0 - b2;
            return pi2_16 * a2 * b2 * std::pow(ua, 6) * std::pow(ub, 6);
        }
        case Surface::QAlt: {
            const double ua = 1.0 - a2, ub = 1.0 - b2;
            const double den = std::pow(1.0 - a2 * b2, 13);
            return pi2_16 * a2 * b2 * std::pow(ua, 8) * std::pow(ub, 8) / den;
        }
        case Surface::Tung:
            return 2.0 * r_a + 2.0 * r_b - 4.0 * r_a * r_b;
        case Surface::Tung2:
            return 1.5 * a2 * r_b + 1.5 * r_a * b2 - 6.0 * r_a * r_b - 0.75 * a2 + 2.5 * r_a -
                   0.75 * b2 + 2.5 * r_b;
    }
    return 0.0;
}

double hs_diag_model(double r) {
    return 375.0 * (1.0 - r) * (58.0 * r * r + 17.0 * r + 2.0) / (4096.0 * (8.0 * r + 1.0));
}

double hs_antidiag_model(double r_a) {
    if (r_a < 0.5) return (r_a + 4.0) / (24.0 * r_a + 8.0);
    return (r_a - 5.0) / (24.0 * r_a - 32.0);
}

std::vector<double> residual_grid(const std::vector<std::uint64_t>& sym_counts, Surface s) {
    constexpr int n = JointHistogram::kBins;
    std::vector<double> surf(JointHistogram::kCells);
    double num = 0, den = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = reference_surface(s, (i + 0.5) / n, (j + 0.5) / n);
            surf[i * n + j] = v;
            num += static_cast<double>(sym_counts[i * n + j]) * v;
            den += v * v;
        }
    const double a = den > 0 ? num / den : 0.0;
    std::vector<double> out(JointHistogram::kCells);
    for (int c = 0; c < JointHistogram::kCells; ++c)
        out[c] = static_cast<double>(sym_counts[c]) - a * surf[c];
    return out;
}

std::vector<double> residual_grid_prob(const JointHistogram& h, Surface s, double scale) {
    constexpr int n = JointHistogram::kBins;
    std::vector<double> out(JointHistogram::kCells, std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int c = i * n + j;
            if (h.total[c] == 0) continue;
            const double p_hat = static_cast<double>(h.sep[c]) / static_cast<double>(h.total[c]);
            out[c] = p_hat - scale * reference_surface(s, (i + 0.5) / n, (j + 0.5) / n);
        }
    return out;
}

std::vector<std::pair<double, double>> dyson_ratio(const std::vector<CurvePoint>& qubit_diag,
                                                   const std::vector<CurvePoint>& rebit_diag) {
    std::vector<std::pair<double, double>> out;
    const std::size_t n = std::min(qubit_diag.size(), rebit_diag.size());
    for (std::size_t i = 0; i < n; ++i) {
        const CurvePoint& q = qubit_diag[i];
        const CurvePoint& r = rebit_diag[i];
        if (q.n_tot == 0 || r.n_tot == 0 || r.n_sep == 0) continue;
        const double pr = r.p_hat;
        out.emplace_back(q.r_mid, q.p_hat / (pr * pr));
    }
    return out;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 2) throw InsufficientData("spearman: need two equal-length series");

    auto midranks = [](std::span<const double> v) {
        const std::size_t m = v.size();
        std::vector<std::size_t> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> rank(m);
        std::size_t i = 0;
        while (i < m) {
            std::size_t j = i;
            while (j + 1 < m && v[idx[j + 1]] == v[idx[i]]) ++j;
            const double r = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
            for (std::size_t t = i; t <= j; ++t) rank[idx[t]] = r;
            i = j + 1;
        }
        return rank;
    };

    const std::vector<double> rx = midranks(xs);
    const std::vector<double> ry = midranks(ys);
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += rx[i];
        sy += ry[i];
        sxx += rx[i] * rx[i];
        syy += ry[i] * ry[i];
        sxy += rx[i] * ry[i];
    }
    const double dn = static_cast<double>(n);
    const double cov = dn * sxy - sx * sy;
    const double va = dn * sxx - sx * sx;
    const double vb = dn * syy - sy * sy;
    if (va <= 0.0 || vb <= 0.0) throw InsufficientData("spearman: constant series");
    return cov / std::sqrt(va * vb);
}

}  // namespace blochsep
