#include "blochsep/measures.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "blochsep/errors.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace blochsep;
using namespace testsupport;

TEST_CASE("measure spec tokens round-trip and validate") {
    for (const char* tok : {"hs", "induced:3", "induced:5", "bures", "rebit", "xstate-hs", "xstate-induced:6"}) {
        CHECK(MeasureSpec::parse(tok).to_string() == tok);
    }
    CHECK(MeasureSpec::parse("hs") == MeasureSpec::hilbert_schmidt());
    CHECK(MeasureSpec::parse("hs") == MeasureSpec::induced(4).hilbert_schmidt());
    CHECK_THROWS_AS(MeasureSpec::parse("induced:2"), UnsupportedMeasure);
    CHECK_THROWS_AS(MeasureSpec::parse("xstate-induced:4"), UnsupportedMeasure);
    CHECK_THROWS_AS(MeasureSpec::parse("foo"), ConfigError);
    CHECK_THROWS_AS(MeasureSpec::parse("induced:abc"), ConfigError);
}

TEST_CASE("ginibre entries have the right first two moments") {
    RngStream rng(42, 0);
    const int n_draws = 20000;  // 16 complex entries each -> 6.4e5 reals
    double sum = 0.0, sum_sq = 0.0;
    std::uint64_t count = 0;
    for (int t = 0; t < n_draws; ++t) {
        const GinibreMatrix g = ginibre(4, 4, false, rng);
        for (const Complex& z : g.a) {
            sum += z.real() + z.imag();
            sum_sq += z.real() * z.real() + z.imag() * z.imag();
            count += 2;
        }
    }
    const double mean = sum / static_cast<double>(count);
    const double var = sum_sq / static_cast<double>(count) - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(count)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("identical streams reproduce identical draws; distinct streams differ") {
    RngStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    const GinibreMatrix ga = ginibre(4, 4, false, a);
    const GinibreMatrix gb = ginibre(4, 4, false, b);
    const GinibreMatrix gc = ginibre(4, 4, false, c);
    const GinibreMatrix gd = ginibre(4, 4, false, d);
    bool c_differs = false, d_differs = false;
    for (int i = 0; i < 16; ++i) {
        CHECK(ga.a[i] == gb.a[i]);
        c_differs |= ga.a[i] != gc.a[i];
        d_differs |= ga.a[i] != gd.a[i];
    }
    CHECK(c_differs);
    CHECK(d_differs);
}

TEST_CASE("sample_hs draws are valid states and K=4 induced is the identical code path") {
    RngStream rng(7, 0);
    for (int t = 0; t < 2000; ++t) {
        const Density4 rho = sample_hs(rng);
        CHECK(check_density(rho).ok(false));
    }
    RngStream r1(7, 123), r2(7, 123);
    const Density4 a = sample_hs(r1);
    const Density4 b = sample_induced(4, r2);
    for (int i = 0; i < 16; ++i) CHECK(a.m.a[i] == b.m.a[i]);
}

TEST_CASE("sample_hs separability fraction is near 8/33") {
    RngStream rng(1, 0);
    const int n = 200000;
    int sep = 0;
    for (int t = 0; t < n; ++t) {
        const Density4 rho = sample_hs(rng);
        if (det4(partial_transpose(rho)).real() >= 0.0) ++sep;
    }
    const double p = static_cast<double>(sep) / n;
    const double sigma = std::sqrt((8.0 / 33.0) * (25.0 / 33.0) / n);
    CHECK(std::abs(p - 8.0 / 33.0) < 4.0 * sigma);
}

TEST_CASE("sample_hs mean determinant matches the exact Gamma-ratio value") {
    // E[det rho] = 4! Gamma(16) / Gamma(20) = 1/3876, pinned against an
    // exact calculation and the independent reference implementation.
    RngStream rng(2, 0);
    const int n = 400000;
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < n; ++t) {
        const double d = det4(sample_hs(rng).m).real();
        sum += d;
        sum_sq += d * d;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sum_sq / n - mean * mean);
    const double se = sd / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean - 1.0 / 3876.0) < 4.0 * se);
}

TEST_CASE("sample_hs mean purity matches an independently coded reference ensemble") {
    const int n = 200000;
    RngStream rng(3, 0);
    double s1 = 0.0, q1 = 0.0;
    for (int t = 0; t < n; ++t) {
        const double p = purity(sample_hs(rng).m);
        s1 += p;
        q1 += p * p;
    }
    std::mt19937_64 gen(987654321);
    double s2 = 0.0, q2 = 0.0;
    for (int t = 0; t < n; ++t) {
        const double p = purity(reference_hs(gen).m);
        s2 += p;
        q2 += p * p;
    }
    const double m1 = s1 / n, m2 = s2 / n;
    const double v1 = q1 / n - m1 * m1, v2 = q2 / n - m2 * m2;
    const double se = std::sqrt(v1 / n + v2 / n);
    CHECK(std::abs(m1 - m2) < 4.0 * se);
    // and both sit at the known exact value (N+K)/(NK+1) = 8/17
    CHECK(std::abs(m1 - 8.0 / 17.0) < 4.0 * std::sqrt(v1 / n));
}

TEST_CASE("induced K=3 states carry a zero eigenvalue; K=5 fraction near 61/143") {
    RngStream rng(4, 0);
    double max_det = 0.0;
    for (int t = 0; t < 100000; ++t) {
        const Density4 rho = sample_induced(3, rng);
        max_det = std::max(max_det, std::abs(det4(rho.m).real()));
    }
    CHECK(max_det < 1e-12);

    int sep = 0;
    const int n = 100000;
    for (int t = 0; t < n; ++t) {
        const Density4 rho = sample_induced(5, rng);
        if (det4(partial_transpose(rho)).real() >= 0.0) ++sep;
    }
    const double p = static_cast<double>(sep) / n;
    const double sigma = std::sqrt((61.0 / 143.0) * (82.0 / 143.0) / n);
    CHECK(std::abs(p - 61.0 / 143.0) < 4.0 * sigma);
    CHECK_THROWS_AS(sample_induced(2, rng), UnsupportedMeasure);
}

TEST_CASE("haar unitary is unitary with unit determinant and uniform first column") {
    RngStream rng(5, 0);
    double sum00 = 0.0;
    const int n = 100000;
    for (int t = 0; t < n; ++t) {
        const CMat4 u = haar_unitary(rng);
        if (t < 2000) {
            const CMat4 g = u.adjoint() * u;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    CHECK(std::abs(g(i, j) - (i == j ? Complex(1.0) : Complex(0.0))) <= 1e-12);
            CHECK(std::abs(std::abs(det4(u)) - 1.0) <= 1e-12);
        }
        sum00 += std::norm(u(0, 0));
    }
    // Haar column uniformity: E|U00|^2 = 1/4, Var(|U00|^2) = 3/80
    const double mean = sum00 / n;
    CHECK(std::abs(mean - 0.25) < 4.0 * std::sqrt(3.0 / 80.0 / n));
}

TEST_CASE("bures draws are valid and the separability fraction is near 0.0733") {
    RngStream rng(6, 0);
    for (int t = 0; t < 1000; ++t) CHECK(check_density(sample_bures(rng)).ok(false));
    int sep = 0;
    const int n = 200000;
    for (int t = 0; t < n; ++t) {
        const Density4 rho = sample_bures(rng);
        if (det4(partial_transpose(rho)).real() >= 0.0) ++sep;
    }
    const double p = static_cast<double>(sep) / n;
    CHECK(std::abs(p - 0.0733096) < 4.0 * std::sqrt(0.0733 * 0.9267 / n));
}

TEST_CASE("rebit draws are real, valid, with in-plane Bloch vectors, fraction near 29/64") {
    RngStream rng(8, 0);
    int sep = 0;
    const int n = 200000;
    for (int t = 0; t < n; ++t) {
        const Density4 rho = sample_rebit(rng);
        if (t < 2000) {
            CHECK(rho.real_only);
            CHECK(check_density(rho).ok(true));
            CHECK(std::abs(partial_trace(rho, Subsystem::A).by) <= 1e-14);
            CHECK(std::abs(partial_trace(rho, Subsystem::B).by) <= 1e-14);
        }
        if (det4(partial_transpose(rho)).real() >= 0.0) ++sep;
    }
    const double p = static_cast<double>(sep) / n;
    const double sigma = std::sqrt((29.0 / 64.0) * (35.0 / 64.0) / n);
    CHECK(std::abs(p - 29.0 / 64.0) < 4.0 * sigma);
}

TEST_CASE("flat x-state sampler: acceptance rate, separability fraction, radii") {
    RngStream rng(9, 0);
    SamplerCounters counters;
    const int n = 200000;
    int sep = 0;
    int diag_band = 0, diag_band_sep = 0;
    for (int t = 0; t < n; ++t) {
        const XStateCoords x = sample_xstate_hs(rng, &counters);
        CHECK(x.p1 + x.p2 + x.p3 + x.p4 == doctest::Approx(1.0).epsilon(1e-12));
        const bool s = xstate_separable(x);
        if (s) ++sep;
        double ra, rb;
        xstate_radii(x, ra, rb);
        if (std::abs(ra - rb) < 0.01) {
            ++diag_band;
            if (s) ++diag_band_sep;
        }
    }
    // acceptance of the flat rejection step is pi^2/840 (disc areas over the simplex)
    const double acc = static_cast<double>(counters.candidates) / static_cast<double>(counters.attempts);
    const double acc_expected = 9.8696044010893586 / 840.0;
    CHECK(std::abs(acc - acc_expected) <
          4.0 * std::sqrt(acc_expected / static_cast<double>(counters.attempts)));

    const double p = static_cast<double>(sep) / n;
    CHECK(std::abs(p - 0.4) < 4.0 * std::sqrt(0.4 * 0.6 / n));

    // restricted to |rA - rB| < 0.01 the fraction approaches 8/21
    const double p_diag = static_cast<double>(diag_band_sep) / diag_band;
    CHECK(std::abs(p_diag - 8.0 / 21.0) < 0.01);
}

TEST_CASE("x-state coordinate separability verdict equals the generic PT verdict") {
    RngStream rng(10, 0);
    for (int t = 0; t < 100000; ++t) {
        const XStateCoords x = sample_xstate_hs(rng);
        const Density4 rho = materialize(x);
        const bool generic = det4(partial_transpose(rho)).real() >= 0.0;
        CHECK(xstate_separable(x) == generic);
        double ra, rb;
        xstate_radii(x, ra, rb);
        CHECK(bloch_radius(partial_trace(rho, Subsystem::A)) == doctest::Approx(ra).epsilon(1e-10));
        CHECK(bloch_radius(partial_trace(rho, Subsystem::B)) == doctest::Approx(rb).epsilon(1e-10));
    }
}

TEST_CASE("materialized x-states satisfy the density invariants") {
    RngStream rng(11, 0);
    for (int t = 0; t < 2000; ++t) {
        const Density4 rho = materialize(sample_xstate_hs(rng));
        CHECK(check_density(rho).ok(false));
    }
}

TEST_CASE("induced x-state sampler: det-weight acceptance and separability fraction") {
    RngStream rng(12, 0);
    SamplerCounters counters;
    const int n = 100000;
    int sep = 0;
    for (int t = 0; t < n; ++t) {
        const XStateCoords x = sample_xstate_induced(5, rng, &counters);
        if (xstate_separable(x)) ++sep;
    }
    // E[256 det] under flat = 256 * V_K5 / V_flat = 256 * 5040 / 9979200
    const double w_acc = static_cast<double>(n) / static_cast<double>(counters.candidates);
    const double w_expected = 256.0 * 5040.0 / 9979200.0;
    CHECK(std::abs(w_acc - w_expected) <
          4.0 * std::sqrt(w_expected / static_cast<double>(counters.candidates)));
    const double p = static_cast<double>(sep) / n;
    CHECK(std::abs(p - 9.0 / 14.0) < 4.0 * std::sqrt((9.0 / 14.0) * (5.0 / 14.0) / n));

    CHECK_THROWS_AS(sample_xstate_induced(4, rng), UnsupportedMeasure);
}

TEST_CASE("dispatch routes each family and materializes coordinates") {
    RngStream r1(20, 5), r2(20, 5);
    const Density4 via_spec = sample_dispatch(MeasureSpec::hilbert_schmidt(), r1);
    const Density4 via_k4 = sample_dispatch(MeasureSpec::induced(4), r2);
    for (int i = 0; i < 16; ++i) CHECK(via_spec.m.a[i] == via_k4.m.a[i]);

    RngStream r3(21, 0);
    for (int t = 0; t < 1000; ++t)
        CHECK(check_density(sample_dispatch(MeasureSpec::xstate_hs(), r3)).ok(false));
    for (int t = 0; t < 1000; ++t)
        CHECK(check_density(sample_dispatch(MeasureSpec::bures(), r3)).ok(false));

    MeasureSpec bad{MeasureFamily::XStateInduced, 3};
    CHECK_THROWS_AS(sample_dispatch(bad, r3), UnsupportedMeasure);
}
