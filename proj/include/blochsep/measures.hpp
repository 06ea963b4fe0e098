#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blochsep/cmat.hpp"
#include "blochsep/qmat.hpp"
#include "blochsep/rng.hpp"

namespace blochsep {

enum class MeasureFamily { HilbertSchmidt, Induced, Bures, RebitHS, XStateHS, XStateInduced };

/// Which ensemble to draw from. k is the ancilla dimension and is meaningful
/// for Induced (k >= 3) and XStateInduced (k >= 5); HilbertSchmidt is the
/// Induced k = 4 case and the two share a code path.
struct MeasureSpec {
    MeasureFamily family = MeasureFamily::HilbertSchmidt;
    int k = 4;

    static MeasureSpec hilbert_schmidt() { return {MeasureFamily::HilbertSchmidt, 4}; }
    static MeasureSpec induced(int k) { return {MeasureFamily::Induced, k}; }
    static MeasureSpec bures() { return {MeasureFamily::Bures, 4}; }
    static MeasureSpec rebit_hs() { return {MeasureFamily::RebitHS, 4}; }
    static MeasureSpec xstate_hs() { return {MeasureFamily::XStateHS, 4}; }
    static MeasureSpec xstate_induced(int k) { return {MeasureFamily::XStateInduced, k}; }

    /// Throws UnsupportedMeasure / ConfigError on invalid combinations.
    void validate() const;

    bool uses_k() const { return family == MeasureFamily::Induced || family == MeasureFamily::XStateInduced; }

    /// Canonical CLI / file token: hs, induced:K, bures, rebit, xstate-hs, xstate-induced:K.
    std::string to_string() const;
    static MeasureSpec parse(const std::string& token);

    friend bool operator==(const MeasureSpec& a, const MeasureSpec& b) {
        return a.family == b.family && (!a.uses_k() || a.k == b.k);
    }
};

/// X-state in the coordinates that carry the flat Hilbert-Schmidt measure:
/// simplex weights p1..p4 on the diagonal and the real/imaginary parts of the
/// two antidiagonal entries rho(0,3) = x14 + i y14, rho(1,2) = x23 + i y23.
struct XStateCoords {
    double p1 = 0, p2 = 0, p3 = 0, p4 = 0;
    double x14 = 0, y14 = 0, x23 = 0, y23 = 0;
};

/// Rejection bookkeeping. attempts counts raw proposal draws; candidates
/// counts proposals that were valid states (for the induced X-state sampler,
/// the det-weight acceptance is n_accepted / candidates).
struct SamplerCounters {
    std::uint64_t attempts = 0;
    std::uint64_t candidates = 0;
};

/// Rectangular Ginibre draw: i.i.d. standard normal real (and, unless
/// real_only, imaginary) parts. Entries are drawn column by column.
struct GinibreMatrix {
    int rows = 0, cols = 0;
    std::vector<Complex> a;  // column-major fill order, row-major layout
    Complex& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Complex& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

GinibreMatrix ginibre(int rows, int cols, bool real_only, RngStream& rng);

/// Hilbert-Schmidt measure: A = 4x4 complex Ginibre, rho = AA^dag / tr.
Density4 sample_hs(RngStream& rng);

/// Random induced measure with ancilla dimension K >= 3: A = 4xK complex
/// Ginibre, rho = AA^dag / tr. K = 4 is byte-identical to sample_hs.
Density4 sample_induced(int k, RngStream& rng);

/// Haar-distributed 4x4 unitary (QR of a complex Ginibre matrix with the
/// R diagonal kept real-positive).
CMat4 haar_unitary(RngStream& rng);

/// Bures measure: rho = (I+U) G G^dag (I+U^dag) / tr, with G Ginibre, U Haar.
Density4 sample_bures(RngStream& rng);

/// Flat (HS) measure on real density matrices. The real ensemble needs a
/// rectangular 4x5 real Ginibre for the flat case; a square one would weight
/// draws by det(rho)^(-1/2).
Density4 sample_rebit(RngStream& rng);

/// Flat measure on the X-state positivity body, by rejection from
/// (uniform simplex) x [-1/2,1/2]^4.
XStateCoords sample_xstate_hs(RngStream& rng, SamplerCounters* counters = nullptr);

/// Induced X-state measure, density prop. to det(rho)^(K-4), K >= 5: each
/// flat draw is kept with probability (256 det rho)^(K-4).
XStateCoords sample_xstate_induced(int k, RngStream& rng, SamplerCounters* counters = nullptr);

/// det rho in coordinates: (p1 p4 - x14^2 - y14^2)(p2 p3 - x23^2 - y23^2).
double xstate_det(const XStateCoords& x);

/// Coordinate-level PPT verdict: p1 p4 >= x23^2+y23^2 and p2 p3 >= x14^2+y14^2
/// (the partial transpose swaps the two antidiagonal moduli).
bool xstate_separable(const XStateCoords& x);

/// Bloch radii rA = |p1+p2-p3-p4|, rB = |p1+p3-p2-p4|.
void xstate_radii(const XStateCoords& x, double& r_a, double& r_b);

Density4 materialize(const XStateCoords& x);

/// Routes to the family sampler; X-state coordinates are materialized.
/// Throws UnsupportedMeasure for XStateInduced with K < 5.
Density4 sample_dispatch(const MeasureSpec& spec, RngStream& rng, SamplerCounters* counters = nullptr);

}  // namespace blochsep
