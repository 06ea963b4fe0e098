#pragma once

#include <array>

#include "blochsep/cmat.hpp"

namespace blochsep {

/// A sampled two-qubit state: 4x4 Hermitian, trace-1, positive semidefinite.
/// real_only marks draws from the real (rebit) ensemble.
struct Density4 {
    CMat4 m;
    bool real_only = false;
};

/// A reduced single-qubit state together with its Bloch vector,
/// q = (I + bx*sx + by*sy + bz*sz) / 2.
struct Qubit2 {
    CMat2 m;
    double bx = 0.0, by = 0.0, bz = 0.0;
};

enum class Subsystem { A, B };

/// Reduced density matrix of the kept subsystem.
Qubit2 partial_trace(const Density4& rho, Subsystem keep);

/// sqrt(2 tr(q^2) - 1), clamped to [0,1]. Avoids the polar-angle chart,
/// which is singular at the poles.
double bloch_radius(const Qubit2& q);

/// Transpose of the second tensor factor: out[2a+b][2c+d] = in[2a+d][2c+b].
CMat4 partial_transpose(const Density4& rho);

/// Determinant by LU with partial pivoting.
Complex det4(const CMat4& m);

/// tr(rho * sz (x) sz) = rho11 - rho22 - rho33 + rho44.
double fano_mzz(const Density4& rho);

/// Hilbert-Schmidt distance from the product of the state's own reductions,
/// ||rho - rhoA (x) rhoB||, zero exactly on product states.
double product_distance(const Density4& rho);

/// All eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi sweeps.
/// Throws NonHermitianInput if the symmetry defect exceeds 1e-10 * scale.
std::array<double, 2> eig_hermitian(const CMat2& m);
std::array<double, 4> eig_hermitian(const CMat4& m);

/// Validity metrics for a Density4; all must hold for a draw to count as valid.
struct DensityCheck {
    double hermiticity_defect = 0.0;  // <= 1e-12
    double trace_defect = 0.0;        // |tr - 1| <= 1e-12 (includes imaginary part)
    double min_eigenvalue = 0.0;      // >= -1e-10
    double max_imag = 0.0;            // <= 1e-14 when real_only
    bool finite = true;

    bool ok(bool real_only) const {
        return finite && hermiticity_defect <= 1e-12 && trace_defect <= 1e-12 &&
               min_eigenvalue >= -1e-10 && (!real_only || max_imag <= 1e-14);
    }
};

DensityCheck check_density(const Density4& rho);

}  // namespace blochsep
