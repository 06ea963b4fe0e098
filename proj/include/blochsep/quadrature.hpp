#pragma once

#include <functional>

namespace blochsep {

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// tol is an absolute tolerance; throws NoConvergence past the refinement
/// budget.
double quad1d(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

/// Adaptive integration of f over [0,1]^2. The square is split along the
/// diagonal rA = rB before refinement (every surface integrated here has a
/// derivative kink there); each triangle is handled by iterated quad1d.
double quad2d(const std::function<double(double, double)>& f, double tol = 1e-10);

}  // namespace blochsep
