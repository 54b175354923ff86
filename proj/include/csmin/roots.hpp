#pragma once

#include <functional>

namespace csmin {

using ScalarFn = std::function<double(double)>;

// Brent's derivative-free root finder on a bracketing interval [a, b]
// (f(a) and f(b) of opposite sign, or one of them zero).  Combines inverse
// quadratic interpolation, secant steps and bisection; converges to within
// xtol plus machine precision.  Throws NumericError if the endpoints do not
// bracket a root or the iteration limit is hit.
double brent_root(const ScalarFn& f, double a, double b, double xtol,
                  int max_iter = 200);

// Brent's bounded scalar minimizer (golden section with parabolic
// acceleration).  Returns the abscissa of the minimum over [a, b] to within
// xtol; if fmin_out is non-null the minimum value is stored there.
double brent_minimize(const ScalarFn& f, double a, double b, double xtol,
                      double* fmin_out = nullptr, int max_iter = 200);

}  // namespace csmin
