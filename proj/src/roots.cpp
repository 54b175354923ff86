#include "csmin/roots.hpp"

#include <cmath>
#include <limits>

#include "csmin/errors.hpp"

namespace csmin {

double brent_root(const ScalarFn& f, double a, double b, double xtol,
                  int max_iter) {
    const double eps = std::numeric_limits<double>::epsilon();
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw NumericError("brent_root: endpoints do not bracket a root");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;          // ensure b and c straddle the root
            d = b - a; e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;

        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            // attempt inverse quadratic interpolation (secant if a == c)
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::fmin(3.0 * xm * q - std::fabs(tol1 * q),
                                    std::fabs(e * q))) {
                e = d; d = p / q;    // interpolation accepted
            } else {
                d = xm; e = d;       // fall back to bisection
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += std::fabs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw NumericError("brent_root: iteration limit exceeded");
}

double brent_minimize(const ScalarFn& f, double a, double b, double xtol,
                      double* fmin_out, int max_iter) {
    // localmin from Brent (1973), "Algorithms for Minimization without
    // Derivatives", chapter 5.
    const double golden = 0.5 * (3.0 - std::sqrt(5.0));
    const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    double x = a + golden * (b - a), w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    for (int it = 0; it < max_iter; ++it) {
        const double m = 0.5 * (a + b);
        const double tol = sqrt_eps * std::fabs(x) + xtol;
        const double t2 = 2.0 * tol;
        if (std::fabs(x - m) <= t2 - 0.5 * (b - a)) break;

        double p = 0.0, q = 0.0, r = 0.0;
        bool parabolic = false;
        if (std::fabs(e) > tol) {
            // fit a parabola through x, v, w
            r = (x - w) * (fx - fv);
            q = (x - v) * (fx - fw);
            p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p; else q = -q;
            r = e; e = d;
            parabolic = std::fabs(p) < std::fabs(0.5 * q * r) &&
                        p > q * (a - x) && p < q * (b - x);
        }
        if (parabolic) {
            d = p / q;
            const double u = x + d;
            if (u - a < t2 || b - u < t2) d = x < m ? tol : -tol;
        } else {
            e = (x < m ? b : a) - x;
            d = golden * e;
        }
        const double u = x + (std::fabs(d) >= tol ? d : (d > 0.0 ? tol : -tol));
        const double fu = f(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw; w = x; fw = fx; x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw; w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    if (fmin_out) *fmin_out = fx;
    return x;
}

}  // namespace csmin
