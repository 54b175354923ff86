#pragma once

#include "csmin/profile.hpp"

namespace csmin {

// Induced-metric data along the profile.  E and G multiply the two sphere
// factors of the cross-section; the log-derivatives of their product feed
// the Hill change of variables.
struct MetricCoefficients {
    double E = 0.0;        // sin^2 r cos^2 theta
    double G = 0.0;        // sin^2 r sin^2 theta
    double dE = 0.0;       // dE/dt, analytic chain rule
    double dG = 0.0;       // dG/dt, analytic chain rule
    double dlogEG = 0.0;   // (ln EG)'
    double d2logEG = 0.0;  // (ln EG)''
};

// Principal curvatures of the immersion: kappa_u and kappa_v each carry
// multiplicity n-1, kappa_t is the profile direction.
struct CurvatureData {
    double kappa_u = 0.0;
    double kappa_v = 0.0;
    double kappa_t = 0.0;
    double normA2 = 0.0;  // (n-1)(kappa_u^2 + kappa_v^2) + kappa_t^2
};

// Profile curve gamma, Gauss map nu, their cross functions
// f_ij = nu_i gamma_j - nu_j gamma_i, and the Hill weight.
struct FrameFunctions {
    double gamma1 = 0.0, gamma2 = 0.0, gamma3 = 0.0;
    double nu1 = 0.0, nu2 = 0.0, nu3 = 0.0;
    double f12 = 0.0, f13 = 0.0, f23 = 0.0;
    double weight = 0.0;      // (EG)^{(n-1)/4}
    double dlogweight = 0.0;  // (n-1)/4 * (ln EG)'
    double a_n = 0.0;         // (n-1)/2 * (ln EG)'
};

// Pointwise evaluators in closed form over (r, theta, alpha).  All
// derivatives come from the chain rule through the ODE right-hand side;
// nothing is differenced numerically.  DomainError at the coordinate
// singularities, same policy as ode_rhs.
MetricCoefficients metric_coeffs_at(const ProfileState& state, int n);
CurvatureData curvatures_at(const ProfileState& state, int n);
FrameFunctions frame_at(const ProfileState& state, int n);

// Curve-level wrappers: evaluate the profile at t first.
MetricCoefficients metric_coeffs(const ProfileCurve& curve, double t);
CurvatureData curvatures(const ProfileCurve& curve, double t, int n);
CurvatureData curvatures(const ProfileCurve& curve, double t);
FrameFunctions frame(const ProfileCurve& curve, double t);

}  // namespace csmin
