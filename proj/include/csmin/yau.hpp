#pragma once

#include "csmin/profile.hpp"

namespace csmin {

struct Z1Endpoint {
    double z1_T = 0.0;
    double z1_prime_T = 0.0;
};

// Integrate z'' + a_n(t) z' + (2n-1) z = 0, z(0) = 1, z'(0) = 0 over one
// period, coupled with the profile ODE; a_n = (n-1)/2 * (ln EG)'.  The
// optional tolerance overrides the curve's ode_tol (used by the
// near-zero-sign retry).
Z1Endpoint solve_z1(const ProfileCurve& curve);
Z1Endpoint solve_z1(const ProfileCurve& curve, double ode_tol);

// The three equivalent characterizations of the first-eigenvalue criterion,
// evaluated independently:
//   (a) sign of z1'(T) for the damped equation above,
//   (b) sign of delta'(2n-1) for the (1,1) Laplacian-form Hill operator,
//   (c) whether that operator's second periodic eigenvalue equals 2n-1
//       (otherwise its third one is).
struct YauVerdict {
    int n = 2;
    double z1_prime_T = 0.0;
    double delta_prime = 0.0;  // delta'(2n-1)
    double lambda2 = 0.0;      // second periodic eigenvalue
    double lambda3 = 0.0;      // third periodic eigenvalue
    bool holds = false;        // z1_prime_T > 0
    bool consistent = false;   // the three characterizations agree
    bool indeterminate = false;  // |z1_prime_T| < 1e-9 even after retry
};

// Evaluates all three characterizations and their cross-consistency.
// Throws InvariantError if they disagree beyond tolerance: the equivalence
// is a theorem, so disagreement means a numerical defect, not a finding.
YauVerdict yau_check(const ProfileCurve& curve);

}  // namespace csmin
