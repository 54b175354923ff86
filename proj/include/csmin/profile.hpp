#pragma once

#include <vector>

#include "csmin/dop853.hpp"

namespace csmin {

struct EmbeddingParams {
    int n = 2;
    double shoot_tol = 1e-10;
    double ode_tol = 1e-12;

    // Throws Error unless n >= 2 and both tolerances are positive.
    void check() const;
};

struct ProfileState {
    double t = 0.0;
    double r = 0.0;
    double theta = 0.0;
    double alpha = 0.0;
};

// Right-hand side of the arc-length profile system,
//   r' = cos a,  th' = sin a / sin r,
//   a' = (2n-2) csc r cos a cot 2th - (2n-1) cot r sin a,
// written into deriv[3].  Throws DomainError when the state is within 1e-12
// of the coordinate singularities r in {0, pi} or theta in {0, pi/2}.
void ode_rhs(const ProfileState& state, int n, double deriv[3]);

// Integrate the profile system from init to t_end and return n_samples
// equispaced states (including both ends).
std::vector<ProfileState> integrate_profile(const ProfileState& init, int n,
                                            double t_end, double ode_tol,
                                            int n_samples = 129);

struct ShootResult {
    double r0 = 0.0;         // r(0) of the original gauge
    double s_star = 0.0;     // arclength of the first alpha = 0 crossing
    double theta_star = 0.0; // theta there; becomes theta0 after translation
    double residual = 0.0;   // |r(s_star) - pi/2| of the refined solution
};

// Solve the boundary-value problem by shooting on r0: starting from
// r(0) = r0, theta(0) = pi/4, alpha(0) = -pi/2, the first rising zero of
// alpha must satisfy r = pi/2.  A 64-point coarse scan of the mismatch over
// r0 in (0.05, pi/2 - 0.05) seeds Brent refinement; if no sign change is
// found there the scan widens to (0, pi) before giving up.  The full period
// is T = 4 s_star.
ShootResult shoot(const EmbeddingParams& params);

// The solved profile in the translated gauge r(0) = pi/2, alpha(0) = 0,
// theta(0) = theta0, sampled on a uniform grid over one period [0, T] and
// evaluated anywhere by cubic Hermite interpolation (the nodal derivatives
// come from the ODE right-hand side, not from differencing).
class ProfileCurve {
public:
    // Wraps existing sample data (deserialization path); samples must lie on
    // a uniform grid over [0, period] including both ends.
    ProfileCurve(const EmbeddingParams& params, double r0, double theta0,
                 double period, std::vector<ProfileState> samples);

    const EmbeddingParams& params() const { return params_; }
    int n() const { return params_.n; }
    double r0() const { return r0_; }
    double theta0() const { return theta0_; }
    double period() const { return period_; }
    const std::vector<ProfileState>& samples() const { return samples_; }

    // State at arbitrary t: periodic reduction in r and theta, plus the
    // winding rule alpha(t + T) = alpha(t) + 2 pi.
    ProfileState eval(double t) const;

    // Verify the reflection and translation symmetries of the gauge on a
    // 512-point grid; throws InvariantError if any residual exceeds tol.
    void check_symmetries(double tol) const;

private:
    EmbeddingParams params_;
    double r0_ = 0.0, theta0_ = 0.0, period_ = 0.0;
    std::vector<ProfileState> samples_;
    std::vector<double> derivs_;  // 3 per sample, from ode_rhs
};

// shoot + integrate the translated gauge over one period.  The symmetry
// invariants are verified at 100 * shoot_tol before the curve is returned.
ProfileCurve build_curve(const EmbeddingParams& params);

ProfileState eval_profile(const ProfileCurve& curve, double t);

}  // namespace csmin
