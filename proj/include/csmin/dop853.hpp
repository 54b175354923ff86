#pragma once

#include <functional>
#include <vector>

#include "csmin/errors.hpp"

namespace csmin {

// Right-hand side of dy/dt = f(t, y); writes the derivative into dydt.
using OdeRhs = std::function<void(double t, const double* y, double* dydt)>;

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 selects the step automatically
    long max_steps = 2000000;
    // Dense-output preparation costs three extra stages per accepted step;
    // callers that only need endpoint values switch it off.
    bool dense = true;
};

// Explicit Runge-Kutta integrator of order 8 (the Dormand-Prince 8(5,3)
// pair from Hairer, Norsett & Wanner, "Solving Ordinary Differential
// Equations I") with error control based on the embedded fifth- and
// third-order results and a seventh-order dense-output interpolant.
//
// One instance owns the workspace for a fixed-dimension system and can be
// restarted any number of times.  Typical use goes through the high-level
// integrate() / integrate_at() calls; step-level access (start(),
// step_toward(), eval()) exists for event location.
class Dop853 {
public:
    Dop853(int dim, OdeRhs rhs, OdeOptions opt = OdeOptions());

    // Restart the integration at (t0, y0) heading for t_limit.  The target
    // is needed up front to bound the step size and fix the direction.
    void start(double t0, const double* y0, double t_limit);

    // Advance one accepted step, clamping the final step so that the
    // trajectory lands exactly on the target.  Returns false once the
    // target has been reached.  Throws NumericError on step-size underflow
    // or when max_steps is exhausted.
    bool step();

    // State after the last accepted step, and the interval it covered.
    double t() const { return t_; }
    double t_prev() const { return told_; }
    const double* y() const { return y_.data(); }

    // Dense evaluation of the solution or its time derivative anywhere in
    // [t_prev(), t()].
    void eval(double ti, double* yi) const;
    void eval_derivative(double ti, double* dyi) const;

    // Integrate from (t0, y0) to t1, leaving the result in y0.
    void integrate(double t0, double* y0, double t1);

    // Integrate from (t0, y0) to t1, writing the dense-output state at each
    // of the sorted times ts (all inside [t0, t1]) into states row by row;
    // y0 ends up holding y(t1).
    void integrate_at(double t0, double* y0, double t1,
                      const std::vector<double>& ts, double* states);

    // Take m equal-size eighth-order steps with no error control.  Used by
    // the order-convergence tests.
    void integrate_fixed(double t0, double* y0, double t1, int m);

    int dim() const { return dim_; }

private:
    void stages(double h);            // the twelve core stages
    double error_norm(double h) const;
    void prepare_dense(double h);
    double initial_step() const;

    int dim_;
    OdeRhs rhs_;
    OdeOptions opt_;

    double t_ = 0.0, told_ = 0.0, t_limit_ = 0.0;
    double h_ = 0.0, hmax_ = 0.0, dir_ = 1.0;
    long nstep_ = 0;
    bool reject_ = false, done_ = false, dense_ready_ = false;

    // y_: current state, k1_: derivative there, ynew_/knew_: end of the
    // trial step, yw_: stage workspace, k2_..k10_: stage slopes (slots 2 and
    // 3 are reused for stages 11, 12 and later 15, 16 exactly as in the
    // reference implementation), rc1_..rc8_: dense-output coefficients.
    std::vector<double> y_, k1_, ynew_, knew_, yw_;
    std::vector<double> k2_, k3_, k4_, k5_, k6_, k7_, k8_, k9_, k10_;
    std::vector<double> rc1_, rc2_, rc3_, rc4_, rc5_, rc6_, rc7_, rc8_;
};

// Scalar event function g(t, y); events are located where g crosses zero.
using EventFn = std::function<double(double t, const double* y)>;

struct EventResult {
    bool found = false;
    double t = 0.0;
    std::vector<double> y;
};

// Integrate from (t0, y0) until g(t, y(t)) crosses zero in the requested
// direction (+1 rising, -1 falling, 0 either), or until t_max.  The crossing
// is bracketed over an accepted step and refined with Brent's method on the
// dense output to tolerance t_tol.
EventResult find_event(Dop853& ode, double t0, const double* y0, double t_max,
                       const EventFn& g, int direction, double t_tol = 1e-13);

}  // namespace csmin
