#include "csmin/geometry.hpp"

#include <cmath>

namespace csmin {

namespace {

// Shared trig pack for one state.  ode_rhs supplies (r', theta', alpha')
// and enforces the domain guard; everything else is closed-form.
struct Trig {
    double sr, cr, st, ct, s2t, c2t, sa, ca;
    double cot_r, cot_2t;
    double d[3];  // r', theta', alpha'
};

Trig trig_at(const ProfileState& state, int n) {
    Trig v;
    ode_rhs(state, n, v.d);
    v.sr = std::sin(state.r);
    v.cr = std::cos(state.r);
    v.st = std::sin(state.theta);
    v.ct = std::cos(state.theta);
    v.s2t = std::sin(2.0 * state.theta);
    v.c2t = std::cos(2.0 * state.theta);
    v.sa = std::sin(state.alpha);
    v.ca = std::cos(state.alpha);
    v.cot_r = v.cr / v.sr;
    v.cot_2t = v.c2t / v.s2t;
    return v;
}

double log_deriv_EG(const Trig& v) {
    return 4.0 * v.cot_r * v.ca + 4.0 * v.cot_2t * v.sa / v.sr;
}

}  // namespace

MetricCoefficients metric_coeffs_at(const ProfileState& state, int n) {
    const Trig v = trig_at(state, n);
    const double da = v.d[2];

    MetricCoefficients m;
    m.E = v.sr * v.sr * v.ct * v.ct;
    m.G = v.sr * v.sr * v.st * v.st;
    m.dE = m.E * (2.0 * v.cot_r * v.ca - 2.0 * (v.st / v.ct) * v.sa / v.sr);
    m.dG = m.G * (2.0 * v.cot_r * v.ca + 2.0 * (v.ct / v.st) * v.sa / v.sr);
    m.dlogEG = log_deriv_EG(v);
    // d/dt of dlogEG with r' = cos a, theta' = sin a / sin r substituted.
    m.d2logEG = -4.0 * v.ca * v.ca / (v.sr * v.sr) -
                8.0 * v.sa * v.sa / (v.sr * v.sr * v.s2t * v.s2t) -
                4.0 * v.cot_r * v.sa * da + 4.0 * v.cot_2t * v.ca * da / v.sr -
                4.0 * v.cot_r * v.cot_2t * v.ca * v.sa / v.sr;
    return m;
}

CurvatureData curvatures_at(const ProfileState& state, int n) {
    const Trig v = trig_at(state, n);

    CurvatureData c;
    c.kappa_u = v.ca / v.sr * (v.st / v.ct) + v.cot_r * v.sa;
    c.kappa_v = v.cot_r * v.sa - v.ca / v.sr * (v.ct / v.st);
    c.kappa_t =
        (n - 1) * (2.0 * v.ca / v.sr * v.cot_2t - 2.0 * v.cot_r * v.sa);
    c.normA2 = (n - 1) * (c.kappa_u * c.kappa_u + c.kappa_v * c.kappa_v) +
               c.kappa_t * c.kappa_t;
    return c;
}

FrameFunctions frame_at(const ProfileState& state, int n) {
    const Trig v = trig_at(state, n);

    FrameFunctions f;
    f.gamma1 = v.sr * v.ct;
    f.gamma2 = v.sr * v.st;
    f.gamma3 = v.cr;
    f.nu1 = v.cr * v.sa * v.ct + v.ca * v.st;
    f.nu2 = v.cr * v.sa * v.st - v.ca * v.ct;
    f.nu3 = -v.sr * v.sa;
    f.f12 = v.sr * v.ca;
    f.f13 = v.cr * v.ca * v.st + v.sa * v.ct;
    f.f23 = v.sa * v.st - v.cr * v.ca * v.ct;

    const double EG = v.sr * v.sr * v.ct * v.ct * v.sr * v.sr * v.st * v.st;
    const double dlog = log_deriv_EG(v);
    f.weight = std::pow(EG, 0.25 * (n - 1));
    f.dlogweight = 0.25 * (n - 1) * dlog;
    f.a_n = 0.5 * (n - 1) * dlog;
    return f;
}

MetricCoefficients metric_coeffs(const ProfileCurve& curve, double t) {
    return metric_coeffs_at(curve.eval(t), curve.n());
}

CurvatureData curvatures(const ProfileCurve& curve, double t, int n) {
    return curvatures_at(curve.eval(t), n);
}

CurvatureData curvatures(const ProfileCurve& curve, double t) {
    return curvatures_at(curve.eval(t), curve.n());
}

FrameFunctions frame(const ProfileCurve& curve, double t) {
    return frame_at(curve.eval(t), curve.n());
}

}  // namespace csmin
