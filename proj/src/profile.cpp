#include "csmin/profile.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "csmin/roots.hpp"

namespace csmin {
namespace {

constexpr double pi = std::numbers::pi;

// Singularity guard for the coordinate chart.
constexpr double domain_tiny = 1e-12;

// Trajectories that have not crossed alpha = 0 within this arclength are
// treated as failed shots (the converged s_star is below 1 for every n).
constexpr double max_arclength = 50.0;

// Interpolation grid size for a built curve; the cubic-Hermite error at
// this resolution is far below the integration tolerance.
constexpr int samples_per_period = 8192;

OdeRhs profile_odefun(int n) {
    return [n](double, const double* y, double* dy) {
        ProfileState s;
        s.r = y[0];
        s.theta = y[1];
        s.alpha = y[2];
        ode_rhs(s, n, dy);
    };
}

OdeOptions profile_opts(double ode_tol) {
    OdeOptions opt;
    opt.rtol = ode_tol;
    opt.atol = ode_tol;
    return opt;
}

}  // namespace

void EmbeddingParams::check() const {
    if (n < 2) throw Error("params: n must be at least 2");
    if (!(shoot_tol > 0.0) || !(ode_tol > 0.0))
        throw Error("params: tolerances must be positive");
}

void ode_rhs(const ProfileState& state, int n, double deriv[3]) {
    const double sr = std::sin(state.r);
    if (sr <= domain_tiny)
        throw DomainError("profile: r left (0, pi) at t = " +
                          std::to_string(state.t));
    if (state.theta <= domain_tiny || state.theta >= pi / 2 - domain_tiny)
        throw DomainError("profile: theta left (0, pi/2) at t = " +
                          std::to_string(state.t));
    const double cr = std::cos(state.r);
    const double sa = std::sin(state.alpha);
    const double ca = std::cos(state.alpha);
    const double cot2t =
        std::cos(2.0 * state.theta) / std::sin(2.0 * state.theta);
    deriv[0] = ca;
    deriv[1] = sa / sr;
    deriv[2] = (2.0 * n - 2.0) / sr * ca * cot2t -
               (2.0 * n - 1.0) * cr / sr * sa;
}

std::vector<ProfileState> integrate_profile(const ProfileState& init, int n,
                                            double t_end, double ode_tol,
                                            int n_samples) {
    if (n_samples < 2) return {init};
    if (t_end == init.t) return std::vector<ProfileState>(n_samples, init);

    Dop853 ode(3, profile_odefun(n), profile_opts(ode_tol));
    std::vector<double> ts(n_samples);
    for (int k = 0; k < n_samples; ++k)
        ts[k] = init.t + (t_end - init.t) * k / (n_samples - 1);
    std::vector<double> grid(3 * n_samples);
    double y[3] = {init.r, init.theta, init.alpha};
    ode.integrate_at(init.t, y, t_end, ts, grid.data());

    std::vector<ProfileState> out(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        out[k].t = ts[k];
        out[k].r = grid[3 * k];
        out[k].theta = grid[3 * k + 1];
        out[k].alpha = grid[3 * k + 2];
    }
    return out;
}

ShootResult shoot(const EmbeddingParams& params) {
    params.check();
    const int n = params.n;
    Dop853 ode(3, profile_odefun(n), profile_opts(params.ode_tol));
    const auto alpha_of = [](double, const double* y) { return y[2]; };

    // r at the first rising alpha = 0 crossing, minus pi/2; NaN marks trial
    // values whose trajectory crashes into a coordinate singularity or
    // never produces the event.
    const auto mismatch = [&](double r0) {
        double y0[3] = {r0, pi / 4, -pi / 2};
        try {
            EventResult ev =
                find_event(ode, 0.0, y0, max_arclength, alpha_of, +1);
            if (!ev.found) return std::nan("");
            return ev.y[0] - pi / 2;
        } catch (const NumericError&) {
            return std::nan("");
        }
    };

    // Coarse scan for a sign change, first over the expected window
    // (r is increasing toward pi/2, so r0 < pi/2), then over all of (0, pi).
    const auto scan = [&](double lo, double hi, int m, double* a, double* b) {
        double prev_r0 = 0.0, prev_g = std::nan("");
        for (int k = 0; k < m; ++k) {
            const double r0 = lo + (hi - lo) * k / (m - 1);
            const double g = mismatch(r0);
            if (std::isfinite(prev_g) && std::isfinite(g) &&
                (prev_g < 0.0) != (g < 0.0)) {
                *a = prev_r0;
                *b = r0;
                return true;
            }
            prev_r0 = r0;
            prev_g = g;
        }
        return false;
    };

    double a = 0.0, b = 0.0;
    if (!scan(0.05, pi / 2 - 0.05, 64, &a, &b) &&
        !scan(0.02, pi - 0.02, 256, &a, &b)) {
        // Failure path: attach a diagnostic table of the mismatch so the
        // caller sees where every trial landed.
        std::string table = "\n      r0        r(alpha=0) - pi/2";
        for (int k = 0; k < 16; ++k) {
            const double r0 = 0.05 + (pi - 0.1) * k / 15.0;
            const double g = mismatch(r0);
            char row[64];
            std::snprintf(row, sizeof row, "\n  %8.5f    %s", r0,
                          std::isfinite(g) ? std::to_string(g).c_str()
                                           : "no event / left domain");
            table += row;
        }
        throw NumericError(
            "shoot: no sign change of the mismatch r(at alpha=0) - pi/2 for "
            "n = " + std::to_string(n) +
            " over 64 trial values in (0.05, pi/2 - 0.05) nor 256 in "
            "(0.02, pi - 0.02)" + table);
    }

    const double r0 = brent_root(
        [&](double x) {
            const double g = mismatch(x);
            if (!std::isfinite(g))
                throw NumericError(
                    "shoot: mismatch became non-finite during refinement");
            return g;
        },
        a, b, 1e-13);

    double y0[3] = {r0, pi / 4, -pi / 2};
    EventResult ev = find_event(ode, 0.0, y0, max_arclength, alpha_of, +1);
    if (!ev.found)
        throw NumericError("shoot: alpha = 0 event lost after refinement");

    ShootResult res;
    res.r0 = r0;
    res.s_star = ev.t;
    res.theta_star = ev.y[1];
    res.residual = std::fabs(ev.y[0] - pi / 2);
    if (res.residual > params.shoot_tol)
        throw NumericError("shoot: residual " + std::to_string(res.residual) +
                           " exceeds shoot_tol for n = " + std::to_string(n));
    if (!(res.theta_star > 0.0 && res.theta_star < pi / 4))
        throw InvariantError("shoot: theta(s_star) outside (0, pi/4)");
    return res;
}

ProfileCurve::ProfileCurve(const EmbeddingParams& params, double r0,
                           double theta0, double period,
                           std::vector<ProfileState> samples)
    : params_(params), r0_(r0), theta0_(theta0), period_(period),
      samples_(std::move(samples)) {
    params_.check();
    if (period_ <= 0.0) throw Error("curve: period must be positive");
    const std::size_t m = samples_.size();
    if (m < 16) throw Error("curve: too few samples");
    const double h = period_ / static_cast<double>(m - 1);
    for (std::size_t k = 0; k < m; ++k)
        if (std::fabs(samples_[k].t - static_cast<double>(k) * h) > 1e-9 * period_)
            throw Error("curve: samples are not on a uniform grid over [0, T]");
    derivs_.resize(3 * m);
    for (std::size_t k = 0; k < m; ++k)
        ode_rhs(samples_[k], params_.n, derivs_.data() + 3 * k);
}

ProfileState ProfileCurve::eval(double t) const {
    const double wind = std::floor(t / period_);
    double tau = t - wind * period_;
    if (tau >= period_) tau = 0.0;  // guard against roundoff at the seam

    const std::size_t m = samples_.size() - 1;  // number of intervals
    const double h = period_ / static_cast<double>(m);
    std::size_t idx = static_cast<std::size_t>(tau / h);
    if (idx >= m) idx = m - 1;
    const double s = (tau - static_cast<double>(idx) * h) / h;

    // cubic Hermite basis
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;

    const ProfileState& p0 = samples_[idx];
    const ProfileState& p1 = samples_[idx + 1];
    const double* d0 = derivs_.data() + 3 * idx;
    const double* d1 = derivs_.data() + 3 * (idx + 1);

    ProfileState out;
    out.t = t;
    out.r = h00 * p0.r + h10 * h * d0[0] + h01 * p1.r + h11 * h * d1[0];
    out.theta =
        h00 * p0.theta + h10 * h * d0[1] + h01 * p1.theta + h11 * h * d1[1];
    out.alpha = h00 * p0.alpha + h10 * h * d0[2] + h01 * p1.alpha +
                h11 * h * d1[2] + 2.0 * pi * wind;
    return out;
}

void ProfileCurve::check_symmetries(double tol) const {
    const double T = period_;
    double worst = 0.0;
    const char* what = "";
    const auto track = [&](double resid, const char* name) {
        if (std::fabs(resid) > worst) {
            worst = std::fabs(resid);
            what = name;
        }
    };

    // period-closure residuals of the raw integrated samples
    track(samples_.front().r - pi / 2, "r(0) = pi/2");
    track(samples_.front().alpha, "alpha(0) = 0");
    track(samples_.back().alpha - 2.0 * pi, "alpha(T) - alpha(0) = 2 pi");
    track(samples_.back().r - pi / 2, "r(T) = r(0)");
    track(samples_.back().theta - theta0_, "theta(T) = theta(0)");

    for (int k = 0; k < 512; ++k) {
        const double t = T * k / 512.0;
        const ProfileState p = eval(t);
        const ProfileState q = eval(-t);
        const ProfileState half = eval(t + T / 2);
        track(q.theta - p.theta, "theta(-t) = theta(t)");
        track(q.r + p.r - pi, "r(-t) + r(t) = pi");
        track(q.alpha + p.alpha, "alpha(-t) = -alpha(t)");
        track(half.theta - (pi / 2 - p.theta), "theta(t+T/2) = pi/2 - theta(t)");
        track(half.r - (pi - p.r), "r(t+T/2) = pi - r(t)");
    }

    if (worst > tol) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "curve: symmetry '%s' violated by %.3e (tol %.3e)",
                      what, worst, tol);
        throw InvariantError(buf);
    }
}

ProfileCurve build_curve(const EmbeddingParams& params) {
    const ShootResult sh = shoot(params);
    const double T = 4.0 * sh.s_star;

    const int m = samples_per_period;
    std::vector<double> ts(m + 1);
    for (int k = 0; k <= m; ++k) ts[k] = T * k / m;
    ts[m] = T;

    Dop853 ode(3, profile_odefun(params.n), profile_opts(params.ode_tol));
    std::vector<double> grid(3 * (m + 1));
    double y0[3] = {pi / 2, sh.theta_star, 0.0};
    ode.integrate_at(0.0, y0, T, ts, grid.data());

    std::vector<ProfileState> samples(m + 1);
    for (int k = 0; k <= m; ++k) {
        samples[k].t = ts[k];
        samples[k].r = grid[3 * k];
        samples[k].theta = grid[3 * k + 1];
        samples[k].alpha = grid[3 * k + 2];
    }

    ProfileCurve curve(params, sh.r0, sh.theta_star, T, std::move(samples));
    curve.check_symmetries(100.0 * params.shoot_tol);
    return curve;
}

ProfileState eval_profile(const ProfileCurve& curve, double t) {
    return curve.eval(t);
}

}  // namespace csmin
