#include "csmin/hill.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>
#include <vector>

#include "csmin/dop853.hpp"
#include "csmin/errors.hpp"
#include "csmin/geometry.hpp"
#include "csmin/roots.hpp"

namespace csmin {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Augmented state layout: r, theta, alpha, z1, z1', z2, z2',
// int z1 z2, int z2^2, int z1^2.
constexpr int aug_dim = 10;

OdeRhs augmented_rhs(int n, const PotentialFn& V, double lambda) {
    return [n, &V, lambda](double t, const double* y, double* dy) {
        ProfileState s{t, y[0], y[1], y[2]};
        double d[3];
        ode_rhs(s, n, d);
        const double q = V(s) - lambda;  // z'' = (V - lambda) z
        dy[0] = d[0];
        dy[1] = d[1];
        dy[2] = d[2];
        dy[3] = y[4];
        dy[4] = q * y[3];
        dy[5] = y[6];
        dy[6] = q * y[5];
        dy[7] = y[3] * y[5];
        dy[8] = y[5] * y[5];
        dy[9] = y[3] * y[3];
    };
}

OdeOptions augmented_opts(const ProfileCurve& curve, bool dense) {
    OdeOptions opt;
    opt.rtol = curve.params().ode_tol;
    opt.atol = curve.params().ode_tol;
    opt.dense = dense;
    return opt;
}

void check_wronskian(const MonodromyData& m) {
    // The drift of z1 z2' - z1' z2 is proportional to the solution magnitude
    // along the whole interval, not just at the endpoints: under a high
    // barrier the fundamental solutions peak mid-period and return to O(1).
    // The accumulated quadratures measure that interior scale.
    const double scale =
        std::max({1.0, std::fabs(m.z1T * m.dz2T) + std::fabs(m.dz1T * m.z2T),
                  m.int_z1sq + m.int_z2sq});
    if (!(std::fabs(m.wronskian - 1.0) <= 1e-9 * scale))
        throw InvariantError("monodromy wronskian deviates from 1 at lambda=" +
                             std::to_string(m.lambda));
}

}  // namespace

double sphere_eigenvalue(int k, int i) {
    if (k < 1 || i < 1) throw Error("sphere_eigenvalue requires k, i >= 1");
    return static_cast<double>(i - 1) * (k + i - 2);
}

double potential_value_at(const HillPotential& pot, const ProfileState& state) {
    if (pot.curve == nullptr) throw Error("potential without a curve");
    if (pot.i < 1 || pot.j < 1) throw Error("sphere-mode indices start at 1");
    const int n = pot.curve->n();
    const int k = n - 1;
    const MetricCoefficients m = metric_coeffs_at(state, n);
    const double L1 = m.dlogEG;
    const double ratio2 = m.d2logEG + L1 * L1;  // (EG)''/(EG)
    double V = 0.25 * (n - 1) * ratio2 -
               (n - 1) * (5.0 - n) / 16.0 * L1 * L1 +
               sphere_eigenvalue(k, pot.i) / m.E +
               sphere_eigenvalue(k, pot.j) / m.G;
    if (pot.kind == OperatorKind::Stability) {
        const CurvatureData c = curvatures_at(state, n);
        V -= c.normA2 + (2.0 * n - 1.0);
    }
    return V;
}

double potential_value(const HillPotential& pot, double t) {
    return potential_value_at(pot, pot.curve->eval(t));
}

double min_potential(const HillPotential& pot) {
    double vmin = potential_value_at(pot, pot.curve->samples().front());
    for (const auto& s : pot.curve->samples())
        vmin = std::min(vmin, potential_value_at(pot, s));
    return vmin;
}

MonodromyData monodromy(const ProfileCurve& curve, const PotentialFn& V,
                        double lambda) {
    const double T = curve.period();
    Dop853 ode(aug_dim, augmented_rhs(curve.n(), V, lambda),
               augmented_opts(curve, false));
    double y[aug_dim] = {std::numbers::pi / 2, curve.theta0(), 0.0,
                         1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0};
    ode.integrate(0.0, y, T / 2);

    MonodromyData m;
    m.lambda = lambda;
    m.z1_half = y[3];
    m.dz1_half = y[4];
    m.z2_half = y[5];
    m.dz2_half = y[6];

    ode.integrate(T / 2, y, T);
    m.z1T = y[3];
    m.dz1T = y[4];
    m.z2T = y[5];
    m.dz2T = y[6];
    m.int_z1z2 = y[7];
    m.int_z2sq = y[8];
    m.int_z1sq = y[9];
    m.delta = m.z1T + m.dz2T;
    m.wronskian = m.z1T * m.dz2T - m.dz1T * m.z2T;
    check_wronskian(m);
    return m;
}

MonodromyData monodromy(const HillPotential& pot, double lambda) {
    const HillPotential p = pot;
    return monodromy(*pot.curve,
                     [p](const ProfileState& s) {
                         return potential_value_at(p, s);
                     },
                     lambda);
}

double discriminant(const HillPotential& pot, double lambda) {
    return monodromy(pot, lambda).delta;
}

double discriminant_derivative(const MonodromyData& m) {
    return m.int_z1z2 * (m.z1T - m.dz2T) - m.z2T * m.int_z1sq +
           m.dz1T * m.int_z2sq;
}

double discriminant_derivative(const HillPotential& pot, double lambda) {
    return discriminant_derivative(monodromy(pot, lambda));
}

const char* parity_name(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        default: return "both";
    }
}

namespace {

constexpr double root_xtol = 1e-11;
constexpr double cluster_tol = 1e-7;    // roots closer than this merge
constexpr double coexist_tol = 1e-7;    // |b| + |c| below: identity monodromy
constexpr double touch_tol = 1e-8;      // grazing extremum counts as a root

std::vector<double> scan_candidates(const std::function<double(double)>& h,
                                    const std::function<double(double)>& hp,
                                    double lam_lo, double du, int npoints) {
    // Grid values, evaluated concurrently in disjoint strides.
    std::vector<double> lam(npoints), hv(npoints);
    for (int k = 0; k < npoints; ++k) lam[k] = lam_lo + (k * du) * (k * du);

    unsigned p = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> futs;
    for (unsigned w = 0; w < p; ++w)
        futs.push_back(std::async(std::launch::async, [&, w]() {
            for (int k = static_cast<int>(w); k < npoints;
                 k += static_cast<int>(p))
                hv[k] = h(lam[k]);
        }));
    for (auto& f : futs) f.get();

    std::vector<double> cands;
    for (int k = 0; k + 1 < npoints; ++k) {
        if (hv[k] == 0.0) cands.push_back(lam[k]);
        if (hv[k] * hv[k + 1] < 0.0)
            cands.push_back(brent_root(h, lam[k], lam[k + 1], root_xtol));
    }
    if (hv[npoints - 1] == 0.0) cands.push_back(lam[npoints - 1]);

    // Interior extrema: a dip below the axis between two positive grid
    // values hides a root pair; a grazing maximum below the axis is a
    // closed gap (double eigenvalue).  Both are recovered here.
    for (int k = 1; k + 1 < npoints; ++k) {
        const bool local_max = hv[k] >= hv[k - 1] && hv[k] >= hv[k + 1];
        const bool local_min = hv[k] <= hv[k - 1] && hv[k] <= hv[k + 1];
        if (!(local_max && hv[k] < 0.0) && !(local_min && hv[k] > 0.0))
            continue;
        const double sign = local_max ? -1.0 : 1.0;  // minimize sign * h
        double hstar = 0.0;
        const double lstar = brent_minimize(
            [&](double x) { return sign * h(x); }, lam[k - 1], lam[k + 1],
            root_xtol, &hstar);
        hstar *= sign;
        if (std::fabs(hstar) <= touch_tol) {
            // A grazing contact is a double root of h, so the minimizer
            // alone only locates it to the square root of the working
            // precision.  The slope h' crosses zero there transversally;
            // refining on it recovers full accuracy.
            const double pa = hp(lam[k - 1]), pb = hp(lam[k + 1]);
            cands.push_back(pa * pb < 0.0
                                ? brent_root(hp, lam[k - 1], lam[k + 1],
                                             root_xtol)
                                : lstar);
        } else if ((local_max && hstar > 0.0) || (local_min && hstar < 0.0)) {
            if (h(lam[k - 1]) * hstar < 0.0)
                cands.push_back(brent_root(h, lam[k - 1], lstar, root_xtol));
            if (h(lam[k + 1]) * hstar < 0.0)
                cands.push_back(brent_root(h, lstar, lam[k + 1], root_xtol));
        }
    }
    std::sort(cands.begin(), cands.end());
    return cands;
}

}  // namespace

std::vector<PeriodicEigenvalue> periodic_eigenvalues(const ProfileCurve& curve,
                                                     const PotentialFn& V,
                                                     double v_min,
                                                     double lambda_max) {
    const double T = curve.period();
    const double lam_lo = v_min - 1.0;
    std::vector<PeriodicEigenvalue> out;
    if (lambda_max < lam_lo) return out;

    const double du = (two_pi / T) / 16.0;
    const double u_max = std::sqrt(lambda_max - lam_lo);
    const int npoints = static_cast<int>(std::ceil(u_max / du)) + 2;

    const auto h = [&curve, &V](double lambda) {
        return monodromy(curve, V, lambda).delta - 2.0;
    };
    const auto hp = [&curve, &V](double lambda) {
        return discriminant_derivative(monodromy(curve, V, lambda));
    };
    const std::vector<double> cands =
        scan_candidates(h, hp, lam_lo, du, npoints);

    int next_ordinal = 1;
    std::size_t idx = 0;
    while (idx < cands.size()) {
        std::size_t last = idx;
        while (last + 1 < cands.size() &&
               cands[last + 1] - cands[last] < cluster_tol)
            ++last;
        const double lambda = cands[idx];
        idx = last + 1;
        if (lambda > lambda_max) continue;

        const MonodromyData m = monodromy(curve, V, lambda);
        PeriodicEigenvalue eig;
        eig.lambda = lambda;
        eig.k = next_ordinal;
        // Both off-diagonal entries vanish at an identity monodromy, but
        // their natural sizes differ by the oscillation frequency (z2T
        // carries a 1/omega, its counterpart an omega), so the test weighs
        // them onto a common footing before comparing against the tolerance.
        const double w = std::sqrt(std::max(1.0, std::fabs(lambda)));
        const bool coexist =
            std::fabs(m.z2T) * w + std::fabs(m.dz1T) / w < coexist_tol;
        eig.multiplicity = coexist ? 2 : 1;
        eig.parity = coexist ? Parity::Both
                             : (std::fabs(m.dz1T) / w < std::fabs(m.z2T) * w
                                    ? Parity::Even
                                    : Parity::Odd);
        next_ordinal += eig.multiplicity;

        const NodalInfo ni = nodal_info(curve, V, eig);
        eig.nodal_count = ni.count;
        eig.ambiguous_zeros = ni.ambiguous;
        out.push_back(eig);
    }
    return out;
}

std::vector<PeriodicEigenvalue> periodic_eigenvalues(const HillPotential& pot,
                                                     double lambda_max) {
    const HillPotential p = pot;
    return periodic_eigenvalues(
        *pot.curve,
        [p](const ProfileState& s) { return potential_value_at(p, s); },
        min_potential(pot), lambda_max);
}

NodalInfo nodal_info(const ProfileCurve& curve, const PotentialFn& V,
                     const PeriodicEigenvalue& eig) {
    const double T = curve.period();
    const int n = curve.n();
    const int m_samples = 2048;
    const int zslot = (eig.parity == Parity::Odd) ? 5 : 3;

    Dop853 ode(aug_dim, augmented_rhs(n, V, eig.lambda),
               augmented_opts(curve, true));
    std::vector<double> ts(m_samples);
    for (int k = 0; k < m_samples; ++k) ts[k] = T * k / m_samples;
    std::vector<double> states(aug_dim * m_samples);
    double y0[aug_dim] = {std::numbers::pi / 2, curve.theta0(), 0.0,
                          1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0};
    ode.integrate_at(0.0, y0, T, ts, states.data());

    std::vector<double> z(m_samples);
    double maxabs = 0.0;
    for (int k = 0; k < m_samples; ++k) {
        z[k] = states[aug_dim * k + zslot];
        maxabs = std::max(maxabs, std::fabs(z[k]));
    }
    if (maxabs == 0.0)
        throw NumericError("eigenfunction is identically zero on the grid");

    NodalInfo info;
    int prev = -1;               // index of the last nonzero sample
    bool zero_between = false;   // an exact zero separates prev and current
    for (int k = 0; k < m_samples; ++k) {
        if (z[k] == 0.0) {
            ++info.count;
            zero_between = true;
            continue;
        }
        if (prev >= 0 && !zero_between && z[prev] * z[k] < 0.0) {
            // Re-examine the bracket on a subgrid: a fast dip can cross
            // more than once inside one cell.
            int crossings = 0;
            if (k == prev + 1) {
                const double ta = ts[prev];
                const double tb = ts[k];
                double ys[aug_dim];
                std::copy(states.begin() + aug_dim * prev,
                          states.begin() + aug_dim * (prev + 1), ys);
                std::vector<double> sub_ts(7);
                for (int s = 0; s < 7; ++s)
                    sub_ts[s] = ta + (tb - ta) * (s + 1) / 8.0;
                std::vector<double> sub(aug_dim * 7);
                Dop853 local(aug_dim, augmented_rhs(n, V, eig.lambda),
                             augmented_opts(curve, true));
                local.integrate_at(ta, ys, tb, sub_ts, sub.data());
                double last = z[prev];
                for (int s = 0; s < 7; ++s) {
                    const double zs = sub[aug_dim * s + zslot];
                    if (zs == 0.0) continue;
                    if (last * zs < 0.0) ++crossings;
                    last = zs;
                }
                if (last * z[k] < 0.0) ++crossings;
            } else {
                crossings = 1;
            }
            info.count += std::max(crossings, 1);
        }
        prev = k;
        zero_between = false;
    }

    // Ambiguity: |z| hugging zero across consecutive samples without a
    // sign change in between suggests a tangential zero.
    const double thr = 1e-5 * maxabs;
    int run_start = -1;
    for (int k = 0; k <= m_samples; ++k) {
        const bool low = k < m_samples && z[k] != 0.0 && std::fabs(z[k]) < thr;
        if (low && run_start < 0) run_start = k;
        if (!low && run_start >= 0) {
            const int run_len = k - run_start;
            if (run_len >= 2) {
                const double before = run_start > 0 ? z[run_start - 1] : 0.0;
                const double after = k < m_samples ? z[k] : 0.0;
                if (before * after > 0.0) info.ambiguous = true;
            }
            run_start = -1;
        }
    }
    return info;
}

NodalInfo nodal_info(const HillPotential& pot, const PeriodicEigenvalue& eig) {
    const HillPotential p = pot;
    return nodal_info(
        *pot.curve,
        [p](const ProfileState& s) { return potential_value_at(p, s); }, eig);
}

int nodal_count(const HillPotential& pot, const PeriodicEigenvalue& eig) {
    return nodal_info(pot, eig).count;
}

}  // namespace csmin
