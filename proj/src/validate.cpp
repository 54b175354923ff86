#include "csmin/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "csmin/errors.hpp"
#include "csmin/geometry.hpp"
#include "csmin/hill.hpp"
#include "csmin/spectrum.hpp"
#include "csmin/yau.hpp"

namespace csmin {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Golden-ratio stride covers [0, T) without resonating with the stored
// sample grid, so interpolated and nodal points are both exercised.
double stride_t(int k, double period) {
    const double phi = 0.6180339887498949;
    return period * std::fmod(k * phi, 1.0);
}

std::string fmt6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

struct Suite {
    std::vector<ValidationCheck>* out;

    void add(const std::string& name, double residual, double tolerance,
             bool passed, std::string detail = "") {
        out->push_back({name, residual, tolerance, passed, std::move(detail)});
    }
    // Common case: a residual that must stay at or under its tolerance.
    void bound(const std::string& name, double residual, double tolerance,
               std::string detail = "") {
        add(name, residual, tolerance, residual <= tolerance,
            std::move(detail));
    }
};

// Fourth-order central difference of f over the curve parameter.
template <class F>
double fd4(const F& f, double t, double h) {
    return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) /
           (12 * h);
}

void profile_suite(const ProfileCurve& curve, Suite& s) {
    const double T = curve.period();
    const int n = curve.n();

    // The stored samples must genuinely solve the arc-length system: the
    // right-hand side satisfies the unit-speed identity exactly, so the
    // meaningful test differentiates the interpolant itself.
    double arc = 0.0;
    const double h = T / (8 * 511.0);
    for (int k = 0; k < 511; ++k) {
        const double t = stride_t(k + 1, T);
        const double dr =
            fd4([&](double u) { return curve.eval(u).r; }, t, h);
        const double dth =
            fd4([&](double u) { return curve.eval(u).theta; }, t, h);
        const double sr = std::sin(curve.eval(t).r);
        arc = std::max(arc, std::abs(dr * dr + sr * sr * dth * dth - 1.0));
    }
    s.bound("profile: arc-length defect", arc, 1e-8,
            "4th-order differences of the interpolant, 511 points");

    double min_dtheta = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 512; ++k) {
        const double t = 0.25 * T * k / 512.0;
        const ProfileState p = curve.eval(t);
        min_dtheta = std::min(min_dtheta, std::sin(p.alpha) / std::sin(p.r));
    }
    s.add("profile: theta increasing on (0, T/4)", std::max(0.0, -min_dtheta),
          0.0, min_dtheta > 0.0);

    double even = 0.0, reflect = 0.0, odd = 0.0, half = 0.0;
    for (int k = 0; k < 512; ++k) {
        const double t = T * k / 512.0;
        const ProfileState a = curve.eval(t);
        const ProfileState b = curve.eval(-t);
        const ProfileState c = curve.eval(t + T / 2);
        even = std::max(even, std::abs(b.theta - a.theta));
        reflect = std::max(reflect, std::abs(b.r + a.r - kPi));
        odd = std::max(odd, std::abs(b.alpha + a.alpha));
        half = std::max(half, std::abs(c.theta + a.theta - kPi / 2));
    }
    s.bound("profile: theta even", even, 1e-7, "512-point grid");
    s.bound("profile: r reflection r(-t)+r(t)=pi", reflect, 1e-7);
    s.bound("profile: alpha odd", odd, 1e-7);
    s.bound("profile: theta(t+T/2) = pi/2 - theta(t)", half, 1e-7);
    s.bound("profile: alpha winding 2pi per period",
            std::abs(curve.eval(T).alpha - curve.eval(0.0).alpha - 2 * kPi),
            1e-7);

    // Self-convergence: a rebuild at 10x tighter tolerance must reproduce
    // the boundary data far beyond the coarser tolerance alone.
    EmbeddingParams tight = curve.params();
    tight.ode_tol = std::max(1e-14, tight.ode_tol / 10.0);
    const ProfileCurve refined = build_curve(tight);
    const double dr0 = std::abs(refined.r0() - curve.r0()) /
                       std::abs(curve.r0());
    const double dT = std::abs(refined.period() - curve.period()) /
                      curve.period();
    s.bound("profile: self-convergence of r0 and T", std::max(dr0, dT), 1e-8,
            "ode_tol vs ode_tol/10, relative");
    (void)n;
}

void geometry_suite(const ProfileCurve& curve, Suite& s) {
    const double T = curve.period();
    const int n = curve.n();

    double gnorm = 0.0, nnorm = 0.0, ortho = 0.0, trace = 0.0, cross = 0.0;
    double an_odd = 0.0, nu3_odd = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double t = stride_t(k, T);
        const FrameFunctions f = frame(curve, t);
        const FrameFunctions fm = frame(curve, -t);
        const CurvatureData c = curvatures(curve, t);
        const double g2 =
            f.gamma1 * f.gamma1 + f.gamma2 * f.gamma2 + f.gamma3 * f.gamma3;
        const double n2 = f.nu1 * f.nu1 + f.nu2 * f.nu2 + f.nu3 * f.nu3;
        gnorm = std::max(gnorm, std::abs(std::sqrt(g2) - 1.0));
        nnorm = std::max(nnorm, std::abs(std::sqrt(n2) - 1.0));
        ortho = std::max(ortho, std::abs(f.gamma1 * f.nu1 + f.gamma2 * f.nu2 +
                                         f.gamma3 * f.nu3));
        trace = std::max(trace, std::abs((n - 1) * (c.kappa_u + c.kappa_v) +
                                         c.kappa_t));
        cross = std::max({cross,
                          std::abs(f.f12 - (f.nu1 * f.gamma2 -
                                            f.nu2 * f.gamma1)),
                          std::abs(f.f13 - (f.nu1 * f.gamma3 -
                                            f.nu3 * f.gamma1)),
                          std::abs(f.f23 - (f.nu2 * f.gamma3 -
                                            f.nu3 * f.gamma2))});
        an_odd = std::max(an_odd, std::abs(f.a_n + fm.a_n));
        nu3_odd = std::max(nu3_odd, std::abs(f.nu3 + fm.nu3));
    }
    s.bound("geometry: |gamma| = 1", gnorm, 1e-8, "1000 samples");
    s.bound("geometry: |nu| = 1", nnorm, 1e-8, "1000 samples");
    s.bound("geometry: gamma . nu = 0", ortho, 1e-8, "1000 samples");
    s.bound("geometry: (n-1)(ku+kv)+kt = 0", trace, 1e-8, "1000 samples");
    s.bound("geometry: f_ij = nu x gamma components", cross, 1e-8,
            "1000 samples");
    s.bound("geometry: a_n odd", an_odd, 1e-8, "1000 samples");
    s.bound("geometry: nu3 odd", nu3_odd, 1e-8, "1000 samples");

    // Tangency is stationary: the normal never acquires a gamma component.
    double tangency = 0.0;
    for (int k = 1; k < 100; ++k) {
        const double t = T * k / 100.0;
        const double d = fd4(
            [&](double u) {
                const FrameFunctions f = frame(curve, u);
                return f.gamma1 * f.nu1 + f.gamma2 * f.nu2 +
                       f.gamma3 * f.nu3;
            },
            t, 1e-4);
        tangency = std::max(tangency, std::abs(d));
    }
    s.bound("geometry: d/dt (gamma . nu) = 0", tangency, 1e-6,
            "finite-difference derivative");

    double de_rel = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double t = stride_t(3 * k + 1, T);
        const MetricCoefficients m = metric_coeffs(curve, t);
        const double h = 1e-5;
        const double fd = (metric_coeffs(curve, t + h).E -
                           metric_coeffs(curve, t - h).E) /
                          (2 * h);
        de_rel = std::max(de_rel, std::abs(m.dE - fd) /
                                      std::max(1.0, std::abs(m.dE)));
    }
    s.bound("geometry: dE analytic vs differences", de_rel, 1e-6,
            "200 samples, central h=1e-5");

    const FrameFunctions f0 = frame(curve, 0.0);
    const FrameFunctions fh = frame(curve, T / 2);
    s.bound("geometry: nu3 vanishes at t=0 and T/2",
            std::max(std::abs(f0.nu3), std::abs(fh.nu3)), 1e-8);

    // Lemma-pattern sign structure: nu1 and nu2 are even with exactly one
    // sign change on (0, T/2).
    int flips1 = 0, flips2 = 0;
    double nu_even = 0.0;
    double prev1 = frame(curve, T / 1024.0).nu1;
    double prev2 = frame(curve, T / 1024.0).nu2;
    for (int k = 2; k < 512; ++k) {
        const double t = 0.5 * T * k / 512.0;
        const FrameFunctions f = frame(curve, t);
        const FrameFunctions fm = frame(curve, -t);
        nu_even = std::max({nu_even, std::abs(f.nu1 - fm.nu1),
                            std::abs(f.nu2 - fm.nu2)});
        if (f.nu1 * prev1 < 0) ++flips1;
        if (f.nu2 * prev2 < 0) ++flips2;
        prev1 = f.nu1;
        prev2 = f.nu2;
    }
    s.add("geometry: nu1, nu2 even with one sign change", nu_even, 1e-8,
          nu_even <= 1e-8 && flips1 == 1 && flips2 == 1,
          "sign changes on (0, T/2): " + std::to_string(flips1) + ", " +
              std::to_string(flips2));
}

void hill_suite(const ProfileCurve& curve, Suite& s) {
    const int n = curve.n();
    const double q = 2.0 * n - 1.0;
    const HillPotential L11{&curve, OperatorKind::Laplacian, 1, 1};
    const HillPotential S11{&curve, OperatorKind::Stability, 1, 1};

    // Monodromy identities across a lambda sweep of both operators.  The
    // residuals are measured relative to the size of the fundamental system,
    // which can grow exponentially below the potential minimum.
    double wron = 0.0, even_ids = 0.0;
    for (const HillPotential* pot : {&L11, &S11}) {
        const double lo = min_potential(*pot) - 0.5;
        const double hi = 3 * q + 0.5;
        for (int k = 0; k <= 32; ++k) {
            const double lam = lo + (hi - lo) * k / 32.0;
            const MonodromyData m = monodromy(*pot, lam);
            const double scale =
                std::max({1.0, std::abs(m.z1T * m.dz2T) +
                                   std::abs(m.dz1T * m.z2T),
                          m.int_z1sq + m.int_z2sq});
            wron = std::max(wron, std::abs(m.wronskian - 1.0) / scale);
            const double hscale =
                std::max({1.0, std::abs(m.z1_half * m.dz2_half),
                          std::abs(m.z2_half * m.dz2_half),
                          std::abs(m.z1_half * m.dz1_half)});
            even_ids = std::max(
                {even_ids,
                 std::abs(m.z1T - (2 * m.z1_half * m.dz2_half - 1)) / hscale,
                 std::abs(m.z2T - 2 * m.z2_half * m.dz2_half) / hscale,
                 std::abs(m.dz1T - 2 * m.z1_half * m.dz1_half) / hscale,
                 std::abs(m.dz2T - m.z1T) / hscale});
        }
    }
    s.bound("hill: wronskian = 1", wron, 1e-9,
            "66 lambdas, L~11 and S~11, relative to solution size");
    s.bound("hill: half-period composition identities", even_ids, 1e-8,
            "all four, same sweep");

    double v_even = 0.0;
    const HillPotential L23{&curve, OperatorKind::Laplacian, 2, 3};
    for (int k = 0; k < 512; ++k) {
        const double t = curve.period() * k / 512.0;
        for (const HillPotential* pot : {&L11, &S11, &L23})
            v_even = std::max(v_even, std::abs(potential_value(*pot, t) -
                                               potential_value(*pot, -t)));
    }
    s.bound("hill: potential evenness", v_even, 1e-7,
            "512-point grid, three operators");

    // The discriminant slope from the variation-of-parameters identity must
    // agree with a direct difference quotient of delta.
    double slope = 0.0;
    for (double lam : {0.3, 0.45 * q, q + 0.4}) {
        const double dh = 1e-5;
        const double fd = (discriminant(L11, lam + dh) -
                           discriminant(L11, lam - dh)) /
                          (2 * dh);
        const double an = discriminant_derivative(L11, lam);
        slope = std::max(slope,
                         std::abs(an - fd) / std::max(1.0, std::abs(an)));
    }
    s.bound("hill: discriminant slope vs differences", slope, 1e-4,
            "3 lambdas on L~11");

    // Nodal law: the eigenfunction at 1-based ordinal j carries
    // 2*floor(j/2) zeros; a double root spans two ordinals whose floors
    // agree, so its single count must match both.
    int nodal_bad = 0, checked = 0, ambiguous = 0;
    const auto eigsL = periodic_eigenvalues(L11, 3 * q);
    const auto eigsS = periodic_eigenvalues(S11, 0.5);
    for (const auto* eigs : {&eigsL, &eigsS})
        for (const PeriodicEigenvalue& e : *eigs) {
            ++checked;
            if (e.ambiguous_zeros) ++ambiguous;
            for (int ord = e.k; ord < e.k + e.multiplicity; ++ord)
                if (e.nodal_count != 2 * (ord / 2)) ++nodal_bad;
        }
    s.add("hill: nodal count law 2*floor(k/2)", nodal_bad, 0.0,
          nodal_bad == 0,
          std::to_string(checked) + " eigenvalues, " +
              std::to_string(ambiguous) + " ambiguous");

    // Rayleigh ordering of ground eigenvalues under mode increments.
    const HillPotential L21{&curve, OperatorKind::Laplacian, 2, 1};
    const HillPotential L31{&curve, OperatorKind::Laplacian, 3, 1};
    const HillPotential L12{&curve, OperatorKind::Laplacian, 1, 2};
    auto mu1 = [&](const HillPotential& pot) {
        const auto eigs = periodic_eigenvalues(pot, 6 * q);
        if (eigs.empty())
            throw NumericError("validation: empty spectrum for mu1");
        return eigs.front().lambda;
    };
    const double m11 = mu1(L11), m21 = mu1(L21), m31 = mu1(L31),
                 m12 = mu1(L12);
    const double worst = std::min({m21 - m11, m31 - m21, m12 - m11});
    s.add("hill: ground eigenvalue rises with modes",
          std::max(0.0, -worst), 0.0, worst > 0,
          "L~11 -> L~21 -> L~31 and L~11 -> L~12");
}

void spectrum_suite(const ProfileCurve& curve, const IndexReport& report,
                    Suite& s) {
    const int n = curve.n();
    const double q = 2.0 * n - 1.0;

    const long long bound = (long long)n * n + 4LL * n + 3;
    s.add("spectrum: index >= n^2+4n+3",
          (double)std::max(0LL, bound - report.index_computed), 0.0,
          report.index_computed >= bound,
          "computed " + std::to_string(report.index_computed) +
              ", bound " + std::to_string(bound));

    // Excluded cells hold a pointwise certificate; re-verify it on a grid
    // offset from the stored samples.
    double frontier_margin = 0.0;
    for (const FrontierCell& cell : report.frontier) {
        if (cell.included) continue;
        const double ai = sphere_eigenvalue(n - 1, cell.i);
        const double aj = sphere_eigenvalue(n - 1, cell.j);
        double lo = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 2048; ++k) {
            const double t = curve.period() * (k + 0.37) / 2048.0;
            const MetricCoefficients m = metric_coeffs(curve, t);
            const CurvatureData c = curvatures(curve, t);
            lo = std::min(lo, ai / m.E + aj / m.G - c.normA2 - q);
        }
        frontier_margin = std::max(frontier_margin, -lo);
    }
    s.bound("spectrum: excluded cells certified nonnegative",
            frontier_margin, 1e-9, "2048 offset points per excluded cell");

    std::map<std::pair<int, int>, double> mu1;
    for (const OperatorTally& t : report.tallies)
        mu1[{t.i, t.j}] = t.eigenvalues.empty()
                              ? std::numeric_limits<double>::infinity()
                              : t.eigenvalues.front().lambda;
    double gap = 0.0;
    for (const auto& [ij, m] : mu1) {
        auto right = mu1.find({ij.first + 1, ij.second});
        auto down = mu1.find({ij.first, ij.second + 1});
        if (right != mu1.end() && std::isfinite(right->second))
            gap = std::max(gap, m - right->second);
        if (down != mu1.end() && std::isfinite(down->second))
            gap = std::max(gap, m - down->second);
    }
    s.bound("spectrum: mu1 nondecreasing across table", std::max(0.0, gap),
            1e-9, std::to_string(mu1.size()) + " cells");

    struct Known {
        OperatorKind kind;
        int i, j;
        double lambda;
    };
    const Known known[] = {
        {OperatorKind::Stability, 1, 1, -q},
        {OperatorKind::Stability, 2, 1, -q},
        {OperatorKind::Stability, 1, 2, -q},
        {OperatorKind::Stability, 2, 2, 0.0},
        {OperatorKind::Stability, 2, 1, 0.0},
        {OperatorKind::Stability, 1, 2, 0.0},
        {OperatorKind::Laplacian, 1, 1, q},
        {OperatorKind::Laplacian, 2, 1, q},
        {OperatorKind::Laplacian, 1, 2, q},
        {OperatorKind::Laplacian, 1, 1, 0.0},
    };
    double worst = 0.0;
    for (const Known& k : known) {
        const HillPotential pot{&curve, k.kind, k.i, k.j};
        worst = std::max(worst,
                         std::abs(discriminant(pot, k.lambda) - 2.0));
    }
    s.bound("spectrum: known eigenvalues satisfy delta = 2", worst, 1e-6,
            "10 closed-form members");

    // -(2n-1) sits above the S~11 ground state: its eigenfunction already
    // has two zeros, so a strictly lower eigenvalue must exist.
    const HillPotential S11{&curve, OperatorKind::Stability, 1, 1};
    const auto eigsS = periodic_eigenvalues(S11, -q + 0.5);
    const double margin =
        eigsS.empty() ? -1.0 : -q - eigsS.front().lambda;
    s.add("spectrum: S~11 ground state below -(2n-1)",
          std::max(0.0, -margin), 0.0, margin > 1e-6,
          eigsS.empty() ? "no eigenvalue found"
                        : "gap " + fmt6(margin));
}

void yau_suite(const ProfileCurve& curve, Suite& s) {
    const int n = curve.n();
    const double q = 2.0 * n - 1.0;

    YauVerdict verdict;
    bool threw = false;
    std::string what;
    try {
        verdict = yau_check(curve);
    } catch (const InvariantError& e) {
        threw = true;
        what = e.what();
    }
    s.add("yau: three-way verdict consistency", threw ? 1.0 : 0.0, 0.0,
          !threw && (verdict.consistent || verdict.indeterminate),
          threw ? what
                : std::string("holds=") + (verdict.holds ? "true" : "false"));
    if (threw) return;

    const double fn = first_nonzero_eigenvalue(curve);
    const bool matches = verdict.holds ? std::abs(fn - q) < 1e-6
                                       : std::abs(fn - q) > 1e-6;
    s.add("yau: first nonzero Laplacian eigenvalue vs verdict",
          std::abs(fn - q), verdict.holds ? 1e-6 : 0.0, matches,
          "first nonzero " + fmt6(fn));

    const HillPotential L11{&curve, OperatorKind::Laplacian, 1, 1};
    double dmax = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 100; ++k) {
        const double lam = verdict.lambda2 * k / 101.0;
        dmax = std::max(dmax, discriminant(L11, lam));
    }
    s.add("yau: delta < 2 on (0, lambda2)", dmax - 2.0, 0.0, dmax < 2.0,
          "100 interior points");
}

}  // namespace

bool ValidationReport::all_passed() const {
    for (const ValidationCheck& c : checks)
        if (!c.passed) return false;
    return true;
}

ValidationReport validate_curve(const ProfileCurve& curve) {
    ValidationReport report;
    report.n = curve.n();
    Suite s{&report.checks};

    profile_suite(curve, s);
    geometry_suite(curve, s);
    hill_suite(curve, s);

    try {
        const IndexReport index = stability_index(curve);
        spectrum_suite(curve, index, s);
    } catch (const InvariantError& e) {
        s.add("spectrum: stability index computes", 1.0, 0.0, false,
              e.what());
    }

    yau_suite(curve, s);
    return report;
}

std::string validation_table(const ValidationReport& report) {
    std::ostringstream out;
    out << "validation for n = " << report.n << "\n";
    size_t width = 0;
    for (const ValidationCheck& c : report.checks)
        width = std::max(width, c.name.size());
    for (const ValidationCheck& c : report.checks) {
        char line[160];
        std::snprintf(line, sizeof line, "%s  %-*s  %11.3e / %-9.0e  %s\n",
                      c.passed ? "PASS" : "FAIL", (int)width, c.name.c_str(),
                      c.residual, c.tolerance, c.detail.c_str());
        out << line;
    }
    out << (report.all_passed() ? "all checks passed" : "FAILURES present")
        << "\n";
    return out.str();
}

}  // namespace csmin
