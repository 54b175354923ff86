#include "csmin/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <thread>

#include "csmin/errors.hpp"
#include "csmin/geometry.hpp"

namespace csmin {

namespace {

constexpr int frontier_cap = 64;     // staircase must close before this
constexpr double merge_tol = 1e-7;   // equal-eigenvalue clustering
constexpr double neg_cutoff = -1e-9; // "strictly negative" for the index

long long binomial(int a, int b) {
    if (b < 0 || a < 0 || b > a) return 0;
    b = std::min(b, a - b);
    long long out = 1;
    for (int s = 1; s <= b; ++s) out = out * (a - b + s) / s;
    return out;
}

// Per-sample values reused by every frontier cell.
struct SampleTable {
    std::vector<double> invE, invG, normA2;
};

SampleTable tabulate(const ProfileCurve& curve) {
    SampleTable tab;
    const int n = curve.n();
    tab.invE.reserve(curve.samples().size());
    for (const auto& s : curve.samples()) {
        const MetricCoefficients m = metric_coeffs_at(s, n);
        const CurvatureData c = curvatures_at(s, n);
        tab.invE.push_back(1.0 / m.E);
        tab.invG.push_back(1.0 / m.G);
        tab.normA2.push_back(c.normA2);
    }
    return tab;
}

// min_t [alpha_i/E + alpha_j/G - shift(t)], shift = |A|^2 + (2n-1) for the
// stability certificate and 0 for the Laplacian one.
double cell_bound(const SampleTable& tab, double ai, double aj, double n,
                  bool stability) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < tab.invE.size(); ++s) {
        double v = ai * tab.invE[s] + aj * tab.invG[s];
        if (stability) v -= tab.normA2[s] + (2.0 * n - 1.0);
        best = std::min(best, v);
    }
    return best;
}

// Staircase enumeration: row i is scanned while the cell certificate stays
// below `threshold`, and the row loop stops when column 1 does.  Each row's
// first excluded cell is recorded as part of the certificate.
std::vector<FrontierCell> staircase(const SampleTable& tab, int n,
                                    bool stability, double threshold) {
    std::vector<FrontierCell> cells;
    const int k = n - 1;
    for (int i = 1;; ++i) {
        if (i > frontier_cap)
            throw NumericError(
                "truncation frontier did not close before i = " +
                std::to_string(frontier_cap));
        const double ai = sphere_eigenvalue(k, i);
        bool row_nonempty = false;
        for (int j = 1;; ++j) {
            if (j > frontier_cap)
                throw NumericError(
                    "truncation frontier did not close before j = " +
                    std::to_string(frontier_cap));
            const double bound = cell_bound(tab, ai, sphere_eigenvalue(k, j),
                                            n, stability);
            const bool included = bound < threshold;
            cells.push_back({i, j, bound, included});
            if (!included) break;
            row_nonempty = true;
        }
        if (!row_nonempty) break;
    }
    return cells;
}

// Evaluate fn over the included cells concurrently; results keyed by cell
// index so aggregation order never depends on scheduling.
template <typename Fn>
std::vector<std::vector<PeriodicEigenvalue>> scan_cells(
    const std::vector<FrontierCell>& cells, const Fn& fn) {
    std::vector<std::vector<PeriodicEigenvalue>> out(cells.size());
    const unsigned p =
        std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> futs;
    for (unsigned w = 0; w < p; ++w)
        futs.push_back(std::async(std::launch::async, [&, w]() {
            for (std::size_t c = w; c < cells.size(); c += p)
                if (cells[c].included) out[c] = fn(cells[c]);
        }));
    for (auto& f : futs) f.get();
    return out;
}

}  // namespace

SphereMode sphere_spectrum(int k, int i) {
    SphereMode mode;
    mode.k = k;
    mode.i = i;
    mode.alpha = sphere_eigenvalue(k, i);  // validates k, i
    mode.mult = binomial(k + i - 1, i - 1) - binomial(k + i - 3, i - 3);
    return mode;
}

IndexReport stability_index(const ProfileCurve& curve) {
    const int n = curve.n();
    const SampleTable tab = tabulate(curve);

    IndexReport report;
    report.n = n;
    report.index_lower_bound =
        static_cast<long long>(n) * n + 4 * static_cast<long long>(n) + 3;
    report.frontier = staircase(tab, n, true, 0.0);

    const auto spectra = scan_cells(
        report.frontier, [&curve](const FrontierCell& cell) {
            const HillPotential pot{&curve, OperatorKind::Stability, cell.i,
                                    cell.j};
            return periodic_eigenvalues(pot, neg_cutoff);
        });

    std::map<std::pair<int, int>, int> counts;
    for (std::size_t c = 0; c < report.frontier.size(); ++c) {
        const FrontierCell& cell = report.frontier[c];
        if (!cell.included) continue;
        OperatorTally tally;
        tally.i = cell.i;
        tally.j = cell.j;
        tally.weight = sphere_spectrum(n - 1, cell.i).mult *
                       sphere_spectrum(n - 1, cell.j).mult;
        tally.eigenvalues = spectra[c];
        for (const auto& e : tally.eigenvalues)
            tally.negatives += e.multiplicity;
        report.index_computed += tally.negatives * tally.weight;
        counts[{cell.i, cell.j}] = tally.negatives;
        report.tallies.push_back(std::move(tally));
    }

    // Swap symmetry: the (i, j) and (j, i) operators are conjugate under
    // the half-period shift, so their negative counts must agree.
    for (const auto& [ij, count] : counts) {
        const auto swapped = counts.find({ij.second, ij.first});
        if (swapped == counts.end() || swapped->second != count)
            throw InvariantError(
                "negative-count mismatch between (i,j) and (j,i) at i=" +
                std::to_string(ij.first) + " j=" + std::to_string(ij.second));
    }
    return report;
}

SpectrumReport laplacian_spectrum(const ProfileCurve& curve,
                                  double lambda_max) {
    const int n = curve.n();
    const SampleTable tab = tabulate(curve);

    SpectrumReport report;
    report.n = n;
    report.lambda_max = lambda_max;
    // The inclusion rule is bound <= lambda_max; staircase tests strict
    // inequality, so nudge the threshold just past lambda_max.
    report.frontier =
        staircase(tab, n, false,
                  lambda_max + 1e-12 * std::max(1.0, std::fabs(lambda_max)));

    const auto spectra = scan_cells(
        report.frontier, [&curve, lambda_max](const FrontierCell& cell) {
            const HillPotential pot{&curve, OperatorKind::Laplacian, cell.i,
                                    cell.j};
            return periodic_eigenvalues(pot, lambda_max);
        });

    struct Raw {
        double lambda;
        SpectrumSource src;
        long long weight;
    };
    std::vector<Raw> raw;
    for (std::size_t c = 0; c < report.frontier.size(); ++c) {
        const FrontierCell& cell = report.frontier[c];
        if (!cell.included) continue;
        const long long weight = sphere_spectrum(n - 1, cell.i).mult *
                                 sphere_spectrum(n - 1, cell.j).mult;
        for (const auto& e : spectra[c])
            raw.push_back({e.lambda,
                           {cell.i, cell.j, e.k, e.multiplicity},
                           weight});
    }
    std::sort(raw.begin(), raw.end(),
              [](const Raw& a, const Raw& b) { return a.lambda < b.lambda; });

    for (std::size_t s = 0; s < raw.size();) {
        std::size_t e = s + 1;
        while (e < raw.size() && raw[e].lambda - raw[e - 1].lambda < merge_tol)
            ++e;
        AggregateEntry entry;
        entry.lambda = raw[s].lambda;
        for (std::size_t c = s; c < e; ++c) {
            entry.multiplicity += raw[c].src.hill_mult * raw[c].weight;
            entry.sources.push_back(raw[c].src);
        }
        report.entries.push_back(std::move(entry));
        s = e;
    }
    for (std::size_t e = 0; e + 1 < report.entries.size(); ++e) {
        if (report.entries[e + 1].lambda - report.entries[e].lambda <
            10.0 * merge_tol) {
            report.entries[e].merge_ambiguous = true;
            report.entries[e + 1].merge_ambiguous = true;
        }
    }
    return report;
}

double first_nonzero_eigenvalue(const ProfileCurve& curve) {
    const int n = curve.n();
    double window = 2.0 * n - 1.0;
    for (int attempt = 0; attempt < 10; ++attempt) {
        const SpectrumReport report = laplacian_spectrum(curve, window);
        for (const auto& entry : report.entries)
            if (entry.lambda > 1e-6) return entry.lambda;
        window *= 2.0;
    }
    throw NumericError("no positive Laplacian eigenvalue found below " +
                       std::to_string(window));
}

}  // namespace csmin
