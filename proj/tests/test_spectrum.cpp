#include "doctest.h"

#include <cmath>
#include <map>

#include "csmin/errors.hpp"
#include "csmin/profile.hpp"
#include "csmin/spectrum.hpp"

using namespace csmin;

namespace {

const ProfileCurve& curve_for(int n) {
    static std::map<int, ProfileCurve> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        EmbeddingParams params;
        params.n = n;
        it = cache.emplace(n, build_curve(params)).first;
    }
    return it->second;
}

const IndexReport& index_for(int n) {
    static std::map<int, IndexReport> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, stability_index(curve_for(n))).first;
    return it->second;
}

struct TallyRow {
    int i, j;
    long long weight;
    int count;
};

// Frozen n = 2 negative-spectrum table (reference tolerances 1e-12).
const TallyRow kTable2[] = {
    {1, 1, 1, 3}, {1, 2, 2, 2}, {1, 3, 2, 1}, {1, 4, 2, 1}, {1, 5, 2, 1},
    {1, 6, 2, 0}, {1, 7, 2, 0}, {1, 8, 2, 0}, {2, 1, 2, 2}, {2, 2, 4, 1},
    {2, 3, 4, 0}, {2, 4, 4, 0}, {2, 5, 4, 0}, {2, 6, 4, 0}, {3, 1, 2, 1},
    {3, 2, 4, 0}, {4, 1, 2, 1}, {4, 2, 4, 0}, {5, 1, 2, 1}, {5, 2, 4, 0},
    {6, 1, 2, 0}, {6, 2, 4, 0}, {7, 1, 2, 0}, {8, 1, 2, 0},
};

}  // namespace

TEST_CASE("sphere modes: eigenvalues and multiplicities") {
    // S^2: l(l+1) with multiplicity 2l+1.
    const double a2[] = {0, 2, 6, 12};
    const long long m2[] = {1, 3, 5, 7};
    for (int i = 1; i <= 4; ++i) {
        const SphereMode mode = sphere_spectrum(2, i);
        CHECK(mode.alpha == a2[i - 1]);
        CHECK(mode.mult == m2[i - 1]);
    }

    // constants on any sphere
    for (int k : {1, 2, 3, 7}) {
        const SphereMode mode = sphere_spectrum(k, 1);
        CHECK(mode.alpha == 0.0);
        CHECK(mode.mult == 1);
    }

    // S^1 harmonics cos(mt), sin(mt)
    CHECK(sphere_spectrum(1, 4).alpha == 9.0);
    CHECK(sphere_spectrum(1, 4).mult == 2);

    // S^4 ladder used by the n = 5 index
    const long long m4[] = {1, 5, 14, 30, 55, 91};
    for (int i = 1; i <= 6; ++i) CHECK(sphere_spectrum(4, i).mult == m4[i - 1]);

    CHECK_THROWS_AS(sphere_spectrum(0, 1), Error);
}

TEST_CASE("stability index for n = 2: full table") {
    const IndexReport& report = index_for(2);
    CHECK(report.n == 2);
    CHECK(report.index_lower_bound == 15);
    CHECK(report.index_computed == 27);

    REQUIRE(report.tallies.size() == std::size(kTable2));
    std::map<std::pair<int, int>, const OperatorTally*> by_ij;
    for (const auto& t : report.tallies) by_ij[{t.i, t.j}] = &t;
    for (const auto& row : kTable2) {
        CAPTURE(row.i);
        CAPTURE(row.j);
        auto it = by_ij.find({row.i, row.j});
        REQUIRE(it != by_ij.end());
        CHECK(it->second->weight == row.weight);
        CHECK(it->second->negatives == row.count);
    }

    // Frozen eigenvalues of the (1,1) stability operator.
    const auto& eigs11 = by_ij.at({1, 1})->eigenvalues;
    REQUIRE(eigs11.size() == 3);
    CHECK(std::fabs(eigs11[0].lambda + 20.19008085412874) < 1e-6);
    CHECK(std::fabs(eigs11[1].lambda + 19.51562879226492) < 1e-6);
    CHECK(std::fabs(eigs11[2].lambda + 3.0) < 1e-8);
    CHECK(eigs11[0].parity == Parity::Even);
    CHECK(eigs11[1].parity == Parity::Even);
    CHECK(eigs11[2].parity == Parity::Odd);

    // -(2n-1) also sits in (2,1), (1,2), and (2,2).
    CHECK(std::fabs(by_ij.at({2, 1})->eigenvalues.back().lambda + 3.0) < 1e-8);
    CHECK(std::fabs(by_ij.at({1, 2})->eigenvalues.back().lambda + 3.0) < 1e-8);
    CHECK(std::fabs(by_ij.at({2, 2})->eigenvalues.back().lambda + 3.0) < 1e-8);

    // The theorem's tally floor: 3 + 2n + 2n + n^2 negatives from the first
    // four operators alone.
    CHECK(by_ij.at({1, 1})->negatives >= 3);
    CHECK(by_ij.at({2, 1})->negatives >= 2);
    CHECK(by_ij.at({1, 2})->negatives >= 2);
    CHECK(by_ij.at({2, 2})->negatives >= 1);
}

TEST_CASE("stability index totals for n = 3, 4, 5") {
    const long long expected[] = {48, 85, 136};
    for (int n : {3, 4, 5}) {
        CAPTURE(n);
        const IndexReport& report = index_for(n);
        CHECK(report.index_lower_bound == n * n + 4 * n + 3);
        CHECK(report.index_computed == expected[n - 3]);
        CHECK(report.index_computed >= report.index_lower_bound);
    }
}

TEST_CASE("tally structure: swap symmetry and first-eigenvalue monotonicity") {
    for (int n : {2, 3}) {
        CAPTURE(n);
        const IndexReport& report = index_for(n);
        std::map<std::pair<int, int>, const OperatorTally*> by_ij;
        for (const auto& t : report.tallies) by_ij[{t.i, t.j}] = &t;

        for (const auto& [ij, tally] : by_ij) {
            auto sw = by_ij.find({ij.second, ij.first});
            REQUIRE(sw != by_ij.end());
            CHECK(sw->second->negatives == tally->negatives);
            // spectra themselves coincide, not just the counts
            REQUIRE(sw->second->eigenvalues.size() ==
                    tally->eigenvalues.size());
            for (std::size_t e = 0; e < tally->eigenvalues.size(); ++e)
                CHECK(std::fabs(sw->second->eigenvalues[e].lambda -
                                tally->eigenvalues[e].lambda) < 1e-6);
        }

        // mu_1 nondecreasing along rows and columns where both computed.
        for (const auto& [ij, tally] : by_ij) {
            if (tally->eigenvalues.empty()) continue;
            auto right = by_ij.find({ij.first, ij.second + 1});
            if (right != by_ij.end() && !right->second->eigenvalues.empty())
                CHECK(right->second->eigenvalues[0].lambda >
                      tally->eigenvalues[0].lambda);
            auto down = by_ij.find({ij.first + 1, ij.second});
            if (down != by_ij.end() && !down->second->eigenvalues.empty())
                CHECK(down->second->eigenvalues[0].lambda >
                      tally->eigenvalues[0].lambda);
        }
    }
}

TEST_CASE("frontier certificate: excluded cells have nonnegative bounds") {
    const IndexReport& report = index_for(2);
    int excluded = 0;
    for (const auto& cell : report.frontier) {
        if (cell.included) {
            CHECK(cell.bound < 0.0);
        } else {
            CHECK(cell.bound >= 0.0);
            ++excluded;
        }
    }
    CHECK(excluded > 0);  // the staircase actually closed
}

TEST_CASE("Laplacian spectrum for n = 2 up to 2n+2") {
    const SpectrumReport report = laplacian_spectrum(curve_for(2), 6.0);
    REQUIRE(report.entries.size() == 3);

    CHECK(std::fabs(report.entries[0].lambda) < 1e-8);
    CHECK(report.entries[0].multiplicity == 1);

    // 2n-1 with multiplicity 2n+1 = 1 + n + n from (1,1), (2,1), (1,2).
    CHECK(std::fabs(report.entries[1].lambda - 3.0) < 1e-8);
    CHECK(report.entries[1].multiplicity == 5);
    CHECK(report.entries[1].sources.size() == 3);

    CHECK(std::fabs(report.entries[2].lambda - 5.8982161558012285) < 1e-6);
    CHECK(report.entries[2].multiplicity == 4);

    for (std::size_t e = 0; e + 1 < report.entries.size(); ++e)
        CHECK(report.entries[e].lambda < report.entries[e + 1].lambda);
    for (const auto& entry : report.entries) CHECK(!entry.merge_ambiguous);
}

TEST_CASE("first nonzero Laplacian eigenvalue") {
    for (int n : {2, 3}) {
        CAPTURE(n);
        const double q = 2.0 * n - 1.0;
        const double lam = first_nonzero_eigenvalue(curve_for(n));
        CHECK(std::fabs(lam - q) < 1e-7);  // frozen: equals 2n-1 here
        CHECK(lam <= q + 1e-7);            // 2n-1 is always present
        CHECK(lam >= q / 2);               // sanity band
    }
}
