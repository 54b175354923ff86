#include "doctest.h"

#include <cmath>
#include <map>
#include <numbers>

#include "csmin/errors.hpp"
#include "csmin/geometry.hpp"
#include "csmin/hill.hpp"
#include "csmin/profile.hpp"

using namespace csmin;

namespace {

constexpr double pi = std::numbers::pi;

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

const PotentialFn zero_potential = [](const ProfileState&) { return 0.0; };

HillPotential make_pot(int n, OperatorKind kind, int i, int j) {
    return HillPotential{&curve_for(n), kind, i, j};
}

}  // namespace

TEST_CASE("sphere eigenvalues") {
    CHECK(sphere_eigenvalue(1, 1) == 0.0);
    CHECK(sphere_eigenvalue(1, 2) == 1.0);   // S^1: m^2 with m = 1
    CHECK(sphere_eigenvalue(1, 3) == 4.0);
    CHECK(sphere_eigenvalue(2, 2) == 2.0);   // S^2: l(l+1) with l = 1
    CHECK(sphere_eigenvalue(2, 3) == 6.0);
    CHECK(sphere_eigenvalue(4, 2) == 4.0);   // S^4: first nonzero = k
    CHECK_THROWS_AS(sphere_eigenvalue(1, 0), Error);
}

TEST_CASE("constant-potential monodromy matches the closed form") {
    const ProfileCurve& curve = curve_for(2);
    const double T = curve.period();

    for (double lambda : {0.5, 2.0, 7.3}) {
        const double w = std::sqrt(lambda);
        const MonodromyData m = monodromy(curve, zero_potential, lambda);
        CHECK(std::fabs(m.z1T - std::cos(w * T)) < 1e-10);
        CHECK(std::fabs(m.z2T - std::sin(w * T) / w) < 1e-10);
        CHECK(std::fabs(m.dz1T + w * std::sin(w * T)) < 1e-10);
        CHECK(std::fabs(m.dz2T - std::cos(w * T)) < 1e-10);
        CHECK(std::fabs(m.wronskian - 1.0) < 1e-10);

        // quadratic integrals of cos/sin
        const double s2 = std::sin(2 * w * T);
        CHECK(std::fabs(m.int_z1sq - (T / 2 + s2 / (4 * w))) < 1e-9);
        CHECK(std::fabs(m.int_z2sq - (T / 2 - s2 / (4 * w)) / lambda) < 1e-9);
        const double st = std::sin(w * T);
        CHECK(std::fabs(m.int_z1z2 - st * st / (2 * lambda)) < 1e-9);
    }

    // delta = 2 cos(sqrt(lambda) T): the two classic checkpoints.
    const double lam_plus = (2 * pi / T) * (2 * pi / T);
    const double lam_minus = (pi / T) * (pi / T);
    CHECK(std::fabs(monodromy(curve, zero_potential, lam_plus).delta - 2.0) <
          1e-9);
    CHECK(std::fabs(monodromy(curve, zero_potential, lam_minus).delta + 2.0) <
          1e-9);

    // below the spectrum delta = 2 cosh(sqrt(-lambda) T) > 2
    const MonodromyData neg = monodromy(curve, zero_potential, -1.3);
    CHECK(std::fabs(neg.delta - 2.0 * std::cosh(std::sqrt(1.3) * T)) < 1e-8);
}

TEST_CASE("half-period identities for even potentials") {
    for (int n : {2, 3}) {
        CAPTURE(n);
        const HillPotential lap = make_pot(n, OperatorKind::Laplacian, 1, 1);
        const HillPotential stab = make_pot(n, OperatorKind::Stability, 2, 1);
        for (const HillPotential& pot : {lap, stab}) {
            for (double lambda : {-4.2, 0.0, 1.7, 5.0}) {
                const MonodromyData m = monodromy(pot, lambda);
                CHECK(std::fabs(m.z1T - (2 * m.z1_half * m.dz2_half - 1)) <
                      1e-8);
                CHECK(std::fabs(m.z2T - 2 * m.z2_half * m.dz2_half) < 1e-8);
                CHECK(std::fabs(m.dz1T - 2 * m.z1_half * m.dz1_half) < 1e-8);
                CHECK(std::fabs(m.dz2T - m.z1T) < 1e-8);
            }
        }
    }
}

TEST_CASE("potential values: evenness, mode shifts, symmetry point") {
    const ProfileCurve& curve = curve_for(2);
    const double T = curve.period();
    const HillPotential p11 = make_pot(2, OperatorKind::Laplacian, 1, 1);
    const HillPotential p21 = make_pot(2, OperatorKind::Laplacian, 2, 1);
    const HillPotential s11 = make_pot(2, OperatorKind::Stability, 1, 1);

    double worst_even = 0.0;
    for (int k = 1; k < 256; ++k) {
        const double t = T * k / 512.0;
        worst_even = std::max(worst_even, std::fabs(potential_value(p11, t) -
                                                    potential_value(p11, -t)));
        worst_even = std::max(worst_even, std::fabs(potential_value(s11, t) -
                                                    potential_value(s11, -t)));

        // V(2,1) - V(1,1) = alpha_2 / E pointwise
        const MetricCoefficients m = metric_coeffs(curve, t);
        const double diff = potential_value(p21, t) - potential_value(p11, t);
        CHECK(std::fabs(diff - sphere_eigenvalue(1, 2) / m.E) < 1e-10);
    }
    CHECK(worst_even < 1e-8);

    // At t = 0 the first-derivative square vanishes, so V(0) is the
    // second-derivative weight term alone for i = j = 1.
    const MetricCoefficients m0 = metric_coeffs(curve, 0.0);
    const double expected0 = 0.25 * (2 - 1) * (m0.d2logEG + 0.0);
    CHECK(std::fabs(potential_value(p11, 0.0) - expected0) < 1e-10);

    // Frozen point at t = 0.7 on the n = 2 curve.
    const ProfileState s{0.7, 1.9090267688208111, 0.75568064889696396,
                         1.5411556698898341};
    CHECK(std::fabs(potential_value_at(p11, s) + 1.8768436710731109) < 1e-12);
    CHECK(std::fabs(potential_value_at(s11, s) + 5.6284371961962965) < 1e-12);
}

TEST_CASE("known eigenpairs give delta = 2") {
    for (int n : {2, 3, 4, 5}) {
        CAPTURE(n);
        const double q = 2.0 * n - 1.0;
        double worst = 0.0;
        auto check = [&](OperatorKind kind, int i, int j, double lambda) {
            worst = std::max(
                worst,
                std::fabs(discriminant(make_pot(n, kind, i, j), lambda) - 2.0));
        };
        check(OperatorKind::Laplacian, 1, 1, 0.0);
        check(OperatorKind::Laplacian, 1, 1, q);
        check(OperatorKind::Laplacian, 2, 1, q);
        check(OperatorKind::Laplacian, 1, 2, q);
        check(OperatorKind::Stability, 1, 1, -q);
        check(OperatorKind::Stability, 2, 1, -q);
        check(OperatorKind::Stability, 1, 2, -q);
        check(OperatorKind::Stability, 2, 2, 0.0);
        check(OperatorKind::Stability, 2, 1, 0.0);
        check(OperatorKind::Stability, 1, 2, 0.0);
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("monodromy regression at a non-eigenvalue") {
    // L-kind (1,1) potential at n = 2, lambda = 3.7; reference 1e-13.
    const MonodromyData m =
        monodromy(make_pot(2, OperatorKind::Laplacian, 1, 1), 3.7);
    CHECK(std::fabs(m.z1T - 1.6308399290569855) < 1e-9);
    CHECK(std::fabs(m.z2T - 0.2726081412642361) < 1e-9);
    CHECK(std::fabs(m.dz1T - 6.0880018715103974) < 1e-8);
    CHECK(std::fabs(m.dz2T - 1.6308399290564437) < 1e-9);
    CHECK(std::fabs(m.delta - 3.2616798581134292) < 1e-9);
    CHECK(std::fabs(m.int_z1z2 - 1.2118853576373632) < 1e-9);
    CHECK(std::fabs(m.int_z2sq - 0.43599005955643766) < 1e-9);
    CHECK(std::fabs(m.int_z1sq - 4.7631510812093332) < 1e-8);
}

TEST_CASE("discriminant derivative: identity, finite differences, signs") {
    const ProfileCurve& curve = curve_for(2);
    const double T = curve.period();

    // V = 0 at lambda = 0: delta(lambda) = 2 cos(sqrt(lambda) T), so
    // delta'(0) = -T^2.
    const MonodromyData m0 = monodromy(curve, zero_potential, 0.0);
    CHECK(std::fabs(discriminant_derivative(m0) + T * T) < 1e-9);

    const HillPotential pot = make_pot(2, OperatorKind::Laplacian, 1, 1);
    for (double lambda : {0.0, 2.4, 3.7, 5.9}) {
        CAPTURE(lambda);
        const double h = 1e-5;
        const double fd = (discriminant(pot, lambda + h) -
                           discriminant(pot, lambda - h)) / (2 * h);
        const double an = discriminant_derivative(pot, lambda);
        CHECK(std::fabs(fd - an) < 1e-4 * std::max(1.0, std::fabs(an)));
    }

    // At the first eigenvalue the discriminant crosses 2 downward.
    CHECK(discriminant_derivative(pot, 0.0) < 0.0);

    // Frozen value at lambda = 2n-1 (n = 2).
    CHECK(std::fabs(discriminant_derivative(pot, 3.0) - 2.208255675786766) <
          1e-8);
}

TEST_CASE("constant-potential eigenvalue ladder with double roots") {
    const ProfileCurve& curve = curve_for(2);
    const double T = curve.period();
    const double base = (2 * pi / T) * (2 * pi / T);

    const auto eigs =
        periodic_eigenvalues(curve, zero_potential, 0.0, 4.5 * base);
    REQUIRE(eigs.size() == 3);

    CHECK(std::fabs(eigs[0].lambda) < 1e-9);
    CHECK(eigs[0].k == 1);
    CHECK(eigs[0].multiplicity == 1);
    CHECK(eigs[0].parity == Parity::Even);
    CHECK(eigs[0].nodal_count == 0);

    CHECK(std::fabs(eigs[1].lambda - base) < 1e-7);
    CHECK(eigs[1].k == 2);
    CHECK(eigs[1].multiplicity == 2);
    CHECK(eigs[1].parity == Parity::Both);
    CHECK(eigs[1].nodal_count == 2);

    CHECK(std::fabs(eigs[2].lambda - 4 * base) < 1e-6);
    CHECK(eigs[2].k == 4);
    CHECK(eigs[2].multiplicity == 2);
    CHECK(eigs[2].nodal_count == 4);
}

TEST_CASE("Laplacian-form eigenvalues for n = 2") {
    const auto eigs =
        periodic_eigenvalues(make_pot(2, OperatorKind::Laplacian, 1, 1), 9.0);
    REQUIRE(eigs.size() == 3);

    CHECK(std::fabs(eigs[0].lambda) < 1e-8);
    CHECK(eigs[0].parity == Parity::Even);
    CHECK(eigs[0].nodal_count == 0);

    // 2n-1 appears as the second eigenvalue, odd with two zeros.
    CHECK(std::fabs(eigs[1].lambda - 3.0) < 1e-8);
    CHECK(eigs[1].parity == Parity::Odd);
    CHECK(eigs[1].nodal_count == 2);

    CHECK(std::fabs(eigs[2].lambda - 6.846691440599248) < 1e-7);
    CHECK(eigs[2].parity == Parity::Even);
    CHECK(eigs[2].nodal_count == 2);

    for (const auto& e : eigs) {
        CHECK(e.multiplicity == 1);
        CHECK(e.nodal_count == 2 * (e.k / 2));
        CHECK(!e.ambiguous_zeros);
    }
}

TEST_CASE("stability-form eigenvalues for n = 2 recover the hidden pair") {
    // The first two eigenvalues sit 0.67 apart while the scan cell there is
    // wider; only the interior-extremum refinement can see them both.
    const auto eigs = periodic_eigenvalues(
        make_pot(2, OperatorKind::Stability, 1, 1), -1e-9);
    REQUIRE(eigs.size() == 3);

    CHECK(std::fabs(eigs[0].lambda + 20.19008085412874) < 1e-6);
    CHECK(eigs[0].parity == Parity::Even);
    CHECK(eigs[0].nodal_count == 0);

    CHECK(std::fabs(eigs[1].lambda + 19.51562879226492) < 1e-6);
    CHECK(eigs[1].parity == Parity::Even);
    CHECK(eigs[1].nodal_count == 2);

    // -(2n-1) with the odd eigenfunction vanishing at 0 and T/2.
    CHECK(std::fabs(eigs[2].lambda + 3.0) < 1e-8);
    CHECK(eigs[2].parity == Parity::Odd);
    CHECK(eigs[2].nodal_count == 2);

    for (const auto& e : eigs) CHECK(e.nodal_count == 2 * (e.k / 2));
}

TEST_CASE("first eigenvalue rises with the sphere mode") {
    // Pointwise-larger potential pushes the whole spectrum up.
    const auto e11 =
        periodic_eigenvalues(make_pot(3, OperatorKind::Stability, 1, 1), 60.0);
    const auto e21 =
        periodic_eigenvalues(make_pot(3, OperatorKind::Stability, 2, 1), 60.0);
    REQUIRE(!e11.empty());
    REQUIRE(!e21.empty());
    CHECK(e21[0].lambda > e11[0].lambda);
}
