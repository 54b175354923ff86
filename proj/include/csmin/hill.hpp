#pragma once

#include <functional>
#include <vector>

#include "csmin/profile.hpp"

namespace csmin {

// i-th distinct eigenvalue of the round Laplacian on S^k: (i-1)(k+i-2),
// with i >= 1 so that i = 1 gives 0.
double sphere_eigenvalue(int k, int i);

enum class OperatorKind { Laplacian, Stability };

// One-dimensional reduction of the operator pair on the profile circle:
// kind selects the plain Laplacian form or the stability form (which
// subtracts |A|^2 + (2n-1)); i, j pick the sphere modes on the two factors.
struct HillPotential {
    const ProfileCurve* curve = nullptr;
    OperatorKind kind = OperatorKind::Laplacian;
    int i = 1;
    int j = 1;
};

// V(t) of the Hill form z'' + (lambda - V) z = 0 after the weight change of
// variables:
//   V = (n-1)/4 * (EG)''/(EG) - (n-1)(5-n)/16 * ((EG)'/(EG))^2
//       + alpha_i/E + alpha_j/G     [- (|A|^2 + 2n-1) for the stability kind]
double potential_value_at(const HillPotential& pot, const ProfileState& state);
double potential_value(const HillPotential& pot, double t);

// Minimum of V over the curve's stored sample grid; lambda below this value
// bounds the spectrum from below.
double min_potential(const HillPotential& pot);

// Endpoint data of the normalized fundamental system z1(0)=1, z1'(0)=0,
// z2(0)=0, z2'(0)=1, integrated together with the profile ODE so the
// potential is evaluated on the exact trajectory.  The quadratic integrals
// and the half-period snapshot ride along in the same augmented system.
struct MonodromyData {
    double lambda = 0.0;
    double z1T = 0.0, dz1T = 0.0, z2T = 0.0, dz2T = 0.0;
    double delta = 0.0;      // z1T + dz2T
    double wronskian = 0.0;  // z1T*dz2T - dz1T*z2T
    double int_z1z2 = 0.0, int_z2sq = 0.0, int_z1sq = 0.0;
    double z1_half = 0.0, dz1_half = 0.0, z2_half = 0.0, dz2_half = 0.0;
};

// Generic-potential entry points used by the tests; the potential must be a
// function of the profile state only.
using PotentialFn = std::function<double(const ProfileState&)>;

MonodromyData monodromy(const ProfileCurve& curve, const PotentialFn& V,
                        double lambda);
MonodromyData monodromy(const HillPotential& pot, double lambda);

double discriminant(const HillPotential& pot, double lambda);

// d(delta)/d(lambda) from the variation-of-parameters identity
//   delta'(lambda) = p(a - d) - b*r + c*q,
// p = int z1 z2, q = int z2^2, r = int z1^2, (a b; c d) the monodromy matrix.
// For an even potential a = d, so this reduces to c*q - b*r; the compact
// two-term form keeps the value correct at even-parity eigenvalues where
// b != 0.
double discriminant_derivative(const MonodromyData& m);
double discriminant_derivative(const HillPotential& pot, double lambda);

enum class Parity { Even, Odd, Both };
const char* parity_name(Parity p);

struct PeriodicEigenvalue {
    double lambda = 0.0;
    int k = 0;             // 1-based ordinal; a double root occupies k, k+1
    int multiplicity = 1;  // 2 when the monodromy is the identity
    Parity parity = Parity::Even;
    int nodal_count = 0;   // zeros of the eigenfunction on [0, T)
    bool ambiguous_zeros = false;
};

// All roots of delta(lambda) = 2 up to lambda_max, scanned from below the
// potential minimum on a sqrt-substituted grid, refined by bracketed
// root-finding; hidden dips and closed gaps are recovered by refining every
// interior grid extremum.  Nodal counts are filled in.
std::vector<PeriodicEigenvalue> periodic_eigenvalues(const HillPotential& pot,
                                                     double lambda_max);
std::vector<PeriodicEigenvalue> periodic_eigenvalues(const ProfileCurve& curve,
                                                     const PotentialFn& V,
                                                     double v_min,
                                                     double lambda_max);

struct NodalInfo {
    int count = 0;
    bool ambiguous = false;  // |z| hugs zero over an interval
};

// Zeros of the parity-selected eigenfunction on [0, T): exact zeros plus
// sign changes on a fine grid, each change re-examined on a local subgrid.
NodalInfo nodal_info(const HillPotential& pot, const PeriodicEigenvalue& eig);
NodalInfo nodal_info(const ProfileCurve& curve, const PotentialFn& V,
                     const PeriodicEigenvalue& eig);
int nodal_count(const HillPotential& pot, const PeriodicEigenvalue& eig);

}  // namespace csmin
