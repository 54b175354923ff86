#pragma once

#include <vector>

#include "csmin/hill.hpp"
#include "csmin/profile.hpp"

namespace csmin {

// One distinct eigenvalue of the round Laplacian on S^k together with its
// multiplicity: m_1 = 1, m_2 = k+1, m_i = C(k+i-1, i-1) - C(k+i-3, i-3).
struct SphereMode {
    int k = 1;
    int i = 1;
    double alpha = 0.0;
    long long mult = 1;
};

SphereMode sphere_spectrum(int k, int i);

// One cell of the (i, j) truncation table.  bound is the pointwise Rayleigh
// certificate: min_t [alpha_i/E + alpha_j/G - |A|^2 - (2n-1)] for the
// stability scan, min_t [alpha_i/E + alpha_j/G] for the Laplacian scan.
struct FrontierCell {
    int i = 1, j = 1;
    double bound = 0.0;
    bool included = false;
};

// Negative-spectrum tally of one stability operator.
struct OperatorTally {
    int i = 1, j = 1;
    long long weight = 1;  // m_i * m_j
    int negatives = 0;     // Hill eigenvalues < 0 counted with multiplicity
    std::vector<PeriodicEigenvalue> eigenvalues;
};

struct IndexReport {
    int n = 2;
    long long index_lower_bound = 0;  // n^2 + 4n + 3
    long long index_computed = 0;
    std::vector<OperatorTally> tallies;
    std::vector<FrontierCell> frontier;
};

// Sum of negative stability eigenvalues over all (i, j) inside the
// certificate frontier, weighted by sphere multiplicities.  (i, j) and
// (j, i) are computed independently and cross-checked; a mismatch throws
// InvariantError.  Throws NumericError if the frontier fails to close
// before the index cap.
IndexReport stability_index(const ProfileCurve& curve);

// One contribution to an aggregated eigenvalue.
struct SpectrumSource {
    int i = 1, j = 1;
    int ordinal = 1;    // position within the Hill operator's spectrum
    int hill_mult = 1;  // coexistence multiplicity of the Hill eigenvalue
};

struct AggregateEntry {
    double lambda = 0.0;
    long long multiplicity = 0;  // sum of hill_mult * m_i * m_j
    std::vector<SpectrumSource> sources;
    bool merge_ambiguous = false;  // a distinct neighbor sits within 10x tol
};

struct SpectrumReport {
    int n = 2;
    double lambda_max = 0.0;
    std::vector<AggregateEntry> entries;
    std::vector<FrontierCell> frontier;
};

// Union of the Laplacian-form spectra up to lambda_max over the frontier,
// merged within 1e-7 and weighted by sphere multiplicities.
SpectrumReport laplacian_spectrum(const ProfileCurve& curve, double lambda_max);

// Smallest positive aggregated eigenvalue, extending the window until one
// appears (2n-1 is always in the spectrum, so this terminates).
double first_nonzero_eigenvalue(const ProfileCurve& curve);

}  // namespace csmin
