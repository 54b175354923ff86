#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "csmin/hill.hpp"
#include "csmin/profile.hpp"
#include "csmin/spectrum.hpp"
#include "csmin/yau.hpp"

namespace csmin {

// Shortest representation that round-trips a double exactly (17 significant
// digits, trailing zeros stripped).  All float output goes through here so
// identical data always produces identical bytes.
std::string format_float(double x);

// { "n", "r0", "theta0", "period", "ode_tol", "samples": [{t,r,theta,alpha}] }
// with exactly that field order.
std::string profile_to_json(const ProfileCurve& curve);

// Inverse of profile_to_json.  Throws Error on malformed input; the
// reconstructed curve re-checks its grid invariants.
ProfileCurve profile_from_json(const std::string& text);

// One CSV row per stored sample: t, r, theta, alpha, E, G, kappa_u, kappa_v,
// kappa_t, normA2, gamma1, gamma2, gamma3, nu1, nu2, nu3, f12, f13, f23.
std::string geometry_csv(const ProfileCurve& curve);

// { "kind": "L"|"S", "i", "j",
//   "eigenvalues": [{lambda, k, multiplicity, parity, nodal_count}] }
std::string eigenvalue_report_json(OperatorKind kind, int i, int j,
                                   const std::vector<PeriodicEigenvalue>& eigs);

// { "n", "index_lower_bound", "index_computed", "tallies", "frontier" }
std::string index_report_json(const IndexReport& report);

// { "n", "lambda_max", "spectrum": [{lambda, multiplicity, sources}],
//   "frontier" }
std::string spectrum_report_json(const SpectrumReport& report);

// { "n", "z1_prime_T", "delta_prime_at_2n_minus_1", "lambda2", "lambda3",
//   "yau_holds", "consistent" } (+ "indeterminate" only when set)
std::string yau_report_json(const YauVerdict& verdict);

// Cache directory precedence: explicit flag, then $CSMIN_CACHE_DIR, then
// $XDG_CACHE_HOME/csmin, then ~/.cache/csmin.  Never creates the directory.
std::filesystem::path resolve_cache_dir(const std::string& flag_value);

// profile_n{n}_tol{ode_tol}.json inside dir; the tolerance is embedded via
// format_float so distinct tolerances never collide.
std::filesystem::path profile_cache_path(const std::filesystem::path& dir,
                                         int n, double ode_tol);

// Return the cached curve for (n, ode_tol) if a readable, matching entry
// exists; otherwise shoot fresh and store it.  A corrupt or mismatched cache
// file is silently rebuilt, so the cache is transparent to callers.
ProfileCurve load_or_build_profile(const EmbeddingParams& params,
                                   const std::filesystem::path& cache_dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace csmin
