#include "csmin/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "csmin/errors.hpp"
#include "csmin/geometry.hpp"
#include "json.hpp"

namespace csmin {

namespace {

// Writers append to a string; reports are small enough that quadratic-free
// appending into one buffer is all the machinery needed.
void put(std::string& out, const char* text) { out += text; }
void put(std::string& out, const std::string& text) { out += text; }

void put_key(std::string& out, const char* key) {
    out += '"';
    out += key;
    out += "\": ";
}

void put_int(std::string& out, long long v) { out += std::to_string(v); }

void put_float(std::string& out, double v) { out += format_float(v); }

void put_bool(std::string& out, bool v) { out += v ? "true" : "false"; }

std::string eigenvalue_object(const PeriodicEigenvalue& e) {
    std::string out = "{";
    put_key(out, "lambda");
    put_float(out, e.lambda);
    put(out, ", ");
    put_key(out, "k");
    put_int(out, e.k);
    put(out, ", ");
    put_key(out, "multiplicity");
    put_int(out, e.multiplicity);
    put(out, ", ");
    put_key(out, "parity");
    out += '"';
    out += parity_name(e.parity);
    out += '"';
    put(out, ", ");
    put_key(out, "nodal_count");
    put_int(out, e.nodal_count);
    if (e.ambiguous_zeros) {
        put(out, ", ");
        put_key(out, "ambiguous_zeros");
        put_bool(out, true);
    }
    out += '}';
    return out;
}

std::string frontier_array(const std::vector<FrontierCell>& cells) {
    std::string out = "[";
    for (size_t c = 0; c < cells.size(); ++c) {
        if (c) put(out, ", ");
        out += "{";
        put_key(out, "i");
        put_int(out, cells[c].i);
        put(out, ", ");
        put_key(out, "j");
        put_int(out, cells[c].j);
        put(out, ", ");
        put_key(out, "bound");
        put_float(out, cells[c].bound);
        put(out, ", ");
        put_key(out, "included");
        put_bool(out, cells[c].included);
        out += '}';
    }
    out += ']';
    return out;
}

double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw Error(std::string("profile json: missing numeric field '") +
                    key + "'");
    return j[key].get<double>();
}

}  // namespace

std::string format_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    // 17 digits always round-trip, but most values need fewer; take the
    // shortest of 15/16/17 that parses back to the same bits.
    for (int prec = 15; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, x);
        if (std::strtod(shorter, nullptr) == x) return shorter;
    }
    return buf;
}

std::string profile_to_json(const ProfileCurve& curve) {
    std::string out = "{\n";
    put(out, "  ");
    put_key(out, "n");
    put_int(out, curve.n());
    put(out, ",\n  ");
    put_key(out, "r0");
    put_float(out, curve.r0());
    put(out, ",\n  ");
    put_key(out, "theta0");
    put_float(out, curve.theta0());
    put(out, ",\n  ");
    put_key(out, "period");
    put_float(out, curve.period());
    put(out, ",\n  ");
    put_key(out, "ode_tol");
    put_float(out, curve.params().ode_tol);
    put(out, ",\n  ");
    put_key(out, "samples");
    put(out, "[\n");
    const auto& samples = curve.samples();
    for (size_t s = 0; s < samples.size(); ++s) {
        put(out, "    {");
        put_key(out, "t");
        put_float(out, samples[s].t);
        put(out, ", ");
        put_key(out, "r");
        put_float(out, samples[s].r);
        put(out, ", ");
        put_key(out, "theta");
        put_float(out, samples[s].theta);
        put(out, ", ");
        put_key(out, "alpha");
        put_float(out, samples[s].alpha);
        put(out, s + 1 < samples.size() ? "},\n" : "}\n");
    }
    put(out, "  ]\n}\n");
    return out;
}

ProfileCurve profile_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error("profile json: not a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw Error("profile json: missing integer field 'n'");

    EmbeddingParams params;
    params.n = j["n"].get<int>();
    params.ode_tol = require_number(j, "ode_tol");
    params.check();

    const double r0 = require_number(j, "r0");
    const double theta0 = require_number(j, "theta0");
    const double period = require_number(j, "period");

    if (!j.contains("samples") || !j["samples"].is_array() ||
        j["samples"].size() < 2)
        throw Error("profile json: 'samples' must be an array of >= 2 states");
    std::vector<ProfileState> samples;
    samples.reserve(j["samples"].size());
    for (const auto& row : j["samples"]) {
        ProfileState s;
        s.t = require_number(row, "t");
        s.r = require_number(row, "r");
        s.theta = require_number(row, "theta");
        s.alpha = require_number(row, "alpha");
        samples.push_back(s);
    }
    return ProfileCurve(params, r0, theta0, period, std::move(samples));
}

std::string geometry_csv(const ProfileCurve& curve) {
    std::string out =
        "t,r,theta,alpha,E,G,kappa_u,kappa_v,kappa_t,normA2,"
        "gamma1,gamma2,gamma3,nu1,nu2,nu3,f12,f13,f23\n";
    const int n = curve.n();
    for (const ProfileState& s : curve.samples()) {
        const MetricCoefficients m = metric_coeffs_at(s, n);
        const CurvatureData c = curvatures_at(s, n);
        const FrameFunctions f = frame_at(s, n);
        const double cols[] = {s.t,       s.r,      s.theta,   s.alpha,
                               m.E,       m.G,      c.kappa_u, c.kappa_v,
                               c.kappa_t, c.normA2, f.gamma1,  f.gamma2,
                               f.gamma3,  f.nu1,    f.nu2,     f.nu3,
                               f.f12,     f.f13,    f.f23};
        for (size_t k = 0; k < std::size(cols); ++k) {
            if (k) out += ',';
            out += format_float(cols[k]);
        }
        out += '\n';
    }
    return out;
}

std::string eigenvalue_report_json(OperatorKind kind, int i, int j,
                                   const std::vector<PeriodicEigenvalue>& eigs) {
    std::string out = "{\n  ";
    put_key(out, "kind");
    put(out, kind == OperatorKind::Laplacian ? "\"L\"" : "\"S\"");
    put(out, ",\n  ");
    put_key(out, "i");
    put_int(out, i);
    put(out, ",\n  ");
    put_key(out, "j");
    put_int(out, j);
    put(out, ",\n  ");
    put_key(out, "eigenvalues");
    put(out, "[\n");
    for (size_t e = 0; e < eigs.size(); ++e) {
        put(out, "    ");
        put(out, eigenvalue_object(eigs[e]));
        put(out, e + 1 < eigs.size() ? ",\n" : "\n");
    }
    put(out, "  ]\n}\n");
    return out;
}

std::string index_report_json(const IndexReport& report) {
    std::string out = "{\n  ";
    put_key(out, "n");
    put_int(out, report.n);
    put(out, ",\n  ");
    put_key(out, "index_lower_bound");
    put_int(out, report.index_lower_bound);
    put(out, ",\n  ");
    put_key(out, "index_computed");
    put_int(out, report.index_computed);
    put(out, ",\n  ");
    put_key(out, "tallies");
    put(out, "[\n");
    for (size_t t = 0; t < report.tallies.size(); ++t) {
        const OperatorTally& tally = report.tallies[t];
        put(out, "    {");
        put_key(out, "i");
        put_int(out, tally.i);
        put(out, ", ");
        put_key(out, "j");
        put_int(out, tally.j);
        put(out, ", ");
        put_key(out, "weight");
        put_int(out, tally.weight);
        put(out, ", ");
        put_key(out, "negatives");
        put_int(out, tally.negatives);
        put(out, ", ");
        put_key(out, "eigenvalues");
        put(out, "[");
        for (size_t e = 0; e < tally.eigenvalues.size(); ++e) {
            if (e) put(out, ", ");
            put(out, eigenvalue_object(tally.eigenvalues[e]));
        }
        put(out, "]}");
        put(out, t + 1 < report.tallies.size() ? ",\n" : "\n");
    }
    put(out, "  ],\n  ");
    put_key(out, "frontier");
    put(out, frontier_array(report.frontier));
    put(out, "\n}\n");
    return out;
}

std::string spectrum_report_json(const SpectrumReport& report) {
    std::string out = "{\n  ";
    put_key(out, "n");
    put_int(out, report.n);
    put(out, ",\n  ");
    put_key(out, "lambda_max");
    put_float(out, report.lambda_max);
    put(out, ",\n  ");
    put_key(out, "spectrum");
    put(out, "[\n");
    for (size_t e = 0; e < report.entries.size(); ++e) {
        const AggregateEntry& entry = report.entries[e];
        put(out, "    {");
        put_key(out, "lambda");
        put_float(out, entry.lambda);
        put(out, ", ");
        put_key(out, "multiplicity");
        put_int(out, entry.multiplicity);
        put(out, ", ");
        put_key(out, "sources");
        put(out, "[");
        for (size_t s = 0; s < entry.sources.size(); ++s) {
            const SpectrumSource& src = entry.sources[s];
            if (s) put(out, ", ");
            out += "{";
            put_key(out, "i");
            put_int(out, src.i);
            put(out, ", ");
            put_key(out, "j");
            put_int(out, src.j);
            put(out, ", ");
            put_key(out, "ordinal");
            put_int(out, src.ordinal);
            put(out, ", ");
            put_key(out, "hill_mult");
            put_int(out, src.hill_mult);
            out += '}';
        }
        put(out, "]");
        if (entry.merge_ambiguous) {
            put(out, ", ");
            put_key(out, "merge_ambiguous");
            put_bool(out, true);
        }
        put(out, "}");
        put(out, e + 1 < report.entries.size() ? ",\n" : "\n");
    }
    put(out, "  ],\n  ");
    put_key(out, "frontier");
    put(out, frontier_array(report.frontier));
    put(out, "\n}\n");
    return out;
}

std::string yau_report_json(const YauVerdict& verdict) {
    std::string out = "{\n  ";
    put_key(out, "n");
    put_int(out, verdict.n);
    put(out, ",\n  ");
    put_key(out, "z1_prime_T");
    put_float(out, verdict.z1_prime_T);
    put(out, ",\n  ");
    put_key(out, "delta_prime_at_2n_minus_1");
    put_float(out, verdict.delta_prime);
    put(out, ",\n  ");
    put_key(out, "lambda2");
    put_float(out, verdict.lambda2);
    put(out, ",\n  ");
    put_key(out, "lambda3");
    put_float(out, verdict.lambda3);
    put(out, ",\n  ");
    put_key(out, "yau_holds");
    put_bool(out, verdict.holds);
    put(out, ",\n  ");
    put_key(out, "consistent");
    put_bool(out, verdict.consistent);
    if (verdict.indeterminate) {
        put(out, ",\n  ");
        put_key(out, "indeterminate");
        put_bool(out, true);
    }
    put(out, "\n}\n");
    return out;
}

std::filesystem::path resolve_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("CSMIN_CACHE_DIR"); env && *env)
        return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "csmin";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "csmin";
    return std::filesystem::path(".cache") / "csmin";
}

std::filesystem::path profile_cache_path(const std::filesystem::path& dir,
                                         int n, double ode_tol) {
    return dir / ("profile_n" + std::to_string(n) + "_tol" +
                  format_float(ode_tol) + ".json");
}

ProfileCurve load_or_build_profile(const EmbeddingParams& params,
                                   const std::filesystem::path& cache_dir) {
    const auto path = profile_cache_path(cache_dir, params.n, params.ode_tol);
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
        try {
            ProfileCurve cached = profile_from_json(read_file(path));
            if (cached.n() == params.n &&
                cached.params().ode_tol == params.ode_tol)
                return cached;
        } catch (const Error&) {
            // fall through to a fresh build
        }
    }
    ProfileCurve curve = build_curve(params);
    std::filesystem::create_directories(cache_dir, ec);
    if (!ec) {
        // Write-then-rename so a concurrent reader never sees a torn file.
        const auto tmp = path.string() + ".tmp";
        write_file(tmp, profile_to_json(curve));
        std::filesystem::rename(tmp, path, ec);
    }
    return curve;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out.flush()) throw Error("short write to " + path.string());
}

}  // namespace csmin
