// csmin — profile construction, spectra, stability index, and the first
// nonzero eigenvalue criterion for the minimal embeddings of
// S^{n-1} x S^{n-1} x S^1 into S^{2n}.
//
// Subcommands: profile, index, spectrum, yau, validate.  Commands accept a
// single dimension (--n 3) or an inclusive range (--n 2..5); reports for a
// range are emitted as a JSON array ordered by n.  Exit codes: 0 success,
// 1 usage error, 2 numeric failure, 3 invariant failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csmin/errors.hpp"
#include "csmin/serialize.hpp"
#include "csmin/spectrum.hpp"
#include "csmin/validate.hpp"
#include "csmin/yau.hpp"

namespace {

using namespace csmin;

struct RunConfig {
    std::string n_text = "2";  // "3" or "2..5"
    std::string n_range;       // alternative spelling --n-range A..B
    double ode_tol = 1e-12;
    double shoot_tol = 1e-10;
    double lambda_max = 0.0;  // 0 = auto (2 * (2n - 1) per n)
    std::string format = "json";
    std::string cache_dir;
    std::string out;
};

std::vector<int> parse_n_list(const RunConfig& cfg) {
    const std::string& text = cfg.n_range.empty() ? cfg.n_text : cfg.n_range;
    int lo = 0, hi = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d..%d%c", &lo, &hi, &tail) == 2) {
        // fall through with the parsed range
    } else if (std::sscanf(text.c_str(), "%d%c", &lo, &tail) == 1) {
        hi = lo;
    } else {
        throw CLI::ValidationError("--n", "expected N or A..B, got '" + text +
                                             "'");
    }
    if (lo < 2 || hi < lo)
        throw CLI::ValidationError(
            "--n", "need 2 <= A <= B in '" + text + "'");
    std::vector<int> ns;
    for (int n = lo; n <= hi; ++n) ns.push_back(n);
    return ns;
}

EmbeddingParams params_for(const RunConfig& cfg, int n) {
    EmbeddingParams p;
    p.n = n;
    p.ode_tol = cfg.ode_tol;
    p.shoot_tol = cfg.shoot_tol;
    return p;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg, bool with_lambda) {
    cmd->add_option("--n", cfg.n_text,
                    "dimension parameter, a single N or a range A..B")
        ->capture_default_str();
    cmd->add_option("--n-range", cfg.n_range, "inclusive range A..B");
    cmd->add_option("--ode-tol", cfg.ode_tol,
                    "local error tolerance of the integrator")
        ->capture_default_str();
    cmd->add_option("--shoot-tol", cfg.shoot_tol,
                    "residual tolerance of the boundary shot")
        ->capture_default_str();
    if (with_lambda)
        cmd->add_option("--lambda-max", cfg.lambda_max,
                        "spectrum window; 0 selects 2(2n-1) per n")
            ->capture_default_str();
    cmd->add_option("--cache-dir", cfg.cache_dir,
                    "profile cache (default $CSMIN_CACHE_DIR or "
                    "~/.cache/csmin)");
    cmd->add_option("--out", cfg.out, "output file (default stdout)");
}

ProfileCurve curve_for(const RunConfig& cfg, int n) {
    return load_or_build_profile(params_for(cfg, n),
                                 resolve_cache_dir(cfg.cache_dir));
}

// Reports for a single n print as one object; a range becomes a JSON array
// in n order.  Each writer already ends with a newline.
std::string wrap_reports(std::vector<std::string> reports) {
    if (reports.size() == 1) return reports[0];
    std::string text = "[\n";
    for (size_t k = 0; k < reports.size(); ++k) {
        std::string& r = reports[k];
        while (!r.empty() && r.back() == '\n') r.pop_back();
        text += r;
        text += (k + 1 < reports.size()) ? ",\n" : "\n";
    }
    text += "]\n";
    return text;
}

void deliver(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty())
        std::cout << text;
    else
        write_file(cfg.out, text);
}

int cmd_profile(const RunConfig& cfg) {
    const auto ns = parse_n_list(cfg);
    const bool csv = cfg.format == "csv";
    for (int n : ns) {
        const ProfileCurve curve = curve_for(cfg, n);
        const std::string text =
            csv ? geometry_csv(curve) : profile_to_json(curve);
        std::filesystem::path path;
        if (!cfg.out.empty() && ns.size() == 1) {
            path = cfg.out;
        } else {
            const std::string name =
                "profile_n" + std::to_string(n) + (csv ? ".csv" : ".json");
            path = cfg.out.empty() ? std::filesystem::path(name)
                                   : std::filesystem::path(cfg.out) / name;
        }
        if (path.has_parent_path()) {
            std::error_code ec;
            std::filesystem::create_directories(path.parent_path(), ec);
        }
        write_file(path, text);
        std::cout << path.string() << "\n";
    }
    return 0;
}

int cmd_index(const RunConfig& cfg) {
    std::vector<std::string> reports;
    for (int n : parse_n_list(cfg))
        reports.push_back(index_report_json(stability_index(curve_for(cfg, n))));
    deliver(cfg, wrap_reports(std::move(reports)));
    return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
    std::vector<std::string> reports;
    for (int n : parse_n_list(cfg)) {
        const double window =
            cfg.lambda_max > 0 ? cfg.lambda_max : 2.0 * (2 * n - 1);
        reports.push_back(
            spectrum_report_json(laplacian_spectrum(curve_for(cfg, n), window)));
    }
    deliver(cfg, wrap_reports(std::move(reports)));
    return 0;
}

int cmd_yau(const RunConfig& cfg) {
    std::vector<std::string> reports;
    for (int n : parse_n_list(cfg))
        reports.push_back(yau_report_json(yau_check(curve_for(cfg, n))));
    deliver(cfg, wrap_reports(std::move(reports)));
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    std::string text;
    bool all_ok = true;
    for (int n : parse_n_list(cfg)) {
        const ValidationReport report = validate_curve(curve_for(cfg, n));
        all_ok = all_ok && report.all_passed();
        text += validation_table(report);
    }
    deliver(cfg, text);
    return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "minimal embeddings of S^{n-1} x S^{n-1} x S^1 in S^{2n}: "
        "profile curves, stability index, Laplacian spectrum"};
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* profile =
        app.add_subcommand("profile", "solve the profile boundary problem");
    add_common_flags(profile, cfg, false);
    profile
        ->add_option("--format", cfg.format,
                     "json (curve document) or csv (sampled frames)")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    CLI::App* index =
        app.add_subcommand("index", "count negative stability eigenvalues");
    add_common_flags(index, cfg, false);

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "aggregate the Laplacian spectrum");
    add_common_flags(spectrum, cfg, true);

    CLI::App* yau = app.add_subcommand(
        "yau", "first-nonzero-eigenvalue criterion and consistency");
    add_common_flags(yau, cfg, false);

    CLI::App* validate =
        app.add_subcommand("validate", "run every invariant suite");
    add_common_flags(validate, cfg, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help/version 0, any parse problem 1
    }

    try {
        if (profile->parsed()) return cmd_profile(cfg);
        if (index->parsed()) return cmd_index(cfg);
        if (spectrum->parsed()) return cmd_spectrum(cfg);
        if (yau->parsed()) return cmd_yau(cfg);
        if (validate->parsed()) return cmd_validate(cfg);
    } catch (const InvariantError& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CLI::Error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
