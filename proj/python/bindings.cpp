// Python bindings for the minimal-embedding library: profile construction,
// frame geometry, Hill spectra, the stability index, and the
// first-eigenvalue criterion.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "csmin/errors.hpp"
#include "csmin/geometry.hpp"
#include "csmin/hill.hpp"
#include "csmin/profile.hpp"
#include "csmin/serialize.hpp"
#include "csmin/spectrum.hpp"
#include "csmin/validate.hpp"
#include "csmin/yau.hpp"

namespace py = pybind11;
using namespace csmin;

namespace {

HillPotential make_potential(const ProfileCurve& curve, OperatorKind kind,
                             int i, int j) {
    HillPotential pot;
    pot.curve = &curve;
    pot.kind = kind;
    pot.i = i;
    pot.j = j;
    return pot;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Minimal embeddings of S^{n-1} x S^{n-1} x S^1 in S^{2n}: profile "
        "curves by shooting, Hill-equation spectra, stability index, and "
        "the first-nonzero-eigenvalue criterion.";

    // Exception hierarchy: the python types mirror the C++ bases, and one
    // translator dispatches on the most-derived C++ type first.
    static py::exception<Error> exc_error(m, "Error");
    static py::exception<NumericError> exc_numeric(m, "NumericError",
                                                   exc_error.ptr());
    static py::exception<DomainError> exc_domain(m, "DomainError",
                                                 exc_numeric.ptr());
    static py::exception<InvariantError> exc_invariant(m, "InvariantError",
                                                       exc_error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        if (!p) {
            return;
        }
        try {
            std::rethrow_exception(p);
        } catch (const DomainError& e) {
            py::set_error(exc_domain, e.what());
        } catch (const InvariantError& e) {
            py::set_error(exc_invariant, e.what());
        } catch (const NumericError& e) {
            py::set_error(exc_numeric, e.what());
        } catch (const Error& e) {
            py::set_error(exc_error, e.what());
        }
    });

    py::class_<EmbeddingParams>(m, "EmbeddingParams")
        .def(py::init([](int n, double ode_tol, double shoot_tol) {
                 EmbeddingParams p;
                 p.n = n;
                 p.ode_tol = ode_tol;
                 p.shoot_tol = shoot_tol;
                 p.check();
                 return p;
             }),
             py::arg("n") = 2, py::arg("ode_tol") = 1e-12,
             py::arg("shoot_tol") = 1e-10)
        .def_readwrite("n", &EmbeddingParams::n)
        .def_readwrite("ode_tol", &EmbeddingParams::ode_tol)
        .def_readwrite("shoot_tol", &EmbeddingParams::shoot_tol);

    py::class_<ProfileState>(m, "ProfileState")
        .def_readonly("t", &ProfileState::t)
        .def_readonly("r", &ProfileState::r)
        .def_readonly("theta", &ProfileState::theta)
        .def_readonly("alpha", &ProfileState::alpha)
        .def("__repr__", [](const ProfileState& s) {
            return "ProfileState(t=" + format_float(s.t) +
                   ", r=" + format_float(s.r) +
                   ", theta=" + format_float(s.theta) +
                   ", alpha=" + format_float(s.alpha) + ")";
        });

    py::class_<ShootResult>(m, "ShootResult")
        .def_readonly("r0", &ShootResult::r0)
        .def_readonly("s_star", &ShootResult::s_star)
        .def_readonly("theta_star", &ShootResult::theta_star)
        .def_readonly("residual", &ShootResult::residual);

    py::class_<ProfileCurve>(m, "ProfileCurve")
        .def_property_readonly("n", &ProfileCurve::n)
        .def_property_readonly("r0", &ProfileCurve::r0)
        .def_property_readonly("theta0", &ProfileCurve::theta0)
        .def_property_readonly("period", &ProfileCurve::period)
        .def_property_readonly("params", &ProfileCurve::params)
        .def("eval", &ProfileCurve::eval, py::arg("t"))
        .def("samples", &ProfileCurve::samples)
        .def("check_symmetries", &ProfileCurve::check_symmetries,
             py::arg("tol"))
        .def("__repr__", [](const ProfileCurve& c) {
            return "ProfileCurve(n=" + std::to_string(c.n()) +
                   ", period=" + format_float(c.period()) + ")";
        });

    m.def(
        "shoot",
        [](int n, double ode_tol, double shoot_tol) {
            EmbeddingParams p;
            p.n = n;
            p.ode_tol = ode_tol;
            p.shoot_tol = shoot_tol;
            return shoot(p);
        },
        py::arg("n"), py::arg("ode_tol") = 1e-12,
        py::arg("shoot_tol") = 1e-10,
        py::call_guard<py::gil_scoped_release>(),
        "Solve the boundary-value problem; returns the untranslated "
        "initial radius and quarter period.");

    m.def(
        "build_curve",
        [](int n, double ode_tol, double shoot_tol) {
            EmbeddingParams p;
            p.n = n;
            p.ode_tol = ode_tol;
            p.shoot_tol = shoot_tol;
            return build_curve(p);
        },
        py::arg("n"), py::arg("ode_tol") = 1e-12,
        py::arg("shoot_tol") = 1e-10,
        py::call_guard<py::gil_scoped_release>(),
        "Shoot and integrate one full period in the translated gauge.");

    py::class_<MetricCoefficients>(m, "MetricCoefficients")
        .def_readonly("E", &MetricCoefficients::E)
        .def_readonly("G", &MetricCoefficients::G)
        .def_readonly("dE", &MetricCoefficients::dE)
        .def_readonly("dG", &MetricCoefficients::dG)
        .def_readonly("dlogEG", &MetricCoefficients::dlogEG)
        .def_readonly("d2logEG", &MetricCoefficients::d2logEG);

    py::class_<CurvatureData>(m, "CurvatureData")
        .def_readonly("kappa_u", &CurvatureData::kappa_u)
        .def_readonly("kappa_v", &CurvatureData::kappa_v)
        .def_readonly("kappa_t", &CurvatureData::kappa_t)
        .def_readonly("normA2", &CurvatureData::normA2);

    py::class_<FrameFunctions>(m, "FrameFunctions")
        .def_readonly("gamma1", &FrameFunctions::gamma1)
        .def_readonly("gamma2", &FrameFunctions::gamma2)
        .def_readonly("gamma3", &FrameFunctions::gamma3)
        .def_readonly("nu1", &FrameFunctions::nu1)
        .def_readonly("nu2", &FrameFunctions::nu2)
        .def_readonly("nu3", &FrameFunctions::nu3)
        .def_readonly("f12", &FrameFunctions::f12)
        .def_readonly("f13", &FrameFunctions::f13)
        .def_readonly("f23", &FrameFunctions::f23)
        .def_readonly("weight", &FrameFunctions::weight)
        .def_readonly("dlogweight", &FrameFunctions::dlogweight)
        .def_readonly("a_n", &FrameFunctions::a_n);

    m.def("metric_coeffs", &metric_coeffs, py::arg("curve"), py::arg("t"));
    m.def("curvatures",
          py::overload_cast<const ProfileCurve&, double>(&curvatures),
          py::arg("curve"), py::arg("t"));
    m.def("frame", &frame, py::arg("curve"), py::arg("t"));

    py::enum_<OperatorKind>(m, "OperatorKind")
        .value("Laplacian", OperatorKind::Laplacian)
        .value("Stability", OperatorKind::Stability);

    py::enum_<Parity>(m, "Parity")
        .value("Even", Parity::Even)
        .value("Odd", Parity::Odd)
        .value("Both", Parity::Both);

    py::class_<MonodromyData>(m, "MonodromyData")
        .def_readonly("lambda_", &MonodromyData::lambda)
        .def_readonly("z1T", &MonodromyData::z1T)
        .def_readonly("dz1T", &MonodromyData::dz1T)
        .def_readonly("z2T", &MonodromyData::z2T)
        .def_readonly("dz2T", &MonodromyData::dz2T)
        .def_readonly("delta", &MonodromyData::delta)
        .def_readonly("wronskian", &MonodromyData::wronskian)
        .def_readonly("int_z1z2", &MonodromyData::int_z1z2)
        .def_readonly("int_z2sq", &MonodromyData::int_z2sq)
        .def_readonly("int_z1sq", &MonodromyData::int_z1sq);

    py::class_<PeriodicEigenvalue>(m, "PeriodicEigenvalue")
        .def_readonly("lambda_", &PeriodicEigenvalue::lambda)
        .def_readonly("k", &PeriodicEigenvalue::k)
        .def_readonly("multiplicity", &PeriodicEigenvalue::multiplicity)
        .def_readonly("parity", &PeriodicEigenvalue::parity)
        .def_readonly("nodal_count", &PeriodicEigenvalue::nodal_count)
        .def_readonly("ambiguous_zeros", &PeriodicEigenvalue::ambiguous_zeros)
        .def("__repr__", [](const PeriodicEigenvalue& e) {
            return "PeriodicEigenvalue(lambda=" + format_float(e.lambda) +
                   ", k=" + std::to_string(e.k) + ", multiplicity=" +
                   std::to_string(e.multiplicity) + ", parity=" +
                   parity_name(e.parity) + ", nodal_count=" +
                   std::to_string(e.nodal_count) + ")";
        });

    m.def("sphere_eigenvalue", &sphere_eigenvalue, py::arg("k"),
          py::arg("i"));

    m.def(
        "potential_value",
        [](const ProfileCurve& curve, OperatorKind kind, int i, int j,
           double t) {
            return potential_value(make_potential(curve, kind, i, j), t);
        },
        py::arg("curve"), py::arg("kind"), py::arg("i"), py::arg("j"),
        py::arg("t"));

    m.def(
        "min_potential",
        [](const ProfileCurve& curve, OperatorKind kind, int i, int j) {
            return min_potential(make_potential(curve, kind, i, j));
        },
        py::arg("curve"), py::arg("kind"), py::arg("i"), py::arg("j"));

    m.def(
        "monodromy",
        [](const ProfileCurve& curve, OperatorKind kind, int i, int j,
           double lam) {
            return monodromy(make_potential(curve, kind, i, j), lam);
        },
        py::arg("curve"), py::arg("kind"), py::arg("i"), py::arg("j"),
        py::arg("lambda_"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "discriminant",
        [](const ProfileCurve& curve, OperatorKind kind, int i, int j,
           double lam) {
            return discriminant(make_potential(curve, kind, i, j), lam);
        },
        py::arg("curve"), py::arg("kind"), py::arg("i"), py::arg("j"),
        py::arg("lambda_"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "discriminant_derivative",
        [](const ProfileCurve& curve, OperatorKind kind, int i, int j,
           double lam) {
            return discriminant_derivative(make_potential(curve, kind, i, j),
                                           lam);
        },
        py::arg("curve"), py::arg("kind"), py::arg("i"), py::arg("j"),
        py::arg("lambda_"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "periodic_eigenvalues",
        [](const ProfileCurve& curve, OperatorKind kind, int i, int j,
           double lambda_max) {
            return periodic_eigenvalues(make_potential(curve, kind, i, j),
                                        lambda_max);
        },
        py::arg("curve"), py::arg("kind"), py::arg("i"), py::arg("j"),
        py::arg("lambda_max"), py::call_guard<py::gil_scoped_release>(),
        "All periodic eigenvalues of the reduced operator up to lambda_max, "
        "with multiplicities, parities, and nodal counts.");

    py::class_<SphereMode>(m, "SphereMode")
        .def_readonly("k", &SphereMode::k)
        .def_readonly("i", &SphereMode::i)
        .def_readonly("alpha", &SphereMode::alpha)
        .def_readonly("mult", &SphereMode::mult);

    m.def("sphere_spectrum", &sphere_spectrum, py::arg("k"), py::arg("i"));

    py::class_<FrontierCell>(m, "FrontierCell")
        .def_readonly("i", &FrontierCell::i)
        .def_readonly("j", &FrontierCell::j)
        .def_readonly("bound", &FrontierCell::bound)
        .def_readonly("included", &FrontierCell::included);

    py::class_<OperatorTally>(m, "OperatorTally")
        .def_readonly("i", &OperatorTally::i)
        .def_readonly("j", &OperatorTally::j)
        .def_readonly("weight", &OperatorTally::weight)
        .def_readonly("negatives", &OperatorTally::negatives)
        .def_readonly("eigenvalues", &OperatorTally::eigenvalues);

    py::class_<IndexReport>(m, "IndexReport")
        .def_readonly("n", &IndexReport::n)
        .def_readonly("index_lower_bound", &IndexReport::index_lower_bound)
        .def_readonly("index_computed", &IndexReport::index_computed)
        .def_readonly("tallies", &IndexReport::tallies)
        .def_readonly("frontier", &IndexReport::frontier);

    m.def("stability_index", &stability_index, py::arg("curve"),
          py::call_guard<py::gil_scoped_release>(),
          "Count negative stability eigenvalues with multiplicity over the "
          "certified (i, j) frontier.");

    py::class_<SpectrumSource>(m, "SpectrumSource")
        .def_readonly("i", &SpectrumSource::i)
        .def_readonly("j", &SpectrumSource::j)
        .def_readonly("ordinal", &SpectrumSource::ordinal)
        .def_readonly("hill_mult", &SpectrumSource::hill_mult);

    py::class_<AggregateEntry>(m, "AggregateEntry")
        .def_readonly("lambda_", &AggregateEntry::lambda)
        .def_readonly("multiplicity", &AggregateEntry::multiplicity)
        .def_readonly("sources", &AggregateEntry::sources)
        .def_readonly("merge_ambiguous", &AggregateEntry::merge_ambiguous);

    py::class_<SpectrumReport>(m, "SpectrumReport")
        .def_readonly("n", &SpectrumReport::n)
        .def_readonly("lambda_max", &SpectrumReport::lambda_max)
        .def_readonly("entries", &SpectrumReport::entries)
        .def_readonly("frontier", &SpectrumReport::frontier);

    m.def("laplacian_spectrum", &laplacian_spectrum, py::arg("curve"),
          py::arg("lambda_max"), py::call_guard<py::gil_scoped_release>());

    m.def("first_nonzero_eigenvalue", &first_nonzero_eigenvalue,
          py::arg("curve"), py::call_guard<py::gil_scoped_release>());

    py::class_<Z1Endpoint>(m, "Z1Endpoint")
        .def_readonly("z1_T", &Z1Endpoint::z1_T)
        .def_readonly("z1_prime_T", &Z1Endpoint::z1_prime_T);

    m.def("solve_z1",
          py::overload_cast<const ProfileCurve&>(&solve_z1),
          py::arg("curve"), py::call_guard<py::gil_scoped_release>());

    py::class_<YauVerdict>(m, "YauVerdict")
        .def_readonly("n", &YauVerdict::n)
        .def_readonly("z1_prime_T", &YauVerdict::z1_prime_T)
        .def_readonly("delta_prime", &YauVerdict::delta_prime)
        .def_readonly("lambda2", &YauVerdict::lambda2)
        .def_readonly("lambda3", &YauVerdict::lambda3)
        .def_readonly("holds", &YauVerdict::holds)
        .def_readonly("consistent", &YauVerdict::consistent)
        .def_readonly("indeterminate", &YauVerdict::indeterminate);

    m.def("yau_check", &yau_check, py::arg("curve"),
          py::call_guard<py::gil_scoped_release>(),
          "Evaluate the three equivalent forms of the first-eigenvalue "
          "criterion and their consistency.");

    py::class_<ValidationCheck>(m, "ValidationCheck")
        .def_readonly("name", &ValidationCheck::name)
        .def_readonly("residual", &ValidationCheck::residual)
        .def_readonly("tolerance", &ValidationCheck::tolerance)
        .def_readonly("passed", &ValidationCheck::passed)
        .def_readonly("detail", &ValidationCheck::detail);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("n", &ValidationReport::n)
        .def_readonly("checks", &ValidationReport::checks)
        .def("all_passed", &ValidationReport::all_passed);

    m.def("validate_curve", &validate_curve, py::arg("curve"),
          py::call_guard<py::gil_scoped_release>());
    m.def("validation_table", &validation_table, py::arg("report"));

    m.def("profile_to_json", &profile_to_json, py::arg("curve"));
    m.def("profile_from_json", &profile_from_json, py::arg("text"));
    m.def("geometry_csv", &geometry_csv, py::arg("curve"));
    m.def("eigenvalue_report_json", &eigenvalue_report_json, py::arg("kind"),
          py::arg("i"), py::arg("j"), py::arg("eigenvalues"));
    m.def("index_report_json", &index_report_json, py::arg("report"));
    m.def("spectrum_report_json", &spectrum_report_json, py::arg("report"));
    m.def("yau_report_json", &yau_report_json, py::arg("verdict"));
}
