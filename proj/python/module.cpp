// Python bindings for the core operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qprime/circuit.hpp"
#include "qprime/error.hpp"
#include "qprime/io.hpp"
#include "qprime/manifest.hpp"
#include "qprime/primality.hpp"
#include "qprime/spectral.hpp"
#include "qprime/statevector.hpp"
#include "qprime/sweep.hpp"
#include "qprime/walsh.hpp"

namespace py = pybind11;
using namespace qprime;

namespace {

using Weights = std::optional<std::vector<double>>;

InitialCoefficients coefficients(std::uint64_t d, const Weights& weights) {
    if (!weights) return InitialCoefficients::uniform(d);
    if (weights->size() != d) throw DomainError("weights must have length d");
    return InitialCoefficients::from_weights(*weights);
}

std::map<Index, std::int64_t> spectrum_dict(const WalshSpectrum& s) { return s.entries; }

}  // namespace

PYBIND11_MODULE(_qprime, m) {
    m.doc() = "Walsh-synthesized oscillator circuits and purity-based primality checks.";
    m.attr("__version__") = std::string(io::tool_version());

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

    py::enum_<Regime>(m, "Regime").value("I", Regime::I).value("II", Regime::II).value("III", Regime::III);
    py::enum_<Verdict>(m, "Verdict")
        .value("PRIME", Verdict::Prime)
        .value("COMPOSITE", Verdict::Composite)
        .value("INCONCLUSIVE", Verdict::Inconclusive);

    m.def("walsh_function", &walsh_function, py::arg("j"), py::arg("k"), py::arg("q"),
          "Paley-ordered Walsh function, +1 or -1.");
    m.def("phase_vector", [](std::uint64_t d) { return phase_vector(d).entries; }, py::arg("d"),
          "Integer phases n_A * n_B in basis order, length d^2.");
    m.def("closed_form_spectrum", [](std::uint64_t d) { return spectrum_dict(closed_form_spectrum(d)); },
          py::arg("d"), "Nonzero raw Walsh angles {j: a_j} of the phase vector.");
    m.def("walsh_transform",
          [](const std::vector<std::int64_t>& f) { return spectrum_dict(walsh_transform(std::span(f))); },
          py::arg("f"), "Sparse Paley transform of an integer vector, fast path.");
    m.def("direct_walsh_transform",
          [](const std::vector<std::int64_t>& f) { return spectrum_dict(direct_walsh_transform(f)); },
          py::arg("f"), "Sparse Paley transform summed term by term.");

    m.def("analytic_purity",
          [](std::uint64_t d, double omega, double t, const Weights& w) {
              return analytic_purity(coefficients(d, w), omega, t);
          },
          py::arg("d"), py::arg("omega"), py::arg("t"), py::arg("weights") = py::none());
    m.def("lower_bound",
          [](std::uint64_t d, std::uint64_t n, const Weights& w) { return lower_bound(coefficients(d, w), n); },
          py::arg("d"), py::arg("n"), py::arg("weights") = py::none());

    py::class_<FourierSpectrum>(m, "FourierSpectrum")
        .def_readonly("d", &FourierSpectrum::d)
        .def_readonly("mean", &FourierSpectrum::mean)
        .def_readonly("alpha", &FourierSpectrum::alpha)
        .def_readonly("bound", &FourierSpectrum::bound)
        .def_property_readonly("source", [](const FourierSpectrum& s) { return std::string(to_string(s.source)); })
        .def_property_readonly("nmax", &FourierSpectrum::nmax)
        .def("at", &FourierSpectrum::at, py::arg("n"))
        .def("bound_at", &FourierSpectrum::bound_at, py::arg("n"));

    m.def("analytic_fourier_modes",
          [](std::uint64_t d, const Weights& w) {
              const auto c = coefficients(d, w);
              auto s = analytic_fourier_modes(c);
              attach_bounds(s, c);
              return s;
          },
          py::arg("d"), py::arg("weights") = py::none(), "Exact cosine modes with lower bounds attached.");

    py::class_<PuritySeries>(m, "PuritySeries")
        .def_readonly("d", &PuritySeries::d)
        .def_readonly("omega", &PuritySeries::omega)
        .def_readonly("partitions", &PuritySeries::partitions)
        .def_readonly("shots", &PuritySeries::shots)
        .def_readonly("times", &PuritySeries::times)
        .def_readonly("gamma", &PuritySeries::gamma)
        .def("__len__", &PuritySeries::size);

    m.def("simulate_purity",
          [](std::uint64_t d, double omega, double t, const std::string& backend, std::uint64_t shots,
             std::uint64_t seed) {
              return simulate_purity(d, {omega, t, d}, backend_from_string(backend), shots, seed).value;
          },
          py::arg("d"), py::arg("omega"), py::arg("t"), py::arg("backend") = "exact-trace", py::arg("shots") = 0,
          py::arg("seed") = 0);
    m.def("simulate_series",
          [](std::uint64_t d, double omega, std::optional<std::uint64_t> partitions, const std::string& backend,
             std::uint64_t shots, std::uint64_t seed, unsigned threads) {
              SweepOptions opt;
              opt.d = d;
              opt.omega = omega;
              opt.partitions = partitions.value_or(default_partitions(d));
              opt.backend = backend_from_string(backend);
              opt.shots = shots;
              opt.seed = seed;
              opt.threads = threads;
              py::gil_scoped_release release;
              return simulate_series(opt);
          },
          py::arg("d"), py::arg("omega") = 0.1, py::arg("partitions") = py::none(),
          py::arg("backend") = "exact-trace", py::arg("shots") = 0, py::arg("seed") = 0, py::arg("threads") = 0,
          "Purity on the half-period grid; deterministic for any thread count.");
    m.def("simpson_fourier",
          [](const PuritySeries& series, std::optional<std::uint64_t> nmax) {
              const auto d = series.d;
              auto s = simpson_fourier(series, nmax.value_or(2 * (d - 1)));
              attach_bounds(s, InitialCoefficients::uniform(d));
              return s;
          },
          py::arg("series"), py::arg("nmax") = py::none(),
          "Cosine modes by Simpson quadrature, uniform-state bounds attached.");

    py::class_<ClassificationRow>(m, "ClassificationRow")
        .def_readonly("n", &ClassificationRow::n)
        .def_readonly("regime", &ClassificationRow::regime)
        .def_readonly("alpha", &ClassificationRow::alpha)
        .def_readonly("bound", &ClassificationRow::bound)
        .def_readonly("verdict", &ClassificationRow::verdict)
        .def_readonly("oracle_prime", &ClassificationRow::oracle_prime)
        .def_readonly("agree", &ClassificationRow::agree);
    py::class_<ClassificationReport>(m, "ClassificationReport")
        .def_readonly("d", &ClassificationReport::d)
        .def_readonly("tolerance", &ClassificationReport::tolerance)
        .def_readonly("rows", &ClassificationReport::rows)
        .def("domain_disagreements", &ClassificationReport::domain_disagreements)
        .def("disagreements", &ClassificationReport::disagreements)
        .def("primes", [](const ClassificationReport& r) {
            std::vector<std::uint64_t> out;
            for (const auto& row : r.rows)
                if (row.verdict == Verdict::Prime) out.push_back(row.n);
            return out;
        });
    m.def("classify",
          [](const FourierSpectrum& s, std::optional<double> tolerance) {
              return classify(s, tolerance.value_or(default_tolerance(s.d, 0, 0)));
          },
          py::arg("spectrum"), py::arg("tolerance") = py::none());
    m.def("default_tolerance", &default_tolerance, py::arg("d"), py::arg("shots") = 0, py::arg("partitions") = 0);
    m.def("default_partitions", &default_partitions, py::arg("d"));
    m.def("sieve", &sieve_oracle, py::arg("n"), "Primes up to n.");

    m.def("predicted_gate_counts",
          [](int q) {
              const auto p = predicted_gate_counts(q);
              return py::make_tuple(p.g1, p.g2, p.g3);
          },
          py::arg("q"));
    m.def("audit_counts",
          [](std::uint64_t d, double t, bool swap_test, bool optimized) {
              const auto mode = swap_test ? PipelineMode::SwapTest : PipelineMode::StateOnly;
              const auto synthesis = optimized ? SynthesisMode::Optimized : SynthesisMode::Faithful;
              const auto report = audit_gates(build_pipeline(d, {0.1, t, d}, mode, synthesis), d);
              py::dict out;
              out["preparation"] = report.stage(Stage::Preparation).elementary;
              out["evolution"] = report.stage(Stage::Evolution).elementary;
              if (report.has_purity_stage) out["purity_test"] = report.stage(Stage::PurityTest).elementary;
              out["match"] = report.all_match();
              return out;
          },
          py::arg("d"), py::arg("t") = 1.0, py::arg("swap_test") = true, py::arg("optimized") = false,
          "Elementary gate counts per stage, a controlled swap counted as three.");
}
