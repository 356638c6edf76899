#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eofcbo/bench.hpp"
#include "eofcbo/cbo_hermitian.hpp"
#include "eofcbo/cbo_unitary.hpp"
#include "eofcbo/experiment.hpp"
#include "eofcbo/multispecies.hpp"

namespace py = pybind11;
using namespace eofcbo;

namespace {

CboConfig make_config(double beta, double lambda, double sigma, double additive_sigma, double dt,
                      int max_iter, std::uint64_t seed) {
    return CboConfig{beta, lambda, sigma, additive_sigma, dt, max_iter, seed};
}

}  // namespace

PYBIND11_MODULE(eofcbo, m) {
    m.doc() = "Entanglement of formation via structure-preserving consensus-based optimization";

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_readonly("dim_a", &DensityMatrix::dim_a)
        .def_readonly("dim_b", &DensityMatrix::dim_b)
        .def_readonly("rho", &DensityMatrix::rho);

    py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
        .def_readonly("rank", &SpectralDecomposition::rank)
        .def_readonly("probabilities", &SpectralDecomposition::probabilities)
        .def_readonly("vectors", &SpectralDecomposition::vectors);

    py::class_<ObjectiveValue>(m, "ObjectiveValue")
        .def_readonly("value", &ObjectiveValue::value)
        .def_readonly("per_branch", &ObjectiveValue::per_branch);

    py::class_<TraceRecord>(m, "TraceRecord")
        .def_readonly("iter", &TraceRecord::iter)
        .def_readonly("consensus_eof", &TraceRecord::consensus_eof)
        .def_readonly("ensemble_min", &TraceRecord::ensemble_min)
        .def_readonly("ensemble_mean", &TraceRecord::ensemble_mean);

    py::class_<RunTrace>(m, "RunTrace")
        .def_readonly("records", &RunTrace::records)
        .def_readonly("best_eof", &RunTrace::best_eof)
        .def_readonly("best_iter", &RunTrace::best_iter)
        .def_readonly("best_consensus_frame", &RunTrace::best_consensus_frame);

    py::class_<CboConfig>(m, "CboConfig")
        .def(py::init(&make_config), py::arg("beta") = 200.0, py::arg("lam") = 1.0,
             py::arg("sigma") = 0.06, py::arg("additive_sigma") = 0.06, py::arg("dt") = 0.2,
             py::arg("max_iter") = 1000, py::arg("seed") = 0)
        .def_readwrite("beta", &CboConfig::beta)
        .def_readwrite("lam", &CboConfig::lambda)
        .def_readwrite("sigma", &CboConfig::sigma)
        .def_readwrite("additive_sigma", &CboConfig::additive_sigma)
        .def_readwrite("dt", &CboConfig::dt)
        .def_readwrite("max_iter", &CboConfig::max_iter)
        .def_readwrite("seed", &CboConfig::seed);

    // states and oracles
    m.def("horodecki_2x2", &bench::horodecki_2x2, py::arg("q"), py::arg("a") = 0.75);
    m.def("werner", &bench::werner, py::arg("f"));
    m.def("isotropic_3x3", &bench::isotropic_3x3, py::arg("f"));
    m.def("horodecki_2x4", &bench::horodecki_2x4, py::arg("b"));
    m.def("binary_entropy", &bench::binary_entropy);
    m.def("concurrence", &bench::concurrence);
    m.def("wootters_eof", [](const DensityMatrix& rho) { return bench::wootters_eof(rho).value; });
    m.def("isotropic_eof", [](double f) { return bench::isotropic_eof(f).value; });

    // objective pipeline
    m.def("validate_density", &quantum::validate_density, py::arg("rho"), py::arg("dim_a"),
          py::arg("dim_b"));
    m.def("spectral_decompose", &quantum::spectral_decompose, py::arg("state"),
          py::arg("rank_tol") = kRankTol);
    m.def(
        "entanglement_objective",
        [](const SpectralDecomposition& decomp, const Matrix& u, int dim_a, int dim_b) {
            return quantum::entanglement_objective(decomp, StiefelPoint{u}, dim_a, dim_b);
        },
        py::arg("decomp"), py::arg("u"), py::arg("dim_a"), py::arg("dim_b"));
    m.def("von_neumann_entropy", &quantum::von_neumann_entropy, py::arg("rho_a"),
          py::arg("clip_tol") = 1e-12);
    m.def("partial_trace_b", &quantum::partial_trace_b, py::arg("phi"), py::arg("dim_a"),
          py::arg("dim_b"));

    py::class_<bench::SaConfig>(m, "SaConfig")
        .def(py::init<>())
        .def_readwrite("chi0", &bench::SaConfig::chi0)
        .def_readwrite("chi_end", &bench::SaConfig::chi_end)
        .def_readwrite("alpha", &bench::SaConfig::alpha)
        .def_readwrite("iter_per_angle", &bench::SaConfig::iter_per_angle)
        .def_readwrite("realizations", &bench::SaConfig::realizations);

    // solvers
    m.def("run_hermitian", &cbo_hermitian::run_hermitian, py::arg("decomp"), py::arg("dim_a"),
          py::arg("dim_b"), py::arg("m"), py::arg("particles"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_hermitian_projection", &cbo_hermitian::run_hermitian_projection, py::arg("decomp"),
          py::arg("dim_a"), py::arg("dim_b"), py::arg("m"), py::arg("particles"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("run_unitary", &cbo_unitary::run_unitary, py::arg("decomp"), py::arg("dim_a"),
          py::arg("dim_b"), py::arg("m"), py::arg("particles"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_unitary_projection", &cbo_unitary::run_unitary_projection, py::arg("decomp"),
          py::arg("dim_a"), py::arg("dim_b"), py::arg("m"), py::arg("particles"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("run_multispecies", &multispecies::run_multispecies, py::arg("decomp"),
          py::arg("dim_a"), py::arg("dim_b"), py::arg("level_set"), py::arg("particles"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "simulated_annealing_reference",
        [](const SpectralDecomposition& decomp, int dim_a, int dim_b, int mm,
           const bench::SaConfig& sa, std::uint64_t seed) {
            return bench::simulated_annealing_reference(decomp, dim_a, dim_b, mm, sa, seed).value;
        },
        py::arg("decomp"), py::arg("dim_a"), py::arg("dim_b"), py::arg("m"),
        py::arg("sa") = bench::SaConfig{}, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());
}
