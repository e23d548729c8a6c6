#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nodal/errors.hpp"
#include "nodal/instances.hpp"
#include "nodal/lattice.hpp"
#include "nodal/local_global.hpp"
#include "nodal/magnetic.hpp"
#include "nodal/nodal_count.hpp"

namespace py = pybind11;
using namespace nodal;

namespace {

std::vector<std::vector<double>> dense_rows(const Mat& m) {
    std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

std::vector<std::vector<cplx>> dense_rows(const CMat& m) {
    std::vector<std::vector<cplx>> rows(m.rows(), std::vector<cplx>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "nodal surplus statistics on graphs with disjoint cycles";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<Graph>(m, "Graph")
        .def_readonly("n", &Graph::n)
        .def_readonly("edges", &Graph::edges)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("edge_index", &Graph::edge_index)
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.n) + ", edges=" +
                   std::to_string(g.edges.size()) + ")";
        });

    py::class_<CycleStructure>(m, "CycleStructure")
        .def_readonly("tree_edges", &CycleStructure::tree_edges)
        .def_readonly("fundamental_cycles", &CycleStructure::fundamental_cycles)
        .def_readonly("representative_edges", &CycleStructure::representative_edges)
        .def_readonly("beta", &CycleStructure::beta)
        .def_readonly("disjoint", &CycleStructure::disjoint);

    py::class_<SupportedMatrix>(m, "SupportedMatrix")
        .def_readonly("graph", &SupportedMatrix::graph)
        .def_readonly("diagonal", &SupportedMatrix::diagonal)
        .def_readonly("off_diagonal", &SupportedMatrix::off_diagonal)
        .def("to_dense",
             [](const SupportedMatrix& h) { return dense_rows(h.to_dense()); });

    py::class_<FluxPoint>(m, "FluxPoint")
        .def(py::init([](std::vector<double> angles) { return FluxPoint{std::move(angles)}; }))
        .def_static("zero", &FluxPoint::zero)
        .def_static("symmetry_point", &FluxPoint::symmetry_point)
        .def_readonly("angles", &FluxPoint::angles);

    py::class_<GscReport>(m, "GscReport")
        .def_readonly("pass_", &GscReport::pass)
        .def_readonly("strict_support_ok", &GscReport::strict_support_ok)
        .def_readonly("min_gap", &GscReport::min_gap)
        .def_readonly("min_entry", &GscReport::min_entry)
        .def_readonly("signings_checked", &GscReport::signings_checked);

    py::class_<DistinctReport>(m, "DistinctReport")
        .def_readonly("pass_", &DistinctReport::pass)
        .def_readonly("min_separation", &DistinctReport::min_separation);

    py::class_<SurplusDistribution>(m, "SurplusDistribution")
        .def_readonly("k", &SurplusDistribution::k)
        .def_readonly("beta", &SurplusDistribution::beta)
        .def_readonly("counts", &SurplusDistribution::counts)
        .def_readonly("per_signing_counts", &SurplusDistribution::per_signing_counts);

    py::class_<EdgeScan>(m, "EdgeScan")
        .def_readonly("cycle", &EdgeScan::cycle)
        .def_readonly("k", &EdgeScan::k)
        .def_readonly("eps", &EdgeScan::eps)
        .def_readonly("t", &EdgeScan::t)
        .def_readonly("lambdas", &EdgeScan::lambda)
        .def_readonly("derivative", &EdgeScan::derivative)
        .def_property_readonly("verdict",
                               [](const EdgeScan& s) { return std::string(to_string(s.verdict)); });

    py::class_<JMinusResult>(m, "JMinusResult")
        .def_readonly("mask", &JMinusResult::mask)
        .def_readonly("min_margin", &JMinusResult::min_margin)
        .def_readonly("indeterminate", &JMinusResult::indeterminate);

    py::class_<LatticeEntry>(m, "LatticeEntry")
        .def_readonly("eps", &LatticeEntry::eps)
        .def_readonly("jminus", &LatticeEntry::jminus)
        .def_readonly("lambda_", &LatticeEntry::lambda)
        .def_readonly("index", &LatticeEntry::index)
        .def_readonly("surplus", &LatticeEntry::surplus);

    py::class_<LatticeReport>(m, "LatticeReport")
        .def_readonly("k", &LatticeReport::k)
        .def_readonly("beta", &LatticeReport::beta)
        .def_readonly("entries", &LatticeReport::entries)
        .def_readonly("bijective", &LatticeReport::bijective)
        .def_readonly("binomial", &LatticeReport::binomial)
        .def_readonly("indeterminate", &LatticeReport::indeterminate);

    py::class_<SigningOrbits>(m, "SigningOrbits")
        .def_readonly("orbit_count", &SigningOrbits::orbit_count)
        .def_readonly("orbit_size", &SigningOrbits::orbit_size)
        .def_readonly("representatives", &SigningOrbits::representatives);

    py::class_<GeneratorConfig>(m, "GeneratorConfig")
        .def(py::init<>())
        .def_readwrite("seed", &GeneratorConfig::seed)
        .def_readwrite("offdiag_low", &GeneratorConfig::offdiag_low)
        .def_readwrite("offdiag_high", &GeneratorConfig::offdiag_high)
        .def_readwrite("diag_jitter", &GeneratorConfig::diag_jitter)
        .def_readwrite("max_retries", &GeneratorConfig::max_retries);

    py::class_<FlatBandInstance>(m, "FlatBandInstance")
        .def_readonly("h", &FlatBandInstance::h)
        .def_readonly("lambda_", &FlatBandInstance::lambda)
        .def_readonly("cycle", &FlatBandInstance::cycle);

    m.def("build_graph", &build_graph, py::arg("n"), py::arg("edges"));
    m.def("analyze_cycles", &analyze_cycles);
    m.def("has_disjoint_cycles", &has_disjoint_cycles);
    m.def("bridges", &bridges);
    m.def("make_supported", &make_supported, py::arg("graph"), py::arg("diagonal"),
          py::arg("off_diagonal"));

    m.def(
        "random_gsc_instance",
        [](const Graph& g, const CycleStructure& cs, const GeneratorConfig& cfg) {
            return random_gsc_instance(g, cs, cfg);
        },
        py::arg("graph"), py::arg("cycles"), py::arg("config"));
    m.def(
        "random_gsc_instance",
        [](const Graph& g, const CycleStructure& cs, std::uint64_t seed) {
            GeneratorConfig cfg;
            cfg.seed = seed;
            return random_gsc_instance(g, cs, cfg);
        },
        py::arg("graph"), py::arg("cycles"), py::arg("seed"));
    m.def("canonical_instance", &canonical_instance, py::arg("graph"), py::arg("xi_scale"),
          py::arg("seed"));
    m.def("flat_band_instance", &flat_band_instance);

    m.def(
        "check_gsc",
        [](const SupportedMatrix& h, const CycleStructure& cs) { return check_gsc(h, cs); },
        py::arg("h"), py::arg("cycles"));
    m.def(
        "check_distinct_signings",
        [](const SupportedMatrix& h, const CycleStructure& cs, int k) {
            return check_distinct_signings(h, cs, k);
        },
        py::arg("h"), py::arg("cycles"), py::arg("k"));
    m.def(
        "nodal_count", [](const SupportedMatrix& h, int k) { return nodal_count(h, k); },
        py::arg("h"), py::arg("k"));
    m.def(
        "nodal_surplus", [](const SupportedMatrix& h, int k) { return nodal_surplus(h, k); },
        py::arg("h"), py::arg("k"));
    m.def(
        "surplus_distribution",
        [](const SupportedMatrix& h, const CycleStructure& cs, int k) {
            return surplus_distribution(h, cs, k);
        },
        py::arg("h"), py::arg("cycles"), py::arg("k"));
    m.def("binomial_verdict",
          [](const SurplusDistribution& d) { return binomial_verdict(d); });
    m.def("signing_orbits", &signing_orbits, py::arg("graph"), py::arg("cycles"));
    m.def("apply_symmetry_point", &apply_symmetry_point, py::arg("h"), py::arg("cycles"),
          py::arg("eps"));

    m.def(
        "lambda_k",
        [](const SupportedMatrix& h, const CycleStructure& cs, const FluxPoint& a, int k) {
            return lambda_k(h, cs, a, k);
        },
        py::arg("h"), py::arg("cycles"), py::arg("alpha"), py::arg("k"));
    m.def(
        "torus_action",
        [](const SupportedMatrix& h, const CycleStructure& cs, const FluxPoint& a) {
            return dense_rows(torus_action(h, cs, a).mat);
        },
        py::arg("h"), py::arg("cycles"), py::arg("alpha"));
    m.def(
        "eigenvalue_gradient",
        [](const SupportedMatrix& h, const CycleStructure& cs, const FluxPoint& a, int k) {
            return eigenvalue_gradient(h, cs, a, k);
        },
        py::arg("h"), py::arg("cycles"), py::arg("alpha"), py::arg("k"));
    m.def(
        "edge_scan",
        [](const SupportedMatrix& h, const CycleStructure& cs, std::uint32_t eps, int cycle,
           int k, int samples) { return edge_scan(h, cs, eps, cycle, k, samples); },
        py::arg("h"), py::arg("cycles"), py::arg("eps"), py::arg("cycle"), py::arg("k"),
        py::arg("samples") = 64);
    m.def(
        "j_minus",
        [](const SupportedMatrix& h, const CycleStructure& cs, std::uint32_t eps, int k) {
            return j_minus(h, cs, eps, k);
        },
        py::arg("h"), py::arg("cycles"), py::arg("eps"), py::arg("k"));
    m.def(
        "lattice_map",
        [](const SupportedMatrix& h, const CycleStructure& cs, int k) {
            return lattice_map(h, cs, k);
        },
        py::arg("h"), py::arg("cycles"), py::arg("k"));
    m.def(
        "spectrum",
        [](const SupportedMatrix& h) { return eig_sym(h.to_dense()).values; },
        py::arg("h"));

    py::class_<ProbabilityCurrent>(m, "ProbabilityCurrent")
        .def_readonly("values", &ProbabilityCurrent::values)
        .def_readonly("max_divergence", &ProbabilityCurrent::max_divergence)
        .def_readonly("max_bridge_abs", &ProbabilityCurrent::max_bridge_abs)
        .def_readonly("max_cycle_spread", &ProbabilityCurrent::max_cycle_spread);

    py::class_<FdDerivatives>(m, "FdDerivatives")
        .def_readonly("gradient", &FdDerivatives::gradient)
        .def_property_readonly("hessian", [](const FdDerivatives& fd) {
            return dense_rows(fd.hessian);
        });

    py::class_<MorseEntry>(m, "MorseEntry")
        .def_readonly("eps", &MorseEntry::eps)
        .def_readonly("fd_index", &MorseEntry::fd_index)
        .def_readonly("jminus_size", &MorseEntry::jminus_size)
        .def_readonly("surplus", &MorseEntry::surplus)
        .def_readonly("consistent", &MorseEntry::consistent);

    py::class_<MorseReport>(m, "MorseReport")
        .def_readonly("k", &MorseReport::k)
        .def_readonly("entries", &MorseReport::entries)
        .def_readonly("all_consistent", &MorseReport::all_consistent)
        .def_readonly("indeterminate", &MorseReport::indeterminate);

    py::class_<PartialCriticalityReport>(m, "PartialCriticalityReport")
        .def_readonly("pass_", &PartialCriticalityReport::pass)
        .def_readonly("max_far_current", &PartialCriticalityReport::max_far_current)
        .def_readonly("threshold", &PartialCriticalityReport::threshold);

    // Current of the k-th eigenvector of alpha*h, with its structure margins.
    m.def(
        "probability_current",
        [](const SupportedMatrix& h, const CycleStructure& cs, const FluxPoint& a, int k) {
            MagneticMatrix mag = torus_action(h, cs, a);
            EigenSystem es = eig_herm(mag.mat);
            std::vector<cplx> phi = es.vector(k - 1);
            double nn = norm2(phi);
            for (cplx& z : phi) z /= nn;
            return probability_current(h.graph, cs, mag, phi);
        },
        py::arg("h"), py::arg("cycles"), py::arg("alpha"), py::arg("k"));
    m.def(
        "fd_derivatives",
        [](const SupportedMatrix& h, const CycleStructure& cs, const FluxPoint& a, int k) {
            return fd_derivatives(h, cs, a, k);
        },
        py::arg("h"), py::arg("cycles"), py::arg("alpha"), py::arg("k"));
    m.def(
        "morse_report",
        [](const SupportedMatrix& h, const CycleStructure& cs, int k) {
            return morse_report(h, cs, k);
        },
        py::arg("h"), py::arg("cycles"), py::arg("k"));
    m.def(
        "partial_criticality_check",
        [](const SupportedMatrix& h, const std::vector<double>& edge_phases, Edge bridge,
           int k) {
            return partial_criticality_check(h, EdgePhases{edge_phases}, bridge, k);
        },
        py::arg("h"), py::arg("edge_phases"), py::arg("bridge"), py::arg("k"));
}
