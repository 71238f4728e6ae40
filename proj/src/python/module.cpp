#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opinion/analysis.hpp"
#include "opinion/bias.hpp"
#include "opinion/dynamics.hpp"
#include "opinion/errors.hpp"
#include "opinion/graph.hpp"
#include "opinion/scenario.hpp"

namespace py = pybind11;
using namespace opinion;

PYBIND11_MODULE(opiniondyn, m) {
    m.doc() = "Opinion dynamics on influence graphs with per-edge cognitive biases";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

    py::enum_<Region>(m, "Region")
        .value("MALLEABLE", Region::Malleable)
        .value("RECEPTIVE", Region::Receptive)
        .value("BACKFIRE", Region::Backfire)
        .value("INSULAR", Region::Insular);

    py::class_<RegionSet>(m, "RegionSet")
        .def_readonly("malleable", &RegionSet::malleable)
        .def_readonly("receptive", &RegionSet::receptive)
        .def_readonly("backfire", &RegionSet::backfire)
        .def_readonly("insular", &RegionSet::insular)
        .def("contains", &RegionSet::contains);

    m.def("region_membership", &region_membership, py::arg("x"), py::arg("y"));

    py::class_<BiasSpec>(m, "BiasSpec")
        .def_static("degroot", &BiasSpec::degroot)
        .def_static("conf", &BiasSpec::conf, py::arg("delta") = 1e-4)
        .def_static("backf", &BiasSpec::backf)
        .def_static("fan", &BiasSpec::fan)
        .def_static("ins", &BiasSpec::ins)
        .def_static("exp_slow", &BiasSpec::exp_slow)
        .def_static("step_discontinuous", &BiasSpec::step_discontinuous)
        .def_static("arctan_malleable", &BiasSpec::arctan_malleable)
        .def_static("piecewise_linear", &BiasSpec::piecewise_linear)
        .def("__call__", &BiasSpec::operator())
        .def_property_readonly("name", &BiasSpec::name)
        .def_property_readonly("certified_region", &BiasSpec::certified_region)
        .def_property_readonly("continuous", &BiasSpec::analytically_continuous);

    py::enum_<Coverage>(m, "Coverage")
        .value("ALL", Coverage::All)
        .value("SOME", Coverage::Some)
        .value("NONE", Coverage::None);

    py::class_<RegionReport>(m, "RegionReport")
        .def_readonly("samples", &RegionReport::samples)
        .def_readonly("certified", &RegionReport::certified)
        .def("coverage_of", &RegionReport::coverage_of);

    m.def("classify_bias", &classify_bias, py::arg("bias"), py::arg("grid") = 2001,
          py::arg("include_endpoints") = true);

    py::class_<Edge>(m, "Edge")
        .def(py::init([](int source, int target, double weight, const BiasSpec& bias) {
                 return Edge{source, target, weight, bias};
             }),
             py::arg("source"), py::arg("target"), py::arg("weight"), py::arg("bias"))
        .def_readonly("source", &Edge::source)
        .def_readonly("target", &Edge::target)
        .def_readonly("weight", &Edge::weight);

    py::class_<InfluenceGraph>(m, "InfluenceGraph")
        .def(py::init<int, std::vector<Edge>>(), py::arg("agent_count"), py::arg("edges"))
        .def_property_readonly("agent_count", &InfluenceGraph::agent_count)
        .def("influencers", &InfluenceGraph::influencers)
        .def("weight", &InfluenceGraph::weight)
        .def("proportional_influence", &InfluenceGraph::proportional_influence);

    py::class_<ComponentPartition>(m, "ComponentPartition")
        .def_readonly("components", &ComponentPartition::components)
        .def_readonly("source_flags", &ComponentPartition::source_flags);

    m.def("strongly_connected_components", &strongly_connected_components);
    m.def("is_strongly_connected", &is_strongly_connected);
    m.def("has_path", &has_path);

    m.def("clamp01", &clamp01);
    m.def("update", &update);
    m.def("update_unclamped", &update_unclamped);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("states", &Trajectory::states)
        .def_readonly("min_series", &Trajectory::min_series)
        .def_readonly("max_series", &Trajectory::max_series)
        .def_readonly("gap_series", &Trajectory::gap_series)
        .def_property_readonly("steps", &Trajectory::steps);

    m.def("simulate", &simulate, py::arg("graph"), py::arg("initial"), py::arg("steps"));

    py::enum_<Verdict>(m, "Verdict")
        .value("CONSENSUS", Verdict::Consensus)
        .value("NO_CONSENSUS", Verdict::NoConsensus)
        .value("UNDECIDED", Verdict::Undecided);

    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("verdict", &ConvergenceReport::verdict)
        .def_readonly("value", &ConvergenceReport::value)
        .def_readonly("final_gap", &ConvergenceReport::final_gap)
        .def_readonly("steps_used", &ConvergenceReport::steps_used)
        .def_readonly("detail", &ConvergenceReport::detail);

    m.def("detect_convergence", &detect_convergence, py::arg("trajectory"),
          py::arg("eps_consensus") = 1e-6, py::arg("eps_stall") = 1e-12,
          py::arg("window") = 100);

    py::enum_<PredictionKind>(m, "PredictionKind")
        .value("GUARANTEED_CONSENSUS", PredictionKind::GuaranteedConsensus)
        .value("CONDITIONAL_ON_SOURCES", PredictionKind::ConditionalOnSources)
        .value("NO_GUARANTEE", PredictionKind::NoGuarantee);

    py::class_<PredictionReport>(m, "PredictionReport")
        .def_readonly("kind", &PredictionReport::kind)
        .def_readonly("reasons", &PredictionReport::reasons)
        .def_readonly("sources_agree", &PredictionReport::sources_agree);

    m.def("predict_consensus", &predict_consensus, py::arg("graph"),
          py::arg("initial") = std::nullopt, py::arg("step_budget") = 100000,
          py::arg("eps_source") = 1e-4);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def_readonly("name", &ScenarioConfig::name)
        .def_readonly("agents", &ScenarioConfig::agents)
        .def_readonly("edges", &ScenarioConfig::edges)
        .def_readonly("initial_beliefs", &ScenarioConfig::initial_beliefs)
        .def_readonly("steps", &ScenarioConfig::steps);

    m.def("parse_scenario", &parse_scenario);
    m.def("scenario_to_json", &scenario_to_json);
    m.def("builtin_scenario_names", &builtin_scenario_names);
    m.def("builtin_scenario", &builtin_scenario);
    m.def("build_graph", py::overload_cast<const ScenarioConfig&>(&build_graph));
    m.def("trajectory_to_csv", &trajectory_to_csv);
}
