#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "netveil/attack.hpp"
#include "netveil/benchmarks.hpp"
#include "netveil/mechanisms.hpp"
#include "netveil/model.hpp"
#include "netveil/pipeline.hpp"
#include "netveil/problems.hpp"
#include "netveil/restore.hpp"

namespace py = pybind11;
using namespace netveil;

PYBIND11_MODULE(_netveil, m) {
    m.doc() = "Differentially private release of infrastructure network datasets";

    static py::exception<Error> exc(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, e.what());
        }
    });

    py::enum_<ElementKind>(m, "ElementKind")
        .value("node_sited", ElementKind::node_sited)
        .value("edge_sited", ElementKind::edge_sited);

    py::class_<EdgeSpec>(m, "EdgeSpec")
        .def(py::init<int, int, double>(), py::arg("u"), py::arg("v"),
             py::arg("distance") = 1.0)
        .def_readwrite("u", &EdgeSpec::u)
        .def_readwrite("v", &EdgeSpec::v)
        .def_readwrite("distance", &EdgeSpec::distance);

    py::class_<Element>(m, "Element")
        .def(py::init<int, double>(), py::arg("site"), py::arg("value"))
        .def_readwrite("site", &Element::site)
        .def_readwrite("value", &Element::value);

    py::class_<CinDescription>(m, "CinDescription")
        .def(py::init<int, std::vector<EdgeSpec>, std::vector<Element>, ElementKind>(),
             py::arg("node_count"), py::arg("edges"), py::arg("elements"), py::arg("kind"))
        .def_property_readonly("node_count", &CinDescription::node_count)
        .def_property_readonly("edges", &CinDescription::edges)
        .def_property_readonly("elements", &CinDescription::elements)
        .def_property_readonly("kind", &CinDescription::kind)
        .def_property_readonly("site_count", &CinDescription::site_count)
        .def_property_readonly("element_count", &CinDescription::element_count)
        .def("values", &CinDescription::values)
        .def("element_at_site", &CinDescription::element_at_site, py::arg("site"))
        .def("with_values", &CinDescription::with_values, py::arg("values"))
        .def("with_locations", &CinDescription::with_locations, py::arg("sites"))
        .def("without_elements", &CinDescription::without_elements, py::arg("element_ids"))
        .def("site_hop", &CinDescription::site_hop, py::arg("site_a"), py::arg("site_b"))
        .def("__eq__", [](const CinDescription& a, const CinDescription& b) { return a == b; });

    py::class_<PrivacyParams>(m, "PrivacyParams")
        .def(py::init<>())
        .def_readwrite("epsilon", &PrivacyParams::epsilon)
        .def_readwrite("alpha_loc", &PrivacyParams::alpha_loc)
        .def_readwrite("alpha_val", &PrivacyParams::alpha_val)
        .def_readwrite("beta", &PrivacyParams::beta)
        .def_readwrite("seed", &PrivacyParams::seed)
        .def("validate", &PrivacyParams::validate);

    m.def("hop_distance", &hop_distance, py::arg("network"), py::arg("site_a"),
          py::arg("site_b"));
    m.def("diameter", &diameter, py::arg("network"));
    m.def("check_adjacency", &check_adjacency, py::arg("a"), py::arg("b"),
          py::arg("alpha_loc"), py::arg("alpha_val"));

    py::class_<Sampler>(m, "Sampler");
    py::class_<MtSampler, Sampler>(m, "MtSampler")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform01", &MtSampler::uniform01)
        .def("laplace", &MtSampler::laplace, py::arg("scale"));
    m.def("mix_seed", &mix_seed, py::arg("seed"), py::arg("salt"));
    m.def("run_seed", &run_seed, py::arg("seed"), py::arg("run_index"));

    py::enum_<SitePool>(m, "SitePool")
        .value("occupied", SitePool::occupied)
        .value("all_sites", SitePool::all_sites);

    py::class_<LocationPermutation>(m, "LocationPermutation")
        .def_readonly("target_site", &LocationPermutation::target_site);
    py::class_<NoisyValues>(m, "NoisyValues")
        .def_readonly("values", &NoisyValues::values)
        .def_readonly("noise", &NoisyValues::noise);

    m.def(
        "laplace_noise",
        [](double scale, std::size_t count, std::uint64_t seed) {
            MtSampler rng(seed);
            return laplace_noise(scale, count, rng);
        },
        py::arg("scale"), py::arg("count"), py::arg("seed"));
    m.def(
        "obfuscate_values",
        [](const CinDescription& g, double eps, double alpha_val, std::uint64_t seed) {
            MtSampler rng(seed);
            return obfuscate_values(g, eps, alpha_val, rng);
        },
        py::arg("network"), py::arg("epsilon"), py::arg("alpha_val"), py::arg("seed"));
    m.def("location_sampling_distribution", &location_sampling_distribution,
          py::arg("network"), py::arg("element_index"), py::arg("epsilon"),
          py::arg("alpha_loc"), py::arg("pool") = SitePool::occupied);
    m.def(
        "sample_locations",
        [](const CinDescription& g, double eps, double alpha_loc, std::uint64_t seed,
           SitePool pool) {
            MtSampler rng(seed);
            return sample_locations(g, eps, alpha_loc, rng, pool);
        },
        py::arg("network"), py::arg("epsilon"), py::arg("alpha_loc"), py::arg("seed"),
        py::arg("pool") = SitePool::occupied);
    m.def("resolve_assignment", &resolve_assignment, py::arg("raw_targets"),
          py::arg("network"));
    m.def(
        "shuffle_locations",
        [](const CinDescription& g, double eps, double alpha_loc, std::uint64_t seed) {
            MtSampler rng(seed);
            return shuffle_locations(g, eps, alpha_loc, rng);
        },
        py::arg("network"), py::arg("epsilon"), py::arg("alpha_loc"), py::arg("seed"));

    py::class_<DispatchInstance>(m, "DispatchInstance")
        .def(py::init<>())
        .def(py::init([](std::vector<double> capacity, std::vector<double> cost,
                         double demand, double ancillary) {
                 return DispatchInstance{std::move(capacity), std::move(cost), demand,
                                         ancillary};
             }),
             py::arg("capacity"), py::arg("marginal_cost"), py::arg("demand"),
             py::arg("ancillary_price") = 10.0)
        .def_readwrite("capacity", &DispatchInstance::capacity)
        .def_readwrite("marginal_cost", &DispatchInstance::marginal_cost)
        .def_readwrite("demand", &DispatchInstance::demand)
        .def_readwrite("ancillary_price", &DispatchInstance::ancillary_price)
        .def("with_values", &DispatchInstance::with_values, py::arg("values"));

    py::class_<OdPair>(m, "OdPair")
        .def(py::init<int, int, int>(), py::arg("origin"), py::arg("destination"),
             py::arg("count") = 1)
        .def_readwrite("origin", &OdPair::origin)
        .def_readwrite("destination", &OdPair::destination)
        .def_readwrite("count", &OdPair::count);

    py::class_<TrafficInstance>(m, "TrafficInstance")
        .def(py::init<>())
        .def_readwrite("node_count", &TrafficInstance::node_count)
        .def_readwrite("edges", &TrafficInstance::edges)
        .def_readwrite("element_edge", &TrafficInstance::element_edge)
        .def_readwrite("traffic", &TrafficInstance::traffic)
        .def_readwrite("gamma", &TrafficInstance::gamma)
        .def_readwrite("od_pairs", &TrafficInstance::od_pairs)
        .def("with_values", &TrafficInstance::with_values, py::arg("values"))
        .def("edge_weights", &TrafficInstance::edge_weights);

    py::class_<DispatchSolution>(m, "DispatchSolution")
        .def_readonly("output", &DispatchSolution::output)
        .def_readonly("objective", &DispatchSolution::objective)
        .def_readonly("unserved", &DispatchSolution::unserved)
        .def_readonly("feasible", &DispatchSolution::feasible);
    py::class_<PathSolution>(m, "PathSolution")
        .def_readonly("nodes", &PathSolution::nodes)
        .def_readonly("cost", &PathSolution::cost)
        .def_readonly("connected", &PathSolution::connected);
    py::class_<TrafficSolution>(m, "TrafficSolution")
        .def_readonly("paths", &TrafficSolution::paths)
        .def_readonly("objective", &TrafficSolution::objective)
        .def_readonly("feasible", &TrafficSolution::feasible);

    m.def("solve_dispatch", &solve_dispatch, py::arg("instance"));
    m.def("solve_traffic", &solve_traffic, py::arg("instance"));
    m.def("evaluate_objective",
          py::overload_cast<const DispatchInstance&, const DispatchSolution&,
                            const std::vector<double>&>(&evaluate_objective),
          py::arg("instance"), py::arg("solution"), py::arg("values"));
    m.def("evaluate_objective",
          py::overload_cast<const TrafficInstance&, const TrafficSolution&,
                            const std::vector<double>&>(&evaluate_objective),
          py::arg("instance"), py::arg("solution"), py::arg("values"));

    py::class_<Residual>(m, "Residual")
        .def_readonly("name", &Residual::name)
        .def_readonly("value", &Residual::value);
    py::class_<FeasibilityReport>(m, "FeasibilityReport")
        .def_readonly("feasible", &FeasibilityReport::feasible)
        .def_readonly("residuals", &FeasibilityReport::residuals)
        .def_readonly("tolerance", &FeasibilityReport::tolerance);
    m.def("check_feasible",
          py::overload_cast<const DispatchInstance&, const DispatchSolution&,
                            const std::vector<double>&, double>(&check_feasible),
          py::arg("instance"), py::arg("solution"), py::arg("values"),
          py::arg("tolerance") = 1e-9);
    m.def("check_feasible",
          py::overload_cast<const TrafficInstance&, const TrafficSolution&,
                            const std::vector<double>&, double>(&check_feasible),
          py::arg("instance"), py::arg("solution"), py::arg("values"),
          py::arg("tolerance") = 1e-9);

    m.def("project_halfspace", &project_halfspace, py::arg("point"), py::arg("normal"),
          py::arg("offset"));
    py::class_<RestoreOptions>(m, "RestoreOptions")
        .def(py::init<>())
        .def_readwrite("tol", &RestoreOptions::tol)
        .def_readwrite("max_sweeps", &RestoreOptions::max_sweeps)
        .def_readwrite("max_rounds", &RestoreOptions::max_rounds);
    py::class_<RestorationResult>(m, "RestorationResult")
        .def_readonly("values", &RestorationResult::values)
        .def_readonly("witness", &RestorationResult::witness)
        .def_readonly("gap", &RestorationResult::gap)
        .def_readonly("iterations", &RestorationResult::iterations)
        .def_readonly("converged", &RestorationResult::converged);
    m.def("restore_convex",
          py::overload_cast<const DispatchInstance&, const std::vector<double>&, double,
                            double, const RestoreOptions&>(&restore_convex),
          py::arg("instance"), py::arg("noisy"), py::arg("ostar"), py::arg("beta"),
          py::arg("options") = RestoreOptions{});
    m.def("restore_convex",
          py::overload_cast<const TrafficInstance&, const std::vector<double>&, double,
                            double, const RestoreOptions&>(&restore_convex),
          py::arg("instance"), py::arg("noisy"), py::arg("ostar"), py::arg("beta"),
          py::arg("options") = RestoreOptions{});
    m.def("restore_exact_sp", &restore_exact_sp, py::arg("instance"), py::arg("noisy"),
          py::arg("ostar"), py::arg("beta"), py::arg("options") = RestoreOptions{});

    py::enum_<AttackStrategy>(m, "AttackStrategy")
        .value("random", AttackStrategy::random)
        .value("obfuscated", AttackStrategy::obfuscated)
        .value("fully_informed", AttackStrategy::fully_informed);
    py::enum_<RankKey>(m, "RankKey")
        .value("dispatch", RankKey::dispatch)
        .value("value", RankKey::value);
    py::class_<AttackConfig>(m, "AttackConfig")
        .def(py::init<>())
        .def_readwrite("strategy", &AttackConfig::strategy)
        .def_readwrite("budget_pct", &AttackConfig::budget_pct)
        .def_readwrite("seed", &AttackConfig::seed)
        .def("attack_count", &AttackConfig::attack_count, py::arg("element_count"));
    py::class_<DamageModel>(m, "DamageModel")
        .def(py::init<>())
        .def_readwrite("ancillary_price", &DamageModel::ancillary_price)
        .def_readwrite("disconnect_penalty", &DamageModel::disconnect_penalty);
    py::class_<DamageBreakdown>(m, "DamageBreakdown")
        .def_readonly("damage", &DamageBreakdown::damage)
        .def_readonly("unserved", &DamageBreakdown::unserved)
        .def_readonly("disconnected", &DamageBreakdown::disconnected);
    py::class_<AttackOutcome>(m, "AttackOutcome")
        .def_readonly("element_ids", &AttackOutcome::element_ids)
        .def_readonly("damaged", &AttackOutcome::damaged)
        .def_readonly("damage", &AttackOutcome::damage)
        .def_readonly("unserved", &AttackOutcome::unserved)
        .def_readonly("disconnected", &AttackOutcome::disconnected);
    py::class_<StrategyStats>(m, "StrategyStats")
        .def_readonly("mean", &StrategyStats::mean)
        .def_readonly("stddev", &StrategyStats::stddev)
        .def_readonly("samples", &StrategyStats::samples);
    py::class_<AttackExperiment>(m, "AttackExperiment")
        .def_readonly("random", &AttackExperiment::random)
        .def_readonly("obfuscated", &AttackExperiment::obfuscated)
        .def_readonly("fully_informed", &AttackExperiment::fully_informed)
        .def_readonly("original_objective", &AttackExperiment::original_objective)
        .def_readonly("released_objective", &AttackExperiment::released_objective)
        .def_readonly("value_rmse", &AttackExperiment::value_rmse);

    m.def("rank_elements", &rank_elements, py::arg("network"), py::arg("problem"),
          py::arg("key"));
    m.def("apply_attack", &apply_attack, py::arg("network"), py::arg("element_ids"));
    m.def("damage", &damage, py::arg("problem"), py::arg("base"), py::arg("damaged"),
          py::arg("model") = DamageModel{});
    m.def("execute_attack", &execute_attack, py::arg("true_network"),
          py::arg("released_network"), py::arg("problem"), py::arg("config"),
          py::arg("model") = DamageModel{});
    m.def("run_experiment", &run_experiment, py::arg("true_network"),
          py::arg("released_network"), py::arg("problem"), py::arg("config"),
          py::arg("runs"), py::arg("model") = DamageModel{});
    m.def("elements_at_released_sites", &elements_at_released_sites,
          py::arg("true_network"), py::arg("released_network"),
          py::arg("released_elements"));

    py::class_<NetworkBundle>(m, "NetworkBundle")
        .def_readonly("network", &NetworkBundle::network)
        .def_readonly("problem", &NetworkBundle::problem)
        .def("is_dispatch", &NetworkBundle::is_dispatch)
        .def("problem_with_values", &NetworkBundle::problem_with_values, py::arg("values"))
        .def("optimum", &NetworkBundle::optimum);
    m.def("rebind_network", &rebind_network, py::arg("base"), py::arg("network"));
    m.def("load_network", &load_network, py::arg("path"));
    m.def("parse_network", &parse_network, py::arg("json_text"));
    m.def("serialize_network", &serialize_network, py::arg("bundle"));
    m.def("save_network", &save_network, py::arg("bundle"), py::arg("path"));

    py::enum_<RestoreMode>(m, "RestoreMode")
        .value("convex", RestoreMode::convex)
        .value("exact_sp", RestoreMode::exact_sp);
    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("privacy", &PipelineConfig::privacy)
        .def_readwrite("alpha_loc_hops", &PipelineConfig::alpha_loc_hops)
        .def_readwrite("restore", &PipelineConfig::restore)
        .def_readwrite("restore_options", &PipelineConfig::restore_options)
        .def_readwrite("budgets_pct", &PipelineConfig::budgets_pct)
        .def_readwrite("runs", &PipelineConfig::runs)
        .def_readwrite("damage_model", &PipelineConfig::damage_model);
    py::class_<DamageRecord>(m, "DamageRecord")
        .def_readonly("strategy", &DamageRecord::strategy)
        .def_readonly("budget_pct", &DamageRecord::budget_pct)
        .def_readonly("damage", &DamageRecord::damage)
        .def_readonly("unserved", &DamageRecord::unserved)
        .def_readonly("disconnected", &DamageRecord::disconnected);
    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("seed", &RunRecord::seed)
        .def_readonly("phase2_feasible", &RunRecord::phase2_feasible)
        .def_readonly("restoration_gap", &RunRecord::restoration_gap)
        .def_readonly("restoration_iterations", &RunRecord::restoration_iterations)
        .def_readonly("restoration_converged", &RunRecord::restoration_converged)
        .def_readonly("released_objective", &RunRecord::released_objective)
        .def_readonly("released_sites", &RunRecord::released_sites)
        .def_readonly("noisy_values", &RunRecord::noisy_values)
        .def_readonly("released_values", &RunRecord::released_values)
        .def_readonly("damages", &RunRecord::damages);
    py::class_<AggregateStats>(m, "AggregateStats")
        .def_readonly("mean", &AggregateStats::mean)
        .def_readonly("stddev", &AggregateStats::stddev);
    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_readonly("problem_kind", &ExperimentReport::problem_kind)
        .def_readonly("original_objective", &ExperimentReport::original_objective)
        .def_readonly("original_values", &ExperimentReport::original_values)
        .def_readonly("original_sites", &ExperimentReport::original_sites)
        .def_readonly("runs", &ExperimentReport::runs)
        .def_readonly("phase2_feasibility_rate", &ExperimentReport::phase2_feasibility_rate)
        .def_readonly("restoration_convergence_rate",
                      &ExperimentReport::restoration_convergence_rate)
        .def_readonly("damage_stats", &ExperimentReport::damage_stats);
    py::class_<ReleaseResult>(m, "ReleaseResult")
        .def_readonly("released", &ReleaseResult::released)
        .def_readonly("noisy", &ReleaseResult::noisy)
        .def_readonly("restoration", &ReleaseResult::restoration)
        .def_readonly("phase2_feasible", &ReleaseResult::phase2_feasible);

    m.def(
        "release_network",
        [](const NetworkBundle& bundle, const PipelineConfig& config, std::uint64_t seed) {
            return release_network(bundle, config, seed);
        },
        py::arg("bundle"), py::arg("config"), py::arg("seed"));
    m.def(
        "run_pipeline",
        [](const NetworkBundle& bundle, const PipelineConfig& config) {
            return run_pipeline(bundle, config);
        },
        py::arg("bundle"), py::arg("config"));
    m.def("emit_report", &emit_report, py::arg("report"), py::arg("dir"));
    m.def("report_to_json", &report_to_json, py::arg("report"));

    py::class_<DispatchBenchmarkSpec>(m, "DispatchBenchmarkSpec")
        .def(py::init<>())
        .def_readwrite("nodes", &DispatchBenchmarkSpec::nodes)
        .def_readwrite("generators", &DispatchBenchmarkSpec::generators)
        .def_readwrite("demand_fraction", &DispatchBenchmarkSpec::demand_fraction)
        .def_readwrite("seed", &DispatchBenchmarkSpec::seed);
    py::class_<TrafficBenchmarkSpec>(m, "TrafficBenchmarkSpec")
        .def(py::init<>())
        .def_readwrite("od_pairs", &TrafficBenchmarkSpec::od_pairs)
        .def_readwrite("gamma", &TrafficBenchmarkSpec::gamma)
        .def_readwrite("seed", &TrafficBenchmarkSpec::seed);
    m.def("make_dispatch_benchmark", &make_dispatch_benchmark,
          py::arg("spec") = DispatchBenchmarkSpec{});
    m.def("make_traffic_benchmark", &make_traffic_benchmark,
          py::arg("spec") = TrafficBenchmarkSpec{});
    m.def("make_triangle_traffic", &make_triangle_traffic);
}
