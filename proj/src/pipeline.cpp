#include "netveil/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace netveil {

using nlohmann::json;

ProblemInstance NetworkBundle::problem_with_values(const std::vector<double>& values) const {
    if (const auto* dispatch = std::get_if<DispatchInstance>(&problem))
        return dispatch->with_values(values);
    return std::get<TrafficInstance>(problem).with_values(values);
}

double NetworkBundle::optimum() const {
    if (const auto* dispatch = std::get_if<DispatchInstance>(&problem))
        return solve_dispatch(*dispatch).objective;
    return solve_traffic(std::get<TrafficInstance>(problem)).objective;
}

NetworkBundle rebind_network(const NetworkBundle& base, CinDescription network) {
    ProblemInstance problem = base.problem_with_values(network.values());
    if (auto* traffic = std::get_if<TrafficInstance>(&problem)) {
        traffic->element_edge.clear();
        for (const auto& el : network.elements()) traffic->element_edge.push_back(el.site);
    }
    return NetworkBundle{std::move(network), std::move(problem)};
}

namespace {

const json& require_field(const json& object, const char* field, const char* context) {
    if (!object.contains(field))
        throw Error(ErrorCode::missing_field,
                    std::string(context) + " is missing required field '" + field + "'");
    return object.at(field);
}

double require_number(const json& object, const char* field, const char* context) {
    const json& value = require_field(object, field, context);
    if (!value.is_number())
        throw Error(ErrorCode::schema,
                    std::string(context) + "." + field + " must be a number");
    return value.get<double>();
}

int require_int(const json& object, const char* field, const char* context) {
    const json& value = require_field(object, field, context);
    if (!value.is_number_integer())
        throw Error(ErrorCode::schema,
                    std::string(context) + "." + field + " must be an integer");
    return value.get<int>();
}

}  // namespace

NetworkBundle parse_network(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::schema, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::schema, "top-level document must be an object");

    const json& topology = require_field(doc, "topology", "document");
    const int node_count = require_int(topology, "nodes", "topology");
    const json& edges_json = require_field(topology, "edges", "topology");
    if (!edges_json.is_array()) throw Error(ErrorCode::schema, "topology.edges must be an array");

    std::vector<EdgeSpec> edges;
    for (const auto& e : edges_json) {
        EdgeSpec spec;
        spec.u = require_int(e, "u", "edge");
        spec.v = require_int(e, "v", "edge");
        spec.distance = require_number(e, "distance", "edge");
        edges.push_back(spec);
    }

    const json& problem_json = require_field(doc, "problem", "document");
    const json& kind_json = require_field(problem_json, "kind", "problem");
    if (!kind_json.is_string()) throw Error(ErrorCode::schema, "problem.kind must be a string");
    const std::string kind = kind_json.get<std::string>();

    const json& elements_json = require_field(doc, "elements", "document");
    if (!elements_json.is_array())
        throw Error(ErrorCode::schema, "elements must be an array");

    std::vector<Element> elements;
    std::vector<double> costs;
    for (const auto& el : elements_json) {
        Element parsed;
        parsed.site = require_int(el, "site", "element");
        parsed.value = require_number(el, "value", "element");
        elements.push_back(parsed);
        if (kind == "dispatch") costs.push_back(require_number(el, "cost", "element"));
    }

    if (kind == "dispatch") {
        CinDescription network(node_count, std::move(edges), std::move(elements),
                               ElementKind::node_sited);
        DispatchInstance problem;
        problem.capacity = network.values();
        problem.marginal_cost = std::move(costs);
        problem.demand = require_number(problem_json, "demand", "problem");
        if (problem.demand <= 0.0)
            throw Error(ErrorCode::bad_parameter, "problem.demand must be > 0");
        if (problem_json.contains("ancillary_price"))
            problem.ancillary_price = require_number(problem_json, "ancillary_price", "problem");
        problem.validate();
        return NetworkBundle{std::move(network), std::move(problem)};
    }
    if (kind == "traffic") {
        CinDescription network(node_count, edges, std::move(elements), ElementKind::edge_sited);
        TrafficInstance problem;
        problem.node_count = node_count;
        problem.edges = std::move(edges);
        problem.gamma = require_number(problem_json, "gamma", "problem");
        for (const auto& el : network.elements()) {
            problem.element_edge.push_back(el.site);
            problem.traffic.push_back(el.value);
        }
        const json& pairs = require_field(problem_json, "od_pairs", "problem");
        if (!pairs.is_array() || pairs.empty())
            throw Error(ErrorCode::schema, "problem.od_pairs must be a nonempty array");
        for (const auto& p : pairs) {
            OdPair od;
            od.origin = require_int(p, "origin", "od_pair");
            od.destination = require_int(p, "destination", "od_pair");
            if (p.contains("count")) od.count = require_int(p, "count", "od_pair");
            problem.od_pairs.push_back(od);
        }
        problem.validate();
        // Connectivity of each pair is implied by the connected-graph
        // invariant, which CinDescription has already enforced.
        return NetworkBundle{std::move(network), std::move(problem)};
    }
    throw Error(ErrorCode::bad_parameter, "problem.kind must be 'dispatch' or 'traffic'");
}

NetworkBundle load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_network(buffer.str());
}

std::string serialize_network(const NetworkBundle& bundle) {
    json doc;
    doc["topology"]["nodes"] = bundle.network.node_count();
    auto& edges = doc["topology"]["edges"] = json::array();
    for (const auto& e : bundle.network.edges())
        edges.push_back({{"u", e.u}, {"v", e.v}, {"distance", e.distance}});

    auto& elements = doc["elements"] = json::array();
    const auto* dispatch = std::get_if<DispatchInstance>(&bundle.problem);
    for (std::size_t i = 0; i < bundle.network.element_count(); ++i) {
        json el{{"site", bundle.network.elements()[i].site},
                {"value", bundle.network.elements()[i].value}};
        if (dispatch != nullptr) el["cost"] = dispatch->marginal_cost[i];
        elements.push_back(std::move(el));
    }

    if (dispatch != nullptr) {
        doc["problem"] = {{"kind", "dispatch"},
                          {"demand", dispatch->demand},
                          {"ancillary_price", dispatch->ancillary_price}};
    } else {
        const auto& traffic = std::get<TrafficInstance>(bundle.problem);
        json pairs = json::array();
        for (const auto& od : traffic.od_pairs)
            pairs.push_back({{"origin", od.origin},
                             {"destination", od.destination},
                             {"count", od.count}});
        doc["problem"] = {{"kind", "traffic"}, {"gamma", traffic.gamma}, {"od_pairs", pairs}};
    }
    return doc.dump(2) + "\n";
}

void save_network(const NetworkBundle& bundle, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::io, "cannot write file: " + path);
    out << serialize_network(bundle);
}

const char* restore_mode_name(RestoreMode mode) {
    return mode == RestoreMode::convex ? "convex" : "exact-sp";
}

RestoreMode restore_mode_from_name(const std::string& name) {
    if (name == "convex") return RestoreMode::convex;
    if (name == "exact-sp" || name == "exact_sp") return RestoreMode::exact_sp;
    throw Error(ErrorCode::bad_parameter, "unknown restore mode: " + name);
}

void PipelineConfig::validate() const {
    privacy.validate();
    if (!(alpha_loc_hops > 0.0))
        throw Error(ErrorCode::bad_parameter, "alpha_loc_hops must be > 0");
    if (runs < 1) throw Error(ErrorCode::bad_parameter, "runs must be >= 1");
    if (budgets_pct.empty())
        throw Error(ErrorCode::bad_parameter, "at least one attack budget is required");
    for (double b : budgets_pct)
        if (!(b > 0.0) || b > 100.0)
            throw Error(ErrorCode::bad_parameter, "attack budgets must be in (0, 100]");
}

SamplerFactory default_sampler_factory() {
    return [](std::uint64_t seed) -> std::unique_ptr<Sampler> {
        return std::make_unique<MtSampler>(seed);
    };
}

namespace {

// Phase-2 feasibility probe: can the problem be solved at all on the noisy
// network, before any restoration. Dispatch fails on negative capacities or
// a capacity shortfall; routing constraints are structural and unaffected by
// value noise.
bool phase2_feasible_probe(const NetworkBundle& bundle, const std::vector<double>& noisy) {
    if (const auto* dispatch = std::get_if<DispatchInstance>(&bundle.problem)) {
        double total = 0.0;
        for (double v : noisy) {
            if (v < 0.0) return false;
            total += v;
        }
        return total >= dispatch->demand;
    }
    return true;
}

RestorationResult restore_values(const NetworkBundle& bundle,
                                 const PipelineConfig& config,
                                 const std::vector<double>& noisy,
                                 double ostar) {
    if (const auto* dispatch = std::get_if<DispatchInstance>(&bundle.problem))
        return restore_convex(*dispatch, noisy, ostar, config.privacy.beta,
                              config.restore_options);
    const auto& traffic = std::get<TrafficInstance>(bundle.problem);
    if (config.restore == RestoreMode::exact_sp)
        return restore_exact_sp(traffic, noisy, ostar, config.privacy.beta,
                                config.restore_options);
    return restore_convex(traffic, noisy, ostar, config.privacy.beta, config.restore_options);
}

double resolve_objective(const NetworkBundle& bundle, const CinDescription& network) {
    return rebind_network(bundle, network).optimum();
}

}  // namespace

ReleaseResult release_network(const NetworkBundle& bundle,
                              const PipelineConfig& config,
                              std::uint64_t seed,
                              const SamplerFactory& samplers) {
    config.validate();
    const double ostar = bundle.optimum();
    if (!(ostar > 0.0))
        throw Error(ErrorCode::bad_parameter, "reference objective must be > 0");

    const auto phase1 = samplers(mix_seed(seed, 1));
    const auto phase2 = samplers(mix_seed(seed, 2));

    CinDescription shuffled = shuffle_locations(bundle.network, config.privacy.epsilon,
                                                config.alpha_loc_hops, *phase1);
    NoisyValues noisy = obfuscate_values(shuffled, config.privacy.epsilon,
                                         config.privacy.alpha_val, *phase2);
    const bool feasible_before = phase2_feasible_probe(bundle, noisy.values);

    RestorationResult restoration = restore_values(bundle, config, noisy.values, ostar);
    CinDescription released = shuffled.with_values(restoration.values);
    return ReleaseResult{std::move(released), std::move(noisy), std::move(restoration),
                         feasible_before};
}

ExperimentReport run_pipeline(const NetworkBundle& bundle,
                              const PipelineConfig& config,
                              const SamplerFactory& samplers) {
    config.validate();
    ExperimentReport report;
    report.config = config;
    report.problem_kind = bundle.is_dispatch() ? "dispatch" : "traffic";
    report.original_objective = bundle.optimum();
    report.original_values = bundle.network.values();
    for (const auto& el : bundle.network.elements()) report.original_sites.push_back(el.site);

    const RankKey key = bundle.is_dispatch() ? RankKey::dispatch : RankKey::value;
    // The fully informed attacker's pick is a property of the true network.
    const auto informed_order = rank_elements(bundle.network, bundle.problem, key);

    std::size_t feasible_runs = 0, converged_runs = 0;
    for (std::size_t run = 0; run < config.runs; ++run) {
        const std::uint64_t seed = run_seed(config.privacy.seed, run);
        RunRecord record;
        record.seed = seed;

        auto release = release_network(bundle, config, seed, samplers);
        record.phase2_feasible = release.phase2_feasible;
        record.noisy_values = release.noisy.values;
        record.released_values = release.restoration.values;
        record.restoration_gap = release.restoration.gap;
        record.restoration_iterations = release.restoration.iterations;
        record.restoration_converged = release.restoration.converged;
        for (const auto& el : release.released.elements()) record.released_sites.push_back(el.site);
        record.released_objective = resolve_objective(bundle, release.released);
        if (record.phase2_feasible) ++feasible_runs;
        if (record.restoration_converged) ++converged_runs;

        for (std::size_t b = 0; b < config.budgets_pct.size(); ++b) {
            AttackConfig attack;
            attack.budget_pct = config.budgets_pct[b];
            const std::size_t k = attack.attack_count(bundle.network.element_count());

            const auto evaluate = [&](const std::vector<std::size_t>& ids) {
                return damage(bundle.problem, bundle.network,
                              apply_attack(bundle.network, ids), config.damage_model);
            };

            // random
            {
                MtSampler rng(mix_seed(seed, 100 + b));
                const auto ids =
                    rng.sample_without_replacement(bundle.network.element_count(), k);
                const auto hit = evaluate(ids);
                record.damages.push_back({"random", attack.budget_pct, hit.damage,
                                          hit.unserved, hit.disconnected});
            }
            // obfuscated: ranked on the release only
            {
                auto ranked = rank_elements(release.released, bundle.problem, key);
                ranked.resize(k);
                const auto ids =
                    elements_at_released_sites(bundle.network, release.released, ranked);
                const auto hit = evaluate(ids);
                record.damages.push_back({"obfuscated", attack.budget_pct, hit.damage,
                                          hit.unserved, hit.disconnected});
            }
            // fully informed
            {
                std::vector<std::size_t> ids(informed_order.begin(),
                                             informed_order.begin() + static_cast<long>(k));
                const auto hit = evaluate(ids);
                record.damages.push_back({"fully-informed", attack.budget_pct, hit.damage,
                                          hit.unserved, hit.disconnected});
            }
        }
        report.runs.push_back(std::move(record));
    }

    report.phase2_feasibility_rate =
        static_cast<double>(feasible_runs) / static_cast<double>(config.runs);
    report.restoration_convergence_rate =
        static_cast<double>(converged_runs) / static_cast<double>(config.runs);

    // Aggregation order is fixed by run index regardless of scheduling.
    std::map<std::string, std::map<double, std::vector<double>>> samples;
    for (const auto& run : report.runs)
        for (const auto& d : run.damages) samples[d.strategy][d.budget_pct].push_back(d.damage);
    for (const auto& [strategy, by_budget] : samples)
        for (const auto& [budget, values] : by_budget) {
            AggregateStats stats;
            stats.mean = std::accumulate(values.begin(), values.end(), 0.0) /
                         static_cast<double>(values.size());
            double ss = 0.0;
            for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
            stats.stddev = values.size() > 1
                               ? std::sqrt(ss / static_cast<double>(values.size() - 1))
                               : 0.0;
            report.damage_stats[strategy][budget] = stats;
        }
    return report;
}

namespace {

json config_to_json(const PipelineConfig& config) {
    return json{{"epsilon", config.privacy.epsilon},
                {"alpha_loc", config.privacy.alpha_loc},
                {"alpha_loc_hops", config.alpha_loc_hops},
                {"alpha_val", config.privacy.alpha_val},
                {"beta", config.privacy.beta},
                {"seed", config.privacy.seed},
                {"restore", restore_mode_name(config.restore)},
                {"budgets_pct", config.budgets_pct},
                {"runs", config.runs},
                {"ancillary_price", config.damage_model.ancillary_price},
                {"disconnect_penalty_factor", config.damage_model.disconnect_penalty}};
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

}  // namespace

std::string report_to_json(const ExperimentReport& report) {
    json doc;
    doc["config"] = config_to_json(report.config);
    doc["problem_kind"] = report.problem_kind;
    doc["original_objective"] = report.original_objective;
    doc["original_values"] = report.original_values;
    doc["original_sites"] = report.original_sites;
    doc["aggregates"] = {
        {"phase2_feasibility_rate", report.phase2_feasibility_rate},
        {"restoration_convergence_rate", report.restoration_convergence_rate}};
    auto& damage_stats = doc["aggregates"]["damage"] = json::array();
    for (const auto& [strategy, by_budget] : report.damage_stats)
        for (const auto& [budget, stats] : by_budget)
            damage_stats.push_back({{"strategy", strategy},
                                    {"budget_pct", budget},
                                    {"mean", stats.mean},
                                    {"stddev", stats.stddev}});
    auto& runs = doc["runs"] = json::array();
    for (const auto& run : report.runs) {
        json record{{"seed", run.seed},
                    {"phase2_feasible", run.phase2_feasible},
                    {"restoration_gap", run.restoration_gap},
                    {"restoration_iterations", run.restoration_iterations},
                    {"restoration_converged", run.restoration_converged},
                    {"released_objective", run.released_objective},
                    {"released_sites", run.released_sites},
                    {"noisy_values", run.noisy_values},
                    {"released_values", run.released_values}};
        auto& damages = record["damages"] = json::array();
        for (const auto& d : run.damages)
            damages.push_back({{"strategy", d.strategy},
                               {"budget_pct", d.budget_pct},
                               {"damage", d.damage},
                               {"unserved", d.unserved},
                               {"disconnected", d.disconnected}});
        runs.push_back(std::move(record));
    }
    return doc.dump(2) + "\n";
}

std::vector<std::string> emit_report(const ExperimentReport& report, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create directory: " + dir);

    std::vector<std::string> written;
    const auto open = [&](const std::string& name) {
        const std::string path = (fs::path(dir) / name).string();
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw Error(ErrorCode::io, "cannot write file: " + path);
        written.push_back(path);
        return out;
    };

    {
        auto out = open("report.json");
        out << report_to_json(report);
    }
    {
        auto out = open("objective.csv");
        out << "run,original,released\n";
        for (std::size_t r = 0; r < report.runs.size(); ++r)
            out << r << ',' << format_double(report.original_objective) << ','
                << format_double(report.runs[r].released_objective) << '\n';
    }
    {
        auto out = open("feasibility.csv");
        out << "run,phase2_feasible,restoration_gap,restoration_converged\n";
        for (std::size_t r = 0; r < report.runs.size(); ++r)
            out << r << ',' << (report.runs[r].phase2_feasible ? 1 : 0) << ','
                << format_double(report.runs[r].restoration_gap) << ','
                << (report.runs[r].restoration_converged ? 1 : 0) << '\n';
    }
    {
        auto out = open("damages.csv");
        out << "run,strategy,budget_pct,damage,unserved,disconnected\n";
        for (std::size_t r = 0; r < report.runs.size(); ++r)
            for (const auto& d : report.runs[r].damages)
                out << r << ',' << d.strategy << ',' << format_double(d.budget_pct) << ','
                    << format_double(d.damage) << ',' << format_double(d.unserved) << ','
                    << d.disconnected << '\n';
    }
    {
        auto out = open("values_scatter.csv");
        out << "run,element,original,released\n";
        for (std::size_t r = 0; r < report.runs.size(); ++r)
            for (std::size_t i = 0; i < report.runs[r].released_values.size(); ++i)
                out << r << ',' << i << ',' << format_double(report.original_values[i]) << ','
                    << format_double(report.runs[r].released_values[i]) << '\n';
    }
    {
        auto out = open("site_totals.csv");
        out << "run,site,original,released\n";
        for (std::size_t r = 0; r < report.runs.size(); ++r) {
            std::map<int, std::pair<double, double>> totals;
            for (std::size_t i = 0; i < report.original_sites.size(); ++i) {
                totals[report.original_sites[i]].first += report.original_values[i];
                totals[report.runs[r].released_sites[i]].second +=
                    report.runs[r].released_values[i];
            }
            for (const auto& [site, pair] : totals)
                out << r << ',' << site << ',' << format_double(pair.first) << ','
                    << format_double(pair.second) << '\n';
        }
    }
    return written;
}

}  // namespace netveil
