#ifndef NETVEIL_PIPELINE_HPP
#define NETVEIL_PIPELINE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "netveil/attack.hpp"
#include "netveil/mechanisms.hpp"
#include "netveil/model.hpp"
#include "netveil/problems.hpp"
#include "netveil/restore.hpp"

namespace netveil {

// A network dataset together with its optimization problem. The problem
// instance mirrors the network's element values.
struct NetworkBundle {
    CinDescription network;
    ProblemInstance problem;

    bool is_dispatch() const { return std::holds_alternative<DispatchInstance>(problem); }

    // Problem instance bound to an alternative value vector.
    ProblemInstance problem_with_values(const std::vector<double>& values) const;

    // True optimum used as the public reference objective.
    double optimum() const;
};

// Bundle for a released (or otherwise modified) copy of the network:
// problem values follow the network, and traffic element/edge links are
// rebuilt to match the new element sites.
NetworkBundle rebind_network(const NetworkBundle& base, CinDescription network);

// Parses and validates a network document (see README for the schema).
// Every invariant violation maps to one error code.
NetworkBundle load_network(const std::string& path);
NetworkBundle parse_network(const std::string& json_text);
std::string serialize_network(const NetworkBundle& bundle);
void save_network(const NetworkBundle& bundle, const std::string& path);

enum class RestoreMode { convex, exact_sp };

const char* restore_mode_name(RestoreMode mode);
RestoreMode restore_mode_from_name(const std::string& name);

struct PipelineConfig {
    PrivacyParams privacy;
    double alpha_loc_hops = 1.0;  // resolved location radius in hops
    RestoreMode restore = RestoreMode::convex;
    RestoreOptions restore_options;
    std::vector<double> budgets_pct = {10.0, 20.0, 30.0};
    std::size_t runs = 50;
    DamageModel damage_model;

    void validate() const;
};

struct DamageRecord {
    std::string strategy;
    double budget_pct = 0.0;
    double damage = 0.0;
    double unserved = 0.0;
    int disconnected = 0;
};

struct RunRecord {
    std::uint64_t seed = 0;
    bool phase2_feasible = false;
    double restoration_gap = 0.0;
    std::size_t restoration_iterations = 0;
    bool restoration_converged = false;
    double released_objective = 0.0;      // problem re-solved on the release
    std::vector<int> released_sites;      // element order
    std::vector<double> noisy_values;     // after phase 2
    std::vector<double> released_values;  // after phase 3
    std::vector<DamageRecord> damages;
};

struct AggregateStats {
    double mean = 0.0;
    double stddev = 0.0;
};

struct ExperimentReport {
    PipelineConfig config;
    std::string problem_kind;
    double original_objective = 0.0;
    std::vector<double> original_values;
    std::vector<int> original_sites;
    std::vector<RunRecord> runs;
    double phase2_feasibility_rate = 0.0;
    double restoration_convergence_rate = 0.0;
    // keyed by strategy name, then budget percentage
    std::map<std::string, std::map<double, AggregateStats>> damage_stats;
};

using SamplerFactory = std::function<std::unique_ptr<Sampler>(std::uint64_t seed)>;
SamplerFactory default_sampler_factory();

// Obfuscation of a single network: location shuffle, value noise, fidelity
// restoration. Returns the released network plus the restoration telemetry.
struct ReleaseResult {
    CinDescription released;
    NoisyValues noisy;
    RestorationResult restoration;
    bool phase2_feasible = false;
};
ReleaseResult release_network(const NetworkBundle& bundle,
                              const PipelineConfig& config,
                              std::uint64_t seed,
                              const SamplerFactory& samplers = default_sampler_factory());

// Full experiment: per run obfuscate, probe phase-2 feasibility, restore,
// then run every strategy x budget attack against the release. Restoration
// failures are recorded per run and never abort the batch.
ExperimentReport run_pipeline(const NetworkBundle& bundle,
                              const PipelineConfig& config,
                              const SamplerFactory& samplers = default_sampler_factory());

// Writes report.json plus one flat CSV per figure-style series into dir.
// Existing files are overwritten; emission is byte-deterministic.
std::vector<std::string> emit_report(const ExperimentReport& report, const std::string& dir);

std::string report_to_json(const ExperimentReport& report);

}  // namespace netveil

#endif
