#ifndef NETVEIL_ATTACK_HPP
#define NETVEIL_ATTACK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "netveil/problems.hpp"
#include "netveil/random.hpp"

namespace netveil {

enum class AttackStrategy { random, obfuscated, fully_informed };

const char* strategy_name(AttackStrategy s);
AttackStrategy strategy_from_name(const std::string& name);

enum class RankKey { dispatch, value };

struct AttackConfig {
    AttackStrategy strategy = AttackStrategy::random;
    double budget_pct = 10.0;  // percentage of elements, (0, 100]
    std::uint64_t seed = 0;

    // ceil(budget% * element count); a nonzero budget attacks >= 1 element.
    std::size_t attack_count(std::size_t element_count) const;
    void validate() const;
};

struct AttackOutcome {
    std::vector<std::size_t> element_ids;  // attacked elements of the true network
    CinDescription damaged;
    double damage = 0.0;
    double unserved = 0.0;    // dispatch: MW left unserved after the attack
    int disconnected = 0;     // traffic: O-D pairs cut off by the attack
};

// All element ids ordered by descending attack priority. Dispatch networks
// rank by the solved dispatch of each generator; traffic networks rank by
// the (released) traffic value. Ties break by ascending element id. The
// ranking sees exactly one network; callers pass the released network for
// obfuscated attacks.
std::vector<std::size_t> rank_elements(const CinDescription& network,
                                       const ProblemInstance& problem,
                                       RankKey key);

// Removes the listed elements; edge-sited elements take their edges out of
// the routing topology. Remaining public topology is untouched.
CinDescription apply_attack(const CinDescription& network,
                            const std::vector<std::size_t>& element_ids);

// Damage metric parameters recorded in reports.
struct DamageModel {
    double ancillary_price = 10.0;       // $/MWh for post-attack unserved load
    double disconnect_penalty = 10.0;    // x pre-attack pair cost for cut-off pairs
};

struct DamageBreakdown {
    double damage = 0.0;
    double unserved = 0.0;
    int disconnected = 0;
};

// Objective degradation caused by the attack: dispatch networks pay the
// re-dispatch cost plus ancillary services for unserved load; traffic
// networks pay the increase in total shortest-path cost, with disconnected
// pairs charged a fixed multiple of their pre-attack cost.
DamageBreakdown damage(const ProblemInstance& problem,
                       const CinDescription& base,
                       const CinDescription& damaged,
                       const DamageModel& model = {});

struct StrategyStats {
    double mean = 0.0;
    double stddev = 0.0;
    std::vector<double> samples;
};

struct AttackExperiment {
    StrategyStats random;
    StrategyStats obfuscated;
    StrategyStats fully_informed;
    // Obfuscation quality of the released network.
    double original_objective = 0.0;
    double released_objective = 0.0;   // problem re-solved on the release
    double value_rmse = 0.0;           // per-element released vs true values
};

// One attack under the configured strategy. Random attacks draw from the
// config seed; obfuscated attacks never read the true network's values.
AttackOutcome execute_attack(const CinDescription& true_network,
                             const CinDescription& released_network,
                             const ProblemInstance& problem,
                             const AttackConfig& config,
                             const DamageModel& model = {});

// Repeated attack evaluation on a fixed (true, released) pair. Random
// attacks draw fresh element sets per run (seed xor run index); ranking
// attacks are deterministic given their input network. Obfuscated attacks
// rank on the released network and strike the true elements occupying the
// top-ranked released sites.
AttackExperiment run_experiment(const CinDescription& true_network,
                                const CinDescription& released_network,
                                const ProblemInstance& problem,
                                const AttackConfig& config,
                                std::size_t runs,
                                const DamageModel& model = {});

// The true-network element hit when the attacker targets each released
// site: released ranking -> sites -> elements of the true network.
std::vector<std::size_t> elements_at_released_sites(
    const CinDescription& true_network,
    const CinDescription& released_network,
    const std::vector<std::size_t>& released_elements);

}  // namespace netveil

#endif
