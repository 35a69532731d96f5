#include "netveil/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace netveil {

const char* strategy_name(AttackStrategy s) {
    switch (s) {
        case AttackStrategy::random: return "random";
        case AttackStrategy::obfuscated: return "obfuscated";
        case AttackStrategy::fully_informed: return "fully-informed";
    }
    return "?";
}

AttackStrategy strategy_from_name(const std::string& name) {
    if (name == "random") return AttackStrategy::random;
    if (name == "obfuscated") return AttackStrategy::obfuscated;
    if (name == "fully-informed" || name == "fully_informed")
        return AttackStrategy::fully_informed;
    throw Error(ErrorCode::bad_parameter, "unknown attack strategy: " + name);
}

void AttackConfig::validate() const {
    if (!(budget_pct > 0.0) || budget_pct > 100.0)
        throw Error(ErrorCode::bad_parameter, "attack budget must be in (0, 100]");
}

std::size_t AttackConfig::attack_count(std::size_t element_count) const {
    validate();
    const double raw = budget_pct / 100.0 * static_cast<double>(element_count);
    auto k = static_cast<std::size_t>(std::ceil(raw - 1e-12));
    if (k == 0) k = 1;
    return std::min(k, element_count);
}

std::vector<std::size_t> rank_elements(const CinDescription& network,
                                       const ProblemInstance& problem,
                                       RankKey key) {
    const std::size_t n = network.element_count();
    std::vector<double> score(n, 0.0);
    if (key == RankKey::dispatch) {
        const auto* dispatch = std::get_if<DispatchInstance>(&problem);
        if (dispatch == nullptr)
            throw Error(ErrorCode::bad_parameter, "dispatch ranking needs a dispatch problem");
        score = solve_dispatch(dispatch->with_values(network.values())).output;
    } else {
        score = network.values();
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
    return order;
}

CinDescription apply_attack(const CinDescription& network,
                            const std::vector<std::size_t>& element_ids) {
    std::vector<std::size_t> sorted = element_ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorCode::bad_parameter, "attacked element ids must be distinct");
    return network.without_elements(sorted);
}

namespace {

TrafficInstance bind_traffic(const TrafficInstance& proto, const CinDescription& network) {
    TrafficInstance out = proto;
    out.edges = network.edges();
    out.element_edge.clear();
    out.traffic.clear();
    for (const auto& el : network.elements()) {
        out.element_edge.push_back(el.site);
        out.traffic.push_back(el.value);
    }
    return out;
}

}  // namespace

DamageBreakdown damage(const ProblemInstance& problem,
                       const CinDescription& base,
                       const CinDescription& damaged,
                       const DamageModel& model) {
    DamageBreakdown out;
    if (const auto* dispatch = std::get_if<DispatchInstance>(&problem)) {
        if (dispatch->marginal_cost.size() != base.element_count())
            throw Error(ErrorCode::shape_mismatch, "cost vector length != element count");

        const auto base_solution = solve_dispatch(dispatch->with_values(base.values()));
        const double base_cost = base_solution.objective +
                                 model.ancillary_price * base_solution.unserved;

        // Surviving generators keep their marginal costs. The damaged copy
        // preserves element order, so a single forward walk pairs them up.
        std::vector<double> surviving_cost;
        std::vector<double> surviving_cap;
        std::size_t cursor = 0;
        for (std::size_t i = 0; i < base.element_count(); ++i) {
            if (cursor < damaged.element_count() &&
                damaged.elements()[cursor].site == base.elements()[i].site) {
                surviving_cost.push_back(dispatch->marginal_cost[i]);
                surviving_cap.push_back(damaged.elements()[cursor].value);
                ++cursor;
            }
        }
        if (cursor != damaged.element_count())
            throw Error(ErrorCode::shape_mismatch,
                        "damaged network is not an element subset of the base network");
        double attacked_cost = model.ancillary_price * dispatch->demand;  // nothing left
        double attacked_unserved = dispatch->demand;
        if (!surviving_cap.empty()) {
            DispatchInstance after = *dispatch;
            after.capacity = surviving_cap;
            after.marginal_cost = surviving_cost;
            const auto solution = solve_dispatch(after);
            attacked_cost = solution.objective + model.ancillary_price * solution.unserved;
            attacked_unserved = solution.unserved;
        }
        out.damage = std::max(0.0, attacked_cost - base_cost);
        out.unserved = attacked_unserved;
        return out;
    }

    const auto& traffic = std::get<TrafficInstance>(problem);
    const auto before = solve_traffic(bind_traffic(traffic, base));
    const auto after = solve_traffic(bind_traffic(traffic, damaged));
    double before_total = 0.0, after_total = 0.0;
    for (std::size_t p = 0; p < traffic.od_pairs.size(); ++p) {
        const double mult = traffic.od_pairs[p].count;
        before_total += mult * before.paths[p].cost;
        if (after.paths[p].connected) {
            after_total += mult * after.paths[p].cost;
        } else {
            after_total += mult * model.disconnect_penalty * before.paths[p].cost;
            ++out.disconnected;
        }
    }
    out.damage = std::max(0.0, after_total - before_total);
    return out;
}

std::vector<std::size_t> elements_at_released_sites(
    const CinDescription& true_network,
    const CinDescription& released_network,
    const std::vector<std::size_t>& released_elements) {
    std::vector<std::size_t> out;
    out.reserve(released_elements.size());
    for (std::size_t rid : released_elements) {
        if (rid >= released_network.element_count())
            throw Error(ErrorCode::unknown_id, "released element id out of range");
        const int site = released_network.elements()[rid].site;
        const int hit = true_network.element_at_site(site);
        if (hit < 0)
            throw Error(ErrorCode::unknown_id,
                        "released site " + std::to_string(site) + " is empty in the true network");
        out.push_back(static_cast<std::size_t>(hit));
    }
    return out;
}

AttackOutcome execute_attack(const CinDescription& true_network,
                             const CinDescription& released_network,
                             const ProblemInstance& problem,
                             const AttackConfig& config,
                             const DamageModel& model) {
    config.validate();
    const std::size_t n = true_network.element_count();
    const std::size_t k = config.attack_count(n);
    const RankKey key = std::holds_alternative<DispatchInstance>(problem) ? RankKey::dispatch
                                                                          : RankKey::value;

    std::vector<std::size_t> ids;
    switch (config.strategy) {
        case AttackStrategy::random: {
            MtSampler sampler(config.seed);
            ids = sampler.sample_without_replacement(n, k);
            break;
        }
        case AttackStrategy::obfuscated: {
            auto ranked = rank_elements(released_network, problem, key);
            ranked.resize(k);
            ids = elements_at_released_sites(true_network, released_network, ranked);
            break;
        }
        case AttackStrategy::fully_informed: {
            ids = rank_elements(true_network, problem, key);
            ids.resize(k);
            break;
        }
    }

    auto damaged = apply_attack(true_network, ids);
    const auto breakdown = damage(problem, true_network, damaged, model);
    AttackOutcome out{std::move(ids), std::move(damaged), breakdown.damage,
                      breakdown.unserved, breakdown.disconnected};
    return out;
}

namespace {

StrategyStats summarize(std::vector<double> samples) {
    StrategyStats stats;
    stats.samples = std::move(samples);
    if (stats.samples.empty()) return stats;
    stats.mean = std::accumulate(stats.samples.begin(), stats.samples.end(), 0.0) /
                 static_cast<double>(stats.samples.size());
    double ss = 0.0;
    for (double d : stats.samples) ss += (d - stats.mean) * (d - stats.mean);
    stats.stddev = stats.samples.size() > 1
                       ? std::sqrt(ss / static_cast<double>(stats.samples.size() - 1))
                       : 0.0;
    return stats;
}

}  // namespace

AttackExperiment run_experiment(const CinDescription& true_network,
                                const CinDescription& released_network,
                                const ProblemInstance& problem,
                                const AttackConfig& config,
                                std::size_t runs,
                                const DamageModel& model) {
    if (runs < 1) throw Error(ErrorCode::bad_parameter, "runs must be >= 1");
    config.validate();
    const std::size_t n = true_network.element_count();
    const std::size_t k = config.attack_count(n);

    const auto evaluate = [&](const std::vector<std::size_t>& ids) {
        return damage(problem, true_network, apply_attack(true_network, ids), model).damage;
    };

    // Ranking attacks are deterministic for a fixed network pair.
    const RankKey key = std::holds_alternative<DispatchInstance>(problem) ? RankKey::dispatch
                                                                          : RankKey::value;
    auto informed_rank = rank_elements(true_network, problem, key);
    informed_rank.resize(k);
    const double informed_damage = evaluate(informed_rank);

    auto released_rank = rank_elements(released_network, problem, key);
    released_rank.resize(k);
    const double obfuscated_damage =
        evaluate(elements_at_released_sites(true_network, released_network, released_rank));

    std::vector<double> random_samples, obfuscated_samples, informed_samples;
    for (std::size_t run = 0; run < runs; ++run) {
        MtSampler sampler(run_seed(config.seed, run));
        random_samples.push_back(evaluate(sampler.sample_without_replacement(n, k)));
        obfuscated_samples.push_back(obfuscated_damage);
        informed_samples.push_back(informed_damage);
    }

    AttackExperiment out;
    out.random = summarize(std::move(random_samples));
    out.obfuscated = summarize(std::move(obfuscated_samples));
    out.fully_informed = summarize(std::move(informed_samples));

    const auto resolve = [&](const CinDescription& network) {
        if (const auto* dispatch = std::get_if<DispatchInstance>(&problem))
            return solve_dispatch(dispatch->with_values(network.values())).objective;
        return solve_traffic(bind_traffic(std::get<TrafficInstance>(problem), network))
            .objective;
    };
    out.original_objective = resolve(true_network);
    out.released_objective = resolve(released_network);
    double se = 0.0;
    const auto true_values = true_network.values();
    const auto released_values = released_network.values();
    for (std::size_t i = 0; i < true_values.size(); ++i)
        se += (released_values[i] - true_values[i]) * (released_values[i] - true_values[i]);
    out.value_rmse = std::sqrt(se / static_cast<double>(true_values.size()));
    return out;
}

}  // namespace netveil
