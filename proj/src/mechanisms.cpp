#include "netveil/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "netveil/assignment.hpp"

namespace netveil {

void LocationPermutation::validate_against(const CinDescription& network) const {
    if (target_site.size() != network.element_count())
        throw Error(ErrorCode::shape_mismatch, "permutation length != element count");
    std::set<int> originals, targets;
    for (const auto& el : network.elements()) originals.insert(el.site);
    for (int s : target_site) targets.insert(s);
    if (originals != targets)
        throw Error(ErrorCode::bad_parameter,
                    "permutation must be a bijection onto the original sites");
}

std::vector<double> laplace_noise(double scale, std::size_t count, Sampler& sampler) {
    if (scale <= 0.0) throw Error(ErrorCode::bad_parameter, "laplace scale must be > 0");
    std::vector<double> draws(count);
    for (auto& d : draws) d = sampler.laplace(scale);
    return draws;
}

NoisyValues obfuscate_values(const CinDescription& network,
                             double epsilon,
                             double alpha_val,
                             Sampler& sampler) {
    if (epsilon <= 0.0) throw Error(ErrorCode::bad_parameter, "epsilon must be > 0");
    if (alpha_val <= 0.0) throw Error(ErrorCode::bad_parameter, "alpha_val must be > 0");
    NoisyValues out;
    out.noise = laplace_noise(alpha_val / epsilon, network.element_count(), sampler);
    out.values = network.values();
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += out.noise[i];
    return out;
}

namespace {

std::vector<int> candidate_sites(const CinDescription& network, SitePool pool) {
    std::vector<int> sites;
    if (pool == SitePool::all_sites) {
        sites.resize(static_cast<std::size_t>(network.site_count()));
        for (int s = 0; s < network.site_count(); ++s) sites[static_cast<std::size_t>(s)] = s;
    } else {
        for (const auto& el : network.elements()) sites.push_back(el.site);
        std::sort(sites.begin(), sites.end());
    }
    return sites;
}

}  // namespace

std::vector<std::pair<int, double>> location_sampling_distribution(
    const CinDescription& network,
    std::size_t element_index,
    double epsilon,
    double alpha_loc,
    SitePool pool) {
    if (epsilon <= 0.0) throw Error(ErrorCode::bad_parameter, "epsilon must be > 0");
    if (alpha_loc <= 0.0) throw Error(ErrorCode::bad_parameter, "alpha_loc must be > 0");
    if (element_index >= network.element_count())
        throw Error(ErrorCode::unknown_id, "element index out of range");

    const auto sites = candidate_sites(network, pool);
    if (sites.empty()) throw Error(ErrorCode::bad_parameter, "no candidate sites");

    const int origin = network.elements()[element_index].site;
    std::vector<std::pair<int, double>> dist;
    dist.reserve(sites.size());
    double total = 0.0;
    for (int site : sites) {
        const int hops = hop_distance(network, origin, site);
        // Decaying exponent: nearby sites are the likely targets.
        const double weight = std::exp(-epsilon * static_cast<double>(hops) / (2.0 * alpha_loc));
        dist.emplace_back(site, weight);
        total += weight;
    }
    for (auto& [site, p] : dist) p /= total;
    return dist;
}

std::vector<int> sample_locations(const CinDescription& network,
                                  double epsilon,
                                  double alpha_loc,
                                  Sampler& sampler,
                                  SitePool pool) {
    std::vector<int> targets(network.element_count());
    for (std::size_t i = 0; i < network.element_count(); ++i) {
        const auto dist = location_sampling_distribution(network, i, epsilon, alpha_loc, pool);
        std::vector<double> weights(dist.size());
        for (std::size_t k = 0; k < dist.size(); ++k) weights[k] = dist[k].second;
        targets[i] = dist[sampler.categorical(weights)].first;
    }
    return targets;
}

LocationPermutation resolve_assignment(const std::vector<int>& raw_targets,
                                       const CinDescription& network) {
    const std::size_t n = network.element_count();
    if (raw_targets.size() != n)
        throw Error(ErrorCode::shape_mismatch, "raw target list length != element count");

    std::set<int> occupied;
    for (const auto& el : network.elements()) occupied.insert(el.site);
    std::map<int, int> claims;  // target site -> number of claimants
    for (int t : raw_targets) {
        if (!occupied.count(t))
            throw Error(ErrorCode::unknown_id,
                        "raw target " + std::to_string(t) + " is not an occupied site");
        ++claims[t];
    }

    LocationPermutation perm;
    perm.target_site.assign(n, -1);

    std::vector<std::size_t> conflicted;
    std::set<int> taken;
    for (std::size_t i = 0; i < n; ++i) {
        if (claims[raw_targets[i]] == 1) {
            perm.target_site[i] = raw_targets[i];
            taken.insert(raw_targets[i]);
        } else {
            conflicted.push_back(i);
        }
    }

    if (conflicted.empty()) return perm;

    std::vector<int> free_sites;
    for (int s : occupied)
        if (!taken.count(s)) free_sites.push_back(s);

    // Hop cost from each conflicted element's original site.
    const auto hop_cost = [&](std::size_t element, int site) -> std::int64_t {
        return hop_distance(network, network.elements()[element].site, site);
    };
    const auto cost_matrix = [&](const std::vector<std::size_t>& elements,
                                 const std::vector<int>& sites) {
        std::vector<std::vector<std::int64_t>> cost(elements.size(),
                                                    std::vector<std::int64_t>(sites.size()));
        for (std::size_t r = 0; r < elements.size(); ++r)
            for (std::size_t c = 0; c < sites.size(); ++c)
                cost[r][c] = hop_cost(elements[r], sites[c]);
        return cost;
    };

    std::int64_t remaining_budget = min_assignment_cost(cost_matrix(conflicted, free_sites));

    // Lock sites element by element (ascending index). An element's
    // preference order is: its raw target first, then remaining sites by
    // (hop cost, site id). A site is locked iff the remaining elements can
    // still be completed within the optimal total cost.
    std::vector<std::size_t> pending = conflicted;
    std::vector<int> available = free_sites;
    while (!pending.empty()) {
        const std::size_t element = pending.front();
        std::vector<int> preferences = available;
        std::stable_sort(preferences.begin(), preferences.end(), [&](int a, int b) {
            return std::make_pair(hop_cost(element, a), a) <
                   std::make_pair(hop_cost(element, b), b);
        });
        const int raw = raw_targets[element];
        if (auto it = std::find(preferences.begin(), preferences.end(), raw);
            it != preferences.end()) {
            preferences.erase(it);
            preferences.insert(preferences.begin(), raw);
        }

        for (int site : preferences) {
            const std::int64_t site_cost = hop_cost(element, site);
            std::vector<std::size_t> rest(pending.begin() + 1, pending.end());
            std::vector<int> rest_sites;
            for (int s : available)
                if (s != site) rest_sites.push_back(s);
            const std::int64_t completion =
                rest.empty() ? 0 : min_assignment_cost(cost_matrix(rest, rest_sites));
            if (site_cost + completion == remaining_budget) {
                perm.target_site[element] = site;
                pending.erase(pending.begin());
                available = std::move(rest_sites);
                remaining_budget -= site_cost;
                break;
            }
        }
    }

    perm.validate_against(network);
    return perm;
}

CinDescription shuffle_locations(const CinDescription& network,
                                 double epsilon,
                                 double alpha_loc,
                                 Sampler& sampler) {
    const auto raw = sample_locations(network, epsilon, alpha_loc, sampler, SitePool::occupied);
    const auto perm = resolve_assignment(raw, network);
    return network.with_locations(perm.target_site);
}

double laplace_log_density(const std::vector<double>& offsets, double scale) {
    if (scale <= 0.0) throw Error(ErrorCode::bad_parameter, "laplace scale must be > 0");
    double log_density = 0.0;
    for (double z : offsets)
        log_density += -std::log(2.0 * scale) - std::abs(z) / scale;
    return log_density;
}

}  // namespace netveil
