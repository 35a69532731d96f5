#include "netveil/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace netveil {

namespace {

double uniform_in(MtSampler& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.uniform01();
}

// Quarter-unit grid keeps path-cost ties exact in binary floating point.
double quarters_in(MtSampler& rng, double lo, double hi) {
    const int steps = static_cast<int>(std::round((hi - lo) * 4.0));
    const auto pick = static_cast<int>(rng.uniform01() * (steps + 1));
    return lo + 0.25 * std::min(pick, steps);
}

}  // namespace

NetworkBundle make_dispatch_benchmark(const DispatchBenchmarkSpec& spec) {
    MtSampler rng(spec.seed);

    std::vector<EdgeSpec> edges;
    std::set<std::pair<int, int>> used;
    const auto add_edge = [&](int u, int v) {
        const auto key = std::minmax(u, v);
        if (u == v || used.count(key)) return false;
        used.insert(key);
        edges.push_back({key.first, key.second, 1.0});
        return true;
    };
    // Random spanning tree, then extra redundancy edges.
    for (int node = 1; node < spec.nodes; ++node) {
        const int parent = static_cast<int>(rng.uniform01() * node);
        add_edge(node, std::min(parent, node - 1));
    }
    int added = 0;
    while (added < spec.extra_edges) {
        const int u = static_cast<int>(rng.uniform01() * spec.nodes);
        const int v = static_cast<int>(rng.uniform01() * spec.nodes);
        if (add_edge(std::min(u, spec.nodes - 1), std::min(v, spec.nodes - 1))) ++added;
    }

    auto sites = rng.sample_without_replacement(static_cast<std::size_t>(spec.nodes),
                                                static_cast<std::size_t>(spec.generators));
    std::vector<Element> elements;
    std::vector<double> costs;
    double total_capacity = 0.0;
    for (std::size_t g = 0; g < sites.size(); ++g) {
        const double cap = uniform_in(rng, spec.capacity_lo, spec.capacity_hi);
        elements.push_back({static_cast<int>(sites[g]), cap});
        costs.push_back(uniform_in(rng, spec.cost_lo, spec.cost_hi));
        total_capacity += cap;
    }

    DispatchInstance problem;
    problem.capacity = [&] {
        std::vector<double> caps;
        for (const auto& el : elements) caps.push_back(el.value);
        return caps;
    }();
    problem.marginal_cost = costs;
    problem.demand = spec.demand_fraction * total_capacity;

    return NetworkBundle{
        CinDescription(spec.nodes, std::move(edges), std::move(elements),
                       ElementKind::node_sited),
        std::move(problem)};
}

NetworkBundle make_traffic_benchmark(const TrafficBenchmarkSpec& spec) {
    MtSampler rng(spec.seed);
    const int district = spec.rows * spec.cols;
    const int nodes = 2 * district;
    // District d occupies ids [d * district, (d+1) * district).
    const auto id = [&](int d, int r, int c) { return d * district + r * spec.cols + c; };

    std::vector<EdgeSpec> edges;
    std::set<std::pair<int, int>> used;
    const auto add_edge = [&](int u, int v, double d) {
        const auto key = std::minmax(u, v);
        if (used.count(key)) return false;
        used.insert(key);
        edges.push_back({key.first, key.second, d});
        return true;
    };
    for (int d = 0; d < 2; ++d) {
        for (int r = 0; r < spec.rows; ++r)
            for (int c = 0; c < spec.cols; ++c) {
                if (c + 1 < spec.cols)
                    add_edge(id(d, r, c), id(d, r, c + 1), quarters_in(rng, 1.0, 2.0));
                if (r + 1 < spec.rows)
                    add_edge(id(d, r, c), id(d, r + 1, c), quarters_in(rng, 1.0, 2.0));
            }
        int added = 0;
        while (added < spec.diagonals) {
            const int r = static_cast<int>(rng.uniform01() * (spec.rows - 1));
            const int c = static_cast<int>(rng.uniform01() * (spec.cols - 1));
            if (add_edge(id(d, r, c), id(d, r + 1, c + 1), quarters_in(rng, 1.5, 2.5)))
                ++added;
        }
    }
    // Arterial bridges between the bottom row of district 0 and the top row
    // of district 1, spread across the columns.
    for (int b = 0; b < spec.bridges; ++b) {
        const int c = (b + 1) * spec.cols / (spec.bridges + 1);
        add_edge(id(0, spec.rows - 1, c), id(1, 0, c), quarters_in(rng, 1.0, 1.5));
    }

    TrafficInstance problem;
    problem.node_count = nodes;
    problem.edges = edges;
    problem.gamma = spec.gamma;
    std::set<std::pair<int, int>> pair_used;
    const auto add_pair = [&](int o, int d) {
        if (o == d || pair_used.count({o, d})) return false;
        pair_used.insert({o, d});
        problem.od_pairs.push_back({o, d, 1});
        return true;
    };
    while (static_cast<int>(problem.od_pairs.size()) < spec.cross_pairs) {
        const int o = static_cast<int>(rng.uniform01() * district);
        const int d = district + static_cast<int>(rng.uniform01() * district);
        add_pair(o, d);
    }
    while (static_cast<int>(problem.od_pairs.size()) < spec.od_pairs) {
        const int side = rng.uniform01() < 0.5 ? 0 : district;
        const int o = side + static_cast<int>(rng.uniform01() * district);
        const int d = side + static_cast<int>(rng.uniform01() * district);
        add_pair(o, d);
    }

    // Traffic counters on every road segment. Volumes reflect how often the
    // trips cross each segment when routed over the public distances; trips
    // split between their primary route and the best alternative avoiding
    // its arterial, the way aggregated multi-day flows spread. Measurement
    // jitter on top.
    for (std::size_t e = 0; e < edges.size(); ++e) {
        problem.element_edge.push_back(static_cast<int>(e));
        problem.traffic.push_back(0.0);
    }
    const std::size_t first_bridge = edges.size() - static_cast<std::size_t>(spec.bridges);
    std::vector<int> usage(edges.size(), 0);
    const auto count_path = [&](const std::vector<int>& path_nodes,
                                const std::vector<EdgeSpec>& edge_set,
                                std::vector<int>* bridge_hit) {
        for (std::size_t i = 0; i + 1 < path_nodes.size(); ++i)
            for (std::size_t e = 0; e < edge_set.size(); ++e)
                if ((edge_set[e].u == path_nodes[i] && edge_set[e].v == path_nodes[i + 1]) ||
                    (edge_set[e].v == path_nodes[i] && edge_set[e].u == path_nodes[i + 1])) {
                    // Identify the edge in the full list by endpoints.
                    for (std::size_t f = 0; f < edges.size(); ++f)
                        if (edges[f].u == edge_set[e].u && edges[f].v == edge_set[e].v) {
                            usage[f] += 1;
                            if (bridge_hit != nullptr && f >= first_bridge)
                                bridge_hit->push_back(static_cast<int>(f));
                        }
                }
    };
    const auto free_flow = solve_traffic(problem);
    for (std::size_t p = 0; p < problem.od_pairs.size(); ++p) {
        std::vector<int> bridges_used;
        count_path(free_flow.paths[p].nodes, edges, &bridges_used);
        // Alternate route with the primary arterial closed.
        TrafficInstance detour = problem;
        detour.od_pairs = {problem.od_pairs[p]};
        if (!bridges_used.empty()) {
            std::vector<EdgeSpec> reduced;
            for (std::size_t e = 0; e < edges.size(); ++e)
                if (std::find(bridges_used.begin(), bridges_used.end(),
                              static_cast<int>(e)) == bridges_used.end())
                    reduced.push_back(edges[e]);
            detour.edges = reduced;
            detour.element_edge.clear();
            detour.traffic.clear();
            for (std::size_t e = 0; e < reduced.size(); ++e) {
                detour.element_edge.push_back(static_cast<int>(e));
                detour.traffic.push_back(0.0);
            }
            const auto alt = solve_traffic(detour);
            if (alt.paths[0].connected) count_path(alt.paths[0].nodes, reduced, nullptr);
        } else {
            count_path(free_flow.paths[p].nodes, edges, nullptr);  // weight internal trips alike
        }
    }
    std::vector<Element> elements;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double volume = 0.25 * usage[e] + quarters_in(rng, 0.0, 0.5);
        problem.traffic[e] = volume;
        elements.push_back({static_cast<int>(e), volume});
    }

    return NetworkBundle{
        CinDescription(nodes, std::move(edges), std::move(elements), ElementKind::edge_sited),
        std::move(problem)};
}

NetworkBundle make_triangle_traffic() {
    std::vector<EdgeSpec> edges{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 3.0}};
    std::vector<Element> elements{{0, 0.0}, {1, 0.0}, {2, 0.0}};
    TrafficInstance problem;
    problem.node_count = 3;
    problem.edges = edges;
    problem.element_edge = {0, 1, 2};
    problem.traffic = {0.0, 0.0, 0.0};
    problem.gamma = 1.0;
    problem.od_pairs = {{0, 2, 1}};
    return NetworkBundle{
        CinDescription(3, std::move(edges), std::move(elements), ElementKind::edge_sited),
        std::move(problem)};
}

}  // namespace netveil
