#ifndef NETVEIL_BENCHMARKS_HPP
#define NETVEIL_BENCHMARKS_HPP

#include <cstdint>

#include "netveil/pipeline.hpp"

namespace netveil {

// Synthetic evaluation networks. Fully determined by their seeds, so tests
// and documentation refer to identical instances.

struct DispatchBenchmarkSpec {
    int nodes = 30;
    int extra_edges = 16;  // beyond the random spanning tree
    int generators = 10;
    double capacity_lo = 2.0;   // MW
    double capacity_hi = 10.0;  // MW
    double cost_lo = 1.0;       // $/MWh
    double cost_hi = 5.0;       // $/MWh
    double demand_fraction = 0.8;  // of total capacity
    std::uint64_t seed = 7151;
};

NetworkBundle make_dispatch_benchmark(const DispatchBenchmarkSpec& spec = {});

// Two dense 2x5 grid districts joined by a small number of arterial
// bridges. Most trips cross between districts, so the bridges carry the
// bulk of the traffic and losing them is what actually hurts.
struct TrafficBenchmarkSpec {
    int rows = 2;
    int cols = 5;        // per district; two districts = 20 nodes
    int diagonals = 3;   // extra shortcut edges per district
    int bridges = 2;
    int od_pairs = 15;
    int cross_pairs = 12;  // trips between the districts
    double gamma = 1.0;
    std::uint64_t seed = 40921;
};

NetworkBundle make_traffic_benchmark(const TrafficBenchmarkSpec& spec = {});

// Three road segments AB, BC, AC with distances 1, 1, 3 and one commuter
// A -> C; traffic-free shortest route is A-B-C at cost 2.
NetworkBundle make_triangle_traffic();

}  // namespace netveil

#endif
