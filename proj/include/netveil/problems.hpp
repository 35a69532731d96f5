#ifndef NETVEIL_PROBLEMS_HPP
#define NETVEIL_PROBLEMS_HPP

#include <string>
#include <variant>
#include <vector>

#include "netveil/model.hpp"

namespace netveil {

// Copper-plate economic dispatch: serve a fixed demand from capacity-bounded
// generators at minimum marginal cost. Capacity is the sensitive value.
struct DispatchInstance {
    std::vector<double> capacity;       // v_i, MW
    std::vector<double> marginal_cost;  // c_i, $/MWh (public)
    double demand = 0.0;                // MW
    double ancillary_price = 10.0;      // $/MWh for unserved load

    DispatchInstance with_values(const std::vector<double>& values) const;
    void validate() const;
};

struct DispatchSolution {
    std::vector<double> output;  // x_i
    double objective = 0.0;      // sum c_i x_i
    double unserved = 0.0;       // demand not coverable by capacity
    bool feasible = true;        // false when capacity < demand
};

// Multi-pair shortest-path routing over edge weights d_e + gamma * t_e.
// Traffic volumes sit on a subset of edges (the elements); edges without an
// element carry zero traffic.
struct OdPair {
    int origin = 0;
    int destination = 0;
    int count = 1;  // trip multiplicity
};

struct TrafficInstance {
    int node_count = 0;
    std::vector<EdgeSpec> edges;        // public topology and distances
    std::vector<int> element_edge;      // element i sits on edge element_edge[i]
    std::vector<double> traffic;        // t for each element
    double gamma = 1.0;
    std::vector<OdPair> od_pairs;

    TrafficInstance with_values(const std::vector<double>& values) const;
    void validate() const;

    // Per-edge weight d_e + gamma * t_e under the instance's traffic values.
    std::vector<double> edge_weights() const;
};

struct PathSolution {
    std::vector<int> nodes;  // empty for origin == destination
    double cost = 0.0;
    bool connected = true;
};

struct TrafficSolution {
    std::vector<PathSolution> paths;  // one per O-D pair
    double objective = 0.0;           // multiplicity-weighted sum of path costs
    bool feasible = true;             // false if any pair is disconnected
};

using ProblemInstance = std::variant<DispatchInstance, TrafficInstance>;
using Solution = std::variant<DispatchSolution, TrafficSolution>;

// Merit-order optimum (cheapest generators first, ties by index). A capacity
// shortfall is recorded as unserved load and flags the solution infeasible.
DispatchSolution solve_dispatch(const DispatchInstance& inst);

// Exact per-pair shortest paths (Dijkstra). Equal-cost ties resolve to the
// lexicographically smallest node sequence.
TrafficSolution solve_traffic(const TrafficInstance& inst);

// Objective of a FIXED solution under substituted values; no re-optimization.
double evaluate_objective(const DispatchInstance& inst,
                          const DispatchSolution& solution,
                          const std::vector<double>& values);
double evaluate_objective(const TrafficInstance& inst,
                          const TrafficSolution& solution,
                          const std::vector<double>& values);

struct Residual {
    std::string name;
    double value = 0.0;  // satisfied iff <= tolerance
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Residual> residuals;
    double tolerance = 1e-9;
};

FeasibilityReport check_feasible(const DispatchInstance& inst,
                                 const DispatchSolution& solution,
                                 const std::vector<double>& values,
                                 double tolerance = 1e-9);
FeasibilityReport check_feasible(const TrafficInstance& inst,
                                 const TrafficSolution& solution,
                                 const std::vector<double>& values,
                                 double tolerance = 1e-9);

}  // namespace netveil

#endif
