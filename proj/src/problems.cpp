#include "netveil/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace netveil {

void DispatchInstance::validate() const {
    if (capacity.empty()) throw Error(ErrorCode::bad_parameter, "dispatch needs >= 1 generator");
    if (capacity.size() != marginal_cost.size())
        throw Error(ErrorCode::shape_mismatch, "capacity/cost length mismatch");
    for (double v : capacity)
        if (!std::isfinite(v)) throw Error(ErrorCode::bad_parameter, "capacity must be finite");
    for (double c : marginal_cost)
        if (c < 0.0 || !std::isfinite(c))
            throw Error(ErrorCode::bad_parameter, "marginal cost must be finite and >= 0");
    if (demand < 0.0 || !std::isfinite(demand))
        throw Error(ErrorCode::bad_parameter, "demand must be finite and >= 0");
}

DispatchInstance DispatchInstance::with_values(const std::vector<double>& values) const {
    if (values.size() != capacity.size())
        throw Error(ErrorCode::shape_mismatch, "value vector length != generator count");
    DispatchInstance copy = *this;
    copy.capacity = values;
    return copy;
}

DispatchSolution solve_dispatch(const DispatchInstance& inst) {
    inst.validate();
    const std::size_t n = inst.capacity.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return inst.marginal_cost[a] < inst.marginal_cost[b];
    });

    DispatchSolution out;
    out.output.assign(n, 0.0);
    double remaining = inst.demand;
    for (std::size_t g : order) {
        if (remaining <= 0.0) break;
        const double usable = std::max(0.0, inst.capacity[g]);
        const double x = std::min(usable, remaining);
        out.output[g] = x;
        out.objective += inst.marginal_cost[g] * x;
        remaining -= x;
    }
    out.unserved = std::max(0.0, remaining);
    out.feasible = out.unserved <= 1e-12;
    return out;
}

void TrafficInstance::validate() const {
    if (node_count <= 0) throw Error(ErrorCode::bad_parameter, "node count must be > 0");
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= node_count || e.v < 0 || e.v >= node_count)
            throw Error(ErrorCode::unknown_id, "edge endpoint out of range");
        if (e.distance < 0.0) throw Error(ErrorCode::negative_distance, "edge distance < 0");
    }
    if (element_edge.size() != traffic.size())
        throw Error(ErrorCode::shape_mismatch, "element/traffic length mismatch");
    for (int e : element_edge)
        if (e < 0 || e >= static_cast<int>(edges.size()))
            throw Error(ErrorCode::unknown_id, "element edge index out of range");
    if (gamma < 0.0) throw Error(ErrorCode::bad_parameter, "gamma must be >= 0");
    for (const auto& od : od_pairs) {
        if (od.origin < 0 || od.origin >= node_count || od.destination < 0 ||
            od.destination >= node_count)
            throw Error(ErrorCode::unknown_id, "O-D node out of range");
        if (od.count < 1) throw Error(ErrorCode::bad_parameter, "O-D multiplicity must be >= 1");
    }
}

TrafficInstance TrafficInstance::with_values(const std::vector<double>& values) const {
    if (values.size() != traffic.size())
        throw Error(ErrorCode::shape_mismatch, "value vector length != element count");
    TrafficInstance copy = *this;
    copy.traffic = values;
    return copy;
}

std::vector<double> TrafficInstance::edge_weights() const {
    std::vector<double> w(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) w[e] = edges[e].distance;
    for (std::size_t i = 0; i < element_edge.size(); ++i)
        w[static_cast<std::size_t>(element_edge[i])] += gamma * traffic[i];
    return w;
}

namespace {

constexpr double kInfCost = std::numeric_limits<double>::infinity();

// Single-source Dijkstra over nonnegative weights.
std::vector<double> dijkstra(int node_count,
                             const std::vector<EdgeSpec>& edges,
                             const std::vector<double>& weights,
                             int source) {
    std::vector<std::vector<std::pair<int, std::size_t>>> adj(node_count);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].u].emplace_back(edges[e].v, e);
        adj[edges[e].v].emplace_back(edges[e].u, e);
    }
    std::vector<double> dist(node_count, kInfCost);
    dist[source] = 0.0;
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, e] : adj[u]) {
            const double nd = d + weights[e];
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }
    return dist;
}

// Lexicographically smallest shortest path: walk from the origin, always
// taking the smallest-id unvisited neighbor that stays on a shortest path
// to the destination. Zero-weight plateaus can strand the walk; those fall
// back to the (deterministic) predecessor tree of a forward Dijkstra.
PathSolution shortest_path(const TrafficInstance& inst,
                           const std::vector<double>& weights,
                           int origin,
                           int destination) {
    PathSolution out;
    if (origin == destination) return out;  // empty path, cost 0

    const auto to_dest = dijkstra(inst.node_count, inst.edges, weights, destination);
    if (!std::isfinite(to_dest[origin])) {
        out.connected = false;
        out.cost = kInfCost;
        return out;
    }

    std::vector<std::vector<std::pair<int, std::size_t>>> adj(inst.node_count);
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        adj[inst.edges[e].u].emplace_back(inst.edges[e].v, e);
        adj[inst.edges[e].v].emplace_back(inst.edges[e].u, e);
    }
    for (auto& neighbors : adj) std::sort(neighbors.begin(), neighbors.end());

    const double scale = std::max(1.0, to_dest[origin]);
    std::vector<bool> visited(inst.node_count, false);
    visited[origin] = true;
    out.nodes.push_back(origin);
    int current = origin;
    while (current != destination) {
        int next = -1;
        std::size_t via = 0;
        for (const auto& [v, e] : adj[current]) {
            if (visited[v]) continue;
            if (std::abs(weights[e] + to_dest[v] - to_dest[current]) <= 1e-9 * scale) {
                next = v;
                via = e;
                break;
            }
        }
        if (next < 0) break;  // stranded on a zero-weight plateau
        out.cost += weights[via];
        out.nodes.push_back(next);
        visited[next] = true;
        current = next;
    }
    if (current == destination) return out;

    // Fallback: rebuild from the forward Dijkstra predecessor tree.
    std::vector<double> dist(inst.node_count, kInfCost);
    std::vector<int> pred(inst.node_count, -1);
    dist[origin] = 0.0;
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.emplace(0.0, origin);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, e] : adj[u]) {
            const double nd = d + weights[e];
            if (nd < dist[v]) {
                dist[v] = nd;
                pred[v] = u;
                heap.emplace(nd, v);
            }
        }
    }
    out.nodes.clear();
    out.cost = dist[destination];
    for (int node = destination; node != -1; node = pred[node]) out.nodes.push_back(node);
    std::reverse(out.nodes.begin(), out.nodes.end());
    return out;
}

}  // namespace

TrafficSolution solve_traffic(const TrafficInstance& inst) {
    inst.validate();
    const auto weights = inst.edge_weights();
    for (double w : weights)
        if (w < 0.0)
            throw Error(ErrorCode::bad_parameter, "negative edge weight (check traffic values)");

    TrafficSolution out;
    out.paths.reserve(inst.od_pairs.size());
    for (const auto& od : inst.od_pairs) {
        auto path = shortest_path(inst, weights, od.origin, od.destination);
        if (!path.connected) out.feasible = false;
        else out.objective += od.count * path.cost;
        out.paths.push_back(std::move(path));
    }
    return out;
}

double evaluate_objective(const DispatchInstance& inst,
                          const DispatchSolution& solution,
                          const std::vector<double>& values) {
    if (solution.output.size() != inst.marginal_cost.size())
        throw Error(ErrorCode::shape_mismatch, "solution length != generator count");
    if (values.size() != inst.marginal_cost.size())
        throw Error(ErrorCode::shape_mismatch, "value vector length != generator count");
    double total = 0.0;
    for (std::size_t i = 0; i < solution.output.size(); ++i)
        total += inst.marginal_cost[i] * solution.output[i];
    return total;
}

double evaluate_objective(const TrafficInstance& inst,
                          const TrafficSolution& solution,
                          const std::vector<double>& values) {
    if (solution.paths.size() != inst.od_pairs.size())
        throw Error(ErrorCode::shape_mismatch, "solution paths != O-D pair count");
    const auto weights = inst.with_values(values).edge_weights();

    // Edge lookup by endpoints.
    std::vector<std::vector<std::pair<int, std::size_t>>> adj(inst.node_count);
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        adj[inst.edges[e].u].emplace_back(inst.edges[e].v, e);
        adj[inst.edges[e].v].emplace_back(inst.edges[e].u, e);
    }

    double total = 0.0;
    for (std::size_t p = 0; p < solution.paths.size(); ++p) {
        const auto& nodes = solution.paths[p].nodes;
        double cost = 0.0;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            bool found = false;
            for (const auto& [v, e] : adj[nodes[i]])
                if (v == nodes[i + 1]) {
                    cost += weights[e];
                    found = true;
                    break;
                }
            if (!found)
                throw Error(ErrorCode::unknown_id, "path uses a nonexistent edge");
        }
        total += inst.od_pairs[p].count * cost;
    }
    return total;
}

FeasibilityReport check_feasible(const DispatchInstance& inst,
                                 const DispatchSolution& solution,
                                 const std::vector<double>& values,
                                 double tolerance) {
    if (solution.output.size() != values.size())
        throw Error(ErrorCode::shape_mismatch, "solution length != value vector length");
    FeasibilityReport report;
    report.tolerance = tolerance;
    double balance = -inst.demand;
    for (std::size_t i = 0; i < values.size(); ++i) {
        balance += solution.output[i];
        report.residuals.push_back({"capacity[" + std::to_string(i) + "]",
                                    solution.output[i] - values[i]});
        report.residuals.push_back({"nonneg[" + std::to_string(i) + "]", -solution.output[i]});
    }
    report.residuals.push_back({"balance", std::abs(balance)});
    for (const auto& r : report.residuals)
        if (r.value > tolerance) report.feasible = false;
    return report;
}

FeasibilityReport check_feasible(const TrafficInstance& inst,
                                 const TrafficSolution& solution,
                                 const std::vector<double>& values,
                                 double tolerance) {
    (void)values;  // structural constraints do not involve traffic volumes
    FeasibilityReport report;
    report.tolerance = tolerance;
    if (solution.paths.size() != inst.od_pairs.size())
        throw Error(ErrorCode::shape_mismatch, "solution paths != O-D pair count");

    std::vector<std::vector<int>> adj(inst.node_count);
    for (const auto& e : inst.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (std::size_t p = 0; p < solution.paths.size(); ++p) {
        const auto& od = inst.od_pairs[p];
        const auto& nodes = solution.paths[p].nodes;
        double violation = 0.0;
        if (od.origin == od.destination) {
            if (!nodes.empty() && (nodes.front() != od.origin || nodes.back() != od.destination))
                violation = 1.0;
        } else if (nodes.size() < 2 || nodes.front() != od.origin ||
                   nodes.back() != od.destination) {
            violation = 1.0;
        } else {
            std::vector<bool> visited(inst.node_count, false);
            for (std::size_t i = 0; i < nodes.size() && violation == 0.0; ++i) {
                if (visited[nodes[i]]) violation = 1.0;  // not simple
                visited[nodes[i]] = true;
                if (i + 1 < nodes.size()) {
                    const auto& nb = adj[nodes[i]];
                    if (std::find(nb.begin(), nb.end(), nodes[i + 1]) == nb.end())
                        violation = 1.0;  // missing edge
                }
            }
        }
        report.residuals.push_back({"path[" + std::to_string(p) + "]", violation});
        if (violation > tolerance) report.feasible = false;
    }
    return report;
}

}  // namespace netveil
