// Brute-force reference implementations shared by the unit and acceptance
// suites. Everything here is independent of the library's solver paths.
#ifndef NETVEIL_TESTS_ORACLES_HPP
#define NETVEIL_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "netveil/problems.hpp"

namespace netveil::oracles {

// LP oracle for min c.x s.t. 0 <= x <= v, sum x = D: enumerate basic
// feasible points (all-but-one coordinate at a bound, one fractional).
inline double dispatch_lp_oracle(const DispatchInstance& inst) {
    const std::size_t n = inst.capacity.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t subset = 0; subset < (1u << n); ++subset) {
        for (std::size_t partial = 0; partial <= n; ++partial) {
            if (partial < n && (subset >> partial & 1u)) continue;
            double load = 0.0, cost = 0.0;
            bool ok = true;
            for (std::size_t g = 0; g < n; ++g)
                if (subset >> g & 1u) {
                    if (inst.capacity[g] < 0.0) ok = false;
                    load += inst.capacity[g];
                    cost += inst.marginal_cost[g] * inst.capacity[g];
                }
            if (!ok) continue;
            const double rest = inst.demand - load;
            if (partial == n) {
                if (std::abs(rest) > 1e-9) continue;
            } else {
                if (rest < -1e-12 || rest > inst.capacity[partial] + 1e-12) continue;
                cost += inst.marginal_cost[partial] * rest;
            }
            best = std::min(best, cost);
        }
    }
    return best;
}

inline void enumerate_paths(const TrafficInstance& inst,
                            int current,
                            int destination,
                            std::vector<int>& stack,
                            std::vector<bool>& used,
                            const std::function<void(const std::vector<int>&)>& visit) {
    if (current == destination) {
        visit(stack);
        return;
    }
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        int next = -1;
        if (inst.edges[e].u == current) next = inst.edges[e].v;
        if (inst.edges[e].v == current) next = inst.edges[e].u;
        if (next < 0 || used[next]) continue;
        used[next] = true;
        stack.push_back(next);
        enumerate_paths(inst, next, destination, stack, used, visit);
        stack.pop_back();
        used[next] = false;
    }
}

inline double oracle_path_cost(const TrafficInstance& inst, const std::vector<int>& nodes) {
    const auto w = inst.edge_weights();
    double cost = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        for (std::size_t e = 0; e < inst.edges.size(); ++e)
            if ((inst.edges[e].u == nodes[i] && inst.edges[e].v == nodes[i + 1]) ||
                (inst.edges[e].v == nodes[i] && inst.edges[e].u == nodes[i + 1])) {
                cost += w[e];
                break;
            }
    return cost;
}

// Cheapest simple path with lexicographic tie-break, by full enumeration.
inline std::pair<double, std::vector<int>> traffic_oracle(const TrafficInstance& inst,
                                                          int origin,
                                                          int destination) {
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_path;
    std::vector<int> stack{origin};
    std::vector<bool> used(inst.node_count, false);
    used[origin] = true;
    enumerate_paths(inst, origin, destination, stack, used,
                    [&](const std::vector<int>& path) {
                        const double c = oracle_path_cost(inst, path);
                        if (c < best_cost - 1e-12 ||
                            (std::abs(c - best_cost) <= 1e-12 &&
                             (best_path.empty() || path < best_path))) {
                            best_cost = c;
                            best_path = path;
                        }
                    });
    return {best_cost, best_path};
}

// Dense Gaussian elimination with partial pivoting.
inline std::optional<std::vector<double>> solve_linear(std::vector<std::vector<double>> m,
                                                       std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (std::abs(m[pivot][col]) < 1e-12) return std::nullopt;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
    return rhs;
}

struct DenseHalfspace {
    std::vector<double> a;
    double b = 0.0;
};

// Projection onto an intersection of half-spaces by active-set enumeration:
// try every subset as the active set, solve the equality-constrained
// projection, and keep the KKT-valid point closest to the input.
inline std::optional<std::vector<double>> qp_projection_oracle(
    const std::vector<double>& point, const std::vector<DenseHalfspace>& sets) {
    const std::size_t m = sets.size();
    std::optional<std::vector<double>> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1u) active.push_back(i);

        std::vector<double> z = point;
        bool kkt_ok = true;
        if (!active.empty()) {
            // (A A^T) nu = b - A p;  z = p + A^T nu;  KKT needs nu <= 0.
            std::vector<std::vector<double>> gram(active.size(),
                                                  std::vector<double>(active.size(), 0.0));
            std::vector<double> rhs(active.size(), 0.0);
            for (std::size_t r = 0; r < active.size(); ++r) {
                for (std::size_t c = 0; c < active.size(); ++c)
                    for (std::size_t k = 0; k < point.size(); ++k)
                        gram[r][c] += sets[active[r]].a[k] * sets[active[c]].a[k];
                rhs[r] = sets[active[r]].b;
                for (std::size_t k = 0; k < point.size(); ++k)
                    rhs[r] -= sets[active[r]].a[k] * point[k];
            }
            const auto nu = solve_linear(gram, rhs);
            if (!nu) continue;
            for (double v : *nu)
                if (v > 1e-9) kkt_ok = false;
            if (!kkt_ok) continue;
            for (std::size_t k = 0; k < point.size(); ++k)
                for (std::size_t r = 0; r < active.size(); ++r)
                    z[k] += (*nu)[r] * sets[active[r]].a[k];
        }
        bool feasible = true;
        for (const auto& hs : sets) {
            double dot = 0.0;
            for (std::size_t k = 0; k < point.size(); ++k) dot += hs.a[k] * z[k];
            if (dot > hs.b + 1e-8) feasible = false;
        }
        if (feasible) {
            double d = 0.0;
            for (std::size_t k = 0; k < point.size(); ++k)
                d += (z[k] - point[k]) * (z[k] - point[k]);
            d = std::sqrt(d);
            if (d < best_dist) {
                best_dist = d;
                best = z;
            }
        }
    }
    return best;
}

}  // namespace netveil::oracles

#endif
