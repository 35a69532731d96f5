#include <doctest.h>

#include <algorithm>
#include <deque>
#include <vector>

#include "netveil/model.hpp"

using namespace netveil;

namespace {

CinDescription path_graph(int n) {
    std::vector<EdgeSpec> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
    std::vector<Element> elements;
    for (int i = 0; i < n; ++i) elements.push_back({i, 1.0});
    return CinDescription(n, std::move(edges), std::move(elements), ElementKind::node_sited);
}

CinDescription cycle_graph(int n) {
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
    std::vector<Element> elements;
    for (int i = 0; i < n; ++i) elements.push_back({i, 1.0});
    return CinDescription(n, std::move(edges), std::move(elements), ElementKind::node_sited);
}

CinDescription triangle() {
    std::vector<EdgeSpec> edges{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
    std::vector<Element> elements{{0, 1.0}, {1, 2.0}, {2, 3.0}};
    return CinDescription(3, std::move(edges), std::move(elements), ElementKind::node_sited);
}

// Independent all-pairs BFS on the node graph.
std::vector<std::vector<int>> bfs_all_pairs(int n, const std::vector<EdgeSpec>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        dist[s][s] = 0;
        std::deque<int> q{s};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : adj[u])
                if (dist[s][v] < 0) {
                    dist[s][v] = dist[s][u] + 1;
                    q.push_back(v);
                }
        }
    }
    return dist;
}

}  // namespace

TEST_CASE("hop distance on a path graph") {
    const auto g = path_graph(4);
    CHECK(hop_distance(g, 0, 3) == 3);
    CHECK(hop_distance(g, 1, 1) == 0);
    CHECK(hop_distance(g, 3, 0) == 3);
}

TEST_CASE("hop distance across a triangle edge") {
    const auto g = triangle();
    CHECK(hop_distance(g, 0, 2) == 1);
}

TEST_CASE("hop distance rejects unknown sites") {
    const auto g = path_graph(3);
    CHECK_THROWS_AS(hop_distance(g, 0, 5), Error);
    CHECK_THROWS_AS(hop_distance(g, -1, 0), Error);
}

TEST_CASE("hop distance is a metric on small graphs") {
    for (const auto& g : {path_graph(8), cycle_graph(7), triangle()}) {
        const int s = g.site_count();
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) {
                const int dij = hop_distance(g, i, j);
                CHECK(dij == hop_distance(g, j, i));
                CHECK((dij == 0) == (i == j));
                for (int k = 0; k < s; ++k)
                    CHECK(dij <= hop_distance(g, i, k) + hop_distance(g, k, j));
            }
    }
}

TEST_CASE("diameter examples") {
    CHECK(diameter(path_graph(4)) == 3);
    CHECK(diameter(path_graph(1)) == 0);
    CHECK(diameter(cycle_graph(4)) == 2);
}

TEST_CASE("diameter matches the BFS oracle") {
    for (const auto& g : {path_graph(6), cycle_graph(8), triangle()}) {
        const auto dist = bfs_all_pairs(g.node_count(), g.edges());
        int expected = 0;
        for (const auto& row : dist)
            for (int d : row) expected = std::max(expected, d);
        CHECK(diameter(g) == expected);
    }
}

TEST_CASE("edge-sited distances use the line graph") {
    // Path 0-1-2-3: edges (0,1), (1,2), (2,3). Edge 0 and edge 2 share no
    // endpoint but are both adjacent to edge 1.
    std::vector<EdgeSpec> edges{{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}};
    std::vector<Element> elements{{0, 1.0}, {2, 1.0}};
    CinDescription g(4, edges, elements, ElementKind::edge_sited);
    CHECK(hop_distance(g, 0, 1) == 1);
    CHECK(hop_distance(g, 0, 2) == 2);
    CHECK(diameter(g) == 2);
}

TEST_CASE("construction validates invariants") {
    std::vector<EdgeSpec> edges{{0, 1, 1.0}};
    SUBCASE("duplicate element site") {
        std::vector<Element> elements{{0, 1.0}, {0, 2.0}};
        CHECK_THROWS_WITH_AS(CinDescription(2, edges, elements, ElementKind::node_sited),
                             doctest::Contains("E_DUP_SITE"), Error);
    }
    SUBCASE("disconnected graph") {
        std::vector<Element> elements{{0, 1.0}};
        CHECK_THROWS_WITH_AS(CinDescription(3, edges, elements, ElementKind::node_sited),
                             doctest::Contains("E_DISCONNECTED"), Error);
    }
    SUBCASE("negative distance") {
        std::vector<EdgeSpec> bad{{0, 1, -2.0}};
        std::vector<Element> elements{{0, 1.0}};
        CHECK_THROWS_WITH_AS(CinDescription(2, bad, elements, ElementKind::node_sited),
                             doctest::Contains("E_NEG_DISTANCE"), Error);
    }
    SUBCASE("element site out of range") {
        std::vector<Element> elements{{5, 1.0}};
        CHECK_THROWS_WITH_AS(CinDescription(2, edges, elements, ElementKind::node_sited),
                             doctest::Contains("E_UNKNOWN_ID"), Error);
    }
}

TEST_CASE("privacy params validation") {
    PrivacyParams p;
    CHECK_NOTHROW(p.validate());
    p.epsilon = 0.0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = PrivacyParams{};
    p.beta = -0.1;
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("adjacency: identical networks are not adjacent") {
    const auto g = triangle();
    CHECK_FALSE(check_adjacency(g, g, 2.0, 1.0));
}

TEST_CASE("adjacency: single value change within radius") {
    const auto g = triangle();
    auto values = g.values();
    values[1] += 0.05;
    const auto h = g.with_values(values);
    CHECK(check_adjacency(g, h, 1.0, 0.1));
    CHECK(check_adjacency(h, g, 1.0, 0.1));  // symmetric
    CHECK_FALSE(check_adjacency(g, h, 1.0, 0.01));
}

TEST_CASE("adjacency: two changed values are not adjacent") {
    const auto g = triangle();
    auto values = g.values();
    values[0] += 0.01;
    values[2] -= 0.01;
    CHECK_FALSE(check_adjacency(g, g.with_values(values), 1.0, 1.0));
}

TEST_CASE("adjacency: single location move within hop radius") {
    // Path of 5 nodes, elements on 0 and 2; move the second element to 3.
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < 4; ++i) edges.push_back({i, i + 1, 1.0});
    std::vector<Element> elements{{0, 1.0}, {2, 2.0}};
    CinDescription g(5, edges, elements, ElementKind::node_sited);
    const auto h = g.with_locations({0, 3});
    CHECK(check_adjacency(g, h, 1.0, 0.5));
    CHECK(check_adjacency(h, g, 1.0, 0.5));
    const auto far = g.with_locations({0, 4});
    CHECK_FALSE(check_adjacency(g, far, 1.0, 0.5));
    CHECK(check_adjacency(g, far, 2.0, 0.5));
}

TEST_CASE("adjacency rejects mismatched shapes") {
    const auto g = triangle();
    const auto p = path_graph(4);
    CHECK_THROWS_AS(check_adjacency(g, p, 1.0, 1.0), Error);
}

TEST_CASE("damaged copies may disconnect but keep other invariants") {
    // Removing the middle edge element of a path splits the routing graph.
    std::vector<EdgeSpec> edges{{0, 1, 1.0}, {1, 2, 1.0}};
    std::vector<Element> elements{{0, 5.0}, {1, 7.0}};
    CinDescription g(3, edges, elements, ElementKind::edge_sited);
    const auto damaged = g.without_elements({0});
    CHECK(damaged.element_count() == 1);
    CHECK(damaged.edges().size() == 1);
    CHECK(damaged.elements()[0].value == 7.0);
    CHECK_FALSE(damaged.connected());
}
