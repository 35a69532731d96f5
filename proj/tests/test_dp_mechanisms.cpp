#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "netveil/mechanisms.hpp"

using namespace netveil;

namespace {

CinDescription path_elements_on_all(int n) {
    std::vector<EdgeSpec> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
    std::vector<Element> elements;
    for (int i = 0; i < n; ++i) elements.push_back({i, static_cast<double>(i + 1)});
    return CinDescription(n, std::move(edges), std::move(elements), ElementKind::node_sited);
}

CinDescription single_element_graph(const std::vector<EdgeSpec>& edges, int n, int site) {
    return CinDescription(n, edges, {{site, 1.0}}, ElementKind::node_sited);
}

// Degenerate sampler: Laplace draws are zero and categorical draws pick the
// modal category (for the location sampler that is the element's own site).
struct ZeroNoiseSampler final : Sampler {
    double uniform01() override { return 0.5; }
    double laplace(double) override { return 0.0; }
    std::size_t categorical(std::span<const double> weights) override {
        return static_cast<std::size_t>(
            std::max_element(weights.begin(), weights.end()) - weights.begin());
    }
    std::vector<std::size_t> sample_without_replacement(std::size_t, std::size_t k) override {
        std::vector<std::size_t> ids(k);
        std::iota(ids.begin(), ids.end(), 0);
        return ids;
    }
};

// Exhaustive tie-break-aware assignment oracle. Enumerates every completion
// of the non-conflicting targets, keeps the minimum total hop cost, and
// breaks ties lexicographically over per-element preference ranks
// (raw target first, then by hop cost, then by site id), elements ascending.
std::vector<int> assignment_oracle(const std::vector<int>& raw,
                                   const CinDescription& g) {
    const std::size_t n = g.element_count();
    std::map<int, int> claims;
    for (int t : raw) ++claims[t];

    std::vector<int> fixed(n, -1);
    std::vector<std::size_t> conflicted;
    std::set<int> taken;
    for (std::size_t i = 0; i < n; ++i) {
        if (claims[raw[i]] == 1) {
            fixed[i] = raw[i];
            taken.insert(raw[i]);
        } else {
            conflicted.push_back(i);
        }
    }
    std::vector<int> free_sites;
    for (const auto& el : g.elements())
        if (!taken.count(el.site)) free_sites.push_back(el.site);
    std::sort(free_sites.begin(), free_sites.end());

    const auto cost = [&](std::size_t e, int s) {
        return hop_distance(g, g.elements()[e].site, s);
    };
    const auto pref_rank = [&](std::size_t e, int s) {
        std::vector<int> prefs = free_sites;
        std::stable_sort(prefs.begin(), prefs.end(), [&](int a, int b) {
            return std::make_pair(cost(e, a), a) < std::make_pair(cost(e, b), b);
        });
        if (auto it = std::find(prefs.begin(), prefs.end(), raw[e]); it != prefs.end()) {
            prefs.erase(it);
            prefs.insert(prefs.begin(), raw[e]);
        }
        return static_cast<int>(std::find(prefs.begin(), prefs.end(), s) - prefs.begin());
    };

    std::vector<int> best;
    long best_cost = -1;
    std::vector<int> best_ranks;
    std::vector<int> perm = free_sites;
    std::sort(perm.begin(), perm.end());
    do {
        long total = 0;
        std::vector<int> ranks;
        for (std::size_t k = 0; k < conflicted.size(); ++k) {
            total += cost(conflicted[k], perm[k]);
            ranks.push_back(pref_rank(conflicted[k], perm[k]));
        }
        if (best_cost < 0 || total < best_cost ||
            (total == best_cost && ranks < best_ranks)) {
            best_cost = total;
            best_ranks = ranks;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<int> out = fixed;
    for (std::size_t k = 0; k < conflicted.size(); ++k) out[conflicted[k]] = best[k];
    return out;
}

}  // namespace

TEST_CASE("laplace noise rejects bad scales") {
    MtSampler rng(1);
    CHECK_THROWS_AS(laplace_noise(0.0, 3, rng), Error);
    CHECK_THROWS_AS(laplace_noise(-1.0, 3, rng), Error);
}

TEST_CASE("zero-noise stub produces the all-zero vector") {
    ZeroNoiseSampler stub;
    const auto z = laplace_noise(0.1, 5, stub);
    for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("laplace sample moments match the distribution") {
    MtSampler rng(12345);
    const std::size_t n = 1'000'000;
    const auto z = laplace_noise(1.0, n, rng);
    const double mean = std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : z) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    // Var[Lap(1)] = 2; Monte-Carlo tolerance 2%.
    CHECK(std::abs(var - 2.0) < 0.04);
    CHECK(std::abs(mean) < 3.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("value obfuscation keeps values with the zero stub") {
    std::vector<EdgeSpec> edges{{0, 1, 1.0}, {1, 2, 1.0}};
    CinDescription g(3, edges, {{0, 5.0}, {1, 3.0}, {2, 2.0}}, ElementKind::node_sited);
    ZeroNoiseSampler stub;
    const auto noisy = obfuscate_values(g, 1.0, 0.1, stub);
    CHECK(noisy.values == std::vector<double>{5.0, 3.0, 2.0});
    CHECK(noisy.noise == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("value obfuscation noise scale is alpha over epsilon") {
    // epsilon 2, alpha_v 1 -> Laplace scale 0.5, variance 2 * 0.25.
    const auto g = path_elements_on_all(4);
    MtSampler rng(31);
    std::vector<double> draws;
    while (draws.size() < 60'000) {
        const auto noisy = obfuscate_values(g, 2.0, 1.0, rng);
        draws.insert(draws.end(), noisy.noise.begin(), noisy.noise.end());
    }
    double var = 0.0;
    for (double z : draws) var += z * z;
    var /= static_cast<double>(draws.size());
    CHECK(std::abs(var - 0.5) < 0.03);
}

TEST_CASE("value obfuscation noise is unbiased across seeds") {
    const auto g = path_elements_on_all(3);
    double sum = 0.0;
    const std::size_t seeds = 100'000;
    for (std::size_t s = 0; s < seeds; ++s) {
        MtSampler rng(s);
        const auto noisy = obfuscate_values(g, 1.0, 0.1, rng);
        sum += noisy.noise[0];
    }
    const double mean = sum / static_cast<double>(seeds);
    const double se = std::sqrt(2.0 * 0.1 * 0.1 / static_cast<double>(seeds));
    CHECK(std::abs(mean) < 3.0 * se);
}

TEST_CASE("location sampling weights on the 4-node path") {
    const auto g = path_elements_on_all(4);
    const auto dist = location_sampling_distribution(g, 1, 1.0, 1.0);
    REQUIRE(dist.size() == 4);
    // weights [e^-0.5, 1, e^-0.5, e^-1] normalized
    const double z = 2.0 * std::exp(-0.5) + 1.0 + std::exp(-1.0);
    CHECK(dist[0].second == doctest::Approx(std::exp(-0.5) / z).epsilon(1e-12));
    CHECK(dist[1].second == doctest::Approx(1.0 / z).epsilon(1e-12));
    CHECK(dist[2].second == doctest::Approx(std::exp(-0.5) / z).epsilon(1e-12));
    CHECK(dist[3].second == doctest::Approx(std::exp(-1.0) / z).epsilon(1e-12));
    // Reference figures for the same setup.
    CHECK(dist[0].second == doctest::Approx(0.2350).epsilon(1e-3));
    CHECK(dist[1].second == doctest::Approx(0.3875).epsilon(1e-3));
    CHECK(dist[3].second == doctest::Approx(0.1425).epsilon(1e-3));
}

TEST_CASE("huge alpha_loc flattens the distribution to uniform") {
    const auto g = path_elements_on_all(4);
    const auto dist = location_sampling_distribution(g, 0, 1.0, 1e9);
    double tv = 0.0;
    for (const auto& [site, p] : dist) tv += std::abs(p - 0.25);
    CHECK(tv / 2.0 < 1e-6);
}

TEST_CASE("a single element keeps its own site with probability 1") {
    std::vector<EdgeSpec> edges{{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}};
    const auto g = single_element_graph(edges, 4, 1);
    const auto dist = location_sampling_distribution(g, 0, 1.0, 1.0);
    REQUIRE(dist.size() == 1);
    CHECK(dist[0].first == 1);
    CHECK(dist[0].second == 1.0);
    MtSampler rng(9);
    const auto raw = sample_locations(g, 1.0, 1.0, rng);
    CHECK(raw == std::vector<int>{1});
}

TEST_CASE("assignment repair keeps collision-free targets") {
    const auto g = path_elements_on_all(4);
    const std::vector<int> raw{2, 0, 3, 1};
    const auto perm = resolve_assignment(raw, g);
    CHECK(perm.target_site == raw);
}

TEST_CASE("assignment repair on the documented 3-path collision") {
    const auto g = path_elements_on_all(3);
    // raw: element 0 -> site 2, element 1 -> site 2, element 2 -> site 0
    const auto perm = resolve_assignment({2, 2, 0}, g);
    CHECK(perm.target_site == std::vector<int>{2, 1, 0});
}

TEST_CASE("all elements targeting one site: lowest index keeps it") {
    const auto g = path_elements_on_all(5);
    const auto perm = resolve_assignment({2, 2, 2, 2, 2}, g);
    CHECK(perm.target_site == assignment_oracle({2, 2, 2, 2, 2}, g));
    // Element 2 sits on the contested site already (cost 0); elements are
    // still processed in ascending order subject to total-cost optimality.
    std::set<int> sites(perm.target_site.begin(), perm.target_site.end());
    CHECK(sites.size() == 5);
}

TEST_CASE("assignment repair matches the exhaustive oracle") {
    const auto cycle_elements_on_all = [](int n) {
        std::vector<EdgeSpec> edges;
        for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
        std::vector<Element> elements;
        for (int i = 0; i < n; ++i) elements.push_back({i, 1.0});
        return CinDescription(n, std::move(edges), std::move(elements),
                              ElementKind::node_sited);
    };
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        MtSampler rng(seed);
        const int n = 3 + static_cast<int>(rng.uniform01() * 4);  // 3..6 elements
        // Cycles produce many equal-cost completions, stressing the
        // tie-break harder than path graphs do.
        const auto g = seed % 2 == 0 ? path_elements_on_all(n) : cycle_elements_on_all(n);
        std::vector<int> raw(n);
        for (auto& t : raw) t = static_cast<int>(rng.uniform01() * n);
        const auto perm = resolve_assignment(raw, g);
        const auto expected = assignment_oracle(raw, g);
        CAPTURE(seed);
        CHECK(perm.target_site == expected);
    }
}

TEST_CASE("shuffle is always a bijection over the occupied sites") {
    std::vector<EdgeSpec> edges{{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0},
                                {3, 4, 1.0}, {4, 5, 1.0}, {5, 0, 1.0},
                                {0, 3, 1.0}};
    std::vector<Element> elements{{0, 4.0}, {2, 7.0}, {3, 1.0}, {5, 9.0}};
    CinDescription g(6, edges, elements, ElementKind::node_sited);
    std::set<int> original_sites;
    for (const auto& el : g.elements()) original_sites.insert(el.site);

    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        MtSampler rng(seed);
        const auto shuffled = shuffle_locations(g, 1.0, 2.0, rng);
        std::set<int> released_sites;
        for (const auto& el : shuffled.elements()) released_sites.insert(el.site);
        REQUIRE(released_sites == original_sites);
        // Values travel with their elements.
        CHECK(shuffled.values() == g.values());
    }
}

TEST_CASE("zero-entropy stub yields the identity permutation") {
    const auto g = path_elements_on_all(5);
    ZeroNoiseSampler stub;
    const auto shuffled = shuffle_locations(g, 1.0, 1.0, stub);
    CHECK(shuffled == g);
}

TEST_CASE("mechanisms are deterministic under a fixed seed") {
    const auto g = path_elements_on_all(6);
    for (std::uint64_t seed : {7ULL, 99ULL}) {
        MtSampler a(seed), b(seed);
        CHECK(shuffle_locations(g, 1.0, 1.5, a) == shuffle_locations(g, 1.0, 1.5, b));
        MtSampler c(seed), d(seed);
        CHECK(obfuscate_values(g, 1.0, 0.1, c).values ==
              obfuscate_values(g, 1.0, 0.1, d).values);
    }
}

TEST_CASE("analytic ratio bound for the location mechanism") {
    // Single-element networks, sampling over every site: the released
    // distribution ratio between inputs one move apart stays within e^eps.
    std::vector<EdgeSpec> path4;
    for (int i = 0; i < 3; ++i) path4.push_back({i, i + 1, 1.0});
    std::vector<EdgeSpec> cycle5;
    for (int i = 0; i < 5; ++i) cycle5.push_back({i, (i + 1) % 5, 1.0});

    for (double eps : {0.5, 1.0, 2.0}) {
        for (double alpha : {1.0, 2.0}) {
            for (const auto& [edges, n] :
                 std::vector<std::pair<std::vector<EdgeSpec>, int>>{{path4, 4}, {cycle5, 5}}) {
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        if (a == b) continue;
                        const auto ga = single_element_graph(edges, n, a);
                        const auto gb = single_element_graph(edges, n, b);
                        if (hop_distance(ga, a, b) > alpha) continue;  // not adjacent
                        const auto da =
                            location_sampling_distribution(ga, 0, eps, alpha, SitePool::all_sites);
                        const auto db =
                            location_sampling_distribution(gb, 0, eps, alpha, SitePool::all_sites);
                        for (std::size_t o = 0; o < da.size(); ++o) {
                            CHECK(da[o].first == db[o].first);
                            CHECK(da[o].second <= std::exp(eps) * db[o].second + 1e-12);
                        }
                    }
            }
        }
    }
}

TEST_CASE("laplace density ratio bound") {
    const double eps = 1.0, alpha = 0.5;
    const double scale = alpha / eps;
    MtSampler rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(4), shift(4), output(4);
        for (auto& x : v) x = 10.0 * rng.uniform01();
        // Neighbor at l1 distance <= alpha.
        double remaining = alpha;
        for (auto& s : shift) {
            s = (rng.uniform01() - 0.5) * remaining;
            remaining -= std::abs(s);
        }
        for (std::size_t i = 0; i < 4; ++i) output[i] = v[i] + rng.laplace(scale);

        std::vector<double> off_a(4), off_b(4);
        for (std::size_t i = 0; i < 4; ++i) {
            off_a[i] = output[i] - v[i];
            off_b[i] = output[i] - (v[i] + shift[i]);
        }
        const double log_ratio =
            laplace_log_density(off_a, scale) - laplace_log_density(off_b, scale);
        CHECK(log_ratio <= eps + 1e-12);
    }
}
