#include "netveil/random.hpp"

#include <algorithm>
#include <cmath>

namespace netveil {

double MtSampler::uniform01() {
    // (0, 1) exclusive: 53-bit mantissa shifted to the cell midpoints.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double MtSampler::laplace(double scale) {
    if (scale <= 0.0) throw Error(ErrorCode::bad_parameter, "laplace scale must be > 0");
    const double u = uniform01() - 0.5;  // (-0.5, 0.5)
    const double sign = u < 0.0 ? -1.0 : 1.0;
    return -scale * sign * std::log(1.0 - 2.0 * std::abs(u));
}

std::size_t MtSampler::categorical(std::span<const double> weights) {
    if (weights.empty()) throw Error(ErrorCode::bad_parameter, "categorical: no weights");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w))
            throw Error(ErrorCode::bad_parameter, "categorical: weights must be finite and >= 0");
        total += w;
    }
    if (total <= 0.0) throw Error(ErrorCode::bad_parameter, "categorical: weight sum must be > 0");
    const double target = uniform01() * total;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cumulative += weights[i];
        if (target < cumulative) return i;
    }
    return weights.size() - 1;  // fp slack on the last cell
}

std::vector<std::size_t> MtSampler::sample_without_replacement(std::size_t population,
                                                               std::size_t k) {
    if (k > population)
        throw Error(ErrorCode::bad_parameter, "sample_without_replacement: k > population");
    std::vector<std::size_t> pool(population);
    for (std::size_t i = 0; i < population; ++i) pool[i] = i;
    // Partial Fisher-Yates driven by uniform01 so the draw sequence is
    // platform-stable.
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t remaining = population - i;
        auto offset = static_cast<std::size_t>(uniform01() * static_cast<double>(remaining));
        if (offset >= remaining) offset = remaining - 1;
        std::swap(pool[i], pool[i + offset]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace netveil
