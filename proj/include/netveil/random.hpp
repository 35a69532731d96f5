#ifndef NETVEIL_RANDOM_HPP
#define NETVEIL_RANDOM_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "netveil/errors.hpp"

namespace netveil {

// Randomness seam for the mechanisms. The production implementation is a
// seeded Mersenne Twister; tests inject degenerate samplers (zero noise,
// modal category) through the same interface.
class Sampler {
  public:
    virtual ~Sampler() = default;

    // Uniform double in the open interval (0, 1).
    virtual double uniform01() = 0;

    // One draw from the zero-mean Laplace distribution with the given scale.
    virtual double laplace(double scale) = 0;

    // Index drawn with probability proportional to weights[i]. Weights must
    // be nonnegative with a positive sum.
    virtual std::size_t categorical(std::span<const double> weights) = 0;

    // k distinct indices drawn uniformly from {0, ..., population-1},
    // returned in ascending order.
    virtual std::vector<std::size_t> sample_without_replacement(std::size_t population,
                                                                std::size_t k) = 0;
};

// Deterministic sampler backed by mt19937_64. Uniform doubles are produced
// from the top 53 bits of the generator output so results do not depend on
// the standard library's distribution implementations.
class MtSampler final : public Sampler {
  public:
    explicit MtSampler(std::uint64_t seed) : engine_(seed) {}

    double uniform01() override;
    double laplace(double scale) override;
    std::size_t categorical(std::span<const double> weights) override;
    std::vector<std::size_t> sample_without_replacement(std::size_t population,
                                                        std::size_t k) override;

  private:
    std::mt19937_64 engine_;
};

// splitmix64 step; used to derive decorrelated sub-seeds from one root seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// Per-run seed contract: seed XOR run index.
inline std::uint64_t run_seed(std::uint64_t seed, std::uint64_t run_index) {
    return seed ^ run_index;
}

}  // namespace netveil

#endif
