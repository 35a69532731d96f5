#ifndef NETVEIL_MECHANISMS_HPP
#define NETVEIL_MECHANISMS_HPP

#include <utility>
#include <vector>

#include "netveil/model.hpp"
#include "netveil/random.hpp"

namespace netveil {

// Candidate pool for the location sampler. `occupied` shuffles elements
// among the sites they collectively occupy (the release never places an
// element on a previously empty site). `all_sites` samples over every site
// of the element's kind; it is the data-independent variant under which the
// output-distribution ratio bound is checkable even for a single element.
enum class SitePool { occupied, all_sites };

// Bijection from element index onto a set of distinct sites.
struct LocationPermutation {
    std::vector<int> target_site;  // target_site[i] = released site of element i

    void validate_against(const CinDescription& network) const;
};

struct NoisyValues {
    std::vector<double> values;  // released values, values[i] = original + noise[i]
    std::vector<double> noise;   // realized draws, retained for audit
};

// count i.i.d. zero-mean Laplace draws with the given scale.
std::vector<double> laplace_noise(double scale, std::size_t count, Sampler& sampler);

// Laplace value release: adds Lap(alpha_val / epsilon) noise to every
// element value. Locations untouched.
NoisyValues obfuscate_values(const CinDescription& network,
                             double epsilon,
                             double alpha_val,
                             Sampler& sampler);

// Exact per-site probabilities used by the location sampler for one element:
// weight exp(-epsilon * d(site_i, site_j) / (2 * alpha_loc)), normalized over
// the pool. Returned as (site, probability) pairs in ascending site order.
std::vector<std::pair<int, double>> location_sampling_distribution(
    const CinDescription& network,
    std::size_t element_index,
    double epsilon,
    double alpha_loc,
    SitePool pool = SitePool::occupied);

// Independent per-element draws of a target site. Targets may collide;
// resolve_assignment repairs them into a bijection.
std::vector<int> sample_locations(const CinDescription& network,
                                  double epsilon,
                                  double alpha_loc,
                                  Sampler& sampler,
                                  SitePool pool = SitePool::occupied);

// Turns raw targets into a bijection onto the originally occupied sites.
// Every uniquely claimed target is kept. Conflicting elements and leftover
// sites are matched with minimum total hop distance (measured from each
// element's original site); among minimum-cost completions, elements are
// processed in ascending index order and each keeps the best available site
// (its own raw target first, then by hop cost, then by site id) consistent
// with overall minimality.
LocationPermutation resolve_assignment(const std::vector<int>& raw_targets,
                                       const CinDescription& network);

// Phase 1: sample + repair; values travel with their elements.
CinDescription shuffle_locations(const CinDescription& network,
                                 double epsilon,
                                 double alpha_loc,
                                 Sampler& sampler);

// Log density of an i.i.d. Laplace(scale) vector at the given offsets;
// used by the privacy ratio tests.
double laplace_log_density(const std::vector<double>& offsets, double scale);

}  // namespace netveil

#endif
