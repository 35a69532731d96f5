#ifndef NETVEIL_RESTORE_HPP
#define NETVEIL_RESTORE_HPP

#include <cstddef>
#include <vector>

#include "netveil/problems.hpp"

namespace netveil {

// Closed half-space {z : sum_k coeff_k * z[index_k] <= bound}, stored
// sparsely. Most constraint families here touch one or two coordinates.
struct Halfspace {
    std::vector<std::pair<std::size_t, double>> terms;
    double bound = 0.0;
};

// Euclidean projection of a point onto a single half-space a . z <= b.
// Points already inside are returned unchanged.
std::vector<double> project_halfspace(const std::vector<double>& point,
                                      const std::vector<double>& normal,
                                      double offset);

struct DykstraOptions {
    double tol = 1e-8;             // stop when a full sweep moves less than this
    std::size_t max_sweeps = 100000;
};

struct DykstraOutcome {
    std::vector<double> point;
    std::size_t sweeps = 0;
    bool converged = false;   // sweep movement fell below tol within budget
    double max_residual = 0.0;  // worst constraint violation at the final point
};

// Dykstra's alternating projections onto an intersection of half-spaces.
// Converges to the Euclidean projection of `start` when the intersection is
// nonempty; on an empty intersection the sweep movement does not vanish and
// the budget runs out (converged = false).
DykstraOutcome dykstra_project(const std::vector<double>& start,
                               const std::vector<Halfspace>& halfspaces,
                               const DykstraOptions& options = {});

struct RestorationResult {
    std::vector<double> values;  // restored value vector, elementwise >= 0
    Solution witness;            // feasible candidate solution under `values`
    double gap = 0.0;            // |O(witness, values) - Ostar| / Ostar
    std::size_t iterations = 0;  // projection sweeps (convex) or outer rounds (exact)
    bool converged = false;
};

struct RestoreOptions {
    double tol = 1e-8;
    std::size_t max_sweeps = 100000;  // total projection budget
    std::size_t max_rounds = 1000;    // outer rounds of the cutting-plane loop
};

// Convex restoration: nearest value vector (2-norm) admitting a candidate
// solution that is feasible and within the relative faithfulness band
// |O - Ostar| <= beta * Ostar. Dispatch couples (values, dispatch) jointly;
// traffic fixes one candidate path per O-D pair (taken from the noisy
// weights) and projects values only.
RestorationResult restore_convex(const DispatchInstance& inst,
                                 const std::vector<double>& noisy,
                                 double ostar,
                                 double beta,
                                 const RestoreOptions& options = {});
RestorationResult restore_convex(const TrafficInstance& inst,
                                 const std::vector<double>& noisy,
                                 double ostar,
                                 double beta,
                                 const RestoreOptions& options = {});

// Exact restoration for the routing case: delayed constraint generation over
// competitor paths until the witness paths are certified optimal under the
// restored values (re-solved shortest paths cannot beat them by > 1e-9).
RestorationResult restore_exact_sp(const TrafficInstance& inst,
                                   const std::vector<double>& noisy,
                                   double ostar,
                                   double beta,
                                   const RestoreOptions& options = {});

}  // namespace netveil

#endif
