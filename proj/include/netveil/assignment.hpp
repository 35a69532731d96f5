#ifndef NETVEIL_ASSIGNMENT_HPP
#define NETVEIL_ASSIGNMENT_HPP

#include <cstdint>
#include <vector>

namespace netveil {

// Minimum-cost perfect matching on a square cost matrix (Hungarian method,
// O(n^3)). Returns the column assigned to each row.
std::vector<int> min_cost_assignment(const std::vector<std::vector<std::int64_t>>& cost);

// Total cost of the optimal assignment.
std::int64_t min_assignment_cost(const std::vector<std::vector<std::int64_t>>& cost);

}  // namespace netveil

#endif
