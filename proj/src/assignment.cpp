#include "netveil/assignment.hpp"

#include <limits>

#include "netveil/errors.hpp"

namespace netveil {

// Potentials-and-augmenting-paths formulation over a square matrix.
std::vector<int> min_cost_assignment(const std::vector<std::vector<std::int64_t>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != n)
            throw Error(ErrorCode::shape_mismatch, "assignment cost matrix must be square");

    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> row_potential(n + 1, 0), col_potential(n + 1, 0);
    std::vector<int> matched_row(n + 1, 0);  // matched_row[col] = row (1-based), 0 = free
    std::vector<int> previous_col(n + 1, 0);

    for (int row = 1; row <= n; ++row) {
        matched_row[0] = row;
        int current_col = 0;
        std::vector<std::int64_t> min_slack(n + 1, kInf);
        std::vector<bool> visited(n + 1, false);
        do {
            visited[current_col] = true;
            const int current_row = matched_row[current_col];
            std::int64_t best_delta = kInf;
            int next_col = -1;
            for (int col = 1; col <= n; ++col) {
                if (visited[col]) continue;
                const std::int64_t reduced = cost[current_row - 1][col - 1] -
                                             row_potential[current_row] - col_potential[col];
                if (reduced < min_slack[col]) {
                    min_slack[col] = reduced;
                    previous_col[col] = current_col;
                }
                if (min_slack[col] < best_delta) {
                    best_delta = min_slack[col];
                    next_col = col;
                }
            }
            for (int col = 0; col <= n; ++col) {
                if (visited[col]) {
                    row_potential[matched_row[col]] += best_delta;
                    col_potential[col] -= best_delta;
                } else {
                    min_slack[col] -= best_delta;
                }
            }
            current_col = next_col;
        } while (matched_row[current_col] != 0);

        // Augment along the alternating path.
        while (current_col != 0) {
            const int prev = previous_col[current_col];
            matched_row[current_col] = matched_row[prev];
            current_col = prev;
        }
    }

    std::vector<int> row_to_col(n, -1);
    for (int col = 1; col <= n; ++col)
        if (matched_row[col] != 0) row_to_col[matched_row[col] - 1] = col - 1;
    return row_to_col;
}

std::int64_t min_assignment_cost(const std::vector<std::vector<std::int64_t>>& cost) {
    const auto assignment = min_cost_assignment(cost);
    std::int64_t total = 0;
    for (std::size_t row = 0; row < assignment.size(); ++row)
        total += cost[row][static_cast<std::size_t>(assignment[row])];
    return total;
}

}  // namespace netveil
