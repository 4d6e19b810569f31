// reference_tables.hpp -- published lower bounds, for display deltas only

#pragma once

#include <array>
#include <optional>

namespace lcsbound {

/// A published lower bound obtained with word length `l`.
struct ReferenceRow {
    int sigma;
    int d;
    int l;
    double bound;
};

/// Published lower bounds per (sigma, d) with the word length used.
inline constexpr std::array<ReferenceRow, 41> kPublishedBounds = {{
    {2, 2, 10, 0.781281}, {2, 3, 7, 0.704473}, {2, 4, 5, 0.661274},
    {2, 5, 4, 0.636022},  {2, 6, 3, 0.617761}, {2, 7, 2, 0.602493},
    {2, 8, 2, 0.594016},  {2, 9, 2, 0.587900}, {2, 10, 1, 0.570155},
    {2, 11, 1, 0.570155}, {2, 12, 1, 0.563566}, {2, 13, 1, 0.563566},
    {2, 14, 1, 0.558494},
    {3, 2, 6, 0.671697},  {3, 3, 4, 0.556649}, {3, 4, 3, 0.498525},
    {3, 5, 2, 0.461402},  {3, 6, 1, 0.421436}, {3, 7, 1, 0.413611},
    {3, 8, 1, 0.405539},
    {4, 2, 5, 0.599248},  {4, 3, 3, 0.457311}, {4, 4, 2, 0.389008},
    {4, 5, 1, 0.335517},  {4, 6, 1, 0.324014},
    {5, 2, 4, 0.539129},  {5, 3, 2, 0.356717}, {5, 4, 1, 0.289398},
    {5, 5, 1, 0.273884},
    {6, 2, 3, 0.479452},  {6, 3, 2, 0.309424}, {6, 4, 1, 0.245283},
    {7, 2, 3, 0.444577},  {7, 3, 1, 0.234567}, {7, 4, 1, 0.212786},
    {8, 2, 2, 0.356545},  {8, 3, 1, 0.207547},
    {9, 2, 2, 0.327935},  {9, 3, 1, 0.186104},
    {10, 2, 2, 0.303490}, {10, 3, 1, 0.168674},
}};

/// Earlier lower bounds for d = 2 (Baeza-Yates et al. and Dancik-Deken).
/// Missing entries are empty.
struct PriorBounds {
    int sigma;
    std::optional<double> baeza_yates;
    double dancik_deken;
};

inline constexpr std::array<PriorBounds, 8> kPriorTwoWordBounds = {{
    {3, 0.63376, 0.61538},
    {4, 0.55282, 0.54545},
    {5, 0.50952, 0.50615},
    {6, 0.46695, 0.47169},
    {7, std::nullopt, 0.44502},
    {8, std::nullopt, 0.42237},
    {9, std::nullopt, 0.40321},
    {10, std::nullopt, 0.38656},
}};

inline std::optional<ReferenceRow> published_bound(int sigma, int d) {
    for (const auto& row : kPublishedBounds) {
        if (row.sigma == sigma && row.d == d) return row;
    }
    return std::nullopt;
}

}  // namespace lcsbound
