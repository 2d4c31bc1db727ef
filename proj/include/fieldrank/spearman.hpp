#pragma once

// Spearman rank correlation with average (fractional) ranks for ties:
// rank-transform both vectors, then Pearson on the ranks. With no ties this
// equals 1 - 6*sum(d^2) / (n(n^2-1)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "fieldrank/errors.hpp"

namespace fieldrank {

struct RankCorrelation {
    double rho = 0.0;
    std::size_t n = 0;
};

// 1-based ranks; tied observations share the average of their rank range.
inline std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // mean of ranks i+1 .. j+1
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(n);
    double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
    double num = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double da = a[i] - mean_a;
        double db = b[i] - mean_b;
        num += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 && var_b == 0.0) return 1.0;  // both constant
    if (var_a == 0.0 || var_b == 0.0) return 0.0;
    return num / std::sqrt(var_a * var_b);
}

inline RankCorrelation spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw validation_error("spearman: vector lengths differ (" + std::to_string(a.size()) +
                               " vs " + std::to_string(b.size()) + ")");
    if (a.size() < 2)
        throw validation_error("spearman: need at least 2 observations, got " +
                               std::to_string(a.size()));
    return {pearson(average_ranks(a), average_ranks(b)), a.size()};
}

}  // namespace fieldrank
