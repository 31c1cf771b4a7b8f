#include "dqm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dqm::stats {

std::pair<double, double> bootstrap_moments(std::span<const double> samples) {
    if (samples.empty())
        throw std::invalid_argument("bootstrap_moments: empty sample list");
    // Shift by the first sample; the estimators are shift-equivariant and
    // this avoids cancellation in mean(s^2) - mean(s)^2.
    const double shift = samples.front();
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double s : samples) {
        const double d = s - shift;
        sum += d;
        sum_sq += d * d;
    }
    const double inv_b = 1.0 / static_cast<double>(samples.size());
    const double mean_shifted = sum * inv_b;
    const double variance = std::max(0.0, sum_sq * inv_b - mean_shifted * mean_shifted);
    return {shift + mean_shifted, variance};
}

namespace {

std::optional<double> pearson_impl(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n != ys.size()) throw std::invalid_argument("pearson: series length mismatch");
    if (n < 2) throw std::invalid_argument("pearson: need at least 2 points");

    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::optional<double> pearson(const PairedSeries& series) {
    return pearson_impl(series.xs, series.ys);
}

std::vector<double> average_ranks(std::span<const double> values) {
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
        const double rank = static_cast<double>(i + j + 2) / 2.0;  // 1-based average
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> spearman(const PairedSeries& series) {
    if (series.xs.size() != series.ys.size())
        throw std::invalid_argument("spearman: series length mismatch");
    const std::vector<double> rx = average_ranks(series.xs);
    const std::vector<double> ry = average_ranks(series.ys);
    return pearson_impl(rx, ry);
}

}  // namespace dqm::stats
