#ifndef DQM_STATS_HPP
#define DQM_STATS_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dqm::stats {

/// Two aligned series plus optional per-point names.
struct PairedSeries {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<std::string> labels;
};

/// Bootstrap mean and variance estimators: mu = mean(s), var = mean(s^2) - mu^2,
/// evaluated after centering on the first sample and clamped at zero.
std::pair<double, double> bootstrap_moments(std::span<const double> samples);

/// Product-moment correlation; empty when either series has zero variance.
std::optional<double> pearson(const PairedSeries& series);

/// Rank correlation with average ranks for ties; empty when either rank
/// series has zero variance.
std::optional<double> spearman(const PairedSeries& series);

/// Fractional ranks, 1-based, ties averaged.
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace dqm::stats

#endif  // DQM_STATS_HPP
