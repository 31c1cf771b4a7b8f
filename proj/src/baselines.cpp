#include "dqm/baselines.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dqm::baselines {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double f1(const LabeledDataset& ds) {
    validate(ds);
    const ClassPartition part = partition(ds);
    const auto c = static_cast<std::size_t>(ds.c);

    // Per-class per-feature squared deviations around the class mean.
    std::vector<double> within(c * ds.n, 0.0);
    for (std::size_t i = 0; i < ds.m; ++i) {
        const auto y = static_cast<std::size_t>(ds.labels[i]);
        const auto row = ds.row(i);
        const double* mean = part.class_means[y].data();
        double* acc = within.data() + y * ds.n;
        for (std::size_t j = 0; j < ds.n; ++j) {
            const double d = row[j] - mean[j];
            acc[j] += d * d;
        }
    }

    double best = 0.0;
    for (std::size_t j = 0; j < ds.n; ++j) {
        double numerator = 0.0;
        double denominator = 0.0;
        for (std::size_t cls = 0; cls < c; ++cls) {
            const double p = static_cast<double>(part.counts[cls]) / static_cast<double>(ds.m);
            const double md = part.class_means[cls][j] - part.global_mean[j];
            numerator += p * md * md;
            denominator +=
                p * within[cls * ds.n + j] / static_cast<double>(part.counts[cls]);
        }
        double ratio;
        if (denominator == 0.0)
            ratio = numerator == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        else
            ratio = numerator / denominator;
        best = std::max(best, ratio);
    }
    return best;
}

double n1(const LabeledDataset& ds) {
    validate(ds);
    if (ds.m < 2) throw std::invalid_argument("n1: need at least 2 rows");
    const std::size_t m = ds.m;

    std::vector<char> in_tree(m, 0);
    std::vector<double> key(m, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> parent(m, 0);
    std::vector<char> boundary(m, 0);

    std::size_t current = 0;
    in_tree[0] = 1;
    for (std::size_t added = 1; added < m; ++added) {
        const auto crow = ds.row(current);
        std::size_t best = m;
        for (std::size_t v = 0; v < m; ++v) {
            if (in_tree[v]) continue;
            const double d = squared_distance(crow, ds.row(v));
            if (d < key[v] || (d == key[v] && current < parent[v])) {
                key[v] = d;
                parent[v] = current;
            }
            if (best == m || key[v] < key[best]) best = v;  // ties keep lower index
        }
        in_tree[best] = 1;
        if (ds.labels[best] != ds.labels[parent[best]]) {
            boundary[best] = 1;
            boundary[parent[best]] = 1;
        }
        current = best;
    }

    std::size_t crossing = 0;
    for (char b : boundary) crossing += static_cast<std::size_t>(b);
    return static_cast<double>(crossing) / static_cast<double>(m);
}

double n3(const LabeledDataset& ds) {
    validate(ds);
    if (ds.m < 2) throw std::invalid_argument("n3: need at least 2 rows");

    std::size_t errors = 0;
    for (std::size_t i = 0; i < ds.m; ++i) {
        const auto a = ds.row(i);
        double best = std::numeric_limits<double>::infinity();
        std::size_t nearest = ds.m;
        for (std::size_t j = 0; j < ds.m; ++j) {
            if (j == i) continue;
            const double d = squared_distance(a, ds.row(j));
            if (d < best) {  // ties keep the lower index seen first
                best = d;
                nearest = j;
            }
        }
        if (ds.labels[nearest] != ds.labels[i]) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(ds.m);
}

BaselineReport run(const LabeledDataset& ds, const BaselineSelection& which) {
    BaselineReport report;
    if (which.f1) {
        const auto t0 = std::chrono::steady_clock::now();
        report.f1 = f1(ds);
        report.f1_elapsed_s = seconds_since(t0);
        report.f1_perfect_separator = std::isinf(*report.f1);
    }
    if (which.n1) {
        const auto t0 = std::chrono::steady_clock::now();
        report.n1 = n1(ds);
        report.n1_elapsed_s = seconds_since(t0);
    }
    if (which.n3) {
        const auto t0 = std::chrono::steady_clock::now();
        report.n3 = n3(ds);
        report.n3_elapsed_s = seconds_since(t0);
    }
    return report;
}

}  // namespace dqm::baselines
