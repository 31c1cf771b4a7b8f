#include "dqm/projection.hpp"

#include <cmath>
#include <stdexcept>

namespace dqm {

namespace {

// Neumaier compensated accumulator; keeps per-class sums accurate on
// large row counts.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double value) {
        const double t = sum + value;
        if (std::abs(sum) >= std::abs(value))
            comp += (sum - t) + value;
        else
            comp += (value - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace

ProjectionVector sample_unit_vector(std::size_t n, rng::Stream& stream) {
    if (n == 0) throw std::invalid_argument("sample_unit_vector: n must be >= 1");
    ProjectionVector out;
    out.v.resize(n);
    for (;;) {
        double norm_sq = 0.0;
        for (double& x : out.v) {
            x = stream.normal();
            norm_sq += x * x;
        }
        if (norm_sq > 0.0) {
            if (n == 1) {
                out.v[0] = out.v[0] >= 0.0 ? 1.0 : -1.0;  // the only unit vectors in 1-D
                return out;
            }
            const double norm = std::sqrt(norm_sq);
            for (double& x : out.v) x /= norm;
            return out;
        }
        // norm exactly zero: resample (measure-zero event)
    }
}

QuadraticForms quadratic_forms(const LabeledDataset& ds, const ClassPartition& part,
                               std::span<const double> direction) {
    if (direction.size() != ds.n)
        throw std::invalid_argument("quadratic_forms: direction length != feature dimension");
    if (part.class_means.size() != static_cast<std::size_t>(ds.c))
        throw std::invalid_argument("quadratic_forms: partition does not match dataset");

    const auto c = static_cast<std::size_t>(ds.c);
    std::vector<double> proj_class_mean(c);
    for (std::size_t i = 0; i < c; ++i)
        proj_class_mean[i] = dot(direction, part.class_means[i]);
    const double proj_global_mean = dot(direction, part.global_mean);

    std::vector<CompensatedSum> scatter(c);
    for (std::size_t row = 0; row < ds.m; ++row) {
        const auto y = static_cast<std::size_t>(ds.labels[row]);
        const double d = dot(direction, ds.row(row)) - proj_class_mean[y];
        scatter[y].add(d * d);
    }

    QuadraticForms out;
    out.within_per_class.resize(c);
    for (std::size_t i = 0; i < c; ++i) {
        out.within_per_class[i] = scatter[i].value() / static_cast<double>(part.counts[i]);
        out.within_total += out.within_per_class[i];
    }
    const double inv_m = 1.0 / static_cast<double>(ds.m);
    for (std::size_t i = 0; i < c; ++i) {
        const double d = proj_class_mean[i] - proj_global_mean;
        out.between += static_cast<double>(part.counts[i]) * inv_m * (d * d);
    }
    return out;
}

}  // namespace dqm
