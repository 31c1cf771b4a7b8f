#ifndef DQM_BASELINES_HPP
#define DQM_BASELINES_HPP

#include <optional>

#include "dqm/dataset.hpp"

namespace dqm::baselines {

/// Maximum per-feature multi-class Fisher ratio. A feature with zero pooled
/// within-class variance but separated class means yields +inf (a perfect
/// separator).
double f1(const LabeledDataset& ds);

/// Fraction of points incident to a minimum-spanning-tree edge that joins
/// two classes. Prim over on-the-fly Euclidean distances, O(m^2) time and
/// O(m) memory; distance ties break toward the lower row index.
double n1(const LabeledDataset& ds);

/// Leave-one-out 1-nearest-neighbor error rate; ties toward lower row index.
double n3(const LabeledDataset& ds);

struct BaselineReport {
    std::optional<double> f1;
    std::optional<double> n1;
    std::optional<double> n3;
    bool f1_perfect_separator = false;
    double f1_elapsed_s = 0.0;
    double n1_elapsed_s = 0.0;
    double n3_elapsed_s = 0.0;
};

struct BaselineSelection {
    bool f1 = true;
    bool n1 = true;
    bool n3 = true;
};

BaselineReport run(const LabeledDataset& ds, const BaselineSelection& which = {});

}  // namespace dqm::baselines

#endif  // DQM_BASELINES_HPP
