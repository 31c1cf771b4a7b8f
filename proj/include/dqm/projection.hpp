#ifndef DQM_PROJECTION_HPP
#define DQM_PROJECTION_HPP

#include <span>
#include <vector>

#include "dqm/dataset.hpp"
#include "dqm/rng.hpp"

namespace dqm {

/// Unit-norm direction in feature space.
struct ProjectionVector {
    std::vector<double> v;
};

/// Within/between quadratic forms of the normalized scatter matrices along
/// one direction. within_total is the sum of the per-class entries.
struct QuadraticForms {
    double within_total = 0.0;
    std::vector<double> within_per_class;
    double between = 0.0;
};

/// i.i.d. standard-normal coordinates scaled to unit Euclidean norm.
ProjectionVector sample_unit_vector(std::size_t n, rng::Stream& stream);

/// Streaming evaluation: projects every row once, O(m*n) time and O(c)
/// extra memory, no n*n matrix ever formed. `direction` need not be unit
/// norm (the forms then scale by its squared norm).
QuadraticForms quadratic_forms(const LabeledDataset& ds, const ClassPartition& part,
                               std::span<const double> direction);

inline QuadraticForms quadratic_forms(const LabeledDataset& ds, const ClassPartition& part,
                                      const ProjectionVector& v) {
    return quadratic_forms(ds, part, std::span<const double>(v.v));
}

}  // namespace dqm

#endif  // DQM_PROJECTION_HPP
