#ifndef DQM_DEGRADE_HPP
#define DQM_DEGRADE_HPP

#include <cstdint>
#include <vector>

#include "dqm/dataset.hpp"

namespace dqm {

/// Recipe for collapsing one class onto a few similar exemplars plus noise.
struct DegradeSpec {
    int target_class = 0;
    int num_exemplars = 10;
    int output_count = 1000;
    double noise_sigma = 1.0;
    std::uint64_t seed = 0;
};

struct SimilarSelection {
    std::size_t anchor = 0;
    std::vector<std::size_t> rows;  // anchor first, then by descending cosine
    std::size_t zero_norm_skipped = 0;
};

/// Picks a random anchor row of the class and the k-1 class rows most
/// cosine-similar to it (ties toward lower index). Zero-norm rows cannot
/// participate in the cosine ordering and are excluded.
SimilarSelection select_similar(const LabeledDataset& ds, int class_id, int k,
                                rng::Stream& stream);

/// Replaces the target class with spec.output_count rows, each drawn
/// uniformly with replacement from the selected exemplars plus i.i.d.
/// Gaussian noise per coordinate. Rows of other classes are untouched and
/// keep their original order; the synthesized block is appended.
LabeledDataset degrade(const LabeledDataset& ds, const DegradeSpec& spec);

}  // namespace dqm

#endif  // DQM_DEGRADE_HPP
