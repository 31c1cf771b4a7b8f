#ifndef DQM_DATASET_HPP
#define DQM_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqm/rng.hpp"

namespace dqm {

/// Bad or unreadable input (file missing, parse failure, format violation).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The data admits no meaningful value for the requested measure.
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Dense labeled dataset: m rows of n real features plus one class id per row.
 * Class ids are contiguous in [0, c); `label_names[id]` keeps the label text
 * as it appeared in the source file.
 */
struct LabeledDataset {
    std::vector<double> data;   // row-major, m * n
    std::vector<int> labels;    // m entries in [0, c)
    std::size_t m = 0;
    std::size_t n = 0;
    int c = 0;
    std::vector<std::string> label_names;

    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * n, n};
    }
    std::span<double> row(std::size_t i) {
        return {data.data() + i * n, n};
    }
};

/// Per-class row index lists, counts, class means and the global mean.
struct ClassPartition {
    std::vector<std::vector<std::size_t>> per_class_rows;
    std::vector<std::size_t> counts;
    std::vector<std::vector<double>> class_means;  // c vectors of length n
    std::vector<double> global_mean;               // length n
};

/// Knobs of the bootstrap + random-projection estimator.
struct MeasureConfig {
    int B = 100;              // bootstrap iterations
    double R = 0.25;          // per-class sample ratio, in (0, 1]
    int nv = 10;              // random directions per iteration
    std::uint64_t seed = 0;
    bool standardize = true;  // standardize each bootstrap sample
};

/// Throws std::invalid_argument when a MeasureConfig field is out of range.
void validate(const MeasureConfig& cfg);

/// Throws InputError when a dataset invariant is violated (label range,
/// non-finite values, empty class, c < 2).
void validate(const LabeledDataset& ds);

/// Load an RFC-4180 CSV with a header row. The label column is resolved by
/// exact header name first, then as a zero-based column index. Labels are
/// remapped to contiguous ids in order of first appearance.
LabeledDataset load_csv(const std::string& path, const std::string& label_column);

/// Load an IDX image/label file pair (big-endian, unsigned-byte payload).
/// Images of d dimensions are flattened row-major to n = prod(dims[1..]).
LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path);

/// Load a raw little-endian float64 matrix described by a JSON sidecar at
/// `<data_path>.json` with fields {m, n, c, labels_path}. Labels are
/// little-endian int32, already contiguous in [0, c).
LabeledDataset load_raw(const std::string& data_path);

/// Write as CSV with feature_0..feature_{n-1} columns and a trailing label
/// column carrying the original label text. Values round-trip exactly.
void write_csv(const LabeledDataset& ds, const std::string& path);

/// Write the raw float64 + int32 labels + JSON sidecar triple.
void write_raw(const LabeledDataset& ds, const std::string& data_path);

/// Class index lists and means, computed in one pass.
ClassPartition partition(const LabeledDataset& ds);

/// Per class i, draws max(1, round(R * m_i)) rows uniformly with replacement
/// from that class. Output rows are grouped by class in ascending id order.
LabeledDataset stratified_bootstrap(const LabeledDataset& ds, double ratio, rng::Stream& stream);

/// Center each column and scale to unit population standard deviation;
/// zero-variance columns are centered and left at zero.
LabeledDataset standardize(const LabeledDataset& ds);

}  // namespace dqm

#endif  // DQM_DATASET_HPP
