#ifndef DQM_QUALITY_HPP
#define DQM_QUALITY_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dqm/dataset.hpp"
#include "dqm/stats.hpp"

namespace dqm {

/**
 * Bootstrap estimates of class separability and in-class variability.
 *
 * m_sep: mean over iterations of the per-iteration maximum Fisher ratio.
 * m_var / m_var_i: mean over iterations of the per-iteration minimum
 * within-class form, scaled by 1/(c*n), overall and per class.
 *
 * sep_degenerate is set when some iteration saw a zero within-class form
 * along every sampled direction even after retries; m_sep is then +inf
 * (perfectly collapsed classes with distinct means) or 0 (no signal at all).
 */
struct QualityReport {
    double m_sep = 0.0;
    double m_var = 0.0;
    std::vector<double> m_var_i;
    double m_sep_std = 0.0;
    double m_var_std = 0.0;
    bool sep_degenerate = false;
    MeasureConfig config;
    double elapsed_s = 0.0;
};

/// Runs the bootstrap + random-projection estimator. Iterations are
/// independent; `threads` > 1 distributes them without changing any result
/// (0 picks the hardware concurrency).
QualityReport measure(const LabeledDataset& ds, const MeasureConfig& cfg, int threads = 1);

struct ExactOptions {
    std::size_t dimension_cap = 4096;
    bool standardize = true;
    /// Ridge added to the within-class scatter before factorization. Unset:
    /// applied only if the factorization fails, at 1e-8 * trace / n.
    std::optional<double> ridge;
};

/// Eigenvalue-based reference values on the full dataset.
struct ExactReport {
    double m_sep_exact = 0.0;    // largest generalized eigenvalue
    double m_var_exact = 0.0;    // smallest eigenvalue of S_w / (c*n)
    std::vector<double> m_var_i_exact;
    bool regularized = false;
    double ridge_used = 0.0;
    bool standardized = true;
    double elapsed_s = 0.0;
};

/// Builds the scatter matrices explicitly and solves the symmetric-definite
/// generalized eigenproblem. Refuses n above options.dimension_cap.
ExactReport measure_exact(const LabeledDataset& ds, const ExactOptions& options = {});

struct ExactApproxRow {
    std::string name;
    double exact = 0.0;
    double approx = 0.0;
};

/// Exact-vs-approx table with the correlations between the two columns.
/// Correlations are empty (with a diagnostic) when a column is constant.
struct ExactApproxTable {
    std::vector<ExactApproxRow> rows;
    std::optional<double> pearson;
    std::optional<double> spearman;
    std::string diagnostic;
};

ExactApproxTable compare_exact_approx(std::span<const LabeledDataset> datasets,
                                      const MeasureConfig& cfg,
                                      const ExactOptions& exact_options = {});

}  // namespace dqm

#endif  // DQM_QUALITY_HPP
