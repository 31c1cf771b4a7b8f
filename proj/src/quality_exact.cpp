#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "dqm/quality.hpp"

namespace dqm {

namespace {

Eigen::MatrixXd class_scatter(const LabeledDataset& ds, const ClassPartition& part,
                              std::size_t cls) {
    const auto& rows = part.per_class_rows[cls];
    Eigen::MatrixXd centered(rows.size(), ds.n);
    const std::vector<double>& mean = part.class_means[cls];
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto row = ds.row(rows[r]);
        for (std::size_t j = 0; j < ds.n; ++j) centered(r, j) = row[j] - mean[j];
    }
    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(ds.n, ds.n);
    scatter.selfadjointView<Eigen::Lower>().rankUpdate(
        centered.transpose(), 1.0 / static_cast<double>(rows.size()));
    return scatter;  // lower triangle filled
}

double smallest_eigenvalue(const Eigen::MatrixXd& lower_filled) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lower_filled,
                                                          Eigen::EigenvaluesOnly);
    return std::max(0.0, solver.eigenvalues()(0));
}

}  // namespace

ExactReport measure_exact(const LabeledDataset& input, const ExactOptions& options) {
    validate(input);
    if (input.n > options.dimension_cap)
        throw InputError("measure_exact: dimension " + std::to_string(input.n) +
                         " exceeds cap " + std::to_string(options.dimension_cap));

    const auto start = std::chrono::steady_clock::now();
    const LabeledDataset ds = options.standardize ? standardize(input) : input;
    const ClassPartition part = partition(ds);
    const auto c = static_cast<std::size_t>(ds.c);
    const double norm = 1.0 / (static_cast<double>(ds.c) * static_cast<double>(ds.n));

    ExactReport report;
    report.standardized = options.standardize;
    report.m_var_i_exact.resize(c);

    Eigen::MatrixXd within = Eigen::MatrixXd::Zero(ds.n, ds.n);
    for (std::size_t cls = 0; cls < c; ++cls) {
        const Eigen::MatrixXd scatter = class_scatter(ds, part, cls);
        within += scatter;
        report.m_var_i_exact[cls] = smallest_eigenvalue(scatter) * norm;
    }
    report.m_var_exact = smallest_eigenvalue(within) * norm;

    Eigen::VectorXd global_mean(ds.n);
    for (std::size_t j = 0; j < ds.n; ++j) global_mean(j) = part.global_mean[j];
    Eigen::MatrixXd between = Eigen::MatrixXd::Zero(ds.n, ds.n);
    for (std::size_t cls = 0; cls < c; ++cls) {
        Eigen::VectorXd diff(ds.n);
        for (std::size_t j = 0; j < ds.n; ++j)
            diff(j) = part.class_means[cls][j] - global_mean(j);
        const double weight =
            static_cast<double>(part.counts[cls]) / static_cast<double>(ds.m);
        between.noalias() += weight * diff * diff.transpose();
    }

    // Symmetric-definite reduction: factor S_w = L L^T, then the largest
    // eigenvalue of L^-1 S_b L^-T equals the largest generalized eigenvalue.
    Eigen::MatrixXd within_full = within.selfadjointView<Eigen::Lower>();
    Eigen::LLT<Eigen::MatrixXd> llt;
    if (options.ridge) {
        report.regularized = true;
        report.ridge_used = *options.ridge;
        llt.compute(within_full +
                    report.ridge_used * Eigen::MatrixXd::Identity(ds.n, ds.n));
        if (llt.info() != Eigen::Success)
            throw DegeneracyError("measure_exact: within-class scatter not positive "
                                  "definite at the requested ridge");
    } else {
        llt.compute(within_full);
        if (llt.info() != Eigen::Success) {
            report.regularized = true;
            report.ridge_used = 1e-8 * within_full.trace() / static_cast<double>(ds.n);
            llt.compute(within_full +
                        report.ridge_used * Eigen::MatrixXd::Identity(ds.n, ds.n));
            if (llt.info() != Eigen::Success)
                throw DegeneracyError(
                    "measure_exact: within-class scatter singular beyond regularization");
        }
    }

    Eigen::MatrixXd half = llt.matrixL().solve(between);
    Eigen::MatrixXd reduced = llt.matrixL().solve(half.transpose());
    reduced = 0.5 * (reduced + reduced.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(reduced, Eigen::EigenvaluesOnly);
    report.m_sep_exact = std::max(0.0, solver.eigenvalues()(ds.n - 1));

    report.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace dqm
