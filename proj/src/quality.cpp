#include "dqm/quality.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "dqm/projection.hpp"

namespace dqm {

namespace {

constexpr int kMaxSepRetries = 8;

struct IterationResult {
    double sep = 0.0;                 // max over vectors of between/within
    double var = 0.0;                 // min over vectors of within / (c*n)
    std::vector<double> var_i;        // per-class minima / (c*n)
    bool sep_degenerate = false;
};

struct PassStats {
    double max_ratio = -std::numeric_limits<double>::infinity();
    double min_within = std::numeric_limits<double>::infinity();
    std::vector<double> min_within_i;
    double max_between = 0.0;
    bool any_ratio = false;
};

PassStats run_pass(const LabeledDataset& ds, const MeasureConfig& cfg, std::uint64_t iteration,
                   std::uint64_t attempt) {
    rng::Stream sample_stream =
        rng::stream_for({cfg.seed, iteration, attempt, rng::kTagSample});
    LabeledDataset sample = stratified_bootstrap(ds, cfg.R, sample_stream);
    if (cfg.standardize) sample = standardize(sample);
    const ClassPartition part = partition(sample);

    PassStats stats;
    stats.min_within_i.assign(static_cast<std::size_t>(ds.c),
                              std::numeric_limits<double>::infinity());
    for (int j = 0; j < cfg.nv; ++j) {
        rng::Stream vec_stream = rng::stream_for(
            {cfg.seed, iteration, attempt, static_cast<std::uint64_t>(j), rng::kTagVector});
        const ProjectionVector w = sample_unit_vector(ds.n, vec_stream);
        const QuadraticForms forms = quadratic_forms(sample, part, w);

        stats.min_within = std::min(stats.min_within, forms.within_total);
        for (std::size_t i = 0; i < stats.min_within_i.size(); ++i)
            stats.min_within_i[i] = std::min(stats.min_within_i[i], forms.within_per_class[i]);
        stats.max_between = std::max(stats.max_between, forms.between);
        if (forms.within_total > 0.0) {
            stats.max_ratio = std::max(stats.max_ratio, forms.between / forms.within_total);
            stats.any_ratio = true;
        }
    }
    return stats;
}

// One bootstrap iteration. The variability minima always come from the
// first pass (they are defined for every sample). A zero within form along
// every direction leaves the Fisher ratio undefined; the separability
// statistic is then re-drawn from fresh sample/vector streams, and after
// kMaxSepRetries exhausted attempts the iteration is marked degenerate:
// +inf when class means still differed (collapsed classes, unbounded
// ratio), 0 when between vanished as well.
IterationResult run_iteration(const LabeledDataset& ds, const MeasureConfig& cfg,
                              std::uint64_t iteration) {
    const double norm = 1.0 / (static_cast<double>(ds.c) * static_cast<double>(ds.n));

    PassStats first = run_pass(ds, cfg, iteration, 0);
    IterationResult result;
    result.var = first.min_within * norm;
    result.var_i.resize(first.min_within_i.size());
    for (std::size_t i = 0; i < result.var_i.size(); ++i)
        result.var_i[i] = first.min_within_i[i] * norm;

    if (first.any_ratio) {
        result.sep = first.max_ratio;
        return result;
    }
    double max_between = first.max_between;
    for (std::uint64_t attempt = 1; attempt <= kMaxSepRetries; ++attempt) {
        const PassStats redo = run_pass(ds, cfg, iteration, attempt);
        max_between = std::max(max_between, redo.max_between);
        if (redo.any_ratio) {
            result.sep = redo.max_ratio;
            return result;
        }
    }
    result.sep_degenerate = true;
    result.sep = max_between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return result;
}

}  // namespace

QualityReport measure(const LabeledDataset& ds, const MeasureConfig& cfg, int threads) {
    validate(cfg);
    validate(ds);
    const auto start = std::chrono::steady_clock::now();

    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min<int>(threads, cfg.B);

    std::vector<IterationResult> results(static_cast<std::size_t>(cfg.B));
    if (threads == 1) {
        for (int b = 0; b < cfg.B; ++b)
            results[static_cast<std::size_t>(b)] =
                run_iteration(ds, cfg, static_cast<std::uint64_t>(b));
    } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            try {
                for (;;) {
                    const int b = next.fetch_add(1);
                    if (b >= cfg.B) return;
                    results[static_cast<std::size_t>(b)] =
                        run_iteration(ds, cfg, static_cast<std::uint64_t>(b));
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(cfg.B);  // stop the other workers
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    // Deterministic reduction in iteration order.
    std::vector<double> a_sep, a_var;
    a_sep.reserve(results.size());
    a_var.reserve(results.size());
    std::vector<std::vector<double>> a_var_i(static_cast<std::size_t>(ds.c));
    QualityReport report;
    report.config = cfg;
    for (const IterationResult& r : results) {
        a_sep.push_back(r.sep);
        a_var.push_back(r.var);
        for (std::size_t i = 0; i < a_var_i.size(); ++i) a_var_i[i].push_back(r.var_i[i]);
        report.sep_degenerate = report.sep_degenerate || r.sep_degenerate;
    }

    const bool sep_finite =
        std::all_of(a_sep.begin(), a_sep.end(), [](double s) { return std::isfinite(s); });
    if (sep_finite) {
        const auto [sep_mean, sep_var] = stats::bootstrap_moments(a_sep);
        report.m_sep = sep_mean;
        report.m_sep_std = std::sqrt(sep_var);
    } else {
        report.m_sep = std::numeric_limits<double>::infinity();
        report.m_sep_std = std::numeric_limits<double>::infinity();
    }
    const auto [var_mean, var_var] = stats::bootstrap_moments(a_var);
    report.m_var = var_mean;
    report.m_var_std = std::sqrt(var_var);
    report.m_var_i.resize(a_var_i.size());
    for (std::size_t i = 0; i < a_var_i.size(); ++i)
        report.m_var_i[i] = stats::bootstrap_moments(a_var_i[i]).first;

    report.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

ExactApproxTable compare_exact_approx(std::span<const LabeledDataset> datasets,
                                      const MeasureConfig& cfg,
                                      const ExactOptions& exact_options) {
    ExactOptions opts = exact_options;
    opts.standardize = cfg.standardize;

    ExactApproxTable table;
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        ExactApproxRow row;
        row.name = "dataset-" + std::to_string(i);
        row.exact = measure_exact(datasets[i], opts).m_sep_exact;
        row.approx = measure(datasets[i], cfg).m_sep;
        table.rows.push_back(std::move(row));
    }

    if (table.rows.size() < 2) {
        table.diagnostic = "need at least 2 datasets for correlations";
        return table;
    }
    stats::PairedSeries series;
    for (const auto& row : table.rows) {
        series.xs.push_back(row.exact);
        series.ys.push_back(row.approx);
        series.labels.push_back(row.name);
    }
    table.pearson = stats::pearson(series);
    table.spearman = stats::spearman(series);
    if (!table.pearson || !table.spearman)
        table.diagnostic = "correlation undefined: a column has zero variance";
    return table;
}

}  // namespace dqm
