#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dqm/degrade.hpp"
#include "dqm/quality.hpp"
#include "support.hpp"

using namespace dqm;

TEST_CASE("select_similar: all-identical rows fall back to index order") {
    LabeledDataset ds;
    ds.m = 6;
    ds.n = 2;
    ds.c = 2;
    ds.data = {1, 1, 1, 1, 1, 1, 1, 1, 5, 5, 5, 5};
    ds.labels = {0, 0, 0, 0, 1, 1};
    rng::Stream stream(7);
    const SimilarSelection sel = select_similar(ds, 0, 3, stream);
    CHECK(sel.rows.size() == 3);
    // anchor first; remaining class rows all tie at similarity 1, so the
    // lowest indices win
    std::vector<std::size_t> rest(sel.rows.begin() + 1, sel.rows.end());
    std::vector<std::size_t> expected;
    for (std::size_t i = 0; i < 4; ++i)
        if (i != sel.anchor && expected.size() < 2) expected.push_back(i);
    CHECK(rest == expected);
}

TEST_CASE("select_similar: cosine ordering picks the aligned row") {
    LabeledDataset ds;
    ds.m = 4;
    ds.n = 2;
    ds.c = 2;
    ds.data = {1, 0, 1, 0.01, 0, 1, 9, 9};
    ds.labels = {0, 0, 0, 1};
    // force anchor = row 0 by trying seeds until the anchor lands there
    for (std::uint64_t seed = 0;; ++seed) {
        rng::Stream stream(seed);
        const SimilarSelection sel = select_similar(ds, 0, 2, stream);
        if (sel.anchor != 0) continue;
        CHECK(sel.rows[1] == 1);  // (1, 0.01) beats (0, 1)
        break;
    }
}

TEST_CASE("select_similar: matches the brute-force cosine top list") {
    auto gen = rng::Stream(331);
    const LabeledDataset ds = support::random_dataset(40, 6, 2, gen);
    rng::Stream stream(11);
    const int k = 10;
    const SimilarSelection sel = select_similar(ds, 0, k, stream);

    const auto anchor = ds.row(sel.anchor);
    auto cosine = [&](std::size_t row) {
        double aa = 0, bb = 0, ab = 0;
        for (std::size_t j = 0; j < ds.n; ++j) {
            aa += anchor[j] * anchor[j];
            bb += ds.row(row)[j] * ds.row(row)[j];
            ab += anchor[j] * ds.row(row)[j];
        }
        return ab / std::sqrt(aa * bb);
    };
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < ds.m; ++i)
        if (ds.labels[i] == 0 && i != sel.anchor) candidates.push_back(i);
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        const double ca = cosine(a), cb = cosine(b);
        if (ca != cb) return ca > cb;
        return a < b;
    });
    const std::vector<std::size_t> expected(candidates.begin(), candidates.begin() + (k - 1));
    const std::vector<std::size_t> got(sel.rows.begin() + 1, sel.rows.end());
    CHECK(got == expected);
}

TEST_CASE("select_similar: zero-norm rows are excluded from the cosine ordering") {
    LabeledDataset ds;
    ds.m = 5;
    ds.n = 2;
    ds.c = 2;
    ds.data = {1, 0, 0, 0, 1, 0.1, 2, 0.1, 3, 3};
    ds.labels = {0, 0, 0, 0, 1};  // row 1 is the zero vector
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        rng::Stream stream(seed);
        const SimilarSelection sel = select_similar(ds, 0, 3, stream);
        CHECK(sel.zero_norm_skipped == 1);
        CHECK(std::find(sel.rows.begin(), sel.rows.end(), std::size_t{1}) == sel.rows.end());
    }
}

TEST_CASE("select_similar: class too small") {
    auto gen = rng::Stream(337);
    const LabeledDataset ds = support::random_dataset(10, 3, 2, gen);  // 5 rows per class
    rng::Stream stream(1);
    CHECK_THROWS_AS(select_similar(ds, 0, 6, stream), InputError);
}

TEST_CASE("degrade: non-target rows are bit-exact and order-preserved") {
    auto gen = rng::Stream(347);
    const LabeledDataset ds = support::random_dataset(60, 4, 3, gen);
    DegradeSpec spec;
    spec.target_class = 1;
    spec.num_exemplars = 5;
    spec.output_count = 30;
    spec.noise_sigma = 0.5;
    spec.seed = 9;
    const LabeledDataset out = degrade(ds, spec);

    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < ds.m; ++i)
        if (ds.labels[i] != 1) survivors.push_back(i);
    REQUIRE(out.m == survivors.size() + 30);
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        CHECK(out.labels[i] == ds.labels[survivors[i]]);
        const auto a = out.row(i);
        const auto b = ds.row(survivors[i]);
        CHECK(std::equal(a.begin(), a.end(), b.begin()));
    }
    for (std::size_t i = survivors.size(); i < out.m; ++i) CHECK(out.labels[i] == 1);
}

TEST_CASE("degrade: deterministic under a fixed seed") {
    auto gen = rng::Stream(349);
    const LabeledDataset ds = support::random_dataset(50, 3, 2, gen);
    DegradeSpec spec;
    spec.target_class = 0;
    spec.num_exemplars = 4;
    spec.output_count = 20;
    spec.seed = 31;
    const LabeledDataset a = degrade(ds, spec);
    const LabeledDataset b = degrade(ds, spec);
    CHECK(a.data == b.data);
    CHECK(a.labels == b.labels);
}

TEST_CASE("degrade: sigma 0 with one exemplar collapses the class completely") {
    auto gen = rng::Stream(353);
    const LabeledDataset ds = support::random_dataset(80, 5, 2, gen);
    DegradeSpec spec;
    spec.target_class = 0;
    spec.num_exemplars = 1;
    spec.output_count = 40;
    spec.noise_sigma = 0.0;
    spec.seed = 13;
    const LabeledDataset out = degrade(ds, spec);

    // every synthesized row equals the single exemplar
    const std::size_t first_synth = out.m - 40;
    for (std::size_t i = first_synth + 1; i < out.m; ++i) {
        const auto a = out.row(first_synth);
        const auto b = out.row(i);
        CHECK(std::equal(a.begin(), a.end(), b.begin()));
    }

    MeasureConfig cfg;
    cfg.B = 10;
    cfg.seed = 5;
    const QualityReport report = measure(out, cfg);
    CHECK(report.m_var_i[0] == 0.0);
    CHECK(report.m_var_i[1] > 0.0);
}

TEST_CASE("degrade: the collapsed class is the variability argmin") {
    // scaled-down version of the detection experiment
    auto gen = rng::Stream(359);
    std::vector<std::vector<double>> means(6, std::vector<double>(48, 0.0));
    for (auto& mu : means)
        for (double& x : mu) x = gen.normal();
    const LabeledDataset base = support::gaussian_blobs(means, 120, 1.0, gen);

    DegradeSpec spec;
    spec.target_class = 4;
    spec.num_exemplars = 10;
    spec.output_count = 120;
    spec.noise_sigma = 0.1;
    spec.seed = 2;
    const LabeledDataset degraded = degrade(base, spec);

    MeasureConfig cfg;
    cfg.B = 30;
    cfg.seed = 8;
    const QualityReport report = measure(degraded, cfg, 2);
    const auto argmin =
        std::min_element(report.m_var_i.begin(), report.m_var_i.end()) - report.m_var_i.begin();
    CHECK(argmin == 4);
}
