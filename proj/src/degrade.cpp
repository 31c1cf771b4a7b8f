#include "dqm/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqm {

namespace {

double norm2(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace

SimilarSelection select_similar(const LabeledDataset& ds, int class_id, int k,
                                rng::Stream& stream) {
    validate(ds);
    if (class_id < 0 || class_id >= ds.c)
        throw std::invalid_argument("select_similar: class id out of range");
    if (k < 1) throw std::invalid_argument("select_similar: k must be >= 1");

    SimilarSelection selection;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < ds.m; ++i) {
        if (ds.labels[i] != class_id) continue;
        if (norm2(ds.row(i)) == 0.0) {
            ++selection.zero_norm_skipped;
            continue;
        }
        candidates.push_back(i);
    }
    if (candidates.size() < static_cast<std::size_t>(k))
        throw InputError("select_similar: class " + std::to_string(class_id) + " has only " +
                         std::to_string(candidates.size()) + " usable rows, need " +
                         std::to_string(k));

    selection.anchor = candidates[stream.below(candidates.size())];
    const auto anchor_row = ds.row(selection.anchor);
    const double anchor_norm = norm2(anchor_row);

    struct Scored {
        std::size_t row;
        double similarity;
    };
    std::vector<Scored> scored;
    scored.reserve(candidates.size() - 1);
    for (std::size_t row : candidates) {
        if (row == selection.anchor) continue;
        const double sim = dot(anchor_row, ds.row(row)) / (anchor_norm * norm2(ds.row(row)));
        scored.push_back({row, sim});
    }
    const auto take = static_cast<std::size_t>(k - 1);
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take),
                      scored.end(), [](const Scored& a, const Scored& b) {
                          if (a.similarity != b.similarity) return a.similarity > b.similarity;
                          return a.row < b.row;
                      });

    selection.rows.push_back(selection.anchor);
    for (std::size_t i = 0; i < take; ++i) selection.rows.push_back(scored[i].row);
    return selection;
}

LabeledDataset degrade(const LabeledDataset& ds, const DegradeSpec& spec) {
    validate(ds);
    if (spec.output_count < 1)
        throw std::invalid_argument("degrade: output_count must be >= 1");
    if (spec.noise_sigma < 0.0)
        throw std::invalid_argument("degrade: noise_sigma must be >= 0");

    rng::Stream anchor_stream = rng::stream_for({spec.seed, rng::kTagAnchor});
    const SimilarSelection exemplars =
        select_similar(ds, spec.target_class, spec.num_exemplars, anchor_stream);

    LabeledDataset out;
    out.n = ds.n;
    out.c = ds.c;
    out.label_names = ds.label_names;
    for (std::size_t i = 0; i < ds.m; ++i) {
        if (ds.labels[i] == spec.target_class) continue;
        const auto row = ds.row(i);
        out.data.insert(out.data.end(), row.begin(), row.end());
        out.labels.push_back(ds.labels[i]);
    }

    rng::Stream synth_stream = rng::stream_for({spec.seed, rng::kTagSynth});
    for (int r = 0; r < spec.output_count; ++r) {
        const std::size_t src = exemplars.rows[synth_stream.below(exemplars.rows.size())];
        const auto row = ds.row(src);
        if (spec.noise_sigma == 0.0) {
            out.data.insert(out.data.end(), row.begin(), row.end());
        } else {
            for (std::size_t j = 0; j < ds.n; ++j)
                out.data.push_back(row[j] + spec.noise_sigma * synth_stream.normal());
        }
        out.labels.push_back(spec.target_class);
    }
    out.m = out.labels.size();
    validate(out);
    return out;
}

}  // namespace dqm
