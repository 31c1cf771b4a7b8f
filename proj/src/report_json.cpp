#include "dqm/report_json.hpp"

#include <cmath>

namespace dqm {

namespace {

nlohmann::ordered_json finite_or_null(double value) {
    if (std::isfinite(value)) return value;
    return nullptr;
}

}  // namespace

nlohmann::ordered_json to_json(const MeasureConfig& cfg) {
    nlohmann::ordered_json j;
    j["B"] = cfg.B;
    j["R"] = cfg.R;
    j["nv"] = cfg.nv;
    j["seed"] = cfg.seed;
    j["standardize"] = cfg.standardize;
    return j;
}

nlohmann::ordered_json to_json(const QualityReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["kind"] = "quality";
    j["m_sep"] = finite_or_null(report.m_sep);
    j["m_var"] = finite_or_null(report.m_var);
    j["m_var_i"] = report.m_var_i;
    j["m_sep_std"] = finite_or_null(report.m_sep_std);
    j["m_var_std"] = finite_or_null(report.m_var_std);
    j["sep_degenerate"] = report.sep_degenerate;
    j["config"] = to_json(report.config);
    j["elapsed_s"] = report.elapsed_s;
    return j;
}

nlohmann::ordered_json to_json(const ExactReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["kind"] = "exact";
    j["m_sep_exact"] = finite_or_null(report.m_sep_exact);
    j["m_var_exact"] = report.m_var_exact;
    j["m_var_i_exact"] = report.m_var_i_exact;
    j["regularized"] = report.regularized;
    j["ridge"] = report.ridge_used;
    j["standardized"] = report.standardized;
    j["elapsed_s"] = report.elapsed_s;
    return j;
}

nlohmann::ordered_json to_json(const baselines::BaselineReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["kind"] = "baseline";
    if (report.f1) {
        j["f1"] = finite_or_null(*report.f1);
        j["f1_perfect_separator"] = report.f1_perfect_separator;
    }
    if (report.n1) j["n1"] = *report.n1;
    if (report.n3) j["n3"] = *report.n3;
    nlohmann::ordered_json elapsed;
    if (report.f1) elapsed["f1_s"] = report.f1_elapsed_s;
    if (report.n1) elapsed["n1_s"] = report.n1_elapsed_s;
    if (report.n3) elapsed["n3_s"] = report.n3_elapsed_s;
    j["elapsed"] = elapsed;
    return j;
}

nlohmann::ordered_json to_json(const ExactApproxTable& table) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["kind"] = "exact_vs_approx";
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r;
        r["name"] = row.name;
        r["exact"] = finite_or_null(row.exact);
        r["approx"] = finite_or_null(row.approx);
        rows.push_back(std::move(r));
    }
    j["rows"] = rows;
    j["pearson"] = table.pearson ? nlohmann::ordered_json(*table.pearson) : nullptr;
    j["spearman"] = table.spearman ? nlohmann::ordered_json(*table.spearman) : nullptr;
    if (!table.diagnostic.empty()) j["diagnostic"] = table.diagnostic;
    return j;
}

nlohmann::ordered_json to_json(const DegradeSpec& spec) {
    nlohmann::ordered_json j;
    j["target_class"] = spec.target_class;
    j["num_exemplars"] = spec.num_exemplars;
    j["output_count"] = spec.output_count;
    j["noise_sigma"] = spec.noise_sigma;
    j["seed"] = spec.seed;
    return j;
}

}  // namespace dqm
