// dqm — data quality measures for labeled classification datasets.
//
// Subcommands: measure, exact, baseline, degrade, correlate. Every command
// prints exactly one JSON report to stdout (diagnostics go to stderr) and
// can write a reproducibility manifest next to its output file.
//
// Exit codes: 0 success, 2 input error, 3 numeric degeneracy.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dqm/baselines.hpp"
#include "dqm/dataset.hpp"
#include "dqm/degrade.hpp"
#include "dqm/manifest.hpp"
#include "dqm/quality.hpp"
#include "dqm/report_json.hpp"
#include "dqm/stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

struct InputArgs {
    std::string path;
    std::string format = "auto";  // auto|csv|idx|raw
    std::string label_column = "label";
    std::string idx_labels;
};

void add_input_options(CLI::App* cmd, InputArgs& args) {
    cmd->add_option("input", args.path, "Input dataset path")->required();
    cmd->add_option("--format", args.format, "Input format: auto, csv, idx, raw")
        ->check(CLI::IsMember({"auto", "csv", "idx", "raw"}))
        ->capture_default_str();
    cmd->add_option("--label-column", args.label_column,
                    "CSV label column (header name or zero-based index)")
        ->capture_default_str();
    cmd->add_option("--idx-labels", args.idx_labels, "IDX labels file (required for idx)");
}

std::string detect_format(const InputArgs& args) {
    if (args.format != "auto") return args.format;
    const auto dot = args.path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : args.path.substr(dot + 1);
    if (ext == "csv") return "csv";
    if (ext == "idx" || ext == "ubyte") return "idx";
    if (ext == "f64" || ext == "raw" || ext == "bin") return "raw";
    if (!args.idx_labels.empty()) return "idx";
    return "csv";
}

dqm::LabeledDataset load_input(const InputArgs& args, std::vector<std::string>& hashed_inputs) {
    const std::string format = detect_format(args);
    hashed_inputs.push_back(args.path);
    if (format == "csv") return dqm::load_csv(args.path, args.label_column);
    if (format == "idx") {
        if (args.idx_labels.empty())
            throw dqm::InputError("idx format needs --idx-labels");
        hashed_inputs.push_back(args.idx_labels);
        return dqm::load_idx(args.path, args.idx_labels);
    }
    return dqm::load_raw(args.path);
}

void emit(const nlohmann::ordered_json& report, const std::string& out_path) {
    const std::string body = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(out_path);
        if (!out) throw dqm::InputError("cannot write output: " + out_path);
        out << body;
    }
}

void write_manifest(const std::vector<std::string>& argv_copy,
                    const nlohmann::ordered_json& config,
                    const std::vector<std::string>& inputs, std::uint64_t seed,
                    const std::string& out_path, const std::string& manifest_path) {
    std::string path = manifest_path;
    if (path.empty()) {
        if (out_path.empty()) return;  // stdout run, no manifest requested
        path = out_path + ".manifest.json";
    }
    dqm::RunManifest manifest;
    manifest.command = argv_copy;
    manifest.config = config;
    manifest.input_paths = inputs;
    manifest.seed = seed;
    manifest.output_path = out_path;
    manifest.write(path);
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> argv_copy(argv, argv + argc);

    CLI::App app{"Data quality measures for labeled classification datasets"};
    app.require_subcommand(1);
    app.set_version_flag("--version", dqm::kToolVersion);

    // --- measure ---
    InputArgs measure_in;
    dqm::MeasureConfig cfg;
    int threads = 0;
    std::string measure_out, measure_manifest;
    CLI::App* cmd_measure =
        app.add_subcommand("measure", "Bootstrap + random-projection quality measures");
    add_input_options(cmd_measure, measure_in);
    cmd_measure->add_option("-B,--bootstrap", cfg.B, "Bootstrap iterations")
        ->capture_default_str();
    cmd_measure->add_option("-R,--ratio", cfg.R, "Per-class sample ratio in (0,1]")
        ->capture_default_str();
    cmd_measure->add_option("--nv", cfg.nv, "Random vectors per iteration")
        ->capture_default_str();
    cmd_measure->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    cmd_measure
        ->add_option("--standardize", cfg.standardize,
                     "Standardize each bootstrap sample (true/false)")
        ->capture_default_str();
    cmd_measure->add_option("--threads", threads, "Worker threads (0 = hardware)")
        ->capture_default_str();
    cmd_measure->add_option("-o,--out", measure_out, "Write report here instead of stdout");
    cmd_measure->add_option("--manifest", measure_manifest, "Manifest path override");

    // --- exact ---
    InputArgs exact_in;
    dqm::ExactOptions exact_opts;
    double ridge_flag = -1.0;
    std::string exact_out, exact_manifest;
    CLI::App* cmd_exact =
        app.add_subcommand("exact", "Eigenvalue-based exact measures (small dimensions)");
    add_input_options(cmd_exact, exact_in);
    cmd_exact->add_option("--cap", exact_opts.dimension_cap, "Maximum allowed dimension")
        ->capture_default_str();
    cmd_exact
        ->add_option("--standardize", exact_opts.standardize, "Standardize first (true/false)")
        ->capture_default_str();
    cmd_exact->add_option("--ridge", ridge_flag,
                          "Ridge added to the within-class scatter (default: auto on failure)");
    cmd_exact->add_option("-o,--out", exact_out, "Write report here instead of stdout");
    cmd_exact->add_option("--manifest", exact_manifest, "Manifest path override");

    // --- baseline ---
    InputArgs baseline_in;
    std::vector<std::string> baseline_measures{"f1", "n1", "n3"};
    bool baseline_standardize = false;
    std::string baseline_out, baseline_manifest;
    CLI::App* cmd_baseline =
        app.add_subcommand("baseline", "Classic complexity measures F1, N1, N3");
    add_input_options(cmd_baseline, baseline_in);
    cmd_baseline
        ->add_option("--measures", baseline_measures, "Subset of {f1,n1,n3} to compute")
        ->check(CLI::IsMember({"f1", "n1", "n3"}))
        ->capture_default_str();
    cmd_baseline
        ->add_option("--standardize", baseline_standardize,
                     "Standardize features first (default off: raw values)")
        ->capture_default_str();
    cmd_baseline->add_option("-o,--out", baseline_out, "Write report here instead of stdout");
    cmd_baseline->add_option("--manifest", baseline_manifest, "Manifest path override");

    // --- degrade ---
    InputArgs degrade_in;
    dqm::DegradeSpec spec;
    std::string degrade_class;
    std::string degrade_out, degrade_manifest;
    CLI::App* cmd_degrade =
        app.add_subcommand("degrade", "Collapse one class onto a few similar exemplars");
    add_input_options(cmd_degrade, degrade_in);
    cmd_degrade->add_option("--class", degrade_class, "Target class (label text or id)")
        ->required();
    cmd_degrade->add_option("-k,--exemplars", spec.num_exemplars, "Exemplar count")
        ->capture_default_str();
    cmd_degrade->add_option("--count", spec.output_count, "Synthesized row count")
        ->capture_default_str();
    cmd_degrade->add_option("--sigma", spec.noise_sigma, "Gaussian noise sigma")
        ->capture_default_str();
    cmd_degrade->add_option("--seed", spec.seed, "RNG seed")->capture_default_str();
    cmd_degrade->add_option("-o,--out", degrade_out, "Output dataset path (.csv or .f64)")
        ->required();
    cmd_degrade->add_option("--manifest", degrade_manifest, "Manifest path override");

    // --- correlate ---
    std::string pairs_path;
    std::string correlate_out, correlate_manifest;
    CLI::App* cmd_correlate = app.add_subcommand(
        "correlate", "Pearson/Spearman of a two-column CSV of paired values");
    cmd_correlate->add_option("pairs", pairs_path, "CSV with columns x,y")->required();
    cmd_correlate->add_option("-o,--out", correlate_out, "Write report here instead of stdout");
    cmd_correlate->add_option("--manifest", correlate_manifest, "Manifest path override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        std::vector<std::string> hashed_inputs;

        if (cmd_measure->parsed()) {
            const dqm::LabeledDataset ds = load_input(measure_in, hashed_inputs);
            const dqm::QualityReport report = dqm::measure(ds, cfg, threads);
            emit(dqm::to_json(report), measure_out);
            write_manifest(argv_copy, dqm::to_json(cfg), hashed_inputs, cfg.seed, measure_out,
                           measure_manifest);
            if (report.sep_degenerate) {
                std::cerr << "dqm: within-class scatter vanished along every sampled "
                             "direction; M_sep is degenerate\n";
                return kExitDegenerate;
            }
            return kExitOk;
        }

        if (cmd_exact->parsed()) {
            if (ridge_flag >= 0.0) exact_opts.ridge = ridge_flag;
            const dqm::LabeledDataset ds = load_input(exact_in, hashed_inputs);
            const dqm::ExactReport report = dqm::measure_exact(ds, exact_opts);
            emit(dqm::to_json(report), exact_out);
            nlohmann::ordered_json config;
            config["cap"] = exact_opts.dimension_cap;
            config["standardize"] = exact_opts.standardize;
            if (exact_opts.ridge) config["ridge"] = *exact_opts.ridge;
            write_manifest(argv_copy, config, hashed_inputs, 0, exact_out, exact_manifest);
            return kExitOk;
        }

        if (cmd_baseline->parsed()) {
            dqm::LabeledDataset ds = load_input(baseline_in, hashed_inputs);
            if (baseline_standardize) ds = dqm::standardize(ds);
            dqm::baselines::BaselineSelection which{false, false, false};
            for (const std::string& name : baseline_measures) {
                if (name == "f1") which.f1 = true;
                if (name == "n1") which.n1 = true;
                if (name == "n3") which.n3 = true;
            }
            const auto report = dqm::baselines::run(ds, which);
            emit(dqm::to_json(report), baseline_out);
            nlohmann::ordered_json config;
            config["measures"] = baseline_measures;
            config["standardize"] = baseline_standardize;
            write_manifest(argv_copy, config, hashed_inputs, 0, baseline_out,
                           baseline_manifest);
            return kExitOk;
        }

        if (cmd_degrade->parsed()) {
            const dqm::LabeledDataset ds = load_input(degrade_in, hashed_inputs);
            spec.target_class = -1;
            for (std::size_t i = 0; i < ds.label_names.size(); ++i)
                if (ds.label_names[i] == degrade_class) spec.target_class = static_cast<int>(i);
            if (spec.target_class < 0) {
                try {
                    spec.target_class = std::stoi(degrade_class);
                } catch (const std::exception&) {
                    throw dqm::InputError("degrade: unknown class \"" + degrade_class + "\"");
                }
            }

            const dqm::LabeledDataset out = dqm::degrade(ds, spec);
            const bool raw = degrade_out.size() > 4 &&
                             degrade_out.compare(degrade_out.size() - 4, 4, ".f64") == 0;
            if (raw)
                dqm::write_raw(out, degrade_out);
            else
                dqm::write_csv(out, degrade_out);
            {
                std::ofstream side(degrade_out + ".degrade.json");
                if (!side)
                    throw dqm::InputError("cannot write sidecar: " + degrade_out +
                                          ".degrade.json");
                side << dqm::to_json(spec).dump(2) << "\n";
            }
            nlohmann::ordered_json summary;
            summary["schema"] = 1;
            summary["kind"] = "degrade";
            summary["out"] = degrade_out;
            summary["spec"] = dqm::to_json(spec);
            summary["rows"] = out.m;
            std::cout << summary.dump(2) << "\n";
            write_manifest(argv_copy, dqm::to_json(spec), hashed_inputs, spec.seed,
                           degrade_out, degrade_manifest);
            return kExitOk;
        }

        if (cmd_correlate->parsed()) {
            hashed_inputs.push_back(pairs_path);
            // Plain two-column numeric parse with a header line.
            std::ifstream in(pairs_path);
            if (!in) throw dqm::InputError("cannot open file: " + pairs_path);
            std::string line;
            if (!std::getline(in, line))
                throw dqm::InputError("correlate: empty file: " + pairs_path);
            dqm::stats::PairedSeries series;
            std::size_t line_no = 1;
            while (std::getline(in, line)) {
                ++line_no;
                if (line.empty() || line == "\r") continue;
                const auto comma = line.find(',');
                if (comma == std::string::npos)
                    throw dqm::InputError("correlate: line " + std::to_string(line_no) +
                                          " needs two comma-separated values");
                try {
                    series.xs.push_back(std::stod(line.substr(0, comma)));
                    series.ys.push_back(std::stod(line.substr(comma + 1)));
                } catch (const std::exception&) {
                    throw dqm::InputError("correlate: bad number on line " +
                                          std::to_string(line_no));
                }
            }
            if (series.xs.size() < 2)
                throw dqm::InputError("correlate: need at least 2 pairs");

            const auto pearson = dqm::stats::pearson(series);
            const auto spearman = dqm::stats::spearman(series);
            nlohmann::ordered_json j;
            j["schema"] = 1;
            j["kind"] = "correlation";
            j["count"] = series.xs.size();
            j["pearson"] = pearson ? nlohmann::ordered_json(*pearson) : nullptr;
            j["abs_pearson"] = pearson ? nlohmann::ordered_json(std::abs(*pearson)) : nullptr;
            j["spearman"] = spearman ? nlohmann::ordered_json(*spearman) : nullptr;
            j["abs_spearman"] =
                spearman ? nlohmann::ordered_json(std::abs(*spearman)) : nullptr;
            if (!pearson || !spearman)
                j["diagnostic"] = "correlation undefined: zero-variance series";
            emit(j, correlate_out);
            write_manifest(argv_copy, nlohmann::ordered_json::object(), hashed_inputs, 0,
                           correlate_out, correlate_manifest);
            return kExitOk;
        }
    } catch (const dqm::DegeneracyError& e) {
        std::cerr << "dqm: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const dqm::InputError& e) {
        std::cerr << "dqm: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "dqm: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
