#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqclass/data.hpp"
#include "vqclass/metrics.hpp"
#include "vqclass/optimizer.hpp"
#include "vqclass/preprocess.hpp"
#include "vqclass/vqc.hpp"

namespace vqclass {

// Full experiment sweep: for each (feature count k, seed) cell, rank features
// on the training split, select the top k, min-max scale, train the VQC on k
// qubits and the SVM on the identical scaled matrix, and record train/test
// metrics for both.
struct ExperimentConfig {
    enum class Source { Synthetic, Csv };
    Source source = Source::Synthetic;
    std::string csv_path;
    std::string label_column = "label";
    std::string positive_token = "1";
    SynthSpec synth;

    std::vector<int> feature_counts = {2, 3, 4, 5};
    int shots = 1024;
    OptimizerConfig optimizer;
    int ansatz_layers = 2;
    DataMap data_map = DataMap::Product;
    LossKind loss = LossKind::CrossEntropy;
    InitPolicy init = InitPolicy::Zeros;
    double scale_lo = 0.0;
    double scale_hi = 3.141592653589793238462643383279502884;
    double test_fraction = 0.25;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    double svm_c = 1.0;
    Scorer scorer = Scorer::FScore;
    std::string ranking_import;  // optional CSV of feature_name,score
    std::string output_dir = "results";
};

// One row of the results JSON: a (model, k, seed, split) cell.
struct ExperimentRecord {
    std::string model;  // "vqc" | "svm"
    int k = 0;
    std::uint64_t seed = 0;
    std::string split;  // "train" | "test"
    MetricsRecord metrics;
    double wall_time_ms = 0.0;
    std::string feature_digest;  // FNV-1a over the scaled matrices of the cell
};

struct ExperimentResults {
    ExperimentConfig config;
    std::vector<ExperimentRecord> records;
};

// Flat `key = value` config file; '#' starts a comment. Unknown keys are
// rejected. Throws ConfigError on parse or validation failures.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

void validate_config(const ExperimentConfig& config, std::size_t available_features);

// Runs every (k, seed) cell and writes results.json plus per-metric plot
// CSVs into the output directory (atomically, temp file then rename).
// VQCLASS_OUTPUT_DIR overrides config.output_dir. On a cell failure the
// records completed so far are still written, then the error is rethrown
// with a stage tag.
ExperimentResults run_experiment(const ExperimentConfig& config);

// One CSV per metric: columns k,model,mean,sd over the test split, rows
// sorted by (model, k).
void emit_plot_data(const ExperimentResults& results, const std::string& dir);

std::string results_to_json(const ExperimentResults& results);

// Experiment output directory after the env override is applied.
std::string resolve_output_dir(const ExperimentConfig& config);

}  // namespace vqclass
