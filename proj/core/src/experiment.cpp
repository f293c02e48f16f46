#include "vqclass/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "vqclass/errors.hpp"
#include "vqclass/rng.hpp"
#include "vqclass/svm.hpp"

namespace vqclass {

namespace {

using nlohmann::json;

// Salts for per-cell seed derivation; every internal seed of a (k, seed)
// cell comes from mix_seed(mix_seed(seed, k), salt).
enum : std::uint64_t { kSplitSalt = 1, kVqcSalt = 2, kRankSalt = 3, kSpsaSalt = 4 };

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> items;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + value);
    }
}

long to_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for '" + key + "': " + value);
    }
}

// FNV-1a 64 over the raw bytes of the scaled train and test matrices,
// dimensions included. Both models of a cell must log the same digest.
class Fnv1a {
public:
    void add_bytes(const void* data, std::size_t size) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < size; ++i) {
            hash_ ^= bytes[i];
            hash_ *= 0x100000001b3ULL;
        }
    }
    void add_matrix(const Matrix& m) {
        const std::uint64_t dims[2] = {m.rows(), m.cols()};
        add_bytes(dims, sizeof(dims));
        add_bytes(m.data().data(), m.data().size() * sizeof(double));
    }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash_));
        return buf;
    }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw ConfigError("cannot open output file for writing: " + tmp);
        }
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

json metrics_to_json(const ExperimentRecord& rec) {
    json flags = json::array();
    if (rec.metrics.precision_degenerate) flags.push_back("precision");
    if (rec.metrics.recall_degenerate) flags.push_back("recall");
    if (rec.metrics.f1_degenerate) flags.push_back("f1");
    return json{{"model", rec.model},
                {"k", rec.k},
                {"seed", rec.seed},
                {"split", rec.split},
                {"accuracy", rec.metrics.accuracy},
                {"precision", rec.metrics.precision},
                {"recall", rec.metrics.recall},
                {"f1", rec.metrics.f1},
                {"degeneracy_flags", flags},
                {"wall_time_ms", rec.wall_time_ms},
                {"feature_digest", rec.feature_digest}};
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["data"] = c.source == ExperimentConfig::Source::Synthetic ? "synthetic" : "csv";
    j["csv_path"] = c.csv_path;
    j["label_column"] = c.label_column;
    j["positive_token"] = c.positive_token;
    j["synth_samples"] = c.synth.n_samples;
    j["synth_noise_features"] = c.synth.n_noise_features;
    j["synth_seed"] = c.synth.seed;
    j["synth_fraction_female"] = c.synth.fraction_female;
    j["synth_beta_intercept"] = c.synth.beta_intercept;
    j["synth_beta_age"] = c.synth.beta_age;
    j["synth_beta_schooling"] = c.synth.beta_schooling;
    j["synth_beta_chronic"] = c.synth.beta_chronic;
    j["feature_counts"] = c.feature_counts;
    j["shots"] = c.shots;
    j["optimizer"] = c.optimizer.method == OptMethod::Cobyla ? "cobyla" : "spsa";
    j["max_evaluations"] = c.optimizer.max_evaluations;
    j["rho_beg"] = c.optimizer.initial_trust_radius;
    j["rho_end"] = c.optimizer.final_trust_radius;
    j["layers"] = c.ansatz_layers;
    j["data_map"] = c.data_map == DataMap::Product ? "product" : "havlicek";
    j["loss"] = c.loss == LossKind::CrossEntropy ? "cross_entropy" : "error_rate";
    j["init"] = c.init == InitPolicy::Zeros ? "zeros" : "uniform";
    j["scale_lo"] = c.scale_lo;
    j["scale_hi"] = c.scale_hi;
    j["test_fraction"] = c.test_fraction;
    j["seeds"] = c.seeds;
    j["svm_c"] = c.svm_c;
    j["scorer"] = c.scorer == Scorer::FScore ? "f_score" : "permutation";
    j["ranking_import"] = c.ranking_import;
    j["output_dir"] = c.output_dir;
    return j;
}

MetricsRecord tag_metrics(MetricsRecord metrics, const std::string& model, int k, int shots,
                          std::uint64_t seed) {
    metrics.model_tag = model;
    metrics.feature_count = k;
    metrics.shots = shots;
    metrics.seed = seed;
    return metrics;
}

struct CellOutput {
    std::vector<ExperimentRecord> records;
};

CellOutput run_cell(const ExperimentConfig& config, const Dataset& dataset, int k,
                    std::uint64_t seed) {
    using Clock = std::chrono::steady_clock;
    const std::uint64_t cell_seed = mix_seed(seed, static_cast<std::uint64_t>(k));

    auto [train_split, test_split] = split(dataset, config.test_fraction,
                                           mix_seed(cell_seed, kSplitSalt));

    FeatureRanking ranking;
    if (!config.ranking_import.empty()) {
        ranking = load_ranking_csv(config.ranking_import, train_split.feature_names);
    } else {
        RankOptions opts;
        opts.scorer = config.scorer;
        opts.seed = mix_seed(cell_seed, kRankSalt);
        ranking = rank_features(train_split, opts);
    }
    const auto top_k = select_top_k(ranking, static_cast<std::size_t>(k));

    Dataset train_k = train_split.select_columns(top_k);
    Dataset test_k = test_split.select_columns(top_k);
    const ScalerParams scaler = fit_scaler(train_k.features, config.scale_lo, config.scale_hi);
    train_k.features = transform(train_k.features, scaler);
    test_k.features = transform(test_k.features, scaler);

    Fnv1a digest;
    digest.add_matrix(train_k.features);
    digest.add_matrix(test_k.features);
    const std::string digest_hex = digest.hex();

    CellOutput out;

    // VQC on k qubits.
    const auto vqc_start = Clock::now();
    FeatureMapSpec fm;
    fm.num_qubits = k;
    fm.data_map = config.data_map;
    AnsatzSpec ansatz;
    ansatz.num_qubits = k;
    ansatz.layers = config.ansatz_layers;
    TrainConfig tc;
    tc.optimizer = config.optimizer;
    tc.optimizer.seed = mix_seed(cell_seed, kSpsaSalt);
    tc.init = config.init;
    tc.loss = config.loss;
    tc.shots = config.shots;
    tc.seed = mix_seed(cell_seed, kVqcSalt);
    const VqcModel vqc_model = train(train_k, fm, ansatz, tc);
    const auto vqc_train_preds = predict_dataset(vqc_model, train_k.features);
    const auto vqc_test_preds = predict_dataset(vqc_model, test_k.features);
    const double vqc_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - vqc_start).count();

    out.records.push_back({"vqc", k, seed, "train",
                           tag_metrics(compute_metrics(confusion(vqc_train_preds, train_k.labels)),
                                       "vqc", k, config.shots, seed),
                           vqc_ms, digest_hex});
    out.records.push_back({"vqc", k, seed, "test",
                           tag_metrics(compute_metrics(confusion(vqc_test_preds, test_k.labels)),
                                       "vqc", k, config.shots, seed),
                           vqc_ms, digest_hex});

    // SVM on the identical scaled matrix.
    const auto svm_start = Clock::now();
    const SvmModel svm_model = train_svm(train_k, config.svm_c);
    std::vector<int> svm_train_preds, svm_test_preds;
    for (std::size_t r = 0; r < train_k.features.rows(); ++r) {
        svm_train_preds.push_back(classify_svm(svm_model, train_k.features.row(r)));
    }
    for (std::size_t r = 0; r < test_k.features.rows(); ++r) {
        svm_test_preds.push_back(classify_svm(svm_model, test_k.features.row(r)));
    }
    const double svm_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - svm_start).count();

    out.records.push_back({"svm", k, seed, "train",
                           tag_metrics(compute_metrics(confusion(svm_train_preds, train_k.labels)),
                                       "svm", k, 0, seed),
                           svm_ms, digest_hex});
    out.records.push_back({"svm", k, seed, "test",
                           tag_metrics(compute_metrics(confusion(svm_test_preds, test_k.labels)),
                                       "svm", k, 0, seed),
                           svm_ms, digest_hex});
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected `key = value`");
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    ExperimentConfig config;
    for (const auto& [key, value] : kv) {
        if (key == "data") {
            if (value == "synthetic") config.source = ExperimentConfig::Source::Synthetic;
            else if (value == "csv") config.source = ExperimentConfig::Source::Csv;
            else throw ConfigError("config: data must be 'synthetic' or 'csv'");
        } else if (key == "csv_path") {
            config.csv_path = value;
        } else if (key == "label_column") {
            config.label_column = value;
        } else if (key == "positive_token") {
            config.positive_token = value;
        } else if (key == "synth_samples") {
            config.synth.n_samples = static_cast<std::size_t>(to_long(key, value));
        } else if (key == "synth_noise_features") {
            config.synth.n_noise_features = static_cast<std::size_t>(to_long(key, value));
        } else if (key == "synth_seed") {
            config.synth.seed = static_cast<std::uint64_t>(to_long(key, value));
        } else if (key == "synth_fraction_female") {
            config.synth.fraction_female = to_double(key, value);
        } else if (key == "synth_beta_intercept") {
            config.synth.beta_intercept = to_double(key, value);
        } else if (key == "synth_beta_age") {
            config.synth.beta_age = to_double(key, value);
        } else if (key == "synth_beta_schooling") {
            config.synth.beta_schooling = to_double(key, value);
        } else if (key == "synth_beta_chronic") {
            config.synth.beta_chronic = to_double(key, value);
        } else if (key == "feature_counts") {
            config.feature_counts.clear();
            for (const auto& item : split_list(value)) {
                config.feature_counts.push_back(static_cast<int>(to_long(key, item)));
            }
        } else if (key == "shots") {
            config.shots = static_cast<int>(to_long(key, value));
        } else if (key == "optimizer") {
            if (value == "cobyla") config.optimizer.method = OptMethod::Cobyla;
            else if (value == "spsa") config.optimizer.method = OptMethod::Spsa;
            else throw ConfigError("config: optimizer must be 'cobyla' or 'spsa'");
        } else if (key == "max_evaluations") {
            config.optimizer.max_evaluations = static_cast<int>(to_long(key, value));
        } else if (key == "rho_beg") {
            config.optimizer.initial_trust_radius = to_double(key, value);
        } else if (key == "rho_end") {
            config.optimizer.final_trust_radius = to_double(key, value);
        } else if (key == "layers") {
            config.ansatz_layers = static_cast<int>(to_long(key, value));
        } else if (key == "data_map") {
            if (value == "product") config.data_map = DataMap::Product;
            else if (value == "havlicek") config.data_map = DataMap::Havlicek;
            else throw ConfigError("config: data_map must be 'product' or 'havlicek'");
        } else if (key == "loss") {
            if (value == "cross_entropy") config.loss = LossKind::CrossEntropy;
            else if (value == "error_rate") config.loss = LossKind::ErrorRate;
            else throw ConfigError("config: loss must be 'cross_entropy' or 'error_rate'");
        } else if (key == "init") {
            if (value == "zeros") config.init = InitPolicy::Zeros;
            else if (value == "uniform") config.init = InitPolicy::SeededUniform;
            else throw ConfigError("config: init must be 'zeros' or 'uniform'");
        } else if (key == "scale_lo") {
            config.scale_lo = to_double(key, value);
        } else if (key == "scale_hi") {
            config.scale_hi = to_double(key, value);
        } else if (key == "test_fraction") {
            config.test_fraction = to_double(key, value);
        } else if (key == "seeds") {
            config.seeds.clear();
            for (const auto& item : split_list(value)) {
                config.seeds.push_back(static_cast<std::uint64_t>(to_long(key, item)));
            }
        } else if (key == "svm_c") {
            config.svm_c = to_double(key, value);
        } else if (key == "scorer") {
            if (value == "f_score") config.scorer = Scorer::FScore;
            else if (value == "permutation") config.scorer = Scorer::PermutationImportance;
            else throw ConfigError("config: scorer must be 'f_score' or 'permutation'");
        } else if (key == "ranking_import") {
            config.ranking_import = value;
        } else if (key == "output_dir") {
            config.output_dir = value;
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate_config(const ExperimentConfig& config, std::size_t available_features) {
    if (config.feature_counts.empty()) {
        throw ConfigError("config: feature_counts must not be empty");
    }
    for (int k : config.feature_counts) {
        if (k < 2) {
            throw ConfigError("config: feature counts must be >= 2");
        }
        if (static_cast<std::size_t>(k) > available_features) {
            throw ConfigError("config: feature count " + std::to_string(k) +
                              " exceeds available features (" + std::to_string(available_features) + ")");
        }
    }
    if (config.shots < 0) {
        throw ConfigError("config: shots must be >= 0");
    }
    if (!(config.test_fraction > 0.0) || !(config.test_fraction < 1.0)) {
        throw ConfigError("config: test_fraction must be in (0, 1)");
    }
    if (config.seeds.empty()) {
        throw ConfigError("config: seeds must not be empty");
    }
    if (config.ansatz_layers < 1) {
        throw ConfigError("config: layers must be >= 1");
    }
    if (!(config.scale_lo < config.scale_hi)) {
        throw ConfigError("config: require scale_lo < scale_hi");
    }
    if (!(config.svm_c > 0.0)) {
        throw ConfigError("config: svm_c must be > 0");
    }
}

std::string resolve_output_dir(const ExperimentConfig& config) {
    if (const char* env = std::getenv("VQCLASS_OUTPUT_DIR"); env && *env) {
        return env;
    }
    return config.output_dir;
}

std::string results_to_json(const ExperimentResults& results) {
    json j;
    j["config"] = config_to_json(results.config);
    json records = json::array();
    for (const auto& rec : results.records) {
        records.push_back(metrics_to_json(rec));
    }
    j["records"] = std::move(records);
    return j.dump(2) + "\n";
}

ExperimentResults run_experiment(const ExperimentConfig& config) {
    Dataset dataset;
    if (config.source == ExperimentConfig::Source::Synthetic) {
        dataset = generate_synthetic(config.synth);
    } else {
        dataset = load_csv(config.csv_path, config.label_column, config.positive_token);
    }
    validate_config(config, dataset.feature_count());

    const std::string out_dir = resolve_output_dir(config);
    std::filesystem::create_directories(out_dir);

    ExperimentResults results;
    results.config = config;
    for (std::uint64_t seed : config.seeds) {
        for (int k : config.feature_counts) {
            try {
                CellOutput cell = run_cell(config, dataset, k, seed);
                for (auto& rec : cell.records) results.records.push_back(std::move(rec));
            } catch (const std::exception& e) {
                // Keep what completed, then surface the failing stage.
                write_file_atomic(out_dir + "/results.json", results_to_json(results));
                throw TrainError("experiment cell k=" + std::to_string(k) + " seed=" +
                                 std::to_string(seed) + " failed: " + e.what());
            }
        }
    }

    write_file_atomic(out_dir + "/results.json", results_to_json(results));
    emit_plot_data(results, out_dir);
    return results;
}

void emit_plot_data(const ExperimentResults& results, const std::string& dir) {
    if (results.records.empty()) {
        throw std::invalid_argument("emit_plot_data: no records");
    }
    std::filesystem::create_directories(dir);

    const std::vector<std::string> metric_names = {"accuracy", "precision", "recall", "f1"};
    const std::vector<std::string> models = {"svm", "vqc"};

    for (const auto& metric : metric_names) {
        std::string csv = "k,model,mean,sd\n";
        for (const auto& model : models) {
            // (k -> values over seeds) for the held-out split.
            std::map<int, std::vector<double>> series;
            for (const auto& rec : results.records) {
                if (rec.model != model || rec.split != "test") continue;
                double value = 0.0;
                if (metric == "accuracy") value = rec.metrics.accuracy;
                else if (metric == "precision") value = rec.metrics.precision;
                else if (metric == "recall") value = rec.metrics.recall;
                else value = rec.metrics.f1;
                series[rec.k].push_back(value);
            }
            if (series.empty()) {
                std::fprintf(stderr, "warning: no %s records for model '%s', series skipped\n",
                             metric.c_str(), model.c_str());
                continue;
            }
            for (const auto& [k, values] : series) {
                double mean = 0.0;
                for (double v : values) mean += v;
                mean /= static_cast<double>(values.size());
                double sd = 0.0;
                if (values.size() > 1) {
                    double acc = 0.0;
                    for (double v : values) acc += (v - mean) * (v - mean);
                    sd = std::sqrt(acc / static_cast<double>(values.size() - 1));
                }
                csv += std::to_string(k) + "," + model + "," + format_double(mean) + "," +
                       format_double(sd) + "\n";
            }
        }
        write_file_atomic(dir + "/" + metric + ".csv", csv);
    }
}

}  // namespace vqclass
