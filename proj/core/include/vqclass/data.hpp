#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vqclass {

// Row-major dense matrix; just enough linear-algebra surface for this project.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<double> row(std::size_t r) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Feature matrix with +/-1 labels and per-feature names.
struct Dataset {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> feature_names;
    std::string provenance;

    std::size_t size() const { return labels.size(); }
    std::size_t feature_count() const { return features.cols(); }

    // Copy with only the given feature columns, in the given order.
    Dataset select_columns(const std::vector<std::size_t>& columns) const;
};

struct LoadReport {
    std::size_t rows_seen = 0;
    std::size_t rows_used = 0;
    std::size_t rows_dropped = 0;
};

// CSV ingest: UTF-8, comma-separated, header row required, decimal point,
// no quoting. Rows with any missing/unparseable cell are dropped and counted.
// The label column maps positive_token -> +1, anything else -> -1.
// Throws LoadError on missing file, missing label column, or zero usable rows.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_token = "1", LoadReport* report = nullptr);

void write_csv(const Dataset& dataset, const std::string& path,
               const std::string& label_column = "label");

// Stratified train/test split, deterministic in seed. Throws
// std::invalid_argument unless 0 < test_fraction < 1 and both classes have
// at least 2 samples.
std::pair<Dataset, Dataset> split(const Dataset& dataset, double test_fraction,
                                  std::uint64_t seed);

// Synthetic cohort matching the published demographic moments: 166 patients,
// 76% female, age 78.90 +/- 7.7939 truncated to [65, 90], schooling
// 3.46 +/- 3.8767 (>= 0), chronic diseases 2.96 +/- 1.3242 (>= 0, integer).
// Noise features pad the table toward its 99 variables. Labels follow a
// logistic rule over standardized (age, schooling, chronic).
struct SynthSpec {
    std::size_t n_samples = 166;
    double fraction_female = 0.76;
    double age_mean = 78.90;
    double age_sd = 7.7939;
    double age_lo = 65.0;
    double age_hi = 90.0;
    double schooling_mean = 3.46;
    double schooling_sd = 3.8767;
    double chronic_mean = 2.96;
    double chronic_sd = 1.3242;
    std::size_t n_noise_features = 95;  // 4 clinical columns + 95 = 99 variables
    double beta_intercept = 0.0;
    double beta_age = 1.5;
    double beta_schooling = -1.0;
    double beta_chronic = 1.0;
    std::uint64_t seed = 42;
};

Dataset generate_synthetic(const SynthSpec& spec);

}  // namespace vqclass
