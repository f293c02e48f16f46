#include "vqclass/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vqclass/errors.hpp"
#include "vqclass/rng.hpp"

namespace vqclass {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc{} && result.ptr == end && std::isfinite(out);
}

void validate(const Dataset& d, const char* where) {
    if (d.features.rows() != d.labels.size()) {
        throw std::invalid_argument(std::string(where) + ": row count != label count");
    }
    if (d.features.cols() != d.feature_names.size()) {
        throw std::invalid_argument(std::string(where) + ": column count != name count");
    }
    for (int y : d.labels) {
        if (y != 1 && y != -1) {
            throw std::invalid_argument(std::string(where) + ": labels must be +1 or -1");
        }
    }
}

Dataset take_rows(const Dataset& d, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.features = Matrix(rows.size(), d.features.cols());
    out.labels.reserve(rows.size());
    out.feature_names = d.feature_names;
    out.provenance = d.provenance;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < d.features.cols(); ++c) {
            out.features.at(i, c) = d.features.at(rows[i], c);
        }
        out.labels.push_back(d.labels[rows[i]]);
    }
    return out;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

Dataset Dataset::select_columns(const std::vector<std::size_t>& columns) const {
    Dataset out;
    out.features = Matrix(features.rows(), columns.size());
    out.labels = labels;
    out.provenance = provenance;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] >= features.cols()) {
            throw std::invalid_argument("select_columns: column index out of range");
        }
        out.feature_names.push_back(feature_names[columns[c]]);
        for (std::size_t r = 0; r < features.rows(); ++r) {
            out.features.at(r, c) = features.at(r, columns[c]);
        }
    }
    return out;
}

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_token, LoadReport* report) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError("cannot open CSV file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw LoadError("CSV file is empty (header row required): " + path);
    }
    const auto header = split_fields(line);
    std::size_t label_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == label_column) {
            label_idx = i;
            break;
        }
    }
    if (label_idx == header.size()) {
        throw LoadError("label column '" + label_column + "' not found in " + path);
    }

    std::vector<std::string> names;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i != label_idx) names.push_back(header[i]);
    }

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    LoadReport rep;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++rep.rows_seen;
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            ++rep.rows_dropped;
            continue;
        }
        std::vector<double> row;
        row.reserve(names.size());
        bool ok = true;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i == label_idx) {
                if (fields[i].empty()) ok = false;
                continue;
            }
            double v = 0.0;
            if (!parse_double(fields[i], v)) {
                ok = false;
                break;
            }
            row.push_back(v);
        }
        if (!ok) {
            ++rep.rows_dropped;
            continue;
        }
        rows.push_back(std::move(row));
        labels.push_back(fields[label_idx] == positive_token ? 1 : -1);
        ++rep.rows_used;
    }
    if (rows.empty()) {
        throw LoadError("no usable rows in " + path + " (" + std::to_string(rep.rows_dropped) +
                        " dropped of " + std::to_string(rep.rows_seen) + ")");
    }

    Dataset dataset;
    dataset.features = Matrix(rows.size(), names.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < names.size(); ++c) {
            dataset.features.at(r, c) = rows[r][c];
        }
    }
    dataset.labels = std::move(labels);
    dataset.feature_names = std::move(names);
    dataset.provenance = "csv:" + path;
    if (report) *report = rep;
    return dataset;
}

void write_csv(const Dataset& dataset, const std::string& path, const std::string& label_column) {
    std::ofstream out(path);
    if (!out) {
        throw LoadError("cannot open CSV file for writing: " + path);
    }
    for (const auto& name : dataset.feature_names) out << name << ',';
    out << label_column << '\n';
    char buf[32];
    for (std::size_t r = 0; r < dataset.size(); ++r) {
        for (std::size_t c = 0; c < dataset.feature_count(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", dataset.features.at(r, c));
            out << buf << ',';
        }
        out << (dataset.labels[r] == 1 ? 1 : 0) << '\n';
    }
}

std::pair<Dataset, Dataset> split(const Dataset& dataset, double test_fraction,
                                  std::uint64_t seed) {
    validate(dataset, "split");
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
        throw std::invalid_argument("test_fraction must be in (0, 1)");
    }
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        (dataset.labels[i] == 1 ? pos : neg).push_back(i);
    }
    if (pos.size() < 2 || neg.size() < 2) {
        throw std::invalid_argument("split: each class needs >= 2 samples to stratify");
    }

    Rng rng(seed);
    std::vector<std::size_t> test_rows, train_rows;
    for (auto* cls : {&pos, &neg}) {
        std::vector<std::size_t> idx = *cls;
        rng.shuffle(idx);
        auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(idx.size())));
        n_test = std::clamp<std::size_t>(n_test, 1, idx.size() - 1);
        test_rows.insert(test_rows.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
        train_rows.insert(train_rows.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
    }
    std::sort(test_rows.begin(), test_rows.end());
    std::sort(train_rows.begin(), train_rows.end());
    return {take_rows(dataset, train_rows), take_rows(dataset, test_rows)};
}

Dataset generate_synthetic(const SynthSpec& spec) {
    if (spec.n_samples < 4) {
        throw ConfigError("synthetic spec needs n_samples >= 4");
    }
    if (spec.fraction_female < 0.0 || spec.fraction_female > 1.0) {
        throw ConfigError("fraction_female must be in [0, 1]");
    }
    if (spec.age_sd < 0.0 || spec.schooling_sd < 0.0 || spec.chronic_sd < 0.0) {
        throw ConfigError("standard deviations must be >= 0");
    }

    Rng rng(spec.seed);
    Dataset dataset;
    dataset.feature_names = {"sex_female", "age_years", "schooling_years", "chronic_diseases"};
    char buf[32];
    for (std::size_t i = 0; i < spec.n_noise_features; ++i) {
        std::snprintf(buf, sizeof(buf), "noise_%02zu", i);
        dataset.feature_names.emplace_back(buf);
    }
    dataset.features = Matrix(spec.n_samples, dataset.feature_names.size());
    dataset.labels.reserve(spec.n_samples);
    dataset.provenance = "synthetic:seed=" + std::to_string(spec.seed);

    constexpr double kInf = 1e300;
    for (std::size_t r = 0; r < spec.n_samples; ++r) {
        const double female = rng.bernoulli(spec.fraction_female) ? 1.0 : 0.0;
        const double age = rng.truncated_normal(spec.age_mean, spec.age_sd, spec.age_lo, spec.age_hi);
        const double schooling =
            rng.truncated_normal(spec.schooling_mean, spec.schooling_sd, 0.0, kInf);
        const double chronic =
            std::round(rng.truncated_normal(spec.chronic_mean, spec.chronic_sd, 0.0, kInf));
        dataset.features.at(r, 0) = female;
        dataset.features.at(r, 1) = age;
        dataset.features.at(r, 2) = schooling;
        dataset.features.at(r, 3) = chronic;
        for (std::size_t c = 4; c < dataset.feature_names.size(); ++c) {
            dataset.features.at(r, c) = rng.uniform();
        }
        const double z_age = (age - spec.age_mean) / spec.age_sd;
        const double z_sch = (schooling - spec.schooling_mean) / spec.schooling_sd;
        const double z_chr = (chronic - spec.chronic_mean) / spec.chronic_sd;
        const double p = sigmoid(spec.beta_intercept + spec.beta_age * z_age +
                                 spec.beta_schooling * z_sch + spec.beta_chronic * z_chr);
        dataset.labels.push_back(rng.bernoulli(p) ? 1 : -1);
    }
    return dataset;
}

}  // namespace vqclass
