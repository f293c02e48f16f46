#include "vqclass/preprocess.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "vqclass/errors.hpp"
#include "vqclass/rng.hpp"
#include "vqclass/svm.hpp"

namespace vqclass {

namespace {

void sort_ranking(FeatureRanking& ranking) {
    std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                     [](const RankedFeature& a, const RankedFeature& b) {
                         if (a.score != b.score) return a.score > b.score;
                         return a.index < b.index;
                     });
}

double column_accuracy(const std::function<std::vector<int>(const Matrix&)>& predict,
                       const Matrix& features, const std::vector<int>& labels) {
    const auto preds = predict(features);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (preds[i] == labels[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

FeatureRanking rank_f_score(const Dataset& dataset) {
    const auto& m = dataset.features;
    const auto& y = dataset.labels;
    const auto n = static_cast<double>(y.size());

    std::size_t n_pos = 0;
    for (int label : y) {
        if (label == 1) ++n_pos;
    }
    const std::size_t n_neg = y.size() - n_pos;
    if (n_pos < 2 || n_neg < 2) {
        throw std::invalid_argument("f_score ranking needs >= 2 samples per class");
    }

    FeatureRanking ranking;
    ranking.scorer = Scorer::FScore;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        double sum_pos = 0.0, sum_neg = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            (y[r] == 1 ? sum_pos : sum_neg) += m.at(r, c);
        }
        const double mean_pos = sum_pos / static_cast<double>(n_pos);
        const double mean_neg = sum_neg / static_cast<double>(n_neg);
        const double mean_all = (sum_pos + sum_neg) / n;

        double within = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            const double d = m.at(r, c) - (y[r] == 1 ? mean_pos : mean_neg);
            within += d * d;
        }
        const double between = static_cast<double>(n_pos) * (mean_pos - mean_all) * (mean_pos - mean_all) +
                               static_cast<double>(n_neg) * (mean_neg - mean_all) * (mean_neg - mean_all);

        RankedFeature entry;
        entry.index = c;
        if (within == 0.0) {
            entry.degenerate = true;
            entry.score = between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        } else {
            // One-way ANOVA with k = 2 groups: F = (between/(k-1)) / (within/(N-k)).
            entry.score = between / (within / (n - 2.0));
        }
        ranking.entries.push_back(entry);
    }
    sort_ranking(ranking);
    return ranking;
}

FeatureRanking rank_permutation(const Dataset& dataset, const RankOptions& options) {
    auto predict = options.baseline;
    SvmModel baseline_model;
    if (!predict) {
        baseline_model = train_svm(dataset, 1.0);
        predict = [&baseline_model](const Matrix& features) {
            std::vector<int> preds;
            preds.reserve(features.rows());
            for (std::size_t r = 0; r < features.rows(); ++r) {
                preds.push_back(classify_svm(baseline_model, features.row(r)));
            }
            return preds;
        };
    }

    const double base_acc = column_accuracy(predict, dataset.features, dataset.labels);
    Rng rng(options.seed);

    FeatureRanking ranking;
    ranking.scorer = Scorer::PermutationImportance;
    for (std::size_t c = 0; c < dataset.features.cols(); ++c) {
        double drop_sum = 0.0;
        for (int rep = 0; rep < options.repeats; ++rep) {
            std::vector<std::size_t> perm(dataset.features.rows());
            for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
            rng.shuffle(perm);
            Matrix shuffled = dataset.features;
            for (std::size_t r = 0; r < shuffled.rows(); ++r) {
                shuffled.at(r, c) = dataset.features.at(perm[r], c);
            }
            drop_sum += base_acc - column_accuracy(predict, shuffled, dataset.labels);
        }
        RankedFeature entry;
        entry.index = c;
        entry.score = drop_sum / static_cast<double>(options.repeats);
        ranking.entries.push_back(entry);
    }
    sort_ranking(ranking);
    return ranking;
}

}  // namespace

ScalerParams fit_scaler(const Matrix& train_matrix, double lo, double hi) {
    if (train_matrix.rows() == 0 || train_matrix.cols() == 0) {
        throw std::invalid_argument("fit_scaler: empty training matrix");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("fit_scaler: require lo < hi");
    }
    ScalerParams params;
    params.lo = lo;
    params.hi = hi;
    params.mins.resize(train_matrix.cols());
    params.maxs.resize(train_matrix.cols());
    for (std::size_t c = 0; c < train_matrix.cols(); ++c) {
        double mn = train_matrix.at(0, c), mx = train_matrix.at(0, c);
        for (std::size_t r = 1; r < train_matrix.rows(); ++r) {
            mn = std::min(mn, train_matrix.at(r, c));
            mx = std::max(mx, train_matrix.at(r, c));
        }
        params.mins[c] = mn;
        params.maxs[c] = mx;
    }
    return params;
}

Matrix transform(const Matrix& matrix, const ScalerParams& params) {
    if (matrix.cols() != params.feature_count()) {
        throw std::invalid_argument("transform: column count does not match scaler params");
    }
    Matrix out(matrix.rows(), matrix.cols());
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
        const double mn = params.mins[c];
        const double range = params.maxs[c] - mn;
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
            if (range == 0.0) {
                out.at(r, c) = params.lo;
                continue;
            }
            const double scaled = params.lo + (matrix.at(r, c) - mn) * (params.hi - params.lo) / range;
            out.at(r, c) = std::clamp(scaled, params.lo, params.hi);
        }
    }
    return out;
}

Matrix inverse_transform(const Matrix& matrix, const ScalerParams& params) {
    if (matrix.cols() != params.feature_count()) {
        throw std::invalid_argument("inverse_transform: column count does not match scaler params");
    }
    Matrix out(matrix.rows(), matrix.cols());
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
        const double mn = params.mins[c];
        const double range = params.maxs[c] - mn;
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
            out.at(r, c) = mn + (matrix.at(r, c) - params.lo) * range / (params.hi - params.lo);
        }
    }
    return out;
}

FeatureRanking rank_features(const Dataset& dataset, const RankOptions& options) {
    if (dataset.size() == 0 || dataset.feature_count() == 0) {
        throw std::invalid_argument("rank_features: empty dataset");
    }
    switch (options.scorer) {
    case Scorer::FScore:
        return rank_f_score(dataset);
    case Scorer::PermutationImportance:
        return rank_permutation(dataset, options);
    }
    throw std::invalid_argument("rank_features: unknown scorer");
}

std::vector<std::size_t> select_top_k(const FeatureRanking& ranking, std::size_t k) {
    if (k < 1 || k > ranking.entries.size()) {
        throw std::invalid_argument("select_top_k: k out of range 1..=" +
                                    std::to_string(ranking.entries.size()));
    }
    std::vector<std::size_t> indices;
    indices.reserve(k);
    for (std::size_t i = 0; i < k; ++i) indices.push_back(ranking.entries[i].index);
    return indices;
}

FeatureRanking load_ranking_csv(const std::string& path,
                                const std::vector<std::string>& feature_names) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError("cannot open ranking file: " + path);
    }
    FeatureRanking ranking;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw LoadError("ranking file line " + std::to_string(line_no) +
                            ": expected `feature_name,score`");
        }
        const std::string name = line.substr(0, comma);
        const std::string score_str = line.substr(comma + 1);
        const auto it = std::find(feature_names.begin(), feature_names.end(), name);
        if (it == feature_names.end()) {
            throw LoadError("ranking file names unknown feature '" + name + "'");
        }
        RankedFeature entry;
        entry.index = static_cast<std::size_t>(std::distance(feature_names.begin(), it));
        try {
            entry.score = std::stod(score_str);
        } catch (const std::exception&) {
            throw LoadError("ranking file line " + std::to_string(line_no) + ": bad score");
        }
        ranking.entries.push_back(entry);
    }
    if (ranking.entries.empty()) {
        throw LoadError("ranking file is empty: " + path);
    }
    sort_ranking(ranking);
    return ranking;
}

}  // namespace vqclass
