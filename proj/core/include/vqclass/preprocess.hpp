#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vqclass/data.hpp"

namespace vqclass {

// Per-feature min/max observed on the training split only, plus the target
// range. Constructing from the training matrix is the leakage guard: test
// statistics never enter.
struct ScalerParams {
    std::vector<double> mins;
    std::vector<double> maxs;
    double lo = 0.0;
    double hi = 3.141592653589793238462643383279502884;

    std::size_t feature_count() const { return mins.size(); }
};

ScalerParams fit_scaler(const Matrix& train_matrix, double lo = 0.0,
                        double hi = 3.141592653589793238462643383279502884);

// x' = lo + (x - min) * (hi - lo) / (max - min). Degenerate columns
// (max == min) map to lo; out-of-range values are clamped to [lo, hi].
Matrix transform(const Matrix& matrix, const ScalerParams& params);

// Inverse of transform for in-range values of non-degenerate columns.
Matrix inverse_transform(const Matrix& matrix, const ScalerParams& params);

enum class Scorer { FScore, PermutationImportance };

struct RankedFeature {
    std::size_t index = 0;
    double score = 0.0;
    bool degenerate = false;  // zero within-class variance (FScore sentinel)
};

struct FeatureRanking {
    std::vector<RankedFeature> entries;  // scores non-increasing, ties by index
    Scorer scorer = Scorer::FScore;
};

struct RankOptions {
    Scorer scorer = Scorer::FScore;
    std::uint64_t seed = 0;   // permutation shuffles
    int repeats = 10;         // shuffles per feature, averaged
    // Baseline predictor for permutation importance; when empty, a linear
    // SVM (C = 1) trained on the dataset is used.
    std::function<std::vector<int>(const Matrix&)> baseline;
};

// Variable ranking. FScore: one-way ANOVA F statistic per feature,
// between-class variance over within-class variance; zero within-class
// variance ranks as a sentinel max with a degeneracy flag. Permutation
// importance: mean accuracy drop over seeded column shuffles.
FeatureRanking rank_features(const Dataset& dataset, const RankOptions& options = {});

// First k indices of the ranking. Throws std::invalid_argument when k is
// outside 1..=feature count.
std::vector<std::size_t> select_top_k(const FeatureRanking& ranking, std::size_t k);

// Ranking-import file: CSV rows of `feature_name,score`; names are resolved
// against the dataset's feature names.
FeatureRanking load_ranking_csv(const std::string& path,
                                const std::vector<std::string>& feature_names);

}  // namespace vqclass
