#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vqclass {

// Binary confusion counts; positive class is +1.
struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }
};

struct MetricsRecord {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    // Zero-denominator metrics are reported as 0 and flagged here.
    bool precision_degenerate = false;
    bool recall_degenerate = false;
    bool f1_degenerate = false;
    // Context tags filled in by the experiment runner.
    std::string model_tag;
    int feature_count = 0;
    int shots = 0;
    std::uint64_t seed = 0;
};

// Throws std::invalid_argument on length mismatch, empty input, or values
// outside {+1, -1}.
ConfusionCounts confusion(const std::vector<int>& predictions, const std::vector<int>& labels);

MetricsRecord compute_metrics(const ConfusionCounts& counts);

}  // namespace vqclass
