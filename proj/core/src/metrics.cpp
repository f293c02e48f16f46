#include "vqclass/metrics.hpp"

#include <stdexcept>

namespace vqclass {

ConfusionCounts confusion(const std::vector<int>& predictions, const std::vector<int>& labels) {
    if (predictions.size() != labels.size()) {
        throw std::invalid_argument("confusion: predictions and labels differ in length");
    }
    if (predictions.empty()) {
        throw std::invalid_argument("confusion: need at least one sample");
    }
    ConfusionCounts counts;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const int pred = predictions[i];
        const int label = labels[i];
        if ((pred != 1 && pred != -1) || (label != 1 && label != -1)) {
            throw std::invalid_argument("confusion: values must be +1 or -1");
        }
        if (pred == 1) {
            label == 1 ? ++counts.tp : ++counts.fp;
        } else {
            label == -1 ? ++counts.tn : ++counts.fn;
        }
    }
    return counts;
}

MetricsRecord compute_metrics(const ConfusionCounts& counts) {
    MetricsRecord rec;
    const auto total = counts.total();
    rec.accuracy = total > 0 ? static_cast<double>(counts.tp + counts.tn) / static_cast<double>(total) : 0.0;

    if (counts.tp + counts.fp > 0) {
        rec.precision = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fp);
    } else {
        rec.precision_degenerate = true;
    }
    if (counts.tp + counts.fn > 0) {
        rec.recall = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
    } else {
        rec.recall_degenerate = true;
    }
    if (rec.precision + rec.recall > 0.0) {
        rec.f1 = 2.0 * rec.precision * rec.recall / (rec.precision + rec.recall);
    } else {
        rec.f1_degenerate = true;
    }
    return rec;
}

}  // namespace vqclass
