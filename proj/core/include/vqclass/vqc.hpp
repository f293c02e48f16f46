#pragma once

#include <cstdint>
#include <vector>

#include "vqclass/circuits.hpp"
#include "vqclass/data.hpp"
#include "vqclass/errors.hpp"
#include "vqclass/optimizer.hpp"

namespace vqclass {

// Variational quantum classifier: encode x with the feature map, apply the
// ansatz, read the class from the bit-parity of measured outcomes. Even
// parity is class +1. shots == 0 selects exact-probability mode.
struct VqcModel {
    FeatureMapSpec feature_map;
    AnsatzSpec ansatz;
    std::vector<double> theta;
    int shots = 1024;
    double decision_threshold = 0.5;
    std::uint64_t seed = 0;
};

enum class InitPolicy { Zeros, SeededUniform };
enum class LossKind { CrossEntropy, ErrorRate };

struct TrainConfig {
    OptimizerConfig optimizer;
    InitPolicy init = InitPolicy::Zeros;
    LossKind loss = LossKind::CrossEntropy;
    int shots = 1024;        // shots during training; 0 = exact mode
    std::uint64_t seed = 0;  // shot sampling + seeded-uniform init
};

// Thrown when the optimizer aborts; carries the best model found so far.
class VqcTrainError : public TrainError {
public:
    VqcTrainError(const std::string& what, VqcModel best)
        : TrainError(what), best_model(std::move(best)) {}
    VqcModel best_model;
};

// p-hat(+1 | x): even-parity probability mass, sampled over model.shots
// measurement shots (exact sum over probabilities when shots == 0).
double predict_proba(const VqcModel& model, const std::vector<double>& x);

// Same, with an explicit sampling seed; used for per-sample seed derivation
// over datasets so parallel and serial evaluation agree.
double predict_proba_seeded(const VqcModel& model, const std::vector<double>& x,
                            std::uint64_t sample_seed);

// +1 iff predict_proba >= decision_threshold.
int classify(const VqcModel& model, const std::vector<double>& x);

// Per-sample sampling seed is mix(model.seed, row index).
std::vector<int> predict_dataset(const VqcModel& model, const Matrix& features);
std::vector<double> predict_proba_dataset(const VqcModel& model, const Matrix& features);

// Empirical loss of theta over the dataset under the model template.
// CrossEntropy clamps p-hat to [eps, 1-eps], eps = 1e-9; ErrorRate is the
// misclassified fraction. Deterministic given config.seed.
double loss(const std::vector<double>& theta, const Dataset& dataset,
            const FeatureMapSpec& feature_map, const AnsatzSpec& ansatz,
            const TrainConfig& config);

// Minimizes loss over theta with the configured optimizer. The returned
// model has the optimizer's best point; training loss never exceeds the
// loss at the initial theta. Throws VqcTrainError (carrying the best-so-far
// model) when the optimizer aborts on a non-finite value.
VqcModel train(const Dataset& dataset, const FeatureMapSpec& feature_map,
               const AnsatzSpec& ansatz, const TrainConfig& config,
               OptimizationResult* opt_result = nullptr);

}  // namespace vqclass
