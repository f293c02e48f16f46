#include "vqclass/vqc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "vqclass/rng.hpp"

namespace vqclass {

namespace {

constexpr double kLossEps = 1e-9;

void check_model(const VqcModel& model) {
    if (model.feature_map.num_qubits != model.ansatz.num_qubits) {
        throw std::invalid_argument("vqc: feature map and ansatz qubit counts differ");
    }
    if (static_cast<int>(model.theta.size()) != model.ansatz.parameter_count()) {
        throw std::invalid_argument("vqc: theta length != ansatz parameter count");
    }
    if (model.shots < 0) {
        throw std::invalid_argument("vqc: shots must be >= 0");
    }
    if (!(model.decision_threshold > 0.0) || !(model.decision_threshold < 1.0)) {
        throw std::invalid_argument("vqc: decision_threshold must lie in (0, 1)");
    }
}

Statevector model_state(const VqcModel& model, const std::vector<double>& x) {
    Statevector state = zero_state(model.feature_map.num_qubits);
    state = run(build_feature_map(x, model.feature_map), state);
    return run(build_ansatz(model.theta, model.ansatz), state);
}

bool even_parity(std::uint64_t basis) { return (std::popcount(basis) & 1) == 0; }

double proba_from_state(const VqcModel& model, const Statevector& state, std::uint64_t seed) {
    if (model.shots == 0) {
        double p = 0.0;
        const auto probs = probabilities(state);
        for (std::size_t b = 0; b < probs.size(); ++b) {
            if (even_parity(b)) p += probs[b];
        }
        return p;
    }
    const CountsHistogram hist = sample_counts(state, static_cast<std::uint64_t>(model.shots), seed);
    std::uint64_t even = 0;
    for (const auto& [basis, count] : hist.counts) {
        if (even_parity(basis)) even += count;
    }
    return static_cast<double>(even) / static_cast<double>(hist.shots);
}

}  // namespace

double predict_proba_seeded(const VqcModel& model, const std::vector<double>& x,
                            std::uint64_t sample_seed) {
    check_model(model);
    return proba_from_state(model, model_state(model, x), sample_seed);
}

double predict_proba(const VqcModel& model, const std::vector<double>& x) {
    return predict_proba_seeded(model, x, model.seed);
}

int classify(const VqcModel& model, const std::vector<double>& x) {
    return predict_proba(model, x) >= model.decision_threshold ? 1 : -1;
}

std::vector<double> predict_proba_dataset(const VqcModel& model, const Matrix& features) {
    std::vector<double> probs;
    probs.reserve(features.rows());
    for (std::size_t r = 0; r < features.rows(); ++r) {
        probs.push_back(predict_proba_seeded(model, features.row(r), mix_seed(model.seed, r)));
    }
    return probs;
}

std::vector<int> predict_dataset(const VqcModel& model, const Matrix& features) {
    const auto probs = predict_proba_dataset(model, features);
    std::vector<int> preds;
    preds.reserve(probs.size());
    for (double p : probs) {
        preds.push_back(p >= model.decision_threshold ? 1 : -1);
    }
    return preds;
}

double loss(const std::vector<double>& theta, const Dataset& dataset,
            const FeatureMapSpec& feature_map, const AnsatzSpec& ansatz,
            const TrainConfig& config) {
    if (dataset.size() == 0) {
        throw std::invalid_argument("loss: empty dataset");
    }
    VqcModel model;
    model.feature_map = feature_map;
    model.ansatz = ansatz;
    model.theta = theta;
    model.shots = config.shots;
    model.seed = config.seed;

    const auto probs = predict_proba_dataset(model, dataset.features);
    double acc = 0.0;
    if (config.loss == LossKind::CrossEntropy) {
        for (std::size_t i = 0; i < probs.size(); ++i) {
            const double p = std::clamp(probs[i], kLossEps, 1.0 - kLossEps);
            acc -= dataset.labels[i] == 1 ? std::log(p) : std::log(1.0 - p);
        }
    } else {
        for (std::size_t i = 0; i < probs.size(); ++i) {
            const int pred = probs[i] >= model.decision_threshold ? 1 : -1;
            if (pred != dataset.labels[i]) acc += 1.0;
        }
    }
    return acc / static_cast<double>(dataset.size());
}

VqcModel train(const Dataset& dataset, const FeatureMapSpec& feature_map,
               const AnsatzSpec& ansatz, const TrainConfig& config,
               OptimizationResult* opt_result) {
    if (dataset.size() == 0) {
        throw std::invalid_argument("train: empty dataset");
    }
    if (static_cast<int>(dataset.feature_count()) != feature_map.num_qubits) {
        throw std::invalid_argument("train: feature count != num_qubits");
    }

    std::vector<double> theta0(static_cast<std::size_t>(ansatz.parameter_count()), 0.0);
    if (config.init == InitPolicy::SeededUniform) {
        constexpr double kPi = 3.141592653589793238462643383279502884;
        Rng rng(mix_seed(config.seed, 0x7468657461));  // independent init stream
        for (double& t : theta0) t = rng.uniform(-kPi, kPi);
    }

    const Objective objective = [&](const std::vector<double>& theta) {
        return loss(theta, dataset, feature_map, ansatz, config);
    };
    const OptimizationResult result = minimize(objective, theta0, config.optimizer);

    VqcModel model;
    model.feature_map = feature_map;
    model.ansatz = ansatz;
    model.theta = result.best_point;
    model.shots = config.shots;
    model.seed = config.seed;
    if (opt_result) *opt_result = result;
    if (!result.converged) {
        throw VqcTrainError("vqc training aborted on a non-finite loss value", model);
    }
    return model;
}

}  // namespace vqclass
