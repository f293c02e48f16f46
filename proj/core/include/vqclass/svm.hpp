#pragma once

#include <cstdint>
#include <vector>

#include "vqclass/data.hpp"

namespace vqclass {

// Soft-margin linear SVM trained by sequential minimal optimization on the
// dual QP. For the linear kernel the weight vector is carried explicitly:
// w = sum_i alpha_i y_i x_i.
struct SvmModel {
    std::vector<double> alphas;           // dual coefficients, 0 <= alpha_i <= C
    std::vector<double> weights;          // w
    double bias = 0.0;                    // b
    std::vector<std::size_t> support_indices;  // alpha_i > alpha_tol
    double c = 1.0;

    std::size_t feature_count() const { return weights.size(); }
};

inline constexpr double kAlphaTol = 1e-8;  // support-vector identification
inline constexpr double kKktTol = 1e-3;

// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j <x_i, x_j>.
double svm_dual_objective(const Dataset& dataset, const std::vector<double>& alphas);

// Trains on +/-1 labels; both classes must be present and C > 0
// (std::invalid_argument otherwise). Throws TrainError with diagnostics when
// SMO fails to reach its stopping rule within the pass limit.
SvmModel train_svm(const Dataset& dataset, double c = 1.0);

// w'x + b. Throws std::invalid_argument on dimension mismatch.
double decision_function(const SvmModel& model, const std::vector<double>& x);

// Sign of the decision function; 0 maps to +1.
int classify_svm(const SvmModel& model, const std::vector<double>& x);

}  // namespace vqclass
