#include "vqclass/svm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vqclass/errors.hpp"

namespace vqclass {

namespace {

constexpr double kSmoTol = 1e-6;   // KKT violation tolerance (stopping rule)
constexpr double kStepEps = 1e-12; // minimum meaningful alpha change
constexpr int kMaxPasses = 2000;

double dot(const Matrix& m, std::size_t r1, std::size_t r2) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m.at(r1, c) * m.at(r2, c);
    return acc;
}

// Working state for one SMO run. The weight vector is maintained
// incrementally, so errors are O(d) to evaluate.
struct SmoState {
    const Matrix& x;
    const std::vector<int>& y;
    double c;
    std::vector<double> alphas;
    std::vector<double> w;
    double b = 0.0;

    SmoState(const Dataset& dataset, double c_)
        : x(dataset.features), y(dataset.labels), c(c_), alphas(dataset.size(), 0.0),
          w(dataset.feature_count(), 0.0) {}

    double decision(std::size_t i) const {
        double acc = b;
        for (std::size_t col = 0; col < x.cols(); ++col) acc += w[col] * x.at(i, col);
        return acc;
    }

    double error(std::size_t i) const { return decision(i) - static_cast<double>(y[i]); }

    bool non_bound(std::size_t i) const { return alphas[i] > kStepEps && alphas[i] < c - kStepEps; }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double a1 = alphas[i1];
        const double a2 = alphas[i2];
        const double y1 = y[i1], y2 = y[i2];
        const double e1 = error(i1);
        const double e2 = error(i2);
        const double s = y1 * y2;

        double lo, hi;
        if (s > 0.0) {
            lo = std::max(0.0, a1 + a2 - c);
            hi = std::min(c, a1 + a2);
        } else {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(c, c + a2 - a1);
        }
        if (lo >= hi) return false;

        const double k11 = dot(x, i1, i1);
        const double k12 = dot(x, i1, i2);
        const double k22 = dot(x, i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;

        double a2_new;
        if (eta > 0.0) {
            a2_new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
        } else {
            // Flat or concave direction: compare the dual objective at the
            // clip-interval endpoints (Platt's degenerate-eta rule).
            const double f1 = y1 * (e1 - b) - a1 * k11 - s * a2 * k12;
            const double f2 = y2 * (e2 - b) - a2 * k22 - s * a1 * k12;
            const double l1 = a1 + s * (a2 - lo);
            const double h1 = a1 + s * (a2 - hi);
            const double lo_obj = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 +
                                  s * lo * l1 * k12;
            const double hi_obj = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 +
                                  s * hi * h1 * k12;
            if (lo_obj < hi_obj - kStepEps) {
                a2_new = lo;
            } else if (lo_obj > hi_obj + kStepEps) {
                a2_new = hi;
            } else {
                return false;
            }
        }
        if (std::abs(a2_new - a2) < kStepEps * (a2_new + a2 + kStepEps)) return false;

        const double a1_new = a1 + s * (a2 - a2_new);

        const double b1 = b - e1 - y1 * (a1_new - a1) * k11 - y2 * (a2_new - a2) * k12;
        const double b2 = b - e2 - y1 * (a1_new - a1) * k12 - y2 * (a2_new - a2) * k22;
        if (a1_new > kStepEps && a1_new < c - kStepEps) {
            b = b1;
        } else if (a2_new > kStepEps && a2_new < c - kStepEps) {
            b = b2;
        } else {
            b = 0.5 * (b1 + b2);
        }

        for (std::size_t col = 0; col < x.cols(); ++col) {
            w[col] += y1 * (a1_new - a1) * x.at(i1, col) + y2 * (a2_new - a2) * x.at(i2, col);
        }
        alphas[i1] = a1_new;
        alphas[i2] = a2_new;
        return true;
    }

    bool examine(std::size_t i2) {
        const double y2 = y[i2];
        const double a2 = alphas[i2];
        const double e2 = error(i2);
        const double r2 = e2 * y2;
        const bool violates = (r2 < -kSmoTol && a2 < c) || (r2 > kSmoTol && a2 > 0.0);
        if (!violates) return false;

        // Second choice: largest |E1 - E2| among non-bound points.
        std::size_t best = i2;
        double best_gap = -1.0;
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (!non_bound(i)) continue;
            const double gap = std::abs(error(i) - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best != i2 && take_step(best, i2)) return true;

        // Fall back to deterministic sweeps: non-bound first, then all.
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (non_bound(i) && take_step(i, i2)) return true;
        }
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (take_step(i, i2)) return true;
        }
        return false;
    }
};

}  // namespace

double svm_dual_objective(const Dataset& dataset, const std::vector<double>& alphas) {
    const auto& x = dataset.features;
    const auto& y = dataset.labels;
    double obj = 0.0;
    for (double a : alphas) obj += a;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (alphas[i] == 0.0) continue;
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            if (alphas[j] == 0.0) continue;
            obj -= 0.5 * alphas[i] * alphas[j] * y[i] * y[j] * dot(x, i, j);
        }
    }
    return obj;
}

SvmModel train_svm(const Dataset& dataset, double c) {
    if (!(c > 0.0)) {
        throw std::invalid_argument("train_svm: C must be > 0");
    }
    if (dataset.size() == 0) {
        throw std::invalid_argument("train_svm: empty dataset");
    }
    bool has_pos = false, has_neg = false;
    for (int label : dataset.labels) {
        if (label == 1) has_pos = true;
        else if (label == -1) has_neg = true;
        else throw std::invalid_argument("train_svm: labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) {
        throw std::invalid_argument("train_svm: both classes must be present");
    }

    SmoState smo(dataset, c);
    bool examine_all = true;
    int passes = 0;
    while (true) {
        if (++passes > kMaxPasses) {
            throw TrainError("SMO did not converge within " + std::to_string(kMaxPasses) +
                             " passes (n=" + std::to_string(dataset.size()) +
                             ", C=" + std::to_string(c) + ")");
        }
        int changed = 0;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            if (examine_all || smo.non_bound(i)) {
                changed += smo.examine(i) ? 1 : 0;
            }
        }
        if (examine_all) {
            if (changed == 0) break;
            examine_all = false;
        } else if (changed == 0) {
            examine_all = true;
        }
    }

    SvmModel model;
    model.alphas = smo.alphas;
    model.weights = smo.w;
    model.c = c;
    for (std::size_t i = 0; i < model.alphas.size(); ++i) {
        if (model.alphas[i] > kAlphaTol) model.support_indices.push_back(i);
    }

    // Bias from margin conditions: average y_i - w'x_i over non-bound support
    // vectors, falling back to all support vectors.
    double bias_sum = 0.0;
    std::size_t bias_count = 0;
    for (std::size_t i : model.support_indices) {
        if (!smo.non_bound(i)) continue;
        double wx = 0.0;
        for (std::size_t col = 0; col < dataset.feature_count(); ++col) {
            wx += model.weights[col] * dataset.features.at(i, col);
        }
        bias_sum += static_cast<double>(dataset.labels[i]) - wx;
        ++bias_count;
    }
    if (bias_count == 0) {
        for (std::size_t i : model.support_indices) {
            double wx = 0.0;
            for (std::size_t col = 0; col < dataset.feature_count(); ++col) {
                wx += model.weights[col] * dataset.features.at(i, col);
            }
            bias_sum += static_cast<double>(dataset.labels[i]) - wx;
            ++bias_count;
        }
    }
    model.bias = bias_count > 0 ? bias_sum / static_cast<double>(bias_count) : smo.b;
    return model;
}

double decision_function(const SvmModel& model, const std::vector<double>& x) {
    if (x.size() != model.feature_count()) {
        throw std::invalid_argument("decision_function: feature dimension mismatch");
    }
    double acc = model.bias;
    for (std::size_t i = 0; i < x.size(); ++i) acc += model.weights[i] * x[i];
    return acc;
}

int classify_svm(const SvmModel& model, const std::vector<double>& x) {
    return decision_function(model, x) >= 0.0 ? 1 : -1;
}

}  // namespace vqclass
