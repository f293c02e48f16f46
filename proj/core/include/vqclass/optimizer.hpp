#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace vqclass {

enum class OptMethod { Cobyla, Spsa };

struct OptimizerConfig {
    OptMethod method = OptMethod::Cobyla;
    double initial_trust_radius = 1.0;   // rho_beg
    double final_trust_radius = 1e-4;    // rho_end
    int max_evaluations = 500;
    std::uint64_t seed = 0;              // SPSA perturbation stream
};

struct OptimizationResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    int evaluations_used = 0;
    // True on normal termination (trust radius reached rho_end or budget
    // exhausted); false when a non-finite objective value forced an abort.
    bool converged = false;
    double final_trust_radius = 0.0;     // COBYLA only; 0 for SPSA
    std::vector<double> trust_radius_trace;  // rho after each shrink, COBYLA only
};

using Objective = std::function<double(const std::vector<double>&)>;
// (evaluation index, point, value) after every objective call.
using EvalCallback = std::function<void(int, const std::vector<double>&, double)>;

// Derivative-free minimization. COBYLA keeps a simplex of n+1 points, fits a
// linear model of the objective over it, steps within the trust radius, and
// shrinks the radius when the model stops paying off. SPSA follows the
// simultaneous-perturbation gradient estimate with standard gain schedules.
// Both track the incumbent over every evaluation, so the returned best value
// never exceeds the objective at x0.
OptimizationResult minimize(const Objective& objective, const std::vector<double>& x0,
                            const OptimizerConfig& config, const EvalCallback& trace = {});

}  // namespace vqclass
