#include "vqclass/optimizer.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include "vqclass/errors.hpp"
#include "vqclass/rng.hpp"

namespace vqclass {

namespace {

struct BudgetExhausted {};
struct NonFiniteValue {};

// Counts calls, traces, and tracks the incumbent. All candidate points are
// offsets from x0 so the search path depends only on relative geometry.
class Evaluator {
public:
    Evaluator(const Objective& objective, const std::vector<double>& x0, int max_evaluations,
              const EvalCallback& trace)
        : objective_(objective), x0_(x0), max_evaluations_(max_evaluations), trace_(trace) {}

    double eval(const std::vector<double>& offset) {
        if (used_ >= max_evaluations_) {
            throw BudgetExhausted{};
        }
        std::vector<double> point(x0_.size());
        for (std::size_t i = 0; i < point.size(); ++i) point[i] = x0_[i] + offset[i];
        const double value = objective_(point);
        ++used_;
        if (trace_) trace_(used_ - 1, point, value);
        if (!std::isfinite(value)) {
            throw NonFiniteValue{};
        }
        if (value < best_value_) {
            best_value_ = value;
            best_offset_ = offset;
        }
        return value;
    }

    int used() const { return used_; }
    bool has_budget() const { return used_ < max_evaluations_; }
    double best_value() const { return best_value_; }
    std::vector<double> best_point() const {
        std::vector<double> point(x0_.size());
        for (std::size_t i = 0; i < point.size(); ++i) point[i] = x0_[i] + best_offset_[i];
        return point;
    }

private:
    const Objective& objective_;
    const std::vector<double>& x0_;
    int max_evaluations_;
    const EvalCallback& trace_;
    int used_ = 0;
    double best_value_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_offset_;
};

double norm2(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

// Gaussian elimination with partial pivoting; false on a (near-)singular
// system, which signals a degenerate simplex.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> rhs,
                  std::vector<double>& out) {
    const std::size_t n = rhs.size();
    double scale = 0.0;
    for (const auto& row : a) {
        for (double v : row) scale = std::max(scale, std::abs(v));
    }
    if (scale == 0.0) return false;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-12 * scale) return false;
        std::swap(a[col], a[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * out[c];
        out[i] = acc / a[i][i];
    }
    return true;
}

class CobylaState {
public:
    CobylaState(Evaluator& ev, std::size_t dim, const OptimizerConfig& cfg)
        : ev_(ev), dim_(dim), rho_(cfg.initial_trust_radius), rho_end_(cfg.final_trust_radius) {}

    void run() {
        build_simplex(std::vector<double>(dim_, 0.0));
        while (true) {
            const std::size_t best = best_vertex();
            std::vector<double> gradient;
            if (!fit_linear_model(best, gradient)) {
                // Degenerate simplex: restore geometry around the best vertex.
                build_simplex(vertices_[best]);
                continue;
            }

            std::vector<double> step(dim_, 0.0);
            const double gnorm = norm2(gradient);
            if (gnorm > 1e-300) {
                for (std::size_t i = 0; i < dim_; ++i) step[i] = -rho_ * gradient[i] / gnorm;
            } else if (have_last_dir_) {
                const double dnorm = norm2(last_dir_);
                if (dnorm > 1e-300) {
                    for (std::size_t i = 0; i < dim_; ++i) step[i] = rho_ * last_dir_[i] / dnorm;
                }
            }
            if (norm2(step) == 0.0) {
                // Flat model, no history to follow: tighten the region.
                if (!shrink()) return;
                continue;
            }

            std::vector<double> candidate(dim_);
            for (std::size_t i = 0; i < dim_; ++i) candidate[i] = vertices_[best][i] + step[i];
            const double fc = ev_.eval(candidate);

            if (fc < values_[best]) {
                last_dir_ = step;
                have_last_dir_ = true;
                replace_worst(candidate, fc);
                continue;
            }
            if (fc < values_[worst_vertex()]) {
                replace_worst(candidate, fc);
            }
            // The model step failed to beat the incumbent: either the simplex
            // is stale at this scale or the region is too large.
            if (simplex_radius(best) > 2.0 * rho_) {
                build_simplex(vertices_[best]);
            } else if (!shrink()) {
                return;
            }
        }
    }

    double rho() const { return rho_; }
    const std::vector<double>& rho_trace() const { return rho_trace_; }

private:
    void build_simplex(std::vector<double> center) {
        vertices_.assign(1, std::move(center));
        values_.assign(1, ev_.eval(vertices_[0]));
        for (std::size_t k = 0; k < dim_; ++k) {
            std::vector<double> v = vertices_[0];
            v[k] += rho_;
            values_.push_back(ev_.eval(v));
            vertices_.push_back(std::move(v));
        }
    }

    std::size_t best_vertex() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < values_.size(); ++i) {
            if (values_[i] < values_[best]) best = i;
        }
        return best;
    }

    std::size_t worst_vertex() const {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < values_.size(); ++i) {
            if (values_[i] > values_[worst]) worst = i;
        }
        return worst;
    }

    bool fit_linear_model(std::size_t best, std::vector<double>& gradient) const {
        std::vector<std::vector<double>> diffs;
        std::vector<double> rhs;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (i == best) continue;
            std::vector<double> row(dim_);
            for (std::size_t c = 0; c < dim_; ++c) row[c] = vertices_[i][c] - vertices_[best][c];
            diffs.push_back(std::move(row));
            rhs.push_back(values_[i] - values_[best]);
        }
        return solve_linear(std::move(diffs), std::move(rhs), gradient);
    }

    void replace_worst(const std::vector<double>& candidate, double value) {
        const std::size_t worst = worst_vertex();
        vertices_[worst] = candidate;
        values_[worst] = value;
    }

    double simplex_radius(std::size_t best) const {
        double r = 0.0;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (i == best) continue;
            std::vector<double> d(dim_);
            for (std::size_t c = 0; c < dim_; ++c) d[c] = vertices_[i][c] - vertices_[best][c];
            r = std::max(r, norm2(d));
        }
        return r;
    }

    // Returns false when the schedule is finished (rho already at rho_end).
    bool shrink() {
        if (rho_ <= rho_end_) return false;
        rho_ = std::max(rho_ * 0.5, rho_end_);
        rho_trace_.push_back(rho_);
        return true;
    }

    Evaluator& ev_;
    std::size_t dim_;
    double rho_;
    double rho_end_;
    std::vector<std::vector<double>> vertices_;  // offsets from x0
    std::vector<double> values_;
    std::vector<double> last_dir_;
    bool have_last_dir_ = false;
    std::vector<double> rho_trace_;
};

OptimizationResult run_cobyla(Evaluator& ev, std::size_t dim, const OptimizerConfig& cfg) {
    CobylaState state(ev, dim, cfg);
    OptimizationResult result;
    result.converged = true;
    try {
        state.run();
    } catch (const BudgetExhausted&) {
        // Normal termination.
    } catch (const NonFiniteValue&) {
        result.converged = false;
    }
    result.final_trust_radius = state.rho();
    result.trust_radius_trace = state.rho_trace();
    return result;
}

OptimizationResult run_spsa(Evaluator& ev, std::size_t dim, const OptimizerConfig& cfg) {
    // Standard gain schedules (Spall): a_k = a/(A+k+1)^0.602, c_k = c/(k+1)^0.101.
    const double alpha = 0.602;
    const double gamma = 0.101;
    const double c0 = 0.1 * cfg.initial_trust_radius;
    const double a0 = 0.15 * cfg.initial_trust_radius;
    const double stability = 0.1 * static_cast<double>(cfg.max_evaluations) / 2.0;

    Rng rng(cfg.seed);
    OptimizationResult result;
    result.converged = true;

    std::vector<double> theta(dim, 0.0);  // offset from x0
    try {
        ev.eval(theta);
        std::vector<double> delta(dim), plus(dim), minus(dim), ghat(dim);
        for (int k = 0; ev.has_budget(); ++k) {
            const double ck = c0 / std::pow(static_cast<double>(k) + 1.0, gamma);
            const double ak = a0 / std::pow(stability + static_cast<double>(k) + 1.0, alpha);
            for (std::size_t i = 0; i < dim; ++i) delta[i] = rng.bernoulli(0.5) ? 1.0 : -1.0;
            for (std::size_t i = 0; i < dim; ++i) plus[i] = theta[i] + ck * delta[i];
            for (std::size_t i = 0; i < dim; ++i) minus[i] = theta[i] - ck * delta[i];
            const double fp = ev.eval(plus);
            const double fm = ev.eval(minus);
            for (std::size_t i = 0; i < dim; ++i) {
                ghat[i] = (fp - fm) / (2.0 * ck * delta[i]);
            }
            std::vector<double> update(dim);
            for (std::size_t i = 0; i < dim; ++i) update[i] = ak * ghat[i];
            // Cap the step at the trust radius to stop early-iterate blowups.
            const double unorm = norm2(update);
            if (unorm > cfg.initial_trust_radius) {
                for (double& u : update) u *= cfg.initial_trust_radius / unorm;
            }
            for (std::size_t i = 0; i < dim; ++i) theta[i] -= update[i];
        }
    } catch (const BudgetExhausted&) {
        // Normal termination.
    } catch (const NonFiniteValue&) {
        result.converged = false;
    }
    return result;
}

}  // namespace

OptimizationResult minimize(const Objective& objective, const std::vector<double>& x0,
                            const OptimizerConfig& config, const EvalCallback& trace) {
    if (x0.empty()) {
        throw std::invalid_argument("x0 must have at least one coordinate");
    }
    if (!(config.final_trust_radius > 0.0) ||
        !(config.final_trust_radius < config.initial_trust_radius)) {
        throw ConfigError("require 0 < final_trust_radius < initial_trust_radius");
    }
    if (config.max_evaluations < static_cast<int>(x0.size()) + 2) {
        throw ConfigError("max_evaluations must be >= dimension + 2");
    }

    Evaluator ev(objective, x0, config.max_evaluations, trace);
    OptimizationResult result;
    if (config.method == OptMethod::Cobyla) {
        result = run_cobyla(ev, x0.size(), config);
    } else {
        result = run_spsa(ev, x0.size(), config);
    }
    result.best_point = ev.best_point();
    result.best_value = ev.best_value();
    result.evaluations_used = ev.used();
    return result;
}

}  // namespace vqclass
