#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vqcb {

using ParamVector = std::vector<double>;

// Counts evaluations of a deterministic loss function.
class ObjectiveHandle {
  public:
    ObjectiveHandle(int arity, std::function<double(const ParamVector&)> fn)
        : arity_(arity), fn_(std::move(fn)) {}

    int arity() const { return arity_; }
    long evaluations() const { return count_; }

    double evaluate(const ParamVector& x) {
        ++count_;
        return fn_(x);
    }

  private:
    int arity_;
    std::function<double(const ParamVector&)> fn_;
    long count_ = 0;
};

enum class OptMethod { Cobyla, Spsa, NelderMead };

// Evaluation budgets per method: Cobyla and NelderMead treat max_iterations
// as a total evaluation budget; Spsa runs max_iterations iterations of two
// evaluations each, plus one evaluation of the starting point.
struct OptimizerConfig {
    OptMethod method = OptMethod::Cobyla;
    int max_iterations = 100;
    // Explicit start, or a point drawn uniformly from [0, 2*pi)^arity per seed.
    std::optional<ParamVector> initial_point;
    std::uint64_t seed = 0;

    // Cobyla trust-region radii.
    double rho_begin = 1.0;
    double rho_end = 1e-4;

    // Spsa gain sequences a_k = a/(k+1+A)^alpha, c_k = c/(k+1)^gamma.
    double spsa_a = 1.0;
    double spsa_c = 0.1;
    double spsa_big_a = 10.0;
    double spsa_alpha = 0.602;
    double spsa_gamma = 0.101;
};

struct OptResult {
    ParamVector best_params;
    double best_loss = 0.0;
    std::vector<std::pair<long, double>> loss_history;  // (evaluation index, loss)
    long evaluations_used = 0;
    OptimizerConfig config;  // effective settings, initial point resolved
    bool aborted = false;    // non-finite objective encountered
    std::string diagnostic;
};

// Powell-style linear-approximation trust-region search, unconstrained:
// keeps a simplex of arity+1 points, interpolates a linear model, and steps
// within a radius shrinking from rho_begin to rho_end. Stops at the
// evaluation budget or when rho falls below rho_end; returns the best point
// seen either way.
OptResult cobyla_minimize(ObjectiveHandle& obj, const OptimizerConfig& cfg);

// Simultaneous-perturbation descent with Rademacher directions, two
// evaluations per iteration, deterministic per seed.
OptResult spsa_minimize(ObjectiveHandle& obj, const OptimizerConfig& cfg);

// Classic reflect/expand/contract/shrink simplex search. Test oracle only;
// the benchmark CLI never exposes it.
OptResult nelder_mead_minimize(ObjectiveHandle& obj, const OptimizerConfig& cfg);

// Dispatch on cfg.method.
OptResult minimize(ObjectiveHandle& obj, const OptimizerConfig& cfg);

// Exact derivative of an expectation generated by an Ry parameter:
// [E(theta + (pi/2) e_k) - E(theta - (pi/2) e_k)] / 2.
double parameter_shift_gradient(const std::function<double(const ParamVector&)>& expectation,
                                const ParamVector& theta, int k);

}  // namespace vqcb
