#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spinor/linear_flow.hpp"
#include "spinor/nonlinear_flow.hpp"

namespace spinor {

enum class Factor { Linear, Nonlinear };

/// Ordered factor list; each entry advances its sub-flow by coeff * tau.
struct SplitScheme {
    struct Stage {
        Factor op;
        double coeff;
    };
    std::string name;
    std::vector<Stage> stages;

    double linear_sum() const;
    double nonlinear_sum() const;
};

/// "ts2" (N 1/2, L 1, N 1/2), "ts4" (fourth-order symplectic composition),
/// "ts2_aba" (L 1/2, N 1, L 1/2).
SplitScheme make_scheme(const std::string& name);

struct ClockedState {
    SpinorField psi;
    double t0 = 0.0;
    long long n = 0;

    double time(double tau) const { return t0 + static_cast<double>(n) * tau; }
};

struct StepperOptions {
    bool cache_propagators = false;
};

/// Applies a SplitScheme with exact linear and nonlinear sub-flows.
class Stepper {
public:
    Stepper(GridPtr grid, const ModelParams& params, SplitScheme scheme, StepperOptions opts = {});

    /// One composite step of length tau starting at t_n.
    void step(SpinorField& psi, double t_n, double tau);
    void step(ClockedState& state, double tau);

    const SplitScheme& scheme() const { return scheme_; }
    LinearFlow& linear() { return linear_; }
    NonlinearFlow& nonlinear() { return nonlinear_; }

private:
    SplitScheme scheme_;
    LinearFlow linear_;
    NonlinearFlow nonlinear_;
};

/// Number of steps M with T = M tau; non-integral ratios are a config error.
long long step_count(double t_final, double tau);

/// Called at n = 0 and every `every` steps (and at the final step).
using Observer = std::function<void(long long n, double t, const SpinorField& psi)>;

struct EvolveOptions {
    long long observe_every = 0;  // 0 disables the observer
    StepperOptions stepper;
};

SpinorField evolve(const SpinorField& psi0, const ModelParams& params, double tau, double t_final,
                   const SplitScheme& scheme, const Observer& observer = {}, EvolveOptions opts = {});

}  // namespace spinor
