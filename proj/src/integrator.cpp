#include "spinor/integrator.hpp"

#include <cmath>

#include "spinor/errors.hpp"

namespace spinor {

double SplitScheme::linear_sum() const {
    double s = 0.0;
    for (const auto& st : stages)
        if (st.op == Factor::Linear) s += st.coeff;
    return s;
}

double SplitScheme::nonlinear_sum() const {
    double s = 0.0;
    for (const auto& st : stages)
        if (st.op == Factor::Nonlinear) s += st.coeff;
    return s;
}

SplitScheme make_scheme(const std::string& name) {
    SplitScheme s;
    s.name = name;
    if (name == "ts2") {
        s.stages = {{Factor::Nonlinear, 0.5}, {Factor::Linear, 1.0}, {Factor::Nonlinear, 0.5}};
    } else if (name == "ts2_aba") {
        s.stages = {{Factor::Linear, 0.5}, {Factor::Nonlinear, 1.0}, {Factor::Linear, 0.5}};
    } else if (name == "ts4") {
        const double c = std::cbrt(2.0);
        const double a1 = 1.0 / (2.0 * (2.0 - c));
        const double a2 = (1.0 - c) / (2.0 * (2.0 - c));
        const double b1 = 1.0 / (2.0 - c);
        const double b2 = -c / (2.0 - c);
        s.stages = {{Factor::Linear, a1},    {Factor::Nonlinear, b1}, {Factor::Linear, a2},
                    {Factor::Nonlinear, b2}, {Factor::Linear, a2},    {Factor::Nonlinear, b1},
                    {Factor::Linear, a1}};
    } else {
        throw ConfigError("unknown scheme '" + name + "' (expected ts2, ts4 or ts2_aba)");
    }
    if (std::abs(s.linear_sum() - 1.0) > 1e-14 || std::abs(s.nonlinear_sum() - 1.0) > 1e-14)
        throw NumericalError("scheme '" + name + "' coefficients do not sum to one");
    return s;
}

Stepper::Stepper(GridPtr grid, const ModelParams& params, SplitScheme scheme, StepperOptions opts)
    : scheme_(std::move(scheme)),
      linear_(grid, params.omega, params.gamma_soc, opts.cache_propagators),
      nonlinear_(grid, params) {}

void Stepper::step(SpinorField& psi, double t_n, double tau) {
    double clock = 0.0;  // cumulative linear coefficient
    for (const auto& st : scheme_.stages) {
        if (st.op == Factor::Linear) {
            linear_.step(psi, t_n + clock * tau, st.coeff * tau);
            clock += st.coeff;
        } else {
            nonlinear_.step(psi, st.coeff * tau);
        }
    }
}

void Stepper::step(ClockedState& state, double tau) {
    step(state.psi, state.time(tau), tau);
    ++state.n;
}

long long step_count(double t_final, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive and finite");
    if (t_final < 0.0 || !std::isfinite(t_final)) throw ConfigError("t_final must be non-negative and finite");
    const double ratio = t_final / tau;
    const double m = std::round(ratio);
    if (std::abs(ratio - m) > 1e-12 * std::max(1.0, ratio))
        throw ConfigError("t_final / tau = " + std::to_string(ratio) + " is not an integer step count");
    return static_cast<long long>(m);
}

SpinorField evolve(const SpinorField& psi0, const ModelParams& params, double tau, double t_final,
                   const SplitScheme& scheme, const Observer& observer, EvolveOptions opts) {
    const long long M = step_count(t_final, tau);
    ClockedState state{psi0, 0.0, 0};
    const bool observe = observer && opts.observe_every > 0;
    if (observe) observer(0, 0.0, state.psi);
    if (M == 0) return state.psi;
    Stepper stepper(psi0.grid_ptr(), params, scheme, opts.stepper);
    while (state.n < M) {
        stepper.step(state, tau);
        if (observe && (state.n % opts.observe_every == 0 || state.n == M))
            observer(state.n, state.time(tau), state.psi);
    }
    return state.psi;
}

}  // namespace spinor
