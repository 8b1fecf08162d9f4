#pragma once

#include <optional>

#include "spinor/spinor.hpp"

namespace spinor {

/// exp(-i c1 tau F.f) as I + a1 n + a2 n^2 + a3 n^3 + a4 n^4 with
/// n = F.f / |F| and kappa = c1 |F| tau; 4th-order Taylor of exp(-i M),
/// M = c1 tau F.f, when |kappa| < 1e-8.
Mat5 spin_rotation(cplx f_plus, double f_z, double f_abs, double c1, double tau);

/// Applies exp(-i c1 tau F.f) to v without forming the matrix.
Vec5 apply_spin_rotation(cplx f_plus, double f_z, double f_abs, double c1, double tau, const Vec5& v);

/// A00 after dt of the pointwise flow.
cplx a00_evolution(cplx a00, double V, double rho, double c0, double c2, double dt);

/// Exact flow of one node over tau given the local potential.
Vec5 nonlinear_node(const Vec5& psi, double V, const ModelParams& params, double tau);

/// Exact integrator of the potential + interaction subproblem, one node at a time.
class NonlinearFlow {
public:
    /// The potential comes from params at each node unless a table is given.
    NonlinearFlow(GridPtr grid, ModelParams params, std::optional<RealField> potential = std::nullopt);

    void step(SpinorField& psi, double tau) const;

    const ModelParams& params() const { return params_; }

private:
    GridPtr grid_;
    ModelParams params_;
    std::optional<RealField> potential_;
};

/// Free-function form; V = nullptr uses the harmonic trap from params.
SpinorField nonlinear_step(const SpinorField& psi, const RealField* V, const ModelParams& params, double tau);

}  // namespace spinor
