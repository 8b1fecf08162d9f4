#pragma once

// Independent reference implementations for conformance checks. Nothing in
// here reuses the closed forms of the solver.

#include "spinor/spinor.hpp"

namespace spinor::oracle {

/// Q of one Fourier mode assembled from the SOC operator symbols
/// (L_+ -> -nu_q + i nu_p, L_- -> -nu_q - i nu_p) and the rotation phase.
Mat5 q_from_symbols(double omega, double gamma, double nu_p, double nu_q);

/// Padé/scaling-squaring exponential of i tau Q.
Mat5 dense_mode_propagator(double omega, double gamma, double nu_p, double nu_q, double tau);

/// Spin-2 matrices built from the ladder formula sqrt(j(j+1) - m(m+1)).
struct LadderSpin {
    Mat5 fx, fy, fz;
};
const LadderSpin& ladder_spin();

/// exp(-i c1 tau (F_x f_x + F_y f_y + F_z f_z)) by dense exponential.
Mat5 dense_spin_rotation(double fx, double fy, double fz, double c1, double tau);

/// Adaptive rk78 integration of the full single-node interaction ODE with
/// rho, F and A00 recomputed from the current state at every stage.
Vec5 ode_nonlinear_node(const Vec5& psi, double V, const ModelParams& params, double tau, double tol = 1e-14);

/// Adaptive integration of dA/dt = -2 i [V + (c0 + c2/5) rho] A.
cplx ode_a00(cplx a00, double V, double rho, double c0, double c2, double dt, double tol = 1e-14);

/// Lab-frame method-of-lines solution of
///   i dpsi/dt = [-1/2 Lap - Omega L_z] psi - gamma S psi
/// with dense Fourier differentiation matrices; 2D only.
SpinorField mol_linear_flow(const SpinorField& psi, double omega, double gamma, double tau, double tol = 1e-13);

double max_abs_diff(const SpinorField& a, const SpinorField& b);
double max_abs(const SpinorField& a);

}  // namespace spinor::oracle
