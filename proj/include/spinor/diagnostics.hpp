#pragma once

#include <array>
#include <string>

#include "spinor/spinor.hpp"

namespace spinor {

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double magnetization = 0.0;
    double lz = 0.0;
    std::array<double, 3> widths{};  // delta_x, delta_y, delta_z (0 in 2D)
    int dim = 2;
};

/// h^dim * sum rho.
double mass(const SpinorField& psi);

/// Energy per particle with kinetic, trap, rotation, interaction and SOC
/// terms. The imaginary residue of the quadrature must stay below 1e-10 of
/// max(|Re E|, quadrature of the term magnitudes); otherwise NumericalError.
double energy(const SpinorField& psi, const ModelParams& params);

/// h^dim * sum_l l ||psi_l||^2.
double magnetization(const SpinorField& psi);

/// sum_l <psi_l, -i (x d_y - y d_x) psi_l>, same residue gate as energy.
double angular_momentum(const SpinorField& psi);

/// delta_a = h^dim sum a^2 rho for each axis (z entry 0 in 2D).
std::array<double, 3> condensate_widths(const SpinorField& psi);

/// d/dt (delta_x + delta_y) at a state of the rotation-free, SOC-free flow:
/// 2 sum_l Im <psi_l, (x d_x + y d_y) psi_l>.
double radial_width_rate(const SpinorField& psi);

/// Closed-form delta_r(t) for gamma = 0 in a radially symmetric trap.
double width_law_reference(double t, double gamma_r, double energy0, double omega, double lz0, double delta0,
                           double delta_rate0);

DiagnosticsRecord diagnostics(const SpinorField& psi, const ModelParams& params, double t);

/// "t,mass,energy,magnetization,lz,delta_x,delta_y[,delta_z]"
std::string csv_header(int dim);
std::string csv_row(const DiagnosticsRecord& r);

}  // namespace spinor
