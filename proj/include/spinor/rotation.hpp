#pragma once

#include <vector>

#include "spinor/spinor.hpp"

namespace spinor {

/// theta = k * pi/2 + residual (mod 2 pi), residual in (-pi/4, pi/4].
struct ReducedAngle {
    int quarter_turns;  // 0..3
    double residual;
};

ReducedAngle reduce_rotation(double theta);

/// Realization of g(x) = f(R(theta) x), R(theta) = [[c, s], [-s, c]], as an
/// exact quarter-turn permutation followed by the shears x(a), y(b), x(a)
/// with a = tan(residual/2), b = -sin(residual).
struct ShearPlan {
    int quarter_turns = 0;
    double residual = 0.0;
    double a = 0.0;
    double b = 0.0;

    static ShearPlan for_angle(double theta);
    bool is_identity() const { return quarter_turns == 0 && residual == 0.0; }
};

/// g(x) = f(R(k pi/2) x) by index permutation, per z-slab in 3D.
ComplexField quarter_turn(const ComplexField& f, int k);

/// f(x, y) -> f(x + a y, y), one 1D transform pair per row.
ComplexField shear_x(const ComplexField& f, double a);
/// f(x, y) -> f(x, y + b x), one 1D transform pair per column.
ComplexField shear_y(const ComplexField& f, double b);

/// g(x) = f(R(theta) x) in the x-y plane.
ComplexField rotate_field(const ComplexField& f, double theta);

/// Exact discrete inverse of rotate_field: undoes the shears, then the
/// quarter turn.
ComplexField rotate_field_inverse(const ComplexField& f, double theta);

/// phi_l(x) = exp(-i l omega t) psi_l(R(omega t) x).
SpinorField rotate_forward(const SpinorField& psi, double omega, double t);
/// psi_l(x) = exp(+i l omega t) phi_l(R(omega t)^{-1} x).
SpinorField rotate_backward(const SpinorField& phi, double omega, double t);

namespace detail {

// Building blocks shared with the fused linear step.

void quarter_turn_in_place(ComplexField& f, int k, ComplexBuffer& scratch);

/// Per-plane multiplier of size N*N, broadcast over z-slabs in 3D.
struct PlaneTable {
    std::vector<cplx> values;
};

/// table[i + N k] = scale * exp(i nu_p a y_k), p the x-mode at FFT index i.
PlaneTable x_shear_table(const SpectralGrid& g, double a, double scale);
/// table[j + N i] = scale * exp(i nu_q b x_j), q the y-mode at FFT index i.
PlaneTable y_shear_table(const SpectralGrid& g, double b, double scale);

void apply_plane_table(ComplexField& f, const PlaneTable& table);

void shear_x_in_place(ComplexField& f, double a);
void shear_y_in_place(ComplexField& f, double b);

}  // namespace detail

}  // namespace spinor
