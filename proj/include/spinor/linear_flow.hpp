#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "spinor/spinor.hpp"

namespace spinor {

/// Ingredients of the exact 5x5 propagator exp(i tau Q) for one Fourier mode
/// of the rotating-frame Laplace + SOC + Omega f_z system.
struct ModePropagator {
    cplx a;        // -nu_q - i nu_p
    double xi;     // gamma |a|
    double lambda; // sqrt(Omega^2 + xi^2)
    cplx eta1, eta2, eta3, eta4;
    Mat5 U;
    bool taylor = false;  // lambda*tau below the closed-form threshold
};

/// Closed-form propagator; falls back to a 4th-order Taylor series of
/// exp(i tau Q) when |lambda tau| < 1e-6.
ModePropagator mode_propagator(double omega, double gamma, double nu_p, double nu_q, double tau);

/// Q of the mode (p, q): diag(-2W, -W, 0, W, 2W) + gamma * (a on the
/// superdiagonal, conj(a) on the subdiagonal) with sqrt(6)/2 weights inside.
Mat5 mode_q_matrix(double omega, double gamma, double nu_p, double nu_q);

/// Exact integrator of the linear subproblem (Laplacian, rotation, SOC).
class LinearFlow {
public:
    /// `cache_tables` keeps one propagator table per distinct substep length.
    /// Tables hold the phase-free factor M(|nu|^2, tau) of U = D^-1 M D,
    /// where D = diag(u^j) and u = a / |a|; one entry per distinct |nu|^2.
    LinearFlow(GridPtr grid, double omega, double gamma, bool cache_tables = false);

    /// Advances psi from t_n to t_n + tau: rotate at t_n, multiply every
    /// Fourier mode by exp(-i|nu|^2 tau/2) exp(i tau Q), rotate back at
    /// t_n + tau. Adjacent transforms of the rotations and the Fourier
    /// multiply are merged (30 N line-transform pairs in 2D).
    void step(SpinorField& psi, double t_n, double tau);

    /// Fourier multiply only, for data already in the rotated representation.
    void apply_fourier(SpinorField& phi, double tau);

    double omega() const { return omega_; }
    double gamma() const { return gamma_; }
    std::size_t cached_tables() const { return tables_.size(); }

private:
    struct Kinetic {
        std::vector<cplx> x, y, z;  // per-axis exp(-i nu^2 tau / 2)
    };
    /// Upper triangle of the symmetric M, row-major.
    using SymMat5 = std::array<cplx, 15>;

    std::vector<SymMat5> build_table(double tau) const;
    const std::vector<SymMat5>* table_for(double tau);
    Kinetic kinetic_factors(double tau) const;
    /// In-place multiply of coefficient arrays (full Fourier space) with
    /// pre/post diagonal phases and an overall scale.
    void multiply_modes(SpinorField& c, double tau, const Vec5& pre, const Vec5& post, double scale);

    GridPtr grid_;
    double omega_;
    double gamma_;
    bool cache_;
    std::vector<std::uint32_t> slot_;  // per (p, q): index of |nu|^2
    std::vector<double> abs_a_;        // |a| per slot
    std::vector<cplx> unit_;           // per (p, q): a / |a| (1 at a = 0)
    std::map<double, std::vector<SymMat5>> tables_;
    ComplexBuffer scratch_;
};

/// Free-function forms.
SpinorField apply_linear_fourier(const SpinorField& phi, const ModelParams& params, double tau);
SpinorField linear_step(const SpinorField& psi, const ModelParams& params, double t_n, double tau);

}  // namespace spinor
