#pragma once

#include <array>
#include <string>

#include "spinor/grid.hpp"
#include "spinor/spin_algebra.hpp"

namespace spinor {

/// Physical parameters of the rotating spin-orbit-coupled spin-2 model.
struct ModelParams {
    double c0 = 0.0;         // density-density
    double c1 = 0.0;         // spin exchange
    double c2 = 0.0;         // singlet pairing
    double omega = 0.0;      // rotation speed
    double gamma_soc = 0.0;  // spin-orbit coupling strength
    double gamma_x = 1.0;    // trap frequencies
    double gamma_y = 1.0;
    double gamma_z = 1.0;

    /// Harmonic trap 0.5 * sum gamma_a^2 a^2 (z term only in 3D).
    double potential(double x, double y, double z, int dim) const {
        double v = gamma_x * gamma_x * x * x + gamma_y * gamma_y * y * y;
        if (dim == 3) v += gamma_z * gamma_z * z * z;
        return 0.5 * v;
    }
};

/// Five components psi_l, l = 2, 1, 0, -1, -2, stored at m = 2 - l.
class SpinorField {
public:
    SpinorField() = default;
    explicit SpinorField(GridPtr grid);

    const GridPtr& grid_ptr() const { return grid_; }
    const SpectralGrid& grid() const { return *grid_; }

    ComplexField& component(int m) { return comps_[m]; }
    const ComplexField& component(int m) const { return comps_[m]; }
    ComplexField& level(int l) { return comps_[storage_index(l)]; }
    const ComplexField& level(int l) const { return comps_[storage_index(l)]; }

    /// The 5-vector at one node.
    Vec5 at(std::size_t node) const;
    void set(std::size_t node, const Vec5& v);

private:
    GridPtr grid_;
    std::array<ComplexField, 5> comps_;
};

/// Pointwise spin observables of one 5-vector.
struct LocalObservables {
    double rho;
    double f_z;
    cplx f_plus;
    double f_abs;
    cplx a00;
};

LocalObservables local_observables(const Vec5& psi);

/// Per-node observables of a spinor field.
struct PointObservables {
    std::vector<double> rho;
    std::vector<double> f_z;
    std::vector<cplx> f_plus;
    std::vector<double> f_abs;
    std::vector<cplx> a00;
};

RealField density(const SpinorField& psi);
PointObservables spin_observables(const SpinorField& psi);

/// Initial-data catalog.
enum class InitialKind {
    GaussianIni1,    // psi_{+-2} = psi_{+-1} = phi, psi_0 = 2 phi
    GaussianWide,    // psi_0 = 6 sqrt(7) phi with the broad Gaussian
    GaussianVortex,  // vortex factor (x + i y) on psi_{+-2}, psi_0
    FromFile,
};

InitialKind parse_initial_kind(const std::string& name);
std::string to_string(InitialKind kind);

struct InitialSpec {
    InitialKind kind = InitialKind::GaussianIni1;
    std::string path;        // for FromFile
    bool normalize = false;  // rescale to unit mass
};

SpinorField make_initial(const InitialSpec& spec, const GridPtr& grid);

}  // namespace spinor
