#include "spinor/spinor.hpp"

#include <cmath>
#include <numbers>

#include "spinor/diagnostics.hpp"
#include "spinor/errors.hpp"
#include "spinor/snapshot.hpp"

namespace spinor {

SpinorField::SpinorField(GridPtr grid) : grid_(std::move(grid)) {
    for (auto& c : comps_) c = ComplexField(grid_);
}

Vec5 SpinorField::at(std::size_t node) const {
    Vec5 v;
    for (int m = 0; m < 5; ++m) v[m] = comps_[m][node];
    return v;
}

void SpinorField::set(std::size_t node, const Vec5& v) {
    for (int m = 0; m < 5; ++m) comps_[m][node] = v[m];
}

LocalObservables local_observables(const Vec5& p) {
    static const double sqrt6 = std::sqrt(6.0);
    static const double inv_sqrt5 = 1.0 / std::sqrt(5.0);
    LocalObservables o;
    const double n2 = std::norm(p[0]), n1 = std::norm(p[1]), n0 = std::norm(p[2]);
    const double nm1 = std::norm(p[3]), nm2 = std::norm(p[4]);
    o.rho = n2 + n1 + n0 + nm1 + nm2;
    o.f_z = 2.0 * (n2 - nm2) + (n1 - nm1);
    o.f_plus = 2.0 * (std::conj(p[0]) * p[1] + std::conj(p[3]) * p[4]) +
               sqrt6 * (std::conj(p[1]) * p[2] + std::conj(p[2]) * p[3]);
    o.f_abs = std::sqrt(std::norm(o.f_plus) + o.f_z * o.f_z);
    o.a00 = inv_sqrt5 * (2.0 * p[0] * p[4] - 2.0 * p[1] * p[3] + p[2] * p[2]);
    return o;
}

RealField density(const SpinorField& psi) {
    RealField rho(psi.grid_ptr());
    for (int m = 0; m < 5; ++m) {
        const auto& c = psi.component(m);
        for (std::size_t i = 0; i < c.size(); ++i) rho.values[i] += std::norm(c[i]);
    }
    return rho;
}

PointObservables spin_observables(const SpinorField& psi) {
    const std::size_t n = psi.grid().size();
    PointObservables o;
    o.rho.resize(n);
    o.f_z.resize(n);
    o.f_plus.resize(n);
    o.f_abs.resize(n);
    o.a00.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto l = local_observables(psi.at(i));
        o.rho[i] = l.rho;
        o.f_z[i] = l.f_z;
        o.f_plus[i] = l.f_plus;
        o.f_abs[i] = l.f_abs;
        o.a00[i] = l.a00;
    }
    return o;
}

InitialKind parse_initial_kind(const std::string& name) {
    if (name == "gaussian_ini1") return InitialKind::GaussianIni1;
    if (name == "gaussian_wide") return InitialKind::GaussianWide;
    if (name == "gaussian_vortex") return InitialKind::GaussianVortex;
    if (name == "from_file") return InitialKind::FromFile;
    throw ConfigError("unknown initial-data kind '" + name + "'");
}

std::string to_string(InitialKind kind) {
    switch (kind) {
        case InitialKind::GaussianIni1: return "gaussian_ini1";
        case InitialKind::GaussianWide: return "gaussian_wide";
        case InitialKind::GaussianVortex: return "gaussian_vortex";
        case InitialKind::FromFile: return "from_file";
    }
    return "unknown";
}

namespace {

// Amplitudes per storage index m and the Gaussian profile of each kind.
SpinorField gaussian_state(const GridPtr& grid, const std::array<double, 5>& amp, double variance_scale,
                           double prefactor, const std::array<bool, 5>& vortex) {
    SpinorField psi(grid);
    const int dim = grid->dim();
    for (int m = 0; m < 5; ++m) {
        psi.component(m) = sample(grid, [&](double x, double y, double z) {
            const double r2 = x * x + y * y + (dim == 3 ? z * z : 0.0);
            const double phi = prefactor * std::exp(-r2 / variance_scale);
            cplx v = amp[m] * phi;
            if (vortex[m]) v *= cplx(x, y);
            return v;
        });
    }
    return psi;
}

}  // namespace

SpinorField make_initial(const InitialSpec& spec, const GridPtr& grid) {
    const double pi = std::numbers::pi;
    const double s67 = 6.0 * std::sqrt(7.0);
    SpinorField psi;
    switch (spec.kind) {
        case InitialKind::GaussianIni1: {
            // phi = exp(-|x|^2/2) / (sqrt(8) pi^(d/4))
            const double pre = 1.0 / (std::sqrt(8.0) * std::pow(pi, grid->dim() / 4.0));
            psi = gaussian_state(grid, {1, 1, 2, 1, 1}, 2.0, pre, {false, false, false, false, false});
            break;
        }
        case InitialKind::GaussianWide: {
            if (grid->dim() != 2) throw ConfigError("gaussian_wide initial data is defined for dim=2 only");
            // phi = exp(-|x|^2/8) / (32 sqrt(pi))
            psi = gaussian_state(grid, {1, 1, s67, 1, 1}, 8.0, 1.0 / (32.0 * std::sqrt(pi)),
                                 {false, false, false, false, false});
            break;
        }
        case InitialKind::GaussianVortex: {
            if (grid->dim() != 2) throw ConfigError("gaussian_vortex initial data is defined for dim=2 only");
            // phi = exp(-|x|^2/2) / (16 sqrt(pi)), vortex on psi_{+-2} and psi_0
            psi = gaussian_state(grid, {1, 1, s67, 1, 1}, 2.0, 1.0 / (16.0 * std::sqrt(pi)),
                                 {true, false, true, false, true});
            break;
        }
        case InitialKind::FromFile: {
            Snapshot snap = read_snapshot(spec.path);
            if (!(snap.state.grid() == *grid))
                throw ConfigError("snapshot '" + spec.path + "' has grid dim=" + std::to_string(snap.state.grid().dim()) +
                                  " N=" + std::to_string(snap.state.grid().N()) +
                                  " L=" + std::to_string(snap.state.grid().L()) + ", which does not match the configured grid");
            psi = SpinorField(grid);
            for (int m = 0; m < 5; ++m)
                std::copy(snap.state.component(m).data(), snap.state.component(m).data() + grid->size(),
                          psi.component(m).data());
            break;
        }
    }
    if (spec.normalize) {
        const double n = mass(psi);
        if (n > 0.0) {
            const double s = 1.0 / std::sqrt(n);
            for (int m = 0; m < 5; ++m) psi.component(m) *= s;
        }
    }
    return psi;
}

}  // namespace spinor
