#include "spinor/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spinor/errors.hpp"
#include "spinor/parallel.hpp"

namespace spinor {

SpectralGrid::SpectralGrid(int dim, double L, int N)
    : dim_(dim), L_(L), N_(N), h_(2.0 * L / N) {
    if (dim != 2 && dim != 3) throw ConfigError("grid dimension must be 2 or 3, got " + std::to_string(dim));
    if (N < 4 || N % 2 != 0) throw ConfigError("grid size N must be even and >= 4, got " + std::to_string(N));
    if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("domain half-width L must be positive");

    size_ = 1;
    for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(N);
    cell_volume_ = std::pow(h_, dim);

    nodes_.resize(N);
    wavenumbers_.resize(N);
    for (int j = 0; j < N; ++j) {
        nodes_[j] = -L + j * h_;
        wavenumbers_[j] = std::numbers::pi * mode(j) / L;
    }
    nodes_[0] = -L;
}

std::size_t SpectralGrid::stride(int axis) const {
    std::size_t s = 1;
    for (int a = 0; a < axis; ++a) s *= static_cast<std::size_t>(N_);
    return s;
}

GridPtr build_grid(int dim, double L, int N) { return std::make_shared<const SpectralGrid>(dim, L, N); }

ComplexField::ComplexField(GridPtr grid) : grid_(std::move(grid)), data_(grid_->size(), cplx{}) {}

ComplexField::ComplexField(GridPtr grid, cplx fill) : grid_(std::move(grid)), data_(grid_->size(), fill) {}

ComplexField& ComplexField::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

ComplexField& ComplexField::operator+=(const ComplexField& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

double norm_squared(const ComplexField& f) {
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sq[i] = std::norm(f[i]);
    return f.grid().cell_volume() * pairwise_sum(sq);
}

ComplexField restrict_to(const ComplexField& fine, const GridPtr& coarse) {
    const auto& fg = fine.grid();
    if (fg.dim() != coarse->dim() || fg.L() != coarse->L() || fg.N() % coarse->N() != 0)
        throw ConfigError("coarse grid N=" + std::to_string(coarse->N()) +
                          " is not a restriction of the reference grid N=" + std::to_string(fg.N()));
    const int r = fg.N() / coarse->N();
    const int Nc = coarse->N();
    const std::size_t Nf = fg.N();
    ComplexField out(coarse);
    const int nz = coarse->dim() == 3 ? Nc : 1;
    std::size_t idx = 0;
    for (int l = 0; l < nz; ++l)
        for (int k = 0; k < Nc; ++k)
            for (int j = 0; j < Nc; ++j) {
                std::size_t src = static_cast<std::size_t>(j) * r + Nf * (static_cast<std::size_t>(k) * r);
                if (coarse->dim() == 3) src += Nf * Nf * (static_cast<std::size_t>(l) * r);
                out[idx++] = fine[src];
            }
    return out;
}

}  // namespace spinor
