#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <fftw3.h>

namespace spinor {

using cplx = std::complex<double>;

/// Allocator backed by fftw_malloc so every field buffer has the alignment
/// FFTW plans were created for.
template <typename T>
struct FftwAllocator {
    using value_type = T;
    FftwAllocator() noexcept = default;
    template <typename U>
    FftwAllocator(const FftwAllocator<U>&) noexcept {}

    T* allocate(std::size_t n) {
        void* p = fftw_malloc(n * sizeof(T));
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { fftw_free(p); }

    template <typename U>
    bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

/// Periodic tensor grid on [-L, L)^dim with N points per axis.
///
/// Storage order (project-wide): x is the fastest index, then y, then z.
/// Node (j, k[, l]) lives at flat index j + N*k [+ N*N*l]. Wavenumbers are
/// kept in FFT order: index i holds mode p = i for i < N/2 and p = i - N
/// otherwise, with nu_p = pi * p / L.
class SpectralGrid {
public:
    SpectralGrid(int dim, double L, int N);

    int dim() const { return dim_; }
    double L() const { return L_; }
    int N() const { return N_; }
    double h() const { return h_; }
    std::size_t size() const { return size_; }
    /// Quadrature weight h^dim of the node sum.
    double cell_volume() const { return cell_volume_; }

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& wavenumbers() const { return wavenumbers_; }
    double node(int j) const { return nodes_[j]; }
    double wavenumber(int i) const { return wavenumbers_[i]; }
    /// Signed mode number p for FFT index i.
    int mode(int i) const { return i < N_ / 2 ? i : i - N_; }

    std::size_t stride(int axis) const;

    bool operator==(const SpectralGrid& o) const {
        return dim_ == o.dim_ && N_ == o.N_ && L_ == o.L_;
    }

private:
    int dim_;
    double L_;
    int N_;
    double h_;
    std::size_t size_;
    double cell_volume_;
    std::vector<double> nodes_;
    std::vector<double> wavenumbers_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

/// Validates the arguments and returns a shared grid.
GridPtr build_grid(int dim, double L, int N);

using ComplexBuffer = std::vector<cplx, FftwAllocator<cplx>>;

/// Dense complex samples on a SpectralGrid (x fastest).
class ComplexField {
public:
    ComplexField() = default;
    explicit ComplexField(GridPtr grid);
    ComplexField(GridPtr grid, cplx fill);

    const GridPtr& grid_ptr() const { return grid_; }
    const SpectralGrid& grid() const { return *grid_; }
    std::size_t size() const { return data_.size(); }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    std::span<cplx> values() { return {data_.data(), data_.size()}; }
    std::span<const cplx> values() const { return {data_.data(), data_.size()}; }

    cplx& operator[](std::size_t i) { return data_[i]; }
    const cplx& operator[](std::size_t i) const { return data_[i]; }

    ComplexField& operator*=(cplx s);
    ComplexField& operator+=(const ComplexField& o);
    ComplexField& operator-=(const ComplexField& o);

private:
    GridPtr grid_;
    ComplexBuffer data_;
};

/// Real-valued samples on a grid (densities, potentials).
struct RealField {
    GridPtr grid;
    std::vector<double> values;

    RealField() = default;
    explicit RealField(GridPtr g) : grid(std::move(g)), values(grid->size(), 0.0) {}
};

/// Evaluates fn(x, y, z) at every node (z = 0 in 2D).
template <typename Fn>
ComplexField sample(const GridPtr& grid, Fn&& fn) {
    ComplexField f(grid);
    const int N = grid->N();
    const int nz = grid->dim() == 3 ? N : 1;
    std::size_t idx = 0;
    for (int l = 0; l < nz; ++l) {
        const double z = grid->dim() == 3 ? grid->node(l) : 0.0;
        for (int k = 0; k < N; ++k) {
            const double y = grid->node(k);
            for (int j = 0; j < N; ++j) f[idx++] = fn(grid->node(j), y, z);
        }
    }
    return f;
}

/// Discrete l2 norm squared: h^dim * sum |f|^2.
double norm_squared(const ComplexField& f);

/// Picks every ratio-th node of a field on a finer, nested grid.
ComplexField restrict_to(const ComplexField& fine, const GridPtr& coarse);

}  // namespace spinor
