#pragma once

#include <cstdint>

#include "spinor/grid.hpp"

namespace spinor {

enum class Direction { Forward, Inverse };

/// Counts one-dimensional transforms executed through transform_axis.
/// One full-axis transform of an N^dim field counts N^(dim-1) lines.
struct FftCounter {
    std::uint64_t forward = 0;
    std::uint64_t inverse = 0;
    /// Paired count (a forward and an inverse line make one pair).
    std::uint64_t pairs() const { return forward < inverse ? forward : inverse; }
};

FftCounter fft_counter();
void reset_fft_counter();

/// In-place 1D transforms of every line along `axis`.
///
/// Forward: c_p = s * sum_j f_j exp(-2 pi i p j / N) with s = 1/N when
/// `normalize` is set, else 1. Inverse: f_j = sum_p c_p exp(+2 pi i p j / N).
/// Lines are distributed over worker_count() threads.
void transform_axis(ComplexField& f, int axis, Direction dir, bool normalize = true);

/// Line-blocked pass along axis 0 or 1: optional unnormalized forward
/// transform, multiplication by a plane table t[i + N k] (i along the axis
/// in FFT order, k the other in-plane index, broadcast over z-slabs), then an
/// optional inverse transform.
void modulated_pass(ComplexField& f, int axis, const cplx* table, bool forward, bool inverse);

/// Full multi-dimensional transforms (forward carries 1/N per axis).
ComplexField forward_transform(const ComplexField& f);
ComplexField inverse_transform(const ComplexField& coeffs);
void forward_in_place(ComplexField& f);
void inverse_in_place(ComplexField& coeffs);

/// d f / d axis via multiplication of each mode by i * nu.
ComplexField spectral_derivative(const ComplexField& f, int axis);

}  // namespace spinor
