#include "spinor/rotation.hpp"

#include <cmath>
#include <numbers>

#include "spinor/fft.hpp"
#include "spinor/parallel.hpp"

namespace spinor {

ReducedAngle reduce_rotation(double theta) {
    constexpr double quarter = std::numbers::pi / 2.0;
    int quo = 0;
    double r = std::remquo(theta, quarter, &quo);
    int k = ((quo % 4) + 4) % 4;
    if (r <= -quarter / 2.0) {
        r += quarter;
        k = (k + 3) % 4;
    }
    return {k, r};
}

ShearPlan ShearPlan::for_angle(double theta) {
    const auto red = reduce_rotation(theta);
    ShearPlan p;
    p.quarter_turns = red.quarter_turns;
    p.residual = red.residual;
    p.a = std::tan(red.residual / 2.0);
    p.b = -std::sin(red.residual);
    return p;
}

namespace detail {

void quarter_turn_in_place(ComplexField& f, int k, ComplexBuffer& scratch) {
    k = ((k % 4) + 4) % 4;
    if (k == 0) return;
    const auto& g = f.grid();
    const std::size_t N = g.N();
    const std::size_t plane = N * N;
    const std::size_t slabs = g.size() / plane;
    scratch.assign(f.data(), f.data() + f.size());
    for (std::size_t s = 0; s < slabs; ++s) {
        const cplx* src = scratch.data() + s * plane;
        cplx* dst = f.data() + s * plane;
        for (std::size_t yk = 0; yk < N; ++yk) {
            const std::size_t nyk = (N - yk) % N;
            for (std::size_t xj = 0; xj < N; ++xj) {
                const std::size_t nxj = (N - xj) % N;
                std::size_t from;
                switch (k) {
                    case 1: from = yk + N * nxj; break;   // f(y, -x)
                    case 2: from = nxj + N * nyk; break;  // f(-x, -y)
                    default: from = nyk + N * xj; break;  // f(-y, x)
                }
                dst[xj + N * yk] = src[from];
            }
        }
    }
}

namespace {

// out[i] = scale * exp(i * mode(i) * phi) for FFT index i. Exact polar values
// every 8 entries, short products in between.
void fill_mode_phases(int N, double phi, double scale, cplx* out) {
    cplx small[8];
    for (int r = 0; r < 8; ++r) small[r] = std::polar(1.0, r * phi);
    cplx big{};
    int r = 0;
    for (int i = 0; i < N; ++i) {
        if (i % 8 == 0 || i == N / 2) {
            const int mode = i < N / 2 ? i : i - N;
            big = std::polar(scale, mode * phi);
            r = 0;
        }
        out[i] = big * small[r++];
    }
}

}  // namespace

PlaneTable x_shear_table(const SpectralGrid& g, double a, double scale) {
    const int N = g.N();
    PlaneTable t;
    t.values.resize(static_cast<std::size_t>(N) * N);
    const double k0 = std::numbers::pi / g.L();
    for (int k = 0; k < N; ++k) fill_mode_phases(N, k0 * a * g.node(k), scale, t.values.data() + static_cast<std::size_t>(N) * k);
    return t;
}

PlaneTable y_shear_table(const SpectralGrid& g, double b, double scale) {
    const int N = g.N();
    PlaneTable t;
    t.values.resize(static_cast<std::size_t>(N) * N);
    const double k0 = std::numbers::pi / g.L();
    std::vector<cplx> col(N);
    for (int j = 0; j < N; ++j) {
        fill_mode_phases(N, k0 * b * g.node(j), scale, col.data());
        for (int i = 0; i < N; ++i) t.values[j + static_cast<std::size_t>(N) * i] = col[i];
    }
    return t;
}

void apply_plane_table(ComplexField& f, const PlaneTable& table) {
    const std::size_t plane = table.values.size();
    const std::ptrdiff_t slabs = static_cast<std::ptrdiff_t>(f.size() / plane);
    cplx* d = f.data();
    const cplx* t = table.values.data();
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t s = 0; s < slabs; ++s) {
        cplx* p = d + s * plane;
        for (std::size_t i = 0; i < plane; ++i) p[i] *= t[i];
    }
}

void shear_x_in_place(ComplexField& f, double a) {
    const auto& g = f.grid();
    modulated_pass(f, 0, x_shear_table(g, a, 1.0 / g.N()).values.data(), true, true);
}

void shear_y_in_place(ComplexField& f, double b) {
    const auto& g = f.grid();
    modulated_pass(f, 1, y_shear_table(g, b, 1.0 / g.N()).values.data(), true, true);
}

}  // namespace detail

ComplexField quarter_turn(const ComplexField& f, int k) {
    ComplexField out = f;
    ComplexBuffer scratch;
    detail::quarter_turn_in_place(out, k, scratch);
    return out;
}

ComplexField shear_x(const ComplexField& f, double a) {
    ComplexField out = f;
    detail::shear_x_in_place(out, a);
    return out;
}

ComplexField shear_y(const ComplexField& f, double b) {
    ComplexField out = f;
    detail::shear_y_in_place(out, b);
    return out;
}

ComplexField rotate_field(const ComplexField& f, double theta) {
    const ShearPlan plan = ShearPlan::for_angle(theta);
    ComplexField out = f;
    ComplexBuffer scratch;
    detail::quarter_turn_in_place(out, plan.quarter_turns, scratch);
    if (plan.residual != 0.0) {
        detail::shear_x_in_place(out, plan.a);
        detail::shear_y_in_place(out, plan.b);
        detail::shear_x_in_place(out, plan.a);
    }
    return out;
}

ComplexField rotate_field_inverse(const ComplexField& f, double theta) {
    const ShearPlan plan = ShearPlan::for_angle(theta);
    ComplexField out = f;
    if (plan.residual != 0.0) {
        detail::shear_x_in_place(out, -plan.a);
        detail::shear_y_in_place(out, -plan.b);
        detail::shear_x_in_place(out, -plan.a);
    }
    ComplexBuffer scratch;
    detail::quarter_turn_in_place(out, 4 - plan.quarter_turns, scratch);
    return out;
}

SpinorField rotate_forward(const SpinorField& psi, double omega, double t) {
    SpinorField out(psi.grid_ptr());
    for (int m = 0; m < 5; ++m) {
        out.component(m) = rotate_field(psi.component(m), omega * t);
        const int l = spin_level(m);
        if (l != 0) out.component(m) *= std::polar(1.0, -l * omega * t);
    }
    return out;
}

SpinorField rotate_backward(const SpinorField& phi, double omega, double t) {
    SpinorField out(phi.grid_ptr());
    for (int m = 0; m < 5; ++m) {
        ComplexField c = phi.component(m);
        const int l = spin_level(m);
        if (l != 0) c *= std::polar(1.0, l * omega * t);
        out.component(m) = rotate_field_inverse(c, omega * t);
    }
    return out;
}

}  // namespace spinor
