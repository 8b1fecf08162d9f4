#include "spinor/fft.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

#include "spinor/errors.hpp"
#include "spinor/parallel.hpp"

namespace spinor {
namespace {

std::atomic<std::uint64_t> g_forward{0};
std::atomic<std::uint64_t> g_inverse{0};

// A plan transforms `batch` adjacent lines of one axis; the field is covered
// by executing it at a list of base offsets.
struct LinePlan {
    fftw_plan plan = nullptr;
    std::size_t batch = 1;
};

using PlanKey = std::tuple<int, int, int, int>;  // N, dim, axis, sign

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, p] : plans_) fftw_destroy_plan(p.plan);
    }

    const LinePlan& get(int N, int dim, int axis, int sign) {
        std::lock_guard lock(mutex_);
        const PlanKey key{N, dim, axis, sign};
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        std::size_t stride = 1;
        for (int a = 0; a < axis; ++a) stride *= N;
        std::size_t lines = 1;
        for (int a = 0; a < dim - 1; ++a) lines *= N;

        LinePlan lp;
        int n[1] = {N};
        if (axis == 0) {
            lp.batch = std::gcd(lines, std::size_t{8});
            ComplexBuffer scratch(lp.batch * N);
            auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
            lp.plan = fftw_plan_many_dft(1, n, static_cast<int>(lp.batch), buf, nullptr, 1, N, buf, nullptr, 1, N,
                                         sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        } else {
            lp.batch = std::gcd(stride, std::size_t{16});
            ComplexBuffer scratch(stride * N);
            auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
            const int s = static_cast<int>(stride);
            lp.plan = fftw_plan_many_dft(1, n, static_cast<int>(lp.batch), buf, nullptr, s, 1, buf, nullptr, s, 1,
                                         sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }
        if (!lp.plan) throw NumericalError("FFTW failed to create a plan for N=" + std::to_string(N));
        return plans_.emplace(key, lp).first->second;
    }

private:
    std::mutex mutex_;
    std::map<PlanKey, LinePlan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

FftCounter fft_counter() { return {g_forward.load(), g_inverse.load()}; }

void reset_fft_counter() {
    g_forward = 0;
    g_inverse = 0;
}

void transform_axis(ComplexField& f, int axis, Direction dir, bool normalize) {
    const auto& g = f.grid();
    if (axis < 0 || axis >= g.dim()) throw ConfigError("invalid axis index " + std::to_string(axis));
    if (f.size() != g.size()) throw ConfigError("field size does not match its grid");

    const int N = g.N();
    const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
    const LinePlan& lp = plan_cache().get(N, g.dim(), axis, sign);

    const std::size_t stride = g.stride(axis);
    const std::size_t lines = g.size() / N;
    const std::size_t blocks = lines / lp.batch;
    // Outer slabs above this axis; within a slab, lines start at consecutive
    // offsets [0, stride) for axis > 0.
    const std::size_t per_slab = axis == 0 ? 1 : stride / lp.batch;
    auto* base = reinterpret_cast<fftw_complex*>(f.data());

#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
        std::size_t offset;
        if (axis == 0) {
            offset = static_cast<std::size_t>(b) * lp.batch * N;
        } else {
            const std::size_t slab = static_cast<std::size_t>(b) / per_slab;
            const std::size_t within = static_cast<std::size_t>(b) % per_slab;
            offset = slab * stride * N + within * lp.batch;
        }
        fftw_execute_dft(lp.plan, base + offset, base + offset);
    }

    if (dir == Direction::Forward) {
        g_forward += lines;
        if (normalize) {
            const double s = 1.0 / N;
            auto* d = f.data();
            const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
            for (std::ptrdiff_t i = 0; i < n; ++i) d[i] *= s;
        }
    } else {
        g_inverse += lines;
    }
}

void modulated_pass(ComplexField& f, int axis, const cplx* table, bool forward, bool inverse) {
    const auto& g = f.grid();
    if (axis < 0 || axis > 1 || axis >= g.dim()) throw ConfigError("modulated pass needs axis 0 or 1");
    if (f.size() != g.size()) throw ConfigError("field size does not match its grid");

    const int N = g.N();
    const LinePlan& fwd = plan_cache().get(N, g.dim(), axis, FFTW_FORWARD);
    const LinePlan& inv = plan_cache().get(N, g.dim(), axis, FFTW_BACKWARD);
    const std::size_t batch = fwd.batch;
    const std::size_t stride = g.stride(axis);
    const std::size_t n = static_cast<std::size_t>(N);
    const std::size_t lines = g.size() / n;
    const std::size_t blocks = lines / batch;
    const std::size_t per_slab = axis == 0 ? 1 : stride / batch;
    cplx* data = f.data();

#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
        const std::size_t ub = static_cast<std::size_t>(b);
        cplx* blk;
        if (axis == 0) {
            blk = data + ub * batch * n;
        } else {
            blk = data + (ub / per_slab) * stride * n + (ub % per_slab) * batch;
        }
        auto* raw = reinterpret_cast<fftw_complex*>(blk);
        if (forward) fftw_execute_dft(fwd.plan, raw, raw);
        if (axis == 0) {
            for (std::size_t r = 0; r < batch; ++r) {
                cplx* row = blk + r * n;
                const cplx* t = table + ((ub * batch + r) % n) * n;
                for (std::size_t i = 0; i < n; ++i) row[i] *= t[i];
            }
        } else {
            const std::size_t col0 = (ub % per_slab) * batch;
            for (std::size_t i = 0; i < n; ++i) {
                cplx* seg = blk + i * stride;
                const cplx* t = table + col0 + i * n;
                for (std::size_t c = 0; c < batch; ++c) seg[c] *= t[c];
            }
        }
        if (inverse) fftw_execute_dft(inv.plan, raw, raw);
    }
    if (forward) g_forward += lines;
    if (inverse) g_inverse += lines;
}

void forward_in_place(ComplexField& f) {
    for (int a = 0; a < f.grid().dim(); ++a) transform_axis(f, a, Direction::Forward);
}

void inverse_in_place(ComplexField& coeffs) {
    for (int a = coeffs.grid().dim() - 1; a >= 0; --a) transform_axis(coeffs, a, Direction::Inverse);
}

ComplexField forward_transform(const ComplexField& f) {
    ComplexField out = f;
    forward_in_place(out);
    return out;
}

ComplexField inverse_transform(const ComplexField& coeffs) {
    ComplexField out = coeffs;
    inverse_in_place(out);
    return out;
}

ComplexField spectral_derivative(const ComplexField& f, int axis) {
    const auto& g = f.grid();
    if (axis < 0 || axis >= g.dim()) throw ConfigError("invalid axis index " + std::to_string(axis));
    ComplexField c = forward_transform(f);
    const int N = g.N();
    const std::size_t stride = g.stride(axis);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const int idx = static_cast<int>((i / stride) % N);
        c[i] *= cplx(0.0, g.wavenumber(idx));
    }
    inverse_in_place(c);
    return c;
}

}  // namespace spinor
