#include "spinor/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "spinor/errors.hpp"
#include "spinor/fft.hpp"
#include "spinor/parallel.hpp"

namespace spinor {
namespace {

struct Gradient {
    std::array<ComplexField, 3> d;  // d/dx, d/dy, d/dz (unused in 2D)
};

Gradient gradient(const ComplexField& f) {
    const auto& g = f.grid();
    const ComplexField c = forward_transform(f);
    Gradient out;
    const int N = g.N();
    for (int axis = 0; axis < g.dim(); ++axis) {
        ComplexField da = c;
        const std::size_t stride = g.stride(axis);
        for (std::size_t i = 0; i < da.size(); ++i) {
            const int mi = static_cast<int>((i / stride) % N);
            da[i] *= cplx(0.0, g.wavenumber(mi));
        }
        inverse_in_place(da);
        out.d[axis] = std::move(da);
    }
    return out;
}

struct Coords {
    std::vector<double> x, y, z;
};

Coords coords(const SpectralGrid& g) {
    Coords c;
    const std::size_t n = g.size();
    c.x.resize(n);
    c.y.resize(n);
    c.z.assign(n, 0.0);
    const int N = g.N();
    for (std::size_t i = 0; i < n; ++i) {
        c.x[i] = g.node(static_cast<int>(i % N));
        c.y[i] = g.node(static_cast<int>((i / N) % N));
        if (g.dim() == 3) c.z[i] = g.node(static_cast<int>(i / (static_cast<std::size_t>(N) * N)));
    }
    return c;
}

// Complex quadrature with a deterministic reduction tree.
struct ComplexSum {
    std::vector<double> re, im, mag;

    explicit ComplexSum(std::size_t n) : re(n, 0.0), im(n, 0.0), mag(n, 0.0) {}
    // `scale` bounds the magnitude of the terms that were combined into v.
    void add(std::size_t i, cplx v, double scale) {
        re[i] += v.real();
        im[i] += v.imag();
        mag[i] += scale;
    }
    double finish(double weight, const char* what) const {
        const double r = weight * pairwise_sum(re);
        const double s = weight * pairwise_sum(im);
        const double scale = weight * pairwise_sum(mag);
        const double bound = 1e-10 * std::max(std::abs(r), scale);
        if (!std::isfinite(r) || !std::isfinite(s) || std::abs(s) > bound) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s quadrature has imaginary residue %.3e (real part %.6e)", what, s, r);
            throw NumericalError(buf);
        }
        return r;
    }
};

}  // namespace

double mass(const SpinorField& psi) {
    const RealField rho = density(psi);
    return psi.grid().cell_volume() * pairwise_sum(rho.values);
}

double magnetization(const SpinorField& psi) {
    const auto& g = psi.grid();
    auto level_sum = [&](int l) {
        const auto v = psi.level(l).values();
        std::vector<double> n(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) n[i] = std::norm(v[i]);
        return pairwise_sum(n);
    };
    // +-l pairs first so l-symmetric data gives exactly 0
    const double m = 2.0 * (level_sum(2) - level_sum(-2)) + (level_sum(1) - level_sum(-1));
    return g.cell_volume() * m;
}

std::array<double, 3> condensate_widths(const SpinorField& psi) {
    const auto& g = psi.grid();
    const Coords c = coords(g);
    const RealField rho = density(psi);
    std::array<double, 3> out{};
    std::vector<double> w(rho.values.size());
    const std::vector<double>* axes[3] = {&c.x, &c.y, &c.z};
    for (int a = 0; a < g.dim(); ++a) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = (*axes[a])[i] * (*axes[a])[i] * rho.values[i];
        out[a] = g.cell_volume() * pairwise_sum(w);
    }
    return out;
}

double angular_momentum(const SpinorField& psi) {
    const auto& g = psi.grid();
    const Coords c = coords(g);
    ComplexSum sum(g.size());
    for (int m = 0; m < 5; ++m) {
        const auto& f = psi.component(m);
        const Gradient gr = gradient(f);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const cplx lz = cplx(0.0, -1.0) * (c.x[i] * gr.d[1][i] - c.y[i] * gr.d[0][i]);
            const double scale = std::abs(f[i]) * (std::abs(c.x[i] * gr.d[1][i]) + std::abs(c.y[i] * gr.d[0][i]));
            sum.add(i, std::conj(f[i]) * lz, scale);
        }
    }
    return sum.finish(g.cell_volume(), "angular momentum");
}

double radial_width_rate(const SpinorField& psi) {
    const auto& g = psi.grid();
    const Coords c = coords(g);
    std::vector<double> acc(g.size(), 0.0);
    for (int m = 0; m < 5; ++m) {
        const auto& f = psi.component(m);
        const Gradient gr = gradient(f);
        for (std::size_t i = 0; i < g.size(); ++i)
            acc[i] += (std::conj(f[i]) * (c.x[i] * gr.d[0][i] + c.y[i] * gr.d[1][i])).imag();
    }
    return 2.0 * g.cell_volume() * pairwise_sum(acc);
}

double energy(const SpinorField& psi, const ModelParams& p) {
    const auto& g = psi.grid();
    const int dim = g.dim();
    const std::size_t n = g.size();
    const Coords c = coords(g);
    ComplexSum sum(n);

    std::array<Gradient, 5> grad;
    for (int m = 0; m < 5; ++m) grad[m] = gradient(psi.component(m));

    // L_+ = i d_y + d_x, L_- = i d_y - d_x
    auto Lp = [&](int m, std::size_t i) { return cplx(0.0, 1.0) * grad[m].d[1][i] + grad[m].d[0][i]; };
    auto Lm = [&](int m, std::size_t i) { return cplx(0.0, 1.0) * grad[m].d[1][i] - grad[m].d[0][i]; };
    const double r6 = std::sqrt(6.0) / 2.0;

    for (std::size_t i = 0; i < n; ++i) {
        const Vec5 v = psi.at(i);
        const LocalObservables o = local_observables(v);
        const double V = p.potential(c.x[i], c.y[i], c.z[i], dim);
        cplx e = V * o.rho + 0.5 * p.c0 * o.rho * o.rho +
                 0.5 * p.c1 * (std::norm(o.f_plus) + o.f_z * o.f_z) + 0.5 * p.c2 * std::norm(o.a00);
        double scale = std::abs(e);
        double grad_abs = 0.0;
        for (int m = 0; m < 5; ++m) {
            double kin = 0.0;
            for (int a = 0; a < dim; ++a) kin += std::norm(grad[m].d[a][i]);
            const cplx lz = cplx(0.0, -1.0) * (c.x[i] * grad[m].d[1][i] - c.y[i] * grad[m].d[0][i]);
            e += 0.5 * kin - p.omega * std::conj(v[m]) * lz;
            const double r = std::abs(c.x[i]) + std::abs(c.y[i]);
            grad_abs += std::abs(grad[m].d[0][i]) + std::abs(grad[m].d[1][i]);
            scale += 0.5 * kin + std::abs(p.omega) * std::abs(v[m]) * r *
                                     (std::abs(grad[m].d[0][i]) + std::abs(grad[m].d[1][i]));
        }
        if (p.gamma_soc != 0.0) {
            // storage m = 0..4 holds l = 2..-2
            const cplx s = std::conj(v[0]) * Lm(1, i) + std::conj(v[1]) * (Lp(0, i) + r6 * Lm(2, i)) +
                           r6 * std::conj(v[2]) * (Lp(1, i) + Lm(3, i)) +
                           std::conj(v[3]) * (Lm(4, i) + r6 * Lp(2, i)) + std::conj(v[4]) * Lp(3, i);
            e -= p.gamma_soc * s;
            scale += 2.0 * std::abs(p.gamma_soc) * std::sqrt(o.rho) * grad_abs;
        }
        sum.add(i, e, scale);
    }
    return sum.finish(g.cell_volume(), "energy");
}

double width_law_reference(double t, double gamma_r, double energy0, double omega, double lz0, double delta0,
                           double delta_rate0) {
    const double w = 2.0 * gamma_r;
    return (energy0 + omega * lz0) / (gamma_r * gamma_r) * (1.0 - std::cos(w * t)) + delta0 * std::cos(w * t) +
           delta_rate0 / w * std::sin(w * t);
}

DiagnosticsRecord diagnostics(const SpinorField& psi, const ModelParams& params, double t) {
    DiagnosticsRecord r;
    r.t = t;
    r.dim = psi.grid().dim();
    r.mass = mass(psi);
    r.energy = energy(psi, params);
    r.magnetization = magnetization(psi);
    r.lz = angular_momentum(psi);
    r.widths = condensate_widths(psi);
    return r;
}

std::string csv_header(int dim) {
    std::string h = "t,mass,energy,magnetization,lz,delta_x,delta_y";
    if (dim == 3) h += ",delta_z";
    return h;
}

std::string csv_row(const DiagnosticsRecord& r) {
    char buf[512];
    int n = std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.t, r.mass, r.energy,
                          r.magnetization, r.lz, r.widths[0], r.widths[1]);
    if (r.dim == 3) std::snprintf(buf + n, sizeof buf - n, ",%.17g", r.widths[2]);
    return buf;
}

}  // namespace spinor
