#include "spinor/nonlinear_flow.hpp"

#include <cmath>

#include "spinor/parallel.hpp"

namespace spinor {
namespace {

constexpr double kUp[4] = {1.0, 1.224744871391589, 1.224744871391589, 1.0};  // 1, sqrt(6)/2

// (F.f) v with F.f tridiagonal: F_- on the superdiagonal, F_+ below.
Vec5 spin_dot(cplx f_plus, double f_z, const Vec5& v) {
    const cplx f_minus = std::conj(f_plus);
    Vec5 w;
    for (int m = 0; m < 5; ++m) {
        cplx s = static_cast<double>(spin_level(m)) * f_z * v[m];
        if (m < 4) s += f_minus * kUp[m] * v[m + 1];
        if (m > 0) s += f_plus * kUp[m - 1] * v[m - 1];
        w[m] = s;
    }
    return w;
}

void axpy(cplx a, const Vec5& x, Vec5& y) {
    for (int m = 0; m < 5; ++m) y[m] += a * x[m];
}

struct RotationCoefficients {
    bool taylor;
    cplx c[5];  // weights of (F.f)^k / |F|^k, or of M^k in the Taylor branch
};

RotationCoefficients rotation_coefficients(double f_abs, double c1, double tau) {
    RotationCoefficients rc{};
    const double kappa = c1 * f_abs * tau;
    if (std::abs(kappa) < 1e-8) {
        // sum_k (-i M)^k / k!, M = c1 tau F.f
        rc.taylor = true;
        cplx t(1.0);
        const cplx step(0.0, -c1 * tau);
        for (int k = 0; k < 5; ++k) {
            rc.c[k] = t;
            t *= step / static_cast<double>(k + 1);
        }
        return rc;
    }
    rc.taylor = false;
    const double s1 = std::sin(kappa), s2 = std::sin(2.0 * kappa);
    // cos(x) - 1 = -2 sin^2(x/2)
    const double h1 = std::sin(0.5 * kappa);
    const double cm1 = -2.0 * h1 * h1;
    const double cm2 = -2.0 * s1 * s1;
    rc.c[0] = 1.0;
    rc.c[1] = cplx(0.0, s2 / 6.0 - 4.0 * s1 / 3.0);
    rc.c[2] = 4.0 / 3.0 * cm1 - cm2 / 12.0;
    rc.c[3] = cplx(0.0, s1 / 3.0 - s2 / 6.0);
    rc.c[4] = cm2 / 12.0 - cm1 / 3.0;
    return rc;
}

}  // namespace

Vec5 apply_spin_rotation(cplx f_plus, double f_z, double f_abs, double c1, double tau, const Vec5& v) {
    const RotationCoefficients rc = rotation_coefficients(f_abs, c1, tau);
    cplx fp = f_plus;
    double fz = f_z;
    if (!rc.taylor) {
        fp /= f_abs;
        fz /= f_abs;
    }
    Vec5 out = v;
    Vec5 w = v;
    for (int k = 1; k <= 4; ++k) {
        w = spin_dot(fp, fz, w);
        axpy(rc.c[k], w, out);
    }
    return out;
}

Mat5 spin_rotation(cplx f_plus, double f_z, double f_abs, double c1, double tau) {
    Mat5 out = zero5();
    for (int col = 0; col < 5; ++col) {
        Vec5 e{};
        e[col] = 1.0;
        const Vec5 c = apply_spin_rotation(f_plus, f_z, f_abs, c1, tau, e);
        for (int row = 0; row < 5; ++row) out[row][col] = c[row];
    }
    return out;
}

cplx a00_evolution(cplx a00, double V, double rho, double c0, double c2, double dt) {
    return a00 * std::polar(1.0, -2.0 * dt * (V + (c0 + c2 / 5.0) * rho));
}

Vec5 nonlinear_node(const Vec5& psi, double V, const ModelParams& p, double tau) {
    const LocalObservables o = local_observables(psi);

    const double r5 = o.rho / 5.0;
    const double rad = r5 * r5 - std::norm(o.a00) / 5.0;
    const double S = rad > 0.0 ? std::sqrt(rad) : 0.0;
    const double x = p.c2 * S * tau;
    const double cs = std::cos(x);
    const double sinc = std::abs(x) < 1e-6 ? p.c2 * tau * (1.0 - x * x / 6.0) : std::sin(x) / S;

    // A conj(psi) = (conj psi_-2, -conj psi_-1, conj psi_0, -conj psi_1, conj psi_2) / sqrt(5)
    constexpr double inv_sqrt5 = 0.4472135954999579;
    Vec5 b;
    for (int m = 0; m < 5; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        const cplx apsi = sign * inv_sqrt5 * std::conj(psi[4 - m]);
        b[m] = cs * psi[m] + cplx(0.0, sinc) * (r5 * psi[m] - o.a00 * apsi);
    }

    Vec5 out = apply_spin_rotation(o.f_plus, o.f_z, o.f_abs, p.c1, tau, b);
    const cplx phase = std::polar(1.0, -tau * (V + (p.c0 + p.c2 / 5.0) * o.rho));
    for (auto& v : out) v *= phase;
    return out;
}

NonlinearFlow::NonlinearFlow(GridPtr grid, ModelParams params, std::optional<RealField> potential)
    : grid_(std::move(grid)), params_(params), potential_(std::move(potential)) {}

void NonlinearFlow::step(SpinorField& psi, double tau) const {
    const auto& g = *grid_;
    const int N = g.N();
    const int dim = g.dim();
    const std::ptrdiff_t lines = static_cast<std::ptrdiff_t>(g.size() / N);
    cplx* d[5];
    for (int m = 0; m < 5; ++m) d[m] = psi.component(m).data();
    const double* vt = potential_ ? potential_->values.data() : nullptr;

#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t line = 0; line < lines; ++line) {
        const double y = g.node(static_cast<int>(line % N));
        const double z = dim == 3 ? g.node(static_cast<int>(line / N)) : 0.0;
        for (int j = 0; j < N; ++j) {
            const std::size_t idx = static_cast<std::size_t>(line) * N + j;
            const double V = vt ? vt[idx] : params_.potential(g.node(j), y, z, dim);
            Vec5 v;
            for (int m = 0; m < 5; ++m) v[m] = d[m][idx];
            const Vec5 out = nonlinear_node(v, V, params_, tau);
            for (int m = 0; m < 5; ++m) d[m][idx] = out[m];
        }
    }
}

SpinorField nonlinear_step(const SpinorField& psi, const RealField* V, const ModelParams& params, double tau) {
    std::optional<RealField> table;
    if (V) table = *V;
    NonlinearFlow flow(psi.grid_ptr(), params, std::move(table));
    SpinorField out = psi;
    flow.step(out, tau);
    return out;
}

}  // namespace spinor
