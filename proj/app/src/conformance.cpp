#include "spinor_app/conformance.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "spinor/linear_flow.hpp"
#include "spinor/nonlinear_flow.hpp"
#include "spinor/rotation.hpp"
#include "spinor_oracles/oracles.hpp"

namespace spinor::app {
namespace {

CheckResult make(const std::string& name, double value, double tol) { return {name, value, tol, value <= tol}; }

}  // namespace

CheckResult check_mode_propagator(int samples, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double W = 2.0 * u(rng), g = 2.0 * u(rng);
        const double p = 40.0 * u(rng), q = 40.0 * u(rng);
        // mixes tiny, moderate and large substeps (Taylor and closed-form branches)
        const double scale = k % 4 == 0 ? 1e-7 : (k % 4 == 1 ? 1e-3 : 0.1);
        const double tau = scale * u(rng);
        const auto mp = mode_propagator(W, g, p, q, tau);
        worst = std::max(worst, max_abs_diff(mp.U, oracle::dense_mode_propagator(W, g, p, q, tau)));
    }
    return make("mode propagator vs dense exp(i tau Q)", worst, 1e-12);
}

CheckResult check_spin_rotation(int samples, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double fx = 4 * u(rng), fy = 4 * u(rng), fz = 4 * u(rng);
        const double c1 = 3 * u(rng);
        const double tau = (k % 5 == 0 ? 1e-9 : 0.5) * std::abs(u(rng));
        const double fa = std::sqrt(fx * fx + fy * fy + fz * fz);
        const Mat5 R = spin_rotation(cplx(fx, fy), fz, fa, c1, tau);
        worst = std::max(worst, max_abs_diff(R, oracle::dense_spin_rotation(fx, fy, fz, c1, tau)));
    }
    return make("spin rotation vs dense exp(-i c1 tau F.f)", worst, 1e-12);
}

CheckResult check_nonlinear_ode(int samples, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 0.15);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ModelParams p;
    p.c0 = 100.0;
    p.c1 = -1.0;
    p.c2 = 1.0;
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        Vec5 v;
        for (auto& c : v) c = cplx(n(rng), n(rng));
        const double V = 3.0 * u(rng);
        const Vec5 a = nonlinear_node(v, V, p, 0.2);
        const Vec5 b = oracle::ode_nonlinear_node(v, V, p, 0.2);
        for (int m = 0; m < 5; ++m) worst = std::max(worst, std::abs(a[m] - b[m]));
    }
    return make("nonlinear node vs adaptive single-node ODE", worst, 1e-10);
}

CheckResult check_a00_ode(int samples, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const cplx a(u(rng), u(rng));
        const double V = 2 + u(rng), rho = 1 + u(rng), dt = 0.1 * std::abs(u(rng));
        worst = std::max(worst, std::abs(a00_evolution(a, V, rho, 10.0, 1.0, dt) - oracle::ode_a00(a, V, rho, 10.0, 1.0, dt)));
    }
    return make("A00 evolution vs scalar ODE", worst, 1e-12);
}

CheckResult check_linear_mol() {
    const auto g = build_grid(2, 7.0, 32);
    SpinorField psi(g);
    const double x0[5] = {0.8, -0.3, 0.0, 0.5, -0.6};
    const double y0[5] = {0.2, 0.6, -0.4, -0.1, 0.3};
    for (int m = 0; m < 5; ++m)
        psi.component(m) = sample(g, [&](double x, double y, double) {
            const double dx = x - x0[m], dy = y - y0[m];
            return std::polar(std::exp(-(dx * dx + dy * dy) / 2.0) / 3.0, 0.3 * m * x);
        });
    ModelParams p;
    p.omega = 0.2;
    p.gamma_soc = 0.1;
    const double tau = 1e-3;
    const SpinorField ref = oracle::mol_linear_flow(psi, p.omega, p.gamma_soc, tau);
    double worst = 0.0;
    for (double t_n : {0.0, 1.3, 4.0}) worst = std::max(worst, oracle::max_abs_diff(linear_step(psi, p, t_n, tau), ref));
    return make("linear step vs method-of-lines oracle (N = 32)", worst, 1e-9);
}

CheckResult check_shear_analytic() {
    const auto g = build_grid(2, 10.0, 128);
    auto f0 = [](double x, double y) { return std::exp(-((x - 0.7) * (x - 0.7) + 2.0 * (y + 0.4) * (y + 0.4)) / 2.0); };
    const ComplexField f = sample(g, [&](double x, double y, double) { return cplx(f0(x, y)); });
    const ComplexField sx = shear_x(f, 0.35), sy = shear_y(f, -0.45);
    const double th = 0.9, c = std::cos(th), s = std::sin(th);
    const ComplexField rf = rotate_field(f, th);
    double worst = 0.0;
    for (int k = 0; k < g->N(); ++k)
        for (int j = 0; j < g->N(); ++j) {
            const double x = g->node(j), y = g->node(k);
            const std::size_t i = j + g->N() * k;
            worst = std::max(worst, std::abs(sx[i] - f0(x + 0.35 * y, y)));
            worst = std::max(worst, std::abs(sy[i] - f0(x, y - 0.45 * x)));
            worst = std::max(worst, std::abs(rf[i] - f0(c * x + s * y, -s * x + c * y)));
        }
    return make("shears and rotation vs analytic Gaussian", worst, 1e-11);
}

std::vector<CheckResult> run_conformance() {
    return {check_mode_propagator(10000, 1), check_spin_rotation(10000, 2), check_nonlinear_ode(1000, 3),
            check_a00_ode(200, 4),           check_linear_mol(),            check_shear_analytic()};
}

std::string format_check(const CheckResult& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "[%s] %s: %.3e (tol %.1e)", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.value,
                  r.tolerance);
    return buf;
}

}  // namespace spinor::app
