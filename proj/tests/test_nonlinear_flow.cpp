#include <doctest.h>

#include <cmath>
#include <random>

#include "spinor/diagnostics.hpp"
#include "spinor/nonlinear_flow.hpp"
#include "spinor_oracles/oracles.hpp"

using namespace spinor;

namespace {

Vec5 random_node(std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> n(0.0, scale);
    Vec5 v;
    for (auto& c : v) c = cplx(n(rng), n(rng));
    return v;
}

double max_diff(const Vec5& a, const Vec5& b) {
    double d = 0.0;
    for (int m = 0; m < 5; ++m) d = std::max(d, std::abs(a[m] - b[m]));
    return d;
}

ModelParams interacting() {
    ModelParams p;
    p.c0 = 100.0;
    p.c1 = -1.0;
    p.c2 = 1.0;
    return p;
}

}  // namespace

TEST_CASE("spin rotation with F along z is diagonal") {
    const double c1 = 0.7, tau = 0.3, fz = 1.3;
    const Mat5 R = spin_rotation(0.0, fz, fz, c1, tau);
    for (int m = 0; m < 5; ++m)
        for (int n = 0; n < 5; ++n) {
            const cplx e = m == n ? std::polar(1.0, -spin_level(m) * c1 * tau * fz) : cplx(0.0);
            CHECK(std::abs(R[m][n] - e) < 1e-14);
        }
}

TEST_CASE("spin rotation at kappa = 0 is the identity") {
    CHECK(max_abs_diff(spin_rotation(0.0, 0.0, 0.0, 1.0, 0.2), identity5()) == 0.0);
    CHECK(max_abs_diff(spin_rotation(cplx(0.3, 0.1), 0.2, 0.0, 0.0, 0.2), identity5()) == 0.0);
}

TEST_CASE("spin rotation matches the dense exponential") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const double fx = 3 * u(rng), fy = 3 * u(rng), fz = 3 * u(rng);
        const double c1 = 2 * u(rng);
        const double tau = k % 4 == 0 ? 1e-10 * std::abs(u(rng)) : std::abs(u(rng));
        const double fa = std::sqrt(fx * fx + fy * fy + fz * fz);
        const Mat5 R = spin_rotation(cplx(fx, fy), fz, fa, c1, tau);
        worst = std::max(worst, max_abs_diff(R, oracle::dense_spin_rotation(fx, fy, fz, c1, tau)));
        CHECK(unitarity_defect(R) < 1e-12);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("spin matrices agree with the ladder construction") {
    const auto& a = spin_matrices();
    const auto& b = oracle::ladder_spin();
    CHECK(max_abs_diff(a.fx, b.fx) < 1e-15);
    CHECK(max_abs_diff(a.fy, b.fy) < 1e-15);
    CHECK(max_abs_diff(a.fz, b.fz) < 1e-15);
}

TEST_CASE("A00 evolution keeps the modulus and matches the scalar ODE") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CHECK(a00_evolution(cplx(0.3, -0.2), 1.0, 0.5, 100.0, 1.0, 0.0) == cplx(0.3, -0.2));
    for (int k = 0; k < 50; ++k) {
        const cplx a(u(rng), u(rng));
        const double V = 2 + u(rng), rho = 1 + u(rng), dt = 0.1 * std::abs(u(rng));
        const cplx out = a00_evolution(a, V, rho, 10.0, 1.0, dt);
        CHECK(std::abs(std::abs(out) - std::abs(a)) < 1e-15);
        CHECK(std::abs(out - oracle::ode_a00(a, V, rho, 10.0, 1.0, dt)) < 1e-12);
    }
}

TEST_CASE("nonlinear node matches the full single-node ODE") {
    std::mt19937_64 rng(3);
    const ModelParams p = interacting();
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Vec5 v = random_node(rng, 0.15);
        const double V = 0.5 * (k % 7);
        worst = std::max(worst, max_diff(nonlinear_node(v, V, p, 0.2), oracle::ode_nonlinear_node(v, V, p, 0.2)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("pure l = 0 node evolves by a phase") {
    const ModelParams p = interacting();
    const Vec5 v{0.0, 0.0, cplx(0.4, 0.3), 0.0, 0.0};
    const double rho = std::norm(v[2]), V = 0.7, tau = 0.05;
    const Vec5 out = nonlinear_node(v, V, p, tau);
    const cplx expect = std::polar(1.0, -tau * (V + (p.c0 + p.c2 / 5.0) * rho)) * v[2];
    CHECK(std::abs(out[2] - expect) < 1e-15);
    CHECK(max_diff(out, oracle::ode_nonlinear_node(v, V, p, tau)) < 1e-12);
}

TEST_CASE("nonlinear node preserves density and spin pointwise") {
    std::mt19937_64 rng(9);
    const ModelParams p = interacting();
    for (int k = 0; k < 200; ++k) {
        const Vec5 v = random_node(rng, 0.5);
        const auto a = local_observables(v);
        const auto b = local_observables(nonlinear_node(v, 1.0, p, 0.1));
        CHECK(std::abs(a.rho - b.rho) <= 1e-13 * a.rho);
        CHECK(std::abs(a.f_z - b.f_z) <= 1e-13 * a.rho);
        CHECK(std::abs(a.f_plus - b.f_plus) <= 1e-13 * a.rho);
    }
}

TEST_CASE("nonlinear node has the flow property") {
    std::mt19937_64 rng(13);
    const ModelParams p = interacting();
    for (int k = 0; k < 100; ++k) {
        const Vec5 v = random_node(rng, 0.3);
        const Vec5 two = nonlinear_node(nonlinear_node(v, 0.3, p, 0.04), 0.3, p, 0.07);
        const Vec5 one = nonlinear_node(v, 0.3, p, 0.11);
        CHECK(max_diff(one, two) < 1e-11);
    }
}

TEST_CASE("vanishing couplings and potential give the identity") {
    std::mt19937_64 rng(17);
    const ModelParams p{};
    for (int k = 0; k < 20; ++k) {
        const Vec5 v = random_node(rng, 1.0);
        CHECK(max_diff(nonlinear_node(v, 0.0, p, 0.3), v) < 1e-15);
    }
}

TEST_CASE("vacuum node stays finite") {
    const Vec5 zero{};
    const Vec5 out = nonlinear_node(zero, 1.0, interacting(), 0.1);
    for (const auto& c : out) CHECK(c == cplx(0.0));
}

TEST_CASE("nonlinear step keeps mass and magnetization") {
    const auto g = build_grid(2, 6.0, 32);
    SpinorField psi(g);
    for (int m = 0; m < 5; ++m)
        psi.component(m) = sample(g, [m](double x, double y, double) {
            return std::polar(std::exp(-(x * x + y * y) / 2.0) * (1.0 + 0.2 * m), 0.4 * m * x - 0.1 * y);
        });
    ModelParams p = interacting();
    p.gamma_soc = 0.9;
    const SpinorField out = nonlinear_step(psi, nullptr, p, 0.01);
    CHECK(std::abs(mass(out) - mass(psi)) < 1e-13 * mass(psi));
    CHECK(std::abs(magnetization(out) - magnetization(psi)) < 1e-13 * mass(psi));
}
