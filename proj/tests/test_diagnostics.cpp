#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinor/diagnostics.hpp"

using namespace spinor;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("initial-data normalization and widths") {
    const auto g = build_grid(2, 12.0, 128);
    const SpinorField ini1 = make_initial(InitialSpec{}, g);
    CHECK(std::abs(mass(ini1) - 1.0) < 1e-12);
    const auto w = condensate_widths(ini1);
    CHECK(std::abs(w[0] - 0.5) < 1e-12);
    CHECK(std::abs(w[1] - 0.5) < 1e-12);
    CHECK(magnetization(ini1) == 0.0);
    CHECK(std::abs(angular_momentum(ini1)) < 1e-14);

    const auto wide_grid = build_grid(2, 24.0, 256);
    InitialSpec spec;
    spec.kind = InitialKind::GaussianWide;
    CHECK(std::abs(mass(make_initial(spec, wide_grid)) - 1.0) < 1e-12);
    spec.kind = InitialKind::GaussianVortex;
    const SpinorField vortex = make_initial(spec, g);
    CHECK(std::abs(mass(vortex) - 1.0) < 1e-12);
}

TEST_CASE("3D initial data") {
    const auto g = build_grid(3, 8.0, 32);
    const SpinorField psi = make_initial(InitialSpec{}, g);
    CHECK(std::abs(mass(psi) - 1.0) < 1e-12);
    const auto w = condensate_widths(psi);
    CHECK(std::abs(w[2] - 0.5) < 1e-12);
    InitialSpec spec;
    spec.kind = InitialKind::GaussianWide;
    CHECK_THROWS(make_initial(spec, g));
}

TEST_CASE("zero field gives zero observables") {
    const auto g = build_grid(2, 4.0, 16);
    const SpinorField z(g);
    ModelParams p;
    p.c0 = 1.0;
    p.gamma_soc = 0.5;
    CHECK(mass(z) == 0.0);
    CHECK(energy(z, p) == 0.0);
    CHECK(magnetization(z) == 0.0);
    CHECK(angular_momentum(z) == 0.0);
    CHECK(condensate_widths(z)[0] == 0.0);
}

TEST_CASE("mass is quadratic") {
    const auto g = build_grid(2, 12.0, 64);
    SpinorField psi = make_initial(InitialSpec{}, g);
    for (int m = 0; m < 5; ++m) psi.component(m) *= 2.0;
    CHECK(mass(psi) == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("pure l = 2 state has magnetization 2") {
    const auto g = build_grid(2, 12.0, 64);
    SpinorField psi(g);
    psi.level(2) = sample(g, [](double x, double y, double) { return cplx(std::exp(-(x * x + y * y) / 2.0) / std::sqrt(kPi)); });
    CHECK(magnetization(psi) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("harmonic ground state in one component has energy 1") {
    const auto g = build_grid(2, 12.0, 64);
    SpinorField psi(g);
    psi.level(0) = sample(g, [](double x, double y, double) { return cplx(std::exp(-(x * x + y * y) / 2.0) / std::sqrt(kPi)); });
    CHECK(std::abs(energy(psi, ModelParams{}) - 1.0) < 1e-12);
}

TEST_CASE("vortex profile carries unit angular momentum") {
    const auto g = build_grid(2, 12.0, 96);
    SpinorField psi(g);
    psi.level(1) = sample(g, [](double x, double y, double) {
        return std::exp(-(x * x + y * y) / 2.0) / std::sqrt(kPi) * cplx(x, y);
    });
    CHECK(std::abs(mass(psi) - 1.0) < 1e-12);
    CHECK(std::abs(angular_momentum(psi) - 1.0) < 1e-12);
}

TEST_CASE("SOC energy of a plane-wave-modulated Gaussian") {
    // psi_2 = G e^{ikx} / sqrt(2), psi_1 = i psi_2 with unit-norm G:
    // <psi_2, L_- psi_1> = <psi_1, L_+ psi_2> = k/2, so the SOC part is -gamma k.
    const auto g = build_grid(2, 12.0, 128);
    const double k = 0.8;
    SpinorField psi(g);
    psi.level(2) = sample(g, [k](double x, double y, double) {
        return std::polar(std::exp(-(x * x + y * y) / 2.0) / std::sqrt(2.0 * kPi), k * x);
    });
    psi.level(1) = psi.level(2);
    psi.level(1) *= cplx(0.0, 1.0);
    ModelParams p;
    const double e0 = energy(psi, p);
    p.gamma_soc = 0.5;
    const double e1 = energy(psi, p);
    CHECK(e1 - e0 == doctest::Approx(-0.5 * k).epsilon(1e-10));
}

TEST_CASE("width law reference") {
    CHECK(width_law_reference(0.0, 1.0, 3.0, 0.2, 0.5, 1.7, 0.4) == 1.7);
    // fixed point: E + Omega Lz = gamma_r^2 delta0, zero rate
    for (double t : {0.3, 1.1, 2.9}) CHECK(width_law_reference(t, 1.5, 2.25 * 0.8 + 0.1, 0.2, -0.5, 0.8, 0.0) == doctest::Approx(0.8));
    for (double t : {0.3, 1.1}) {
        const double a = width_law_reference(t, 1.3, 2.0, 0.2, 0.5, 1.0, 0.3);
        const double b = width_law_reference(t + kPi / 1.3, 1.3, 2.0, 0.2, 0.5, 1.0, 0.3);
        CHECK(a == doctest::Approx(b).epsilon(1e-13));
    }
}

TEST_CASE("csv header and row") {
    CHECK(csv_header(2) == "t,mass,energy,magnetization,lz,delta_x,delta_y");
    CHECK(csv_header(3) == "t,mass,energy,magnetization,lz,delta_x,delta_y,delta_z");
    DiagnosticsRecord r;
    r.t = 0.5;
    r.mass = 1.0;
    CHECK(csv_row(r) == "0.5,1,0,0,0,0,0");
}
