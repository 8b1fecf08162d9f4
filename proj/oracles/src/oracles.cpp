#include "spinor_oracles/oracles.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/numeric/odeint.hpp>

namespace spinor::oracle {
namespace {

using EMat5 = Eigen::Matrix<cplx, 5, 5>;
namespace ode = boost::numeric::odeint;

EMat5 to_eigen(const Mat5& m) {
    EMat5 e;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) e(i, j) = m[i][j];
    return e;
}

Mat5 from_eigen(const EMat5& e) {
    Mat5 m;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) m[i][j] = e(i, j);
    return m;
}

}  // namespace

Mat5 q_from_symbols(double omega, double gamma, double nu_p, double nu_q) {
    // i d/dt phi_hat = (|nu|^2/2 + l Omega - gamma S_hat) phi_hat, hence
    // exp(-i tau (...)) = exp(-i tau |nu|^2/2) exp(i tau Q) with
    // Q = gamma S_hat - diag(l Omega).
    const cplx i(0.0, 1.0);
    const cplx Lp = i * (i * nu_q) + i * nu_p;  // symbol of i d_y + d_x
    const cplx Lm = i * (i * nu_q) - i * nu_p;  // symbol of i d_y - d_x
    const double r6 = std::sqrt(1.5);
    EMat5 S = EMat5::Zero();
    // rows l = 2, 1, 0, -1, -2
    S(0, 1) = Lm;
    S(1, 0) = Lp;
    S(1, 2) = r6 * Lm;
    S(2, 1) = r6 * Lp;
    S(2, 3) = r6 * Lm;
    S(3, 4) = Lm;
    S(3, 2) = r6 * Lp;
    S(4, 3) = Lp;
    EMat5 Q = gamma * S;
    for (int m = 0; m < 5; ++m) Q(m, m) -= static_cast<double>(2 - m) * omega;
    return from_eigen(Q);
}

Mat5 dense_mode_propagator(double omega, double gamma, double nu_p, double nu_q, double tau) {
    const EMat5 Q = to_eigen(q_from_symbols(omega, gamma, nu_p, nu_q));
    const EMat5 X = cplx(0.0, tau) * Q;
    return from_eigen(X.exp());
}

const LadderSpin& ladder_spin() {
    static const LadderSpin s = [] {
        LadderSpin out{};
        EMat5 fp = EMat5::Zero(), fz = EMat5::Zero();
        const double j = 2.0;
        for (int m = 0; m < 5; ++m) {
            const double l = 2 - m;
            fz(m, m) = l;
            // f_+ |l> = sqrt(j(j+1) - l(l+1)) |l+1>, |l+1> sits at m - 1
            if (m > 0) fp(m - 1, m) = std::sqrt(j * (j + 1) - l * (l + 1));
        }
        const EMat5 fm = fp.adjoint();
        out.fx = from_eigen(0.5 * (fp + fm));
        out.fy = from_eigen(cplx(0.0, -0.5) * (fp - fm));
        out.fz = from_eigen(fz);
        return out;
    }();
    return s;
}

Mat5 dense_spin_rotation(double fx, double fy, double fz, double c1, double tau) {
    const auto& s = ladder_spin();
    const EMat5 M = fx * to_eigen(s.fx) + fy * to_eigen(s.fy) + fz * to_eigen(s.fz);
    const EMat5 X = cplx(0.0, -c1 * tau) * M;
    return from_eigen(X.exp());
}

Vec5 ode_nonlinear_node(const Vec5& psi0, double V, const ModelParams& p, double tau, double tol) {
    using State = std::vector<cplx>;
    const auto& s = ladder_spin();
    const EMat5 fx = to_eigen(s.fx), fy = to_eigen(s.fy), fz = to_eigen(s.fz);
    // A_ij = (-1)^(i-1) delta_{i+j,6} / sqrt(5), 1-based
    EMat5 A = EMat5::Zero();
    for (int i = 0; i < 5; ++i) A(i, 4 - i) = (i % 2 == 0 ? 1.0 : -1.0) / std::sqrt(5.0);

    auto rhs = [&](const State& x, State& dxdt, double) {
        Eigen::Matrix<cplx, 5, 1> v;
        for (int m = 0; m < 5; ++m) v(m) = x[m];
        const double rho = v.squaredNorm();
        const double Fx = (v.adjoint() * fx * v)(0).real();
        const double Fy = (v.adjoint() * fy * v)(0).real();
        const double Fz = (v.adjoint() * fz * v)(0).real();
        const cplx a00 = (v.transpose() * A * v)(0);
        const Eigen::Matrix<cplx, 5, 1> h = (V + p.c0 * rho) * v + p.c1 * (Fx * fx + Fy * fy + Fz * fz) * v +
                                            p.c2 * a00 * (A * v.conjugate());
        for (int m = 0; m < 5; ++m) dxdt[m] = cplx(0.0, -1.0) * h(m);
    };

    State x(psi0.begin(), psi0.end());
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<State>());
    ode::integrate_adaptive(stepper, rhs, x, 0.0, tau, tau / 64.0);
    Vec5 out;
    for (int m = 0; m < 5; ++m) out[m] = x[m];
    return out;
}

cplx ode_a00(cplx a00, double V, double rho, double c0, double c2, double dt, double tol) {
    using State = std::vector<cplx>;
    const double w = 2.0 * (V + (c0 + c2 / 5.0) * rho);
    auto rhs = [w](const State& x, State& dxdt, double) { dxdt[0] = cplx(0.0, -w) * x[0]; };
    State x{a00};
    if (dt == 0.0) return a00;
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<State>());
    ode::integrate_adaptive(stepper, rhs, x, 0.0, dt, dt / 64.0);
    return x[0];
}

SpinorField mol_linear_flow(const SpinorField& psi, double omega, double gamma, double tau, double tol) {
    const auto& g = psi.grid();
    const int N = g.N();
    const std::size_t n = g.size();
    if (g.dim() != 2) throw std::invalid_argument("mol_linear_flow supports dim = 2");

    // D_jk = (1/N) sum_i (i nu_i) exp(2 pi i i (j - k) / N)
    std::vector<cplx> D(static_cast<std::size_t>(N) * N);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            cplx s = 0.0;
            for (int i = 0; i < N; ++i)
                s += cplx(0.0, g.wavenumber(i)) * std::polar(1.0, 2.0 * M_PI * i * (j - k) / N);
            D[j * N + k] = s / static_cast<double>(N);
        }

    auto dx = [&](const cplx* f, cplx* out) {
        for (int r = 0; r < N; ++r)
            for (int j = 0; j < N; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < N; ++k) s += D[j * N + k] * f[k + N * r];
                out[j + N * r] = s;
            }
    };
    auto dy = [&](const cplx* f, cplx* out) {
        for (int c = 0; c < N; ++c)
            for (int j = 0; j < N; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < N; ++k) s += D[j * N + k] * f[c + N * k];
                out[c + N * j] = s;
            }
    };

    using State = std::vector<cplx>;
    const double r6 = std::sqrt(1.5);
    const cplx I(0.0, 1.0);
    auto rhs = [&](const State& x, State& dxdt, double) {
        std::vector<cplx> Dx(5 * n), Dy(5 * n), Dxx(n), Dyy(n);
        for (int m = 0; m < 5; ++m) {
            dx(x.data() + m * n, Dx.data() + m * n);
            dy(x.data() + m * n, Dy.data() + m * n);
        }
        auto Lp = [&](int m, std::size_t i) { return I * Dy[m * n + i] + Dx[m * n + i]; };
        auto Lm = [&](int m, std::size_t i) { return I * Dy[m * n + i] - Dx[m * n + i]; };
        for (int m = 0; m < 5; ++m) {
            dx(Dx.data() + m * n, Dxx.data());
            dy(Dy.data() + m * n, Dyy.data());
            for (std::size_t i = 0; i < n; ++i) {
                const double xc = g.node(static_cast<int>(i % N));
                const double yc = g.node(static_cast<int>(i / N));
                cplx h = -0.5 * (Dxx[i] + Dyy[i]);
                h += I * omega * (xc * Dy[m * n + i] - yc * Dx[m * n + i]);
                cplx s = 0.0;
                switch (m) {
                    case 0: s = Lm(1, i); break;
                    case 1: s = Lp(0, i) + r6 * Lm(2, i); break;
                    case 2: s = r6 * (Lp(1, i) + Lm(3, i)); break;
                    case 3: s = Lm(4, i) + r6 * Lp(2, i); break;
                    case 4: s = Lp(3, i); break;
                }
                h -= gamma * s;
                dxdt[m * n + i] = -I * h;
            }
        }
    };

    State x(5 * n);
    for (int m = 0; m < 5; ++m)
        for (std::size_t i = 0; i < n; ++i) x[m * n + i] = psi.component(m)[i];
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<State>());
    ode::integrate_adaptive(stepper, rhs, x, 0.0, tau, tau / 8.0);

    SpinorField out(psi.grid_ptr());
    for (int m = 0; m < 5; ++m)
        for (std::size_t i = 0; i < n; ++i) out.component(m)[i] = x[m * n + i];
    return out;
}

double max_abs_diff(const SpinorField& a, const SpinorField& b) {
    double d = 0.0;
    for (int m = 0; m < 5; ++m)
        for (std::size_t i = 0; i < a.grid().size(); ++i)
            d = std::max(d, std::abs(a.component(m)[i] - b.component(m)[i]));
    return d;
}

double max_abs(const SpinorField& a) {
    double d = 0.0;
    for (int m = 0; m < 5; ++m)
        for (std::size_t i = 0; i < a.grid().size(); ++i) d = std::max(d, std::abs(a.component(m)[i]));
    return d;
}

}  // namespace spinor::oracle
