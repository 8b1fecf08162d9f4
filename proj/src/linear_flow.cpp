#include "spinor/linear_flow.hpp"

#include <cmath>

#include "spinor/fft.hpp"
#include "spinor/parallel.hpp"
#include "spinor/rotation.hpp"

namespace spinor {

Mat5 mode_q_matrix(double omega, double gamma, double nu_p, double nu_q) {
    const double r = std::sqrt(6.0) / 2.0;
    const cplx a(-nu_q, -nu_p);
    const double w[4] = {1.0, r, r, 1.0};
    Mat5 q = zero5();
    for (int m = 0; m < 5; ++m) q[m][m] = -spin_level(m) * omega;
    for (int m = 0; m < 4; ++m) {
        q[m][m + 1] = gamma * w[m] * a;
        q[m + 1][m] = gamma * w[m] * std::conj(a);
    }
    return q;
}

namespace {

Mat5 taylor_exp_i(const Mat5& q, double tau) {
    // sum_{k<=4} (i tau Q)^k / k!
    const Mat5 x = cplx(0.0, tau) * q;
    Mat5 term = identity5();
    Mat5 sum = identity5();
    for (int k = 1; k <= 4; ++k) {
        term = (1.0 / k) * (term * x);
        sum = sum + term;
    }
    return sum;
}

}  // namespace

ModePropagator mode_propagator(double omega, double gamma, double nu_p, double nu_q, double tau) {
    ModePropagator mp;
    mp.a = cplx(-nu_q, -nu_p);
    const double abs_a = std::abs(mp.a);
    mp.xi = gamma * abs_a;
    mp.lambda = std::sqrt(omega * omega + mp.xi * mp.xi);
    const double x = mp.lambda * tau;

    // eta1 = cos(2x)-1, eta2 = cos(x)-1, eta3 = i sin(2x), eta4 = i sin(x),
    // from one half-angle evaluation to avoid cancellation in cos - 1.
    const double sh = std::sin(0.5 * x), ch = std::cos(0.5 * x);
    const double s1 = 2.0 * sh * ch;
    const double c1m = -2.0 * sh * sh;
    const double c1 = 1.0 + c1m;
    mp.eta1 = -2.0 * s1 * s1;
    mp.eta2 = c1m;
    mp.eta3 = cplx(0.0, 2.0 * s1 * c1);
    mp.eta4 = cplx(0.0, s1);

    if (std::abs(x) < 1e-6) {
        mp.taylor = true;
        mp.U = taylor_exp_i(mode_q_matrix(omega, gamma, nu_p, nu_q), tau);
        return mp;
    }

    const double W = omega, W2 = W * W, W3 = W2 * W, W4 = W2 * W2;
    const double X2 = mp.xi * mp.xi, X4 = X2 * X2;
    const double lam = mp.lambda, lam2 = lam * lam, lam3 = lam2 * lam, lam4 = lam2 * lam2;
    const double g = gamma, g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
    const double sqrt6 = std::sqrt(6.0);
    const cplx e1 = mp.eta1, e2 = mp.eta2, e3 = mp.eta3, e4 = mp.eta4;

    const cplx c11 = ((8 * W4 + 8 * W2 * X2 + X4) * e1 + 4 * X2 * (2 * W2 + X2) * e2 -
                      4 * W * lam * (2 * W2 + X2) * e3 - 8 * W * lam * X2 * e4 + 8 * lam4) /
                     (8 * lam4);
    const cplx c12 = g / (4 * lam4) *
                     (-W * (4 * W2 + 3 * X2) * e1 + 4 * W3 * e2 + lam * (4 * W2 + X2) * e3 -
                      2 * lam * (2 * W2 - X2) * e4);
    const cplx c13 = sqrt6 * g2 / (4 * lam4) * ((2 * W2 + X2) * e2 - 2 * W * lam * e4 + 2 * lam2) * e2;
    const cplx c14 = g3 / (2 * lam4) * (-W * e2 + lam * e4) * e2;
    const cplx c15 = g4 / (8 * lam4) * (e1 - 4.0 * e2);
    const cplx c22 = 1.0 / (2 * lam4) * (2 * X2 * e2 + lam2) * ((2 * W2 + X2) * e2 - 2 * W * lam * e4 + 2 * lam2);
    const cplx c23 = sqrt6 * g / (2 * lam4) * (X2 * e2 + lam2) * (-W * e2 + lam * e4);
    const cplx c24 = g2 / (2 * lam4) * (2 * X2 * e2 + 3 * lam2) * e2;
    const cplx c25 = c14 + W * g3 / lam4 * e2 * e2;
    const cplx c33 = 3 * X2 / (4 * lam4) * (X2 * e1 + 4 * W2 * e2) + 1.0;
    const cplx c34 = c23 + sqrt6 * W * g / lam4 * (X2 * e2 + lam2) * e2;
    const cplx c35 = c13 + sqrt6 * W * g2 / lam3 * e2 * e4;
    const cplx c44 = c22 + 2 * W / lam3 * (2 * X2 * e2 + lam2) * e4;
    const cplx c45 = c12 + W * g / (2 * lam4) * ((4 * W2 + 3 * X2) * e1 - 4 * W2 * e2);
    const cplx c55 = c11 + W / lam3 * ((2 * W2 + X2) * e3 + 2 * X2 * e4);

    const cplx a = mp.a, ab = std::conj(a);
    const cplx a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    const cplx ab2 = ab * ab, ab3 = ab2 * ab, ab4 = ab2 * ab2;
    Mat5& U = mp.U;
    U[0] = {c11, a * c12, a2 * c13, a3 * c14, a4 * c15};
    U[1] = {ab * c12, c22, a * c23, a2 * c24, a3 * c25};
    U[2] = {ab2 * c13, ab * c23, c33, a * c34, a2 * c35};
    U[3] = {ab3 * c14, ab2 * c24, ab * c34, c44, a * c45};
    U[4] = {ab4 * c15, ab3 * c25, ab2 * c35, ab * c45, c55};
    (void)c1;
    return mp;
}

LinearFlow::LinearFlow(GridPtr grid, double omega, double gamma, bool cache_tables)
    : grid_(std::move(grid)), omega_(omega), gamma_(gamma), cache_(cache_tables) {
    const int N = grid_->N();
    const std::size_t plane = static_cast<std::size_t>(N) * N;
    slot_.resize(plane);
    unit_.resize(plane);
    std::vector<std::int64_t> slot_of(static_cast<std::size_t>(N) * N / 2 + 1, -1);
    const double k0 = std::acos(-1.0) / grid_->L();
    for (int iq = 0; iq < N; ++iq) {
        const int q = iq < N / 2 ? iq : iq - N;
        for (int ip = 0; ip < N; ++ip) {
            const int p = ip < N / 2 ? ip : ip - N;
            const std::size_t pq = ip + static_cast<std::size_t>(N) * iq;
            const std::size_t s = static_cast<std::size_t>(p * p + q * q);
            if (slot_of[s] < 0) {
                slot_of[s] = static_cast<std::int64_t>(abs_a_.size());
                abs_a_.push_back(k0 * std::sqrt(static_cast<double>(s)));
            }
            slot_[pq] = static_cast<std::uint32_t>(slot_of[s]);
            const cplx a(-grid_->wavenumber(iq), -grid_->wavenumber(ip));
            unit_[pq] = s == 0 ? cplx(1.0) : a / std::abs(a);
        }
    }
}

std::vector<LinearFlow::SymMat5> LinearFlow::build_table(double tau) const {
    std::vector<SymMat5> t(abs_a_.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(t.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        // real positive a gives U = M
        const Mat5 X = mode_propagator(omega_, gamma_, 0.0, -abs_a_[k], tau).U;
        // one Newton-Schulz step (3X - X X^H X) / 2; keeps M symmetric
        Mat5 Xh;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) Xh[i][j] = std::conj(X[j][i]);
        const Mat5 XXhX = X * (Xh * X);
        Mat5 M;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) M[i][j] = 1.5 * X[i][j] - 0.5 * XXhX[i][j];
        int e = 0;
        for (int i = 0; i < 5; ++i)
            for (int j = i; j < 5; ++j) t[k][e++] = M[i][j];
    }
    return t;
}

const std::vector<LinearFlow::SymMat5>* LinearFlow::table_for(double tau) {
    if (!cache_) return nullptr;
    if (auto it = tables_.find(tau); it != tables_.end()) return &it->second;
    if (tables_.size() >= 4) tables_.clear();
    return &tables_.emplace(tau, build_table(tau)).first->second;
}

LinearFlow::Kinetic LinearFlow::kinetic_factors(double tau) const {
    const int N = grid_->N();
    Kinetic k;
    k.x.resize(N);
    for (int i = 0; i < N; ++i) {
        const double nu = grid_->wavenumber(i);
        k.x[i] = std::polar(1.0, -0.5 * nu * nu * tau);
    }
    k.y = k.x;
    k.z = grid_->dim() == 3 ? k.x : std::vector<cplx>{cplx(1.0)};
    return k;
}

void LinearFlow::multiply_modes(SpinorField& c, double tau, const Vec5& pre, const Vec5& post, double scale) {
    const int N = grid_->N();
    const std::size_t plane = static_cast<std::size_t>(N) * N;
    const int nz = grid_->dim() == 3 ? N : 1;
    const Kinetic kin = kinetic_factors(tau);
    std::vector<SymMat5> local;
    const std::vector<SymMat5>* table = table_for(tau);
    if (!table) {
        local = build_table(tau);
        table = &local;
    }
    cplx* d[5];
    for (int m = 0; m < 5; ++m) d[m] = c.component(m).data();

#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (int iq = 0; iq < N; ++iq) {
        for (int ip = 0; ip < N; ++ip) {
            const std::size_t pq = ip + static_cast<std::size_t>(N) * iq;
            const SymMat5& M = (*table)[slot_[pq]];
            // U v = D^-1 M D v with D = diag(u^j)
            const cplx u = unit_[pq];
            const cplx u2 = u * u;
            const cplx up[5] = {1.0, u, u2, u2 * u, u2 * u2};
            const cplx kxy = scale * kin.x[ip] * kin.y[iq];
            cplx win[5], wout[5];
            for (int m = 0; m < 5; ++m) {
                win[m] = pre[m] * up[m];
                wout[m] = post[m] * (std::conj(up[m]) / std::norm(up[m]));
            }
            for (int ir = 0; ir < nz; ++ir) {
                const std::size_t idx = pq + plane * ir;
                const cplx k = kxy * kin.z[grid_->dim() == 3 ? ir : 0];
                cplx w[5];
                for (int m = 0; m < 5; ++m) w[m] = win[m] * d[m][idx];
                const cplx y0 = M[0] * w[0] + M[1] * w[1] + M[2] * w[2] + M[3] * w[3] + M[4] * w[4];
                const cplx y1 = M[1] * w[0] + M[5] * w[1] + M[6] * w[2] + M[7] * w[3] + M[8] * w[4];
                const cplx y2 = M[2] * w[0] + M[6] * w[1] + M[9] * w[2] + M[10] * w[3] + M[11] * w[4];
                const cplx y3 = M[3] * w[0] + M[7] * w[1] + M[10] * w[2] + M[12] * w[3] + M[13] * w[4];
                const cplx y4 = M[4] * w[0] + M[8] * w[1] + M[11] * w[2] + M[13] * w[3] + M[14] * w[4];
                d[0][idx] = k * wout[0] * y0;
                d[1][idx] = k * wout[1] * y1;
                d[2][idx] = k * wout[2] * y2;
                d[3][idx] = k * wout[3] * y3;
                d[4][idx] = k * wout[4] * y4;
            }
        }
    }
}

void LinearFlow::apply_fourier(SpinorField& phi, double tau) {
    for (int m = 0; m < 5; ++m) forward_in_place(phi.component(m));
    const Vec5 ones{1.0, 1.0, 1.0, 1.0, 1.0};
    multiply_modes(phi, tau, ones, ones, 1.0);
    for (int m = 0; m < 5; ++m) inverse_in_place(phi.component(m));
}

void LinearFlow::step(SpinorField& psi, double t_n, double tau) {
    const auto& g = *grid_;
    const int dim = g.dim();
    const double N = g.N();
    const double t_next = t_n + tau;

    // Component phases exp(-i l W t_n) before and exp(+i l W t_{n+1}) after
    // commute with the rotations, so they are applied in Fourier space.
    Vec5 pre, post;
    for (int m = 0; m < 5; ++m) {
        const int l = spin_level(m);
        pre[m] = std::polar(1.0, -l * omega_ * t_n);
        post[m] = std::polar(1.0, l * omega_ * t_next);
    }

    if (omega_ == 0.0) {
        for (int m = 0; m < 5; ++m) forward_in_place(psi.component(m));
        multiply_modes(psi, tau, pre, post, 1.0);
        for (int m = 0; m < 5; ++m) inverse_in_place(psi.component(m));
        return;
    }

    const ShearPlan fwd = ShearPlan::for_angle(omega_ * t_n);
    const ShearPlan bwd = ShearPlan::for_angle(-omega_ * t_next);
    const auto fx1 = detail::x_shear_table(g, fwd.a, 1.0 / N);
    const auto fy = detail::y_shear_table(g, fwd.b, 1.0 / N);
    const auto fx2 = detail::x_shear_table(g, fwd.a, 1.0);
    const auto bx1 = detail::x_shear_table(g, bwd.a, 1.0);
    const auto by = detail::y_shear_table(g, bwd.b, 1.0 / N);
    const auto bx2 = detail::x_shear_table(g, bwd.a, 1.0 / N);

    for (int m = 0; m < 5; ++m) {
        ComplexField& f = psi.component(m);
        detail::quarter_turn_in_place(f, fwd.quarter_turns, scratch_);
        modulated_pass(f, 0, fx1.values.data(), true, true);
        modulated_pass(f, 1, fy.values.data(), true, true);
        modulated_pass(f, 0, fx2.values.data(), true, false);
        // x already in mode space; finish the forward transform
        for (int a = 1; a < dim; ++a) transform_axis(f, a, Direction::Forward, false);
    }

    multiply_modes(psi, tau, pre, post, std::pow(N, -dim));

    for (int m = 0; m < 5; ++m) {
        ComplexField& f = psi.component(m);
        for (int a = dim - 1; a >= 1; --a) transform_axis(f, a, Direction::Inverse);
        modulated_pass(f, 0, bx1.values.data(), false, true);
        modulated_pass(f, 1, by.values.data(), true, true);
        modulated_pass(f, 0, bx2.values.data(), true, true);
        detail::quarter_turn_in_place(f, bwd.quarter_turns, scratch_);
    }
}

SpinorField apply_linear_fourier(const SpinorField& phi, const ModelParams& params, double tau) {
    LinearFlow flow(phi.grid_ptr(), params.omega, params.gamma_soc);
    SpinorField out = phi;
    flow.apply_fourier(out, tau);
    return out;
}

SpinorField linear_step(const SpinorField& psi, const ModelParams& params, double t_n, double tau) {
    LinearFlow flow(psi.grid_ptr(), params.omega, params.gamma_soc);
    SpinorField out = psi;
    flow.step(out, t_n, tau);
    return out;
}

}  // namespace spinor
