#include "spinor/spin_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace spinor {

Mat5 zero5() {
    Mat5 m{};
    for (auto& row : m) row.fill(cplx{});
    return m;
}

Mat5 identity5() {
    Mat5 m = zero5();
    for (int i = 0; i < 5; ++i) m[i][i] = 1.0;
    return m;
}

Mat5 operator*(const Mat5& a, const Mat5& b) {
    Mat5 c = zero5();
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) {
            const cplx aik = a[i][k];
            if (aik == cplx{}) continue;
            for (int j = 0; j < 5; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

Mat5 operator+(const Mat5& a, const Mat5& b) {
    Mat5 c;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) c[i][j] = a[i][j] + b[i][j];
    return c;
}

Mat5 operator-(const Mat5& a, const Mat5& b) {
    Mat5 c;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) c[i][j] = a[i][j] - b[i][j];
    return c;
}

Mat5 operator*(cplx s, const Mat5& a) {
    Mat5 c;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) c[i][j] = s * a[i][j];
    return c;
}

Vec5 operator*(const Mat5& a, const Vec5& v) {
    Vec5 out{};
    for (int i = 0; i < 5; ++i) {
        cplx s{};
        for (int j = 0; j < 5; ++j) s += a[i][j] * v[j];
        out[i] = s;
    }
    return out;
}

Mat5 adjoint(const Mat5& a) {
    Mat5 c;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) c[i][j] = std::conj(a[j][i]);
    return c;
}

double max_abs_diff(const Mat5& a, const Mat5& b) {
    double m = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

double unitarity_defect(const Mat5& u) { return max_abs_diff(adjoint(u) * u, identity5()); }

namespace {

SpinMatrices make_spin_matrices() {
    const double r = std::sqrt(6.0) / 2.0;
    const cplx I{0.0, 1.0};
    SpinMatrices s{zero5(), zero5(), zero5(), zero5()};
    // off-diagonal couplings between m and m+1
    const double up[4] = {1.0, r, r, 1.0};
    for (int m = 0; m < 4; ++m) {
        s.fx[m][m + 1] = up[m];
        s.fx[m + 1][m] = up[m];
        s.fy[m][m + 1] = -I * up[m];
        s.fy[m + 1][m] = I * up[m];
    }
    for (int m = 0; m < 5; ++m) s.fz[m][m] = spin_level(m);
    const double inv = 1.0 / std::sqrt(5.0);
    for (int i = 0; i < 5; ++i) s.A[i][4 - i] = (i % 2 == 0 ? 1.0 : -1.0) * inv;
    return s;
}

}  // namespace

const SpinMatrices& spin_matrices() {
    static const SpinMatrices s = make_spin_matrices();
    return s;
}

Mat5 spin_dot_matrix(cplx f_plus, double f_z) {
    const double r = std::sqrt(6.0) / 2.0;
    const cplx f_minus = std::conj(f_plus);
    Mat5 m = zero5();
    const double up[4] = {1.0, r, r, 1.0};
    for (int k = 0; k < 4; ++k) {
        m[k][k + 1] = up[k] * f_minus;
        m[k + 1][k] = up[k] * f_plus;
    }
    for (int k = 0; k < 5; ++k) m[k][k] = spin_level(k) * f_z;
    return m;
}

}  // namespace spinor
