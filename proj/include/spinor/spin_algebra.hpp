#pragma once

#include <array>
#include <complex>

namespace spinor {

using cplx = std::complex<double>;
using Vec5 = std::array<cplx, 5>;
using Mat5 = std::array<std::array<cplx, 5>, 5>;

/// Storage index m of spin level l (l = 2..-2 maps to m = 0..4).
constexpr int storage_index(int level) { return 2 - level; }
/// Spin level of storage index m.
constexpr int spin_level(int m) { return 2 - m; }

Mat5 identity5();
Mat5 zero5();
Mat5 operator*(const Mat5& a, const Mat5& b);
Mat5 operator+(const Mat5& a, const Mat5& b);
Mat5 operator-(const Mat5& a, const Mat5& b);
Mat5 operator*(cplx s, const Mat5& a);
Vec5 operator*(const Mat5& a, const Vec5& v);
Mat5 adjoint(const Mat5& a);
double max_abs_diff(const Mat5& a, const Mat5& b);
/// max |U^H U - I|
double unitarity_defect(const Mat5& u);

/// Spin-2 matrices in the basis l = 2, 1, 0, -1, -2 and the singlet matrix
/// A_ij = (-1)^(i-1) delta_{i+j,6} / sqrt(5) (1-based).
struct SpinMatrices {
    Mat5 fx;
    Mat5 fy;
    Mat5 fz;
    Mat5 A;
};

const SpinMatrices& spin_matrices();

/// F . f for the spin vector given through F_+ = F_x + i F_y and F_z.
Mat5 spin_dot_matrix(cplx f_plus, double f_z);

}  // namespace spinor
