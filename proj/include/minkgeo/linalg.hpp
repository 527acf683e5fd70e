#pragma once

#include <limits>
#include <vector>

namespace minkgeo {

using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

// Dense row-major matrix. Dimensions in this library are tiny (n <= ~10 for
// geometry, a few dozen for least-squares systems), so no sparsity anywhere.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n);
};

double dot(const Vec& x, const Vec& y);
double norm2(const Vec& x);
Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec scale(const Vec& x, double t);
Vec normalized(const Vec& x);  // throws on (near-)zero input

Vec matvec(const Mat& m, const Vec& x);
Mat matmul(const Mat& l, const Mat& r);
Mat transpose(const Mat& m);
double max_abs(const Mat& m);
double max_abs_diff(const Mat& l, const Mat& r);

// LU with partial pivoting; the workhorse behind inverse/determinant and the
// elimination solves used by the quadratic-fit layer.
struct LuFactors {
  Mat lu;
  std::vector<int> perm;
  double parity = 1.0;
  bool singular = false;
};

LuFactors lu_factor(Mat m);
Vec lu_solve(const LuFactors& f, Vec b);  // throws Error("numeric") if singular
Mat inverse(const Mat& m);
double determinant(const Mat& m);
Vec solve(const Mat& m, const Vec& b);

// Cyclic Jacobi for symmetric matrices. Sweeps until the off-diagonal
// Frobenius norm drops below off_tol * max(1, ||A||_F). Eigenvalues ascending,
// eigenvectors in the matching columns.
struct SymEigen {
  Vec values;
  Mat vectors;
};

SymEigen jacobi_eigensystem(Mat s, double off_tol = 1e-12);
Mat sym_sqrt(const Mat& spd);      // throws if any eigenvalue <= 0
Mat sym_inv_sqrt(const Mat& spd);

}  // namespace minkgeo
